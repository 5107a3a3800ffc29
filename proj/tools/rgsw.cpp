#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rgsw/cli.hpp"
#include "rgsw/equilibrium.hpp"

using namespace rgsw;
using namespace rgsw::cli;

namespace {

struct RunFlags {
  std::string out = "out";
  std::optional<std::size_t> cells;
  std::optional<double> cfl;
  bool seed_check = true;
  bool strict = false;
  bool parallel = false;
  std::string flux;
};

void apply_overrides(SimConfig& cfg, const RunFlags& f) {
  if (f.cells) cfg.grid = Grid1D(cfg.grid.x_lo, cfg.grid.x_hi, *f.cells, cfg.grid.bc);
  if (f.cfl) {
    if (!(*f.cfl > 0.0 && *f.cfl <= 1.0)) throw Error(Errc::InvalidParameter, "--cfl must lie in (0, 1]");
    cfg.options.cfl = *f.cfl;
  }
  if (!f.flux.empty()) cfg.options.flux = flux_kind_from_string(f.flux);
  if (f.parallel) cfg.options.parallelism = Parallelism::openmp;
  if (const auto* s = std::get_if<SampledInit>(&cfg.initial); s && s->cells.size() != cfg.grid.n_cells)
    throw Error(Errc::InvalidParameter, "--cells cannot resample a sampled initial condition");
}

void report_checks(const std::vector<CheckResult>& checks, bool strict) {
  for (const auto& c : checks) {
    std::printf("%-4s %-60s value %.6g", c.passed ? "ok" : (strict ? "FAIL" : "warn"), c.name.c_str(), c.value);
    if (c.tolerance > 0.0 && c.expected != 0.0)
      std::printf(" (expected %.6g +- %.3g)", c.expected, c.tolerance);
    else if (c.tolerance > 0.0)
      std::printf(" (bound %.3g)", c.tolerance);
    else
      std::printf(" (at least %.6g)", c.expected);
    std::printf("\n");
  }
}

int run_and_record(const std::string& command, const SimConfig& cfg, const RunFlags& flags,
                   const std::function<std::vector<CheckResult>(const SimConfig&, const std::vector<Snapshot>&)>& checks) {
  std::vector<CheckResult> results;
  if (flags.seed_check) {
    for (auto s : seed_checks(cfg)) {
      s.name = "seed: " + s.name;
      results.push_back(std::move(s));
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto snaps = run(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (checks) {
    const auto more = checks(cfg, snaps);
    results.insert(results.end(), more.begin(), more.end());
  }
  RunManifest m;
  m.command = command;
  m.config = to_json(cfg);
  m.version = version();
  m.wall_seconds = wall;
  m.files = write_run(flags.out, snaps, cfg.grid, cfg.params);
  m.files.push_back((std::filesystem::path(flags.out) / "manifest.json").string());
  m.checks = results;
  write_manifest(flags.out, m);

  std::printf("%zu snapshots to t = %s in %.2f s; output in %s\n", snaps.size(),
              format_time(snaps.back().t).c_str(), wall, flags.out.c_str());
  report_checks(results, flags.strict);
  bool ok = true;
  for (const auto& c : results) ok = ok && c.passed;
  if (!ok && flags.strict) return 2;
  return 0;
}

void add_run_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--out", f.out, "Output directory");
  app->add_option("--cells", f.cells, "Override the number of cells")->check(CLI::PositiveNumber);
  app->add_option("--cfl", f.cfl, "Override the CFL number");
  app->add_flag("--seed-check,!--no-seed-check", f.seed_check,
                "Check admissibility and far-field equilibrium of the initial data");
  app->add_flag("--strict", f.strict, "Failed checks give exit status 2");
  app->add_flag("--parallel", f.parallel, "Use the OpenMP kernels");
  app->add_option("--flux", f.flux, "Interface flux: hll or hllc");
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw Error(Errc::Io, "cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convective waves, equilibrium Riemann problems and spectral stability for the "
               "four-field inclined shallow-water relaxation system"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  RunFlags sim_flags;
  std::string sim_config;
  auto* sim = app.add_subcommand("simulate", "Run the finite-volume solver on a JSON config");
  sim->add_option("config", sim_config, "Config file")->required()->check(CLI::ExistingFile);
  add_run_flags(sim, sim_flags);

  RunFlags preset_flags;
  std::string preset_name;
  bool list_presets = false;
  auto* pre = app.add_subcommand("preset", "Run a bundled experiment and evaluate its checks");
  pre->add_option("name", preset_name, "Preset name");
  pre->add_flag("--list", list_presets, "List presets");
  add_run_flags(pre, preset_flags);

  std::string prof_config, prof_out;
  auto* prof = app.add_subcommand("profile", "Construct a convective wave profile");
  prof->add_option("config", prof_config, "Config file with params and profile")->required()->check(CLI::ExistingFile);
  prof->add_option("--out", prof_out, "CSV output (default stdout)");

  std::string stab_config, stab_out, stab_mode;
  bool stab_evans = false;
  auto* stab = app.add_subcommand("stability", "Stability report for a profile");
  stab->add_option("config", stab_config, "Config file with params and profile")->required()->check(CLI::ExistingFile);
  stab->add_option("--out", stab_out, "JSON output (default stdout)");
  stab->add_option("--mode", stab_mode, "standard, convective or extended_convective");
  stab->add_flag("--evans", stab_evans, "Also count Evans zeros on the contour");

  std::string riem_config;
  auto* riem = app.add_subcommand("riemann", "Equilibrium Riemann wave pattern");
  riem->add_option("config", riem_config, "Config file with params, left and right")->required()->check(CLI::ExistingFile);

  std::string disp_config, disp_out;
  auto* disp = app.add_subcommand("dispersion", "Dispersion table of a constant state");
  disp->add_option("config", disp_config, "Config file with params and state")->required()->check(CLI::ExistingFile);
  disp->add_option("--out", disp_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      auto cfg = parse_sim_config(ConfigDocument::load(sim_config));
      apply_overrides(cfg, sim_flags);
      return run_and_record("simulate " + sim_config, cfg, sim_flags, nullptr);
    }

    if (pre->parsed()) {
      if (list_presets || preset_name.empty()) {
        for (const auto& n : preset_names()) std::printf("%-7s %s\n", n.c_str(), make_preset(n).description.c_str());
        return preset_name.empty() && !list_presets ? 1 : 0;
      }
      auto preset = make_preset(preset_name);
      apply_overrides(preset.config, preset_flags);
      return run_and_record("preset " + preset_name, preset.config, preset_flags, preset.checks);
    }

    if (prof->parsed()) {
      const auto doc = ConfigDocument::load(prof_config);
      const auto root = root_field(doc);
      const auto profile = parse_profile(root.at("profile"), parse_params(root.at("params")));
      std::ofstream file;
      write_profile_csv(open_or_stdout(prof_out, file), profile);
      if (!prof_out.empty())
        std::printf("%zu samples, %zu jumps -> %s\n", profile.size(), profile.jump_locations().size(), prof_out.c_str());
      return 0;
    }

    if (stab->parsed()) {
      const auto doc = ConfigDocument::load(stab_config);
      const auto root = root_field(doc);
      const auto p = parse_params(root.at("params"));
      const auto profile = parse_profile(root.at("profile"), p);
      std::string mode = stab_mode.empty() ? root.string_or("mode", "standard") : stab_mode;
      StabilityMode m;
      try {
        m = stability_mode_from_string(mode);
      } catch (const Error&) {
        throw Error(Errc::InvalidParameter, "unknown mode '" + mode + "'");
      }
      auto report = stability_verdict(profile, m);
      if (stab_evans || root.has("evans")) {
        ContourSpec contour;
        EvansOptions opt;
        if (auto ev = root.find("evans")) {
          if (auto c = ev->find("contour")) contour = parse_contour(*c);
          opt = parse_evans(*ev);
        }
        report.evans_winding = count_unstable(profile, contour, opt);
        report.contour = contour;
      }
      std::ofstream file;
      open_or_stdout(stab_out, file) << report_to_json(report) << '\n';
      return 0;
    }

    if (riem->parsed()) {
      const auto doc = ConfigDocument::load(riem_config);
      const auto root = root_field(doc);
      const auto p = parse_params(root.at("params"));
      const auto l = root.at("left");
      const auto r = root.at("right");
      const EquilibriumState left{l.at("h").positive(), l.at("phi").positive()};
      const EquilibriumState right{r.at("h").positive(), r.at("phi").positive()};
      const auto sol = riemann_solve(left, right, p);
      std::printf("contact      speed %.17g\n", sol.contact_speed);
      if (const auto* s = std::get_if<ShockWave>(&sol.second_wave))
        std::printf("shock        speed %.17g\n", s->speed);
      else if (const auto* f = std::get_if<RarefactionWave>(&sol.second_wave))
        std::printf("rarefaction  speeds %.17g to %.17g\n", f->left_edge_speed, f->right_edge_speed);
      else
        std::printf("no second wave\n");
      std::printf("left         h %.17g  u %.17g  phi %.17g\n", sol.left.h, u_of_h(sol.left.h, p), sol.left.phi);
      std::printf("intermediate h %.17g  u %.17g  phi %.17g\n", sol.intermediate.h, u_of_h(sol.intermediate.h, p),
                  sol.intermediate.phi);
      std::printf("right        h %.17g  u %.17g  phi %.17g\n", sol.right.h, u_of_h(sol.right.h, p), sol.right.phi);
      return 0;
    }

    if (disp->parsed()) {
      const auto doc = ConfigDocument::load(disp_config);
      const auto root = root_field(doc);
      const auto p = parse_params(root.at("params"));
      const auto st = root.at("state");
      const double h0 = st.at("h0").positive();
      const double phi0 = st.at("phi0").positive();
      double lo = -100.0, hi = 100.0;
      std::size_t n = 2001;
      if (auto xi = root.find("xi")) {
        lo = xi->number_or("min", lo);
        hi = xi->number_or("max", hi);
        if (xi->has("n")) n = xi->at("n").count();
      }
      if (n < 2 || !(hi > lo)) throw Error(Errc::InvalidParameter, "xi range needs min < max and n >= 2");
      std::ofstream file;
      auto& os = open_or_stdout(disp_out, file);
      os << "xi,re1,re2,im1,im2\n";
      char buf[160];
      for (std::size_t i = 0; i < n; ++i) {
        const double xi = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto r = dispersion_roots(xi, h0, phi0, p);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", xi, r[0].real(), r[1].real(), r[0].imag(),
                      r[1].imag());
        os << buf;
      }
      if (!disp_out.empty())
        std::printf("froude %.6g, hydrodynamically %s\n", froude_endstate(h0, phi0, p),
                    hydro_stable(h0, phi0, p) ? "stable" : "unstable");
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "rgsw: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rgsw: %s\n", e.what());
    return 1;
  }
  return 1;
}
