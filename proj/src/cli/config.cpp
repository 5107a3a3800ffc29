#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rgsw/cli.hpp"
#include "rgsw/equilibrium.hpp"

namespace rgsw::cli {

namespace {

std::vector<std::string> split_pointer(const std::string& pointer) {
  std::vector<std::string> out;
  std::size_t pos = 1;
  while (pos <= pointer.size() && !pointer.empty()) {
    const auto next = pointer.find('/', pos);
    out.push_back(pointer.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

bool is_index(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

BumpSpec parse_bump(const Field& f) {
  BumpSpec b;
  b.amplitude = f.at("amplitude").number();
  b.center = f.number_or("center", 0.0);
  b.radius = f.has("radius") ? f.at("radius").positive() : 1.0;
  return b;
}

json bump_json(const BumpSpec& b) {
  return {{"amplitude", b.amplitude}, {"center", b.center}, {"radius", b.radius}};
}

double velocity_or_equilibrium(const Field& f, double h, const PhysParams& p) {
  return f.has("u") ? f.at("u").number() : u_of_h(h, p);
}

std::function<double(double)> parse_shape(const Field& f) {
  const auto shape = f.string_or("shape", "bump");
  const double a = f.at("amplitude").number();
  if (shape == "bump") return delta::bump(a, f.number_or("center", 0.0), f.number_or("radius", 1.0));
  if (shape == "gaussian")
    return delta::gaussian(a, f.number_or("center", 0.0), f.number_or("width", 1.0));
  if (shape == "sine") return delta::sine(a, f.at("period").positive());
  f.at("shape").fail("unknown shape '" + shape + "' (bump, gaussian, sine)");
}

double kappa_of(const Field& f, double h0, const PhysParams& p, const char* phi_key) {
  if (f.has("kappa")) return f.at("kappa").number();
  const double phi = f.at(phi_key).positive();
  return 0.5 * p.g_perp * h0 * h0 + phi * h0 * h0 * h0;
}

}  // namespace

ConfigDocument ConfigDocument::parse(std::string text, std::string origin) {
  ConfigDocument d;
  d.text_ = std::move(text);
  d.origin_ = std::move(origin);
  try {
    d.root_ = json::parse(d.text_);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, d.text_.size());
    const auto line = 1 + std::count(d.text_.begin(), d.text_.begin() + static_cast<long>(upto), '\n');
    throw Error(Errc::Config, d.origin_ + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
  }
  if (!d.root_.is_object()) throw Error(Errc::Config, d.origin_ + ": top level must be an object");
  return d;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

int ConfigDocument::line_of(const std::string& pointer) const {
  std::size_t pos = 0;
  bool found = false;
  for (const auto& tok : split_pointer(pointer)) {
    if (is_index(tok)) continue;
    const auto at = text_.find("\"" + tok + "\"", pos);
    if (at == std::string::npos) break;
    pos = at;
    found = true;
  }
  if (!found) return 0;
  return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n'));
}

Field::Field(const ConfigDocument& doc, const json& node, std::string pointer)
    : doc_(&doc), node_(&node), pointer_(std::move(pointer)) {}

void Field::fail(const std::string& message) const {
  std::string where = doc_->origin();
  if (const int line = doc_->line_of(pointer_); line > 0) where += ":" + std::to_string(line);
  throw Error(Errc::Config, where + ": field '" + (pointer_.empty() ? "/" : pointer_) + "': " + message);
}

bool Field::has(const std::string& key) const {
  return node_->is_object() && node_->contains(key) && !(*node_)[key].is_null();
}

Field Field::at(const std::string& key) const {
  if (!node_->is_object()) fail("expected an object");
  if (!has(key)) Field(*doc_, *node_, pointer_ + "/" + key).fail("missing required field");
  return Field(*doc_, (*node_)[key], pointer_ + "/" + key);
}

std::optional<Field> Field::find(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

Field Field::operator[](std::size_t i) const {
  if (!node_->is_array()) fail("expected an array");
  if (i >= node_->size()) fail("index " + std::to_string(i) + " out of range");
  return Field(*doc_, (*node_)[i], pointer_ + "/" + std::to_string(i));
}

std::size_t Field::size() const {
  if (!node_->is_array()) fail("expected an array");
  return node_->size();
}

double Field::number() const {
  if (!node_->is_number()) fail("expected a number");
  const double v = node_->get<double>();
  if (!std::isfinite(v)) fail("expected a finite number");
  return v;
}

double Field::positive() const {
  const double v = number();
  if (!(v > 0.0)) fail("must be positive, got " + fmt(v));
  return v;
}

std::size_t Field::count() const {
  if (!node_->is_number_integer() || node_->get<long long>() < 0) fail("expected a non-negative integer");
  return node_->get<std::size_t>();
}

std::string Field::string() const {
  if (!node_->is_string()) fail("expected a string");
  return node_->get<std::string>();
}

bool Field::boolean() const {
  if (!node_->is_boolean()) fail("expected true or false");
  return node_->get<bool>();
}

std::vector<double> Field::numbers() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i].number();
  return out;
}

double Field::number_or(const std::string& key, double fallback) const {
  return has(key) ? at(key).number() : fallback;
}

std::string Field::string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? at(key).string() : fallback;
}

Field root_field(const ConfigDocument& doc) { return Field(doc, doc.root(), ""); }

PhysParams parse_params(const Field& f) {
  const double gp = f.at("g_perp").number();
  const double gh = f.at("g_parallel").number();
  const double cf = f.at("c_f").number();
  const double ct = f.at("c_t").number();
  try {
    return PhysParams(gp, gh, cf, ct);
  } catch (const Error& e) {
    f.fail(e.what());
  }
}

Grid1D parse_grid(const Field& f) {
  const double lo = f.at("x_lo").number();
  const double hi = f.at("x_hi").number();
  const std::size_t n = f.at("n_cells").count();
  BoundaryCondition bc = BoundaryCondition::outflow;
  if (f.has("bc")) {
    try {
      bc = boundary_from_string(f.at("bc").string());
    } catch (const Error& e) {
      f.at("bc").fail(e.what());
    }
  }
  try {
    return Grid1D(lo, hi, n, bc);
  } catch (const Error& e) {
    f.fail(e.what());
  }
}

InitialCondition parse_initial(const Field& f, const PhysParams& p) {
  const auto type = f.at("type").string();
  if (type == "riemann_phi") {
    const double h = f.at("h").positive();
    const double u = velocity_or_equilibrium(f, h, p);
    return PiecewiseInit{{},
                         {{h, u}},
                         {f.at("x_break").number()},
                         {f.at("phi_left").positive(), f.at("phi_right").positive()},
                         f.number_or("Phi", 0.0)};
  }
  if (type == "dam_break") {
    const auto l = f.at("left");
    const auto r = f.at("right");
    const double hl = l.at("h").positive();
    const double hr = r.at("h").positive();
    PiecewiseInit in{{f.at("x_dam").number()},
                     {{hl, velocity_or_equilibrium(l, hl, p)}, {hr, velocity_or_equilibrium(r, hr, p)}},
                     f.at("phi_breaks").numbers(),
                     f.at("phi_values").numbers(),
                     f.number_or("Phi", 0.0)};
    if (in.phi_values.size() != in.phi_breaks.size() + 1)
      f.at("phi_values").fail("needs exactly one more entry than phi_breaks");
    return in;
  }
  if (type == "piecewise") {
    PiecewiseInit in;
    in.hu_breaks = f.at("hu_breaks").numbers();
    const auto vals = f.at("hu_values");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i].size() != 2) vals[i].fail("expected [h, U]");
      in.hu_values.emplace_back(vals[i][0].positive(), vals[i][1].number());
    }
    in.phi_breaks = f.at("phi_breaks").numbers();
    in.phi_values = f.at("phi_values").numbers();
    in.phi_large = f.number_or("Phi", 0.0);
    if (in.hu_values.size() != in.hu_breaks.size() + 1)
      vals.fail("needs exactly one more entry than hu_breaks");
    if (in.phi_values.size() != in.phi_breaks.size() + 1)
      f.at("phi_values").fail("needs exactly one more entry than phi_breaks");
    return in;
  }
  if (type == "perturbed_profile") {
    PerturbedProfileInit in;
    in.h0 = f.at("h0").positive();
    in.phi_minus = f.at("phi_minus").positive();
    if (auto d = f.find("delta")) in.delta = parse_bump(*d);
    if (auto d = f.find("h_perturbation")) in.h_perturbation = parse_bump(*d);
    if (auto d = f.find("phi_perturbation")) in.phi_perturbation = parse_bump(*d);
    if (auto d = f.find("Phi_perturbation")) in.phi_large_perturbation = parse_bump(*d);
    return in;
  }
  if (type == "periodic_sine") {
    PeriodicSineInit in;
    in.h0 = f.at("h0").positive();
    in.u0 = velocity_or_equilibrium(f, in.h0, p);
    in.phi_mean = f.at("phi_mean").positive();
    in.phi_amplitude = f.at("phi_amplitude").number();
    in.wavenumber = f.at("wavenumber").number();
    if (std::abs(in.phi_amplitude) >= in.phi_mean)
      f.at("phi_amplitude").fail("phi would not stay positive");
    return in;
  }
  if (type == "sampled") {
    const auto h = f.at("h").numbers();
    const auto u = f.at("u").numbers();
    const auto phi = f.at("phi").numbers();
    const auto big = f.has("Phi") ? f.at("Phi").numbers() : std::vector<double>(h.size(), 0.0);
    if (u.size() != h.size() || phi.size() != h.size() || big.size() != h.size())
      f.fail("h, u, phi and Phi must have equal lengths");
    SampledInit in;
    for (std::size_t i = 0; i < h.size(); ++i) {
      try {
        in.cells.emplace_back(h[i], u[i], big[i], phi[i]);
      } catch (const Error& e) {
        f.at("h")[i].fail(e.what());
      }
    }
    return in;
  }
  f.at("type").fail("unknown initial type '" + type +
                    "' (riemann_phi, dam_break, piecewise, perturbed_profile, periodic_sine, sampled)");
}

SolverOptions parse_solver(const Field& f) {
  SolverOptions o;
  if (f.has("flux")) {
    try {
      o.flux = flux_kind_from_string(f.at("flux").string());
    } catch (const Error& e) {
      f.at("flux").fail(e.what());
    }
  }
  if (f.has("h_floor")) o.h_floor = f.at("h_floor").positive();
  if (f.has("parallel")) o.parallelism = f.at("parallel").boolean() ? Parallelism::openmp : Parallelism::serial;
  if (f.has("blowup_velocity")) o.blowup_velocity = f.at("blowup_velocity").positive();
  return o;
}

SimConfig parse_sim_config(const ConfigDocument& doc) {
  const auto root = root_field(doc);
  const auto p = parse_params(root.at("params"));
  const auto grid = parse_grid(root.at("grid"));
  auto init = parse_initial(root.at("initial"), p);
  const auto time = root.at("time");
  SolverOptions opt = root.has("solver") ? parse_solver(root.at("solver")) : SolverOptions{};
  if (time.has("cfl")) {
    opt.cfl = time.at("cfl").number();
    if (!(opt.cfl > 0.0 && opt.cfl <= 1.0)) time.at("cfl").fail("must lie in (0, 1]");
  }
  const double t_end = time.at("t_end").number();
  if (t_end < 0.0) time.at("t_end").fail("must be >= 0");
  std::vector<double> snaps;
  if (time.has("snapshots")) {
    const auto s = time.at("snapshots");
    snaps = s.numbers();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      if (snaps[i] < 0.0 || snaps[i] > t_end) s[i].fail("outside [0, t_end]");
      if (i > 0 && snaps[i] < snaps[i - 1]) s[i].fail("snapshot times must be sorted");
    }
  }
  if (const auto* sampled = std::get_if<SampledInit>(&init); sampled && sampled->cells.size() != grid.n_cells)
    root.at("initial").at("h").fail("has " + std::to_string(sampled->cells.size()) +
                                    " entries, grid has " + std::to_string(grid.n_cells) + " cells");
  return SimConfig{p, grid, std::move(init), t_end, std::move(snaps), opt};
}

json to_json(const PhysParams& p) {
  return {{"g_perp", p.g_perp}, {"g_parallel", p.g_parallel}, {"c_f", p.c_f}, {"c_t", p.c_t}};
}

json to_json(const Grid1D& g) {
  return {{"x_lo", g.x_lo}, {"x_hi", g.x_hi}, {"n_cells", g.n_cells}, {"bc", to_string(g.bc)}};
}

json to_json(const InitialCondition& init) {
  struct Visitor {
    json operator()(const PiecewiseInit& in) const {
      json vals = json::array();
      for (const auto& [h, u] : in.hu_values) vals.push_back({h, u});
      return {{"type", "piecewise"},   {"hu_breaks", in.hu_breaks}, {"hu_values", vals},
              {"phi_breaks", in.phi_breaks}, {"phi_values", in.phi_values}, {"Phi", in.phi_large}};
    }
    json operator()(const PerturbedProfileInit& in) const {
      return {{"type", "perturbed_profile"},
              {"h0", in.h0},
              {"phi_minus", in.phi_minus},
              {"delta", bump_json(in.delta)},
              {"h_perturbation", bump_json(in.h_perturbation)},
              {"phi_perturbation", bump_json(in.phi_perturbation)},
              {"Phi_perturbation", bump_json(in.phi_large_perturbation)}};
    }
    json operator()(const PeriodicSineInit& in) const {
      return {{"type", "periodic_sine"}, {"h0", in.h0},
              {"u", in.u0},              {"phi_mean", in.phi_mean},
              {"phi_amplitude", in.phi_amplitude}, {"wavenumber", in.wavenumber}};
    }
    json operator()(const SampledInit& in) const {
      json h = json::array(), u = json::array(), big = json::array(), phi = json::array();
      for (const auto& s : in.cells) {
        h.push_back(s.h);
        u.push_back(s.u);
        big.push_back(s.phi_large);
        phi.push_back(s.phi_small);
      }
      return {{"type", "sampled"}, {"h", h}, {"u", u}, {"Phi", big}, {"phi", phi}};
    }
  };
  return std::visit(Visitor{}, init);
}

json to_json(const SimConfig& c) {
  return {{"params", to_json(c.params)},
          {"grid", to_json(c.grid)},
          {"initial", to_json(c.initial)},
          {"time", {{"t_end", c.t_end}, {"cfl", c.options.cfl}, {"snapshots", c.snapshots}}},
          {"solver",
           {{"flux", to_string(c.options.flux)},
            {"h_floor", c.options.h_floor},
            {"parallel", c.options.parallelism == Parallelism::openmp},
            {"blowup_velocity", c.options.blowup_velocity}}}};
}

WaveProfile parse_profile(const Field& f, const PhysParams& p) {
  const auto type = f.at("type").string();
  const double h0 = f.at("h0").positive();
  const double c = equilibrium_speed(h0, p);
  auto build = [&]() -> WaveProfile {
    if (type == "constant") {
      const double phi0 = f.at("phi0").positive();
      const auto x = make_profile_grid(f.number_or("x_lo", -10.0), f.number_or("x_hi", 10.0),
                                       f.has("n") ? f.at("n").count() : 201);
      return WaveProfile(p, h0, c, x, std::vector<double>(x.size(), h0),
                         std::vector<double>(x.size(), phi0), {phi0, phi0});
    }
    if (type == "single_jump") {
      const auto d = f.at("domain");
      return construct_single_jump(h0, c, f.at("phi_left").positive(), f.at("phi_right").positive(),
                                   f.number_or("x_jump", 0.0), p,
                                   Domain{d.at("x_lo").number(), d.at("x_hi").number(), d.at("n").count()});
    }
    if (type == "delta") {
      const auto shape = parse_shape(f.at("delta"));
      auto spec = ProfileSpec::sampled(
          h0, c, kappa_of(f, h0, p, "phi_minus"),
          make_profile_grid(f.at("x_lo").number(), f.at("x_hi").number(), f.at("n").count()), shape);
      return construct_from_delta(spec, p);
    }
    if (type == "periodic") {
      const double period = f.at("period").positive();
      const auto shape = parse_shape(f.at("delta"));
      auto spec = ProfileSpec::sampled(h0, c, kappa_of(f, h0, p, "phi0"),
                                       make_profile_grid(0.0, period, f.at("n").count()), shape);
      spec.period = period;
      return construct_periodic(spec, p, f.number_or("mean_tolerance", 1e-10));
    }
    f.at("type").fail("unknown profile type '" + type + "' (constant, single_jump, delta, periodic)");
  };
  try {
    auto prof = build();
    if (f.has("mollify")) prof = mollify(prof, f.at("mollify").positive());
    return prof;
  } catch (const Error& e) {
    if (e.code() == Errc::Config) throw;
    f.fail(e.what());
  }
}

ContourSpec parse_contour(const Field& f) {
  ContourSpec c;
  c.re_min = f.number_or("re_min", c.re_min);
  c.re_max = f.number_or("re_max", c.re_max);
  c.im_max = f.number_or("im_max", c.im_max);
  c.indent = f.number_or("indent", c.indent);
  if (f.has("initial_samples")) c.initial_samples = f.at("initial_samples").count();
  if (f.has("max_samples")) c.max_samples = f.at("max_samples").count();
  c.zero_threshold = f.number_or("zero_threshold", c.zero_threshold);
  if (f.has("parallel")) c.parallel = f.at("parallel").boolean();
  return c;
}

EvansOptions parse_evans(const Field& f) {
  EvansOptions o;
  const auto w = f.string_or("weight", "none");
  if (w == "none") {
    o.weight = WeightMode::none;
  } else if (w == "endstate") {
    o.weight = WeightMode::endstate;
  } else if (w == "custom") {
    o.weight = WeightMode::custom;
    o.theta_minus = f.at("theta_minus").number();
    o.theta_plus = f.at("theta_plus").number();
  } else {
    f.at("weight").fail("unknown weight '" + w + "' (none, endstate, custom)");
  }
  o.rtol = f.number_or("rtol", o.rtol);
  o.atol = f.number_or("atol", o.atol);
  if (f.has("match_point")) o.match_point = f.at("match_point").number();
  return o;
}

json to_json(const CheckResult& c) {
  return {{"name", c.name},     {"passed", c.passed},       {"value", c.value},
          {"expected", c.expected}, {"tolerance", c.tolerance}, {"detail", c.detail}};
}

}  // namespace rgsw::cli
