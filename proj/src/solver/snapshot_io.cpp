#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "rgsw/solver.hpp"

namespace rgsw {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::Io, "cannot open " + path + " for writing");
  return os;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_time(double t) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, r.ptr);
}

void write_snapshot_csv(const std::string& path, const Snapshot& snap, const Grid1D& grid,
                        const PhysParams& p) {
  auto os = open_out(path);
  os << "x,h,U,Phi,phi\n";
  for (std::size_t i = 0; i < snap.cells.size(); ++i) {
    const auto s = to_primitive(ConservedState{snap.cells[i]}, p);
    os << g17(grid.cell_center(i)) << ',' << g17(s.h) << ',' << g17(s.u) << ','
       << g17(s.phi_large) << ',' << g17(s.phi_small) << '\n';
  }
  if (!os) throw Error(Errc::Io, "write failed for " + path);
}

void write_diagnostics_csv(const std::string& path, const std::vector<Snapshot>& snaps) {
  auto os = open_out(path);
  os << "t,mass,phi_content,min_h,max_abs_U,max_abs_Phi,floor_breaches,floor_mass_added\n";
  for (const auto& s : snaps) {
    const auto& d = s.diagnostics;
    os << g17(s.t) << ',' << g17(d.mass) << ',' << g17(d.phi_content) << ',' << g17(d.min_h) << ','
       << g17(d.max_abs_u) << ',' << g17(d.max_abs_phi_large) << ',' << d.floor_breaches << ','
       << g17(d.floor_mass_added) << '\n';
  }
  if (!os) throw Error(Errc::Io, "write failed for " + path);
}

std::vector<std::string> write_run(const std::string& dir, const std::vector<Snapshot>& snaps,
                                   const Grid1D& grid, const PhysParams& p) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir + ": " + ec.message());
  std::vector<std::string> paths;
  for (const auto& s : snaps) {
    const auto path = (std::filesystem::path(dir) / ("t" + format_time(s.t) + ".csv")).string();
    write_snapshot_csv(path, s, grid, p);
    paths.push_back(path);
  }
  const auto diag = (std::filesystem::path(dir) / "diagnostics.csv").string();
  write_diagnostics_csv(diag, snaps);
  paths.push_back(diag);
  return paths;
}

}  // namespace rgsw
