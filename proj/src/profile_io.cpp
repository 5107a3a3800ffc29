#include <cstdio>
#include <fstream>
#include <ostream>

#include "rgsw/profiles.hpp"

namespace rgsw {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_profile_csv(std::ostream& os, const WaveProfile& profile) {
  os << "# jumps:";
  for (double j : profile.jump_locations()) os << ' ' << g17(j);
  os << '\n' << "x,h,phi\n";
  const auto x = profile.x();
  const auto h = profile.h();
  const auto phi = profile.phi();
  for (std::size_t i = 0; i < x.size(); ++i)
    os << g17(x[i]) << ',' << g17(h[i]) << ',' << g17(phi[i]) << '\n';
}

void write_profile_csv(const std::string& path, const WaveProfile& profile) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::Io, "cannot open " + path);
  write_profile_csv(os, profile);
  if (!os) throw Error(Errc::Io, "write failed for " + path);
}

}  // namespace rgsw
