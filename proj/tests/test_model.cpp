#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rgsw/model.hpp"
#include "support.hpp"

using namespace rgsw;
using rgsw::test::relerr;

TEST_CASE("primitive and conserved states round trip") {
  const auto p = test::shallow_params();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> h(0.05, 5.0), u(-8.0, 8.0), s(0.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const PrimitiveState w(h(rng), u(rng), s(rng), s(rng));
    const auto back = to_primitive(to_conserved(w, p), p);
    CHECK(back.h == doctest::Approx(w.h).epsilon(1e-14));
    CHECK(back.u == doctest::Approx(w.u).epsilon(1e-13));
    CHECK(back.phi_large == doctest::Approx(w.phi_large).epsilon(1e-9));
    CHECK(back.phi_small == doctest::Approx(w.phi_small).epsilon(1e-13));
  }
}

TEST_CASE("conserved variables by hand") {
  const PhysParams p(2.0, 0.5, 0.1, 0.2);
  const auto q = to_conserved(PrimitiveState(2.0, 3.0, 0.25, 0.5), p).q;
  // e = (2*2 + 0.75*4) / 2 = 3.5, E = 4.5 + 3.5
  CHECK(q[0] == 2.0);
  CHECK(q[1] == 6.0);
  CHECK(q[2] == doctest::Approx(16.0));
  CHECK(q[3] == doctest::Approx(1.0));
}

TEST_CASE("state constructors reject bad input") {
  CHECK_THROWS_AS(PrimitiveState(0.0, 1.0, 0.0, 0.0), Error);
  try {
    PrimitiveState(-1.0, 0.0, 0.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPositiveHeight);
  }
  CHECK_THROWS_AS(PrimitiveState(1.0, NAN, 0.0, 0.0), Error);
  CHECK_THROWS_AS(ConservedState({0.0, 0.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(PhysParams(-1.0, 1.0, 1.0, 1.0), Error);
}

TEST_CASE("pressure forms agree") {
  const auto p = test::steep_params();
  const PrimitiveState w(1.3, 2.0, 0.4, 0.7);
  const double e = 0.5 * (p.g_perp * w.h + (w.phi_large + w.phi_small) * w.h * w.h);
  CHECK(pressure(w, p) == doctest::Approx(0.5 * p.g_perp * 1.69 + 1.1 * 1.3 * 1.3 * 1.3));
  CHECK(pressure_from_energy(w.h, e, p) == doctest::Approx(pressure(w, p)).epsilon(1e-13));
  CHECK(kernel::pressure(to_conserved(w, p).q, p.g_perp) == doctest::Approx(pressure(w, p)).epsilon(1e-12));
}

TEST_CASE("sound speed forms agree and reject imaginary values") {
  const auto p = test::steep_params();
  const PrimitiveState w(0.8, -1.0, 0.2, 0.3);
  const double e = 0.5 * (p.g_perp * w.h + 0.5 * w.h * w.h);
  CHECK(sound_speed(w, p) == doctest::Approx(std::sqrt(p.g_perp * 0.8 + 3 * 0.5 * 0.64)));
  CHECK(sound_speed_from_energy(w.h, e, p) == doctest::Approx(sound_speed(w, p)).epsilon(1e-13));
  CHECK_THROWS_AS(sound_speed_from_energy(1.0, 0.1 * p.g_perp, p), Error);

  const auto ch = characteristics(w, p);
  CHECK(ch[0] == doctest::Approx(w.u - sound_speed(w, p)));
  CHECK(ch[1] == w.u);
  CHECK(ch[2] == w.u);
  CHECK(ch[3] == doctest::Approx(w.u + sound_speed(w, p)));
}

TEST_CASE("friction blend") {
  const PhysParams p(9.0, 1.0, 0.6, 0.2);
  CHECK(friction_coefficient(0.0, 1.0, p) == doctest::Approx(0.6));
  CHECK(friction_coefficient(1.0, 0.0, p) == doctest::Approx(0.2));
  CHECK(friction_coefficient(1.0, 1.0, p) == doctest::Approx(0.4));
  CHECK(friction_coefficient(1.0, 3.0, p) == doctest::Approx(0.5));
  CHECK(friction_coefficient(0.0, 0.0, p) == 0.6);
}

TEST_CASE("flux and source by hand") {
  const PhysParams p(2.0, 0.5, 0.1, 0.3);
  const PrimitiveState w(2.0, 3.0, 0.25, 0.5);
  const ConservedState q = to_conserved(w, p);
  const double pr = 0.5 * 2.0 * 4.0 + 0.75 * 8.0;
  const auto f = flux(q, p);
  CHECK(f[0] == doctest::Approx(6.0));
  CHECK(f[1] == doctest::Approx(18.0 + pr));
  CHECK(f[2] == doctest::Approx(3.0 * (16.0 + pr)));
  CHECK(f[3] == doctest::Approx(3.0));

  const double c = (0.1 * 0.5 + 0.3 * 0.25) / 0.75;
  const auto s = source(q, p);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(0.5 * 2.0 - c * 9.0));
  CHECK(s[2] == doctest::Approx((0.5 * 2.0 - 0.1 * 9.0) * 3.0));
  CHECK(s[3] == 0.0);

  const auto ks = kernel::source(q.q, p);
  for (int k = 0; k < 4; ++k) CHECK(ks[k] == doctest::Approx(s[k]).epsilon(1e-12));
}

TEST_CASE("entropy production has the sign of C_t - C_f") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(0.1, 2.0), u(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double cf = pos(rng), ct = pos(rng);
    const PhysParams p(9.0, 1.0, cf, ct);
    const PrimitiveState w(pos(rng), u(rng), pos(rng), pos(rng));
    const double rate = entropy_production(w, p);
    CHECK(entropy(w) == doctest::Approx(w.phi_large + w.phi_small));
    if (ct > cf)
      CHECK(rate >= 0.0);
    else
      CHECK(rate <= 0.0);
  }
  const PhysParams p(9.0, 1.0, 1.0, 0.5);
  CHECK(entropy_production(PrimitiveState(1.0, 2.0, 0.0, 0.4), p) == 0.0);
  try {
    entropy_production(PrimitiveState(1.0, 2.0, 0.0, 0.0), p);
    FAIL("expected ZeroEntropy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroEntropy);
  }
}

TEST_CASE("froude numbers") {
  const auto p = test::shallow_params();
  const double h0 = 1.0, phi0 = 0.2;
  const double u0 = std::sqrt(p.g_parallel * h0 / p.c_f);
  const PrimitiveState w(h0, u0, 0.0, phi0);
  CHECK(froude(w, p) == doctest::Approx(froude_endstate(h0, phi0, p)).epsilon(1e-13));
  CHECK(froude_endstate(h0, phi0, p) ==
        doctest::Approx(std::sqrt(p.g_parallel / (p.c_f * (p.g_perp + 3 * h0 * phi0)))));
  CHECK(relerr(froude_endstate(1.0, 0.0, p), std::sqrt(std::tan(std::numbers::pi / 10))) < 1e-13);
}

TEST_CASE("gravity split from inclination") {
  const auto p = PhysParams::from_inclination(10.0, std::numbers::pi / 6, 0.05, 0.04);
  CHECK(p.g_perp == doctest::Approx(5.0 * std::sqrt(3.0)));
  CHECK(p.g_parallel == doctest::Approx(5.0));
}
