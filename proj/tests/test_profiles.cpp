#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "rgsw/profiles.hpp"
#include "support.hpp"

using namespace rgsw;

namespace {

double relation(double h, double phi, const PhysParams& p) { return 0.5 * p.g_perp * h * h + phi * h * h * h; }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("jump height against bisection") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> h(0.1, 3.0), phi(0.01, 2.0), g(1.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const PhysParams p(g(rng), 1.0, 1.0, 0.5);
    const double hr = h(rng), pl = phi(rng), pr = phi(rng);
    const double target = relation(hr, pr, p);
    const double ref = test::bisect([&](double x) { return relation(x, pl, p) - target; }, 0.0, 100.0);
    CHECK(jump_height(hr, pl, pr, p) == doctest::Approx(ref).epsilon(1e-13));
  }
  const auto p = test::shallow_params();
  CHECK(std::abs(jump_height(1.0, 0.2, 0.5, p) - 1.0292) < 1e-3);
  CHECK(jump_height(1.0, 0.4, 0.4, p) == doctest::Approx(1.0));
  CHECK_THROWS_AS(jump_height(1.0, 0.0, 0.5, p), Error);
}

TEST_CASE("equilibrium speed and endstate check") {
  const auto p = test::shallow_params();
  CHECK(equilibrium_speed(2.0, p) == doctest::Approx(std::sqrt(2.0 * p.g_parallel)));
  auto spec = ProfileSpec::sampled(1.0, 1.1 * equilibrium_speed(1.0, p), 5.0, make_profile_grid(0, 10, 50),
                                   [](double) { return 0.0; });
  try {
    construct_from_delta(spec, p);
    FAIL("expected NonEquilibriumEndstate");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonEquilibriumEndstate);
  }
}

TEST_CASE("profile grid inserts jumps twice") {
  const double jumps[] = {0.35, 0.65};
  const auto x = make_profile_grid(0.0, 1.0, 11, jumps);
  CHECK(x.size() == 15);
  // uniform points within dx/4 of a jump are dropped
  const double close[] = {0.71};
  CHECK(make_profile_grid(0.0, 1.0, 11, close).size() == 12);
  int repeats = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    CHECK(x[i] >= x[i - 1]);
    repeats += x[i] == x[i - 1];
  }
  CHECK(repeats == 2);
  const double outside[] = {2.0};
  CHECK_THROWS_AS(make_profile_grid(0.0, 1.0, 11, outside), Error);
}

TEST_CASE("running integral of a bump against Gauss-Kronrod") {
  const auto p = test::shallow_params();
  const double h0 = 1.0, phi_minus = 4.0;
  const double kappa = relation(h0, phi_minus, p);
  const auto fn = delta::bump(0.02, 3.0, 1.0);
  const auto prof = construct_from_delta(
      ProfileSpec::sampled(h0, equilibrium_speed(h0, p), kappa, make_profile_grid(-5.0, 10.0, 3001), fn), p);
  const auto x = prof.x();
  const auto h = prof.h();
  const auto phi = prof.phi();
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.size(); i += 37) {
    const double from_profile = (relation(h[i], phi[i], p) - kappa) / p.g_parallel;
    const double ref = x[i] <= 2.0 ? 0.0
                                   : boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                         fn, 2.0, std::min(x[i], 4.0), 15, 1e-14);
    worst = std::max(worst, std::abs(from_profile - ref));
  }
  CHECK(worst < 1e-9);
  CHECK(prof.phi_minus() == doctest::Approx(phi_minus));
  CHECK(max_abs(profile_relation_residual(prof)) < 1e-10);
  CHECK(max_abs(differential_residual(prof)) < 1e-6);
}

TEST_CASE("single jump profile") {
  const auto p = test::shallow_params();
  const double c = equilibrium_speed(1.0, p);
  const auto prof = construct_single_jump(1.0, c, 0.2, 0.5, 0.0, p, Domain{-60.0, 5.0, 2601});
  REQUIRE(prof.has_jumps());
  REQUIRE(prof.jump_locations().size() == 1);
  CHECK(prof.jump_locations()[0] == 0.0);
  const std::size_t j = prof.segments()[1].begin;
  CHECK(prof.h()[j - 1] == doctest::Approx(jump_height(1.0, 0.2, 0.5, p)).epsilon(1e-14));
  CHECK(prof.h()[j] == 1.0);
  CHECK(prof.phi()[j - 1] == 0.2);
  CHECK(prof.phi()[j] == 0.5);
  CHECK(max_abs(jump_residuals(prof)) < 1e-13);
  CHECK(prof.h().front() == doctest::Approx(1.0).epsilon(1e-6));

  // h' = g^ (h - h0) / (g' h + 3 phi_L h^2) is the differentiated relation with phi = phi_L.
  CHECK(max_abs(differential_residual(prof)) < 1e-5);

  // Rebuilding phi from the same height deviations reproduces it.
  std::vector<double> d(prof.size());
  for (std::size_t i = 0; i < prof.size(); ++i) d[i] = prof.h()[i] - 1.0;
  ProfileSpec spec{1.0, c, relation(1.0, 0.2, p), {prof.x().begin(), prof.x().end()}, d, std::nullopt};
  const auto again = construct_from_delta(spec, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.size(); ++i) worst = std::max(worst, std::abs(again.phi()[i] - prof.phi()[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("left endstate enstrophy tunes the right one") {
  const auto p = test::shallow_params();
  const double h0 = 1.0;
  const auto fn = delta::gaussian(0.05, 0.0, 1.0);
  double prev = -1.0;
  for (double pm : {0.5, 1.0, 2.0, 4.0}) {
    const auto prof = construct_from_delta(
        ProfileSpec::sampled(h0, equilibrium_speed(h0, p), relation(h0, pm, p), make_profile_grid(-10, 10, 801), fn), p);
    // phi_+ - phi_- = g^ int delta / h0^3 regardless of phi_-
    CHECK(prof.phi_plus() - prof.phi_minus() == doctest::Approx(p.g_parallel * 0.05 * std::sqrt(std::numbers::pi)).epsilon(1e-6));
    CHECK(prof.phi_plus() > prev);
    prev = prof.phi_plus();
  }
}

TEST_CASE("negative enstrophy is rejected") {
  const auto p = test::shallow_params();
  const auto spec = ProfileSpec::sampled(1.0, equilibrium_speed(1.0, p), relation(1.0, 0.01, p),
                                         make_profile_grid(-3, 3, 201), delta::bump(-0.3, 0.0, 2.0));
  try {
    construct_from_delta(spec, p);
    FAIL("expected NegativeEnstrophy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NegativeEnstrophy);
  }
}

TEST_CASE("periodic profiles need zero mean") {
  const auto p = test::shallow_params();
  const double c = equilibrium_speed(1.0, p);
  auto spec = ProfileSpec::sampled(1.0, c, relation(1.0, 1.0, p), make_profile_grid(0.0, 4.0, 401), delta::sine(0.05, 4.0));
  spec.period = 4.0;
  const auto prof = construct_periodic(spec, p);
  CHECK(prof.periodic());
  CHECK(prof.phi().back() == doctest::Approx(prof.phi().front()).epsilon(1e-10));

  auto shifted = ProfileSpec::sampled(1.0, c, relation(1.0, 1.0, p), make_profile_grid(0.0, 4.0, 401),
                                      [](double x) { return 0.01 + 0.05 * std::sin(x * std::numbers::pi / 2); });
  shifted.period = 4.0;
  try {
    construct_periodic(shifted, p);
    FAIL("expected NonZeroMean");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonZeroMean);
  }
}

TEST_CASE("mollified profile is smooth and keeps the far field") {
  const auto p = test::shallow_params();
  const double c = equilibrium_speed(1.0, p);
  const auto prof = construct_single_jump(1.0, c, 0.2, 0.5, 0.0, p, Domain{-60.0, 5.0, 1301});
  const auto m = mollify(prof, 0.2);
  CHECK_FALSE(m.has_jumps());
  CHECK(m.phi_minus() == doctest::Approx(prof.phi_minus()).epsilon(1e-8));
  CHECK(m.phi().back() == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(max_abs(profile_relation_residual(m)) < 1e-9);
  CHECK(m.h_at(0, -30.0) == doctest::Approx(prof.h_at(0, -30.0)).epsilon(1e-8));
}

TEST_CASE("decay estimate sees the exponential tail") {
  const auto p = test::shallow_params();
  const double c = equilibrium_speed(1.0, p);
  const auto prof = construct_single_jump(1.0, c, 0.2, 0.5, 0.0, p, Domain{-40.0, 5.0, 1801});
  const auto est = estimate_decay(prof);
  // h - h0 ~ exp(g^ x / (g' h0 + 3 phi_L h0^2)) toward -infinity
  CHECK(est.left_rate == doctest::Approx(p.g_parallel / (p.g_perp + 0.6)).epsilon(1e-2));
}

TEST_CASE("profile csv") {
  const auto p = test::shallow_params();
  const auto prof = construct_single_jump(1.0, equilibrium_speed(1.0, p), 0.2, 0.5, 0.0, p, Domain{-5.0, 5.0, 11});
  std::ostringstream os;
  write_profile_csv(os, prof);
  const auto s = os.str();
  CHECK(s.rfind("# jumps:", 0) == 0);
  CHECK(s.find("\nx,h,phi\n") != std::string::npos);
}
