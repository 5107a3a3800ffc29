#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rgsw/spectral.hpp"
#include "support.hpp"

using namespace rgsw;

namespace {

double kappa_of(double h0, double phi, const PhysParams& p) { return 0.5 * p.g_perp * h0 * h0 + phi * h0 * h0 * h0; }

WaveProfile constant_profile(const PhysParams& p, double phi0, double lo = -20.0, double hi = 20.0, std::size_t n = 401) {
  return construct_from_delta(ProfileSpec::sampled(1.0, equilibrium_speed(1.0, p), kappa_of(1.0, phi0, p),
                                                   make_profile_grid(lo, hi, n), [](double) { return 0.0; }),
                              p);
}

WaveProfile bump_profile(const PhysParams& p, std::size_t n = 2001) {
  return construct_from_delta(ProfileSpec::sampled(1.0, equilibrium_speed(1.0, p), kappa_of(1.0, 4.0, p),
                                                   make_profile_grid(-20.0, 20.0, n), delta::bump(0.02, 3.0, 1.0)),
                              p);
}

WaveProfile gaussian_profile(const PhysParams& p, std::size_t n = 2001) {
  return construct_from_delta(ProfileSpec::sampled(1.0, equilibrium_speed(1.0, p), kappa_of(1.0, 4.0, p),
                                                   make_profile_grid(-20.0, 20.0, n), delta::gaussian(0.02, 3.0, 1.0)),
                              p);
}

WaveProfile jump_profile(std::size_t n = 4000) {
  const auto p = test::shallow_params();
  return construct_single_jump(1.0, equilibrium_speed(1.0, p), 0.2, 0.5, 0.0, p, Domain{-100.0, 5.0, n});
}

using Jac = Eigen::Matrix4d;

// Central-difference Jacobian of a map of (h, U, Phi, phi).
template <class F>
Jac jacobian(F&& f, const Vec4& w) {
  Jac j;
  for (int k = 0; k < 4; ++k) {
    const double d = 1e-6 * std::max(1.0, std::abs(w[k]));
    Vec4 a = w, b = w;
    a[k] += d;
    b[k] -= d;
    const Vec4 fa = f(a), fb = f(b);
    for (int r = 0; r < 4; ++r) j(r, k) = (fa[r] - fb[r]) / (2 * d);
  }
  return j;
}

}  // namespace

TEST_CASE("linearized matrices are Jacobians of the balance law") {
  const auto p = test::steep_params();
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> h(0.3, 2.0), s(0.1, 2.0), c(0.5, 8.0);
  for (int k = 0; k < 20; ++k) {
    const double hb = h(rng), pb = s(rng), cb = c(rng);
    const Vec4 w{hb, cb, 0.0, pb};
    auto q = [&](const Vec4& v) { return to_conserved(PrimitiveState(v[0], v[1], v[2], v[3]), p).q; };
    auto f = [&](const Vec4& v) { return flux(ConservedState(q(v)), p); };
    // Phi = 0 is the admissible boundary, so the friction blend is probed from Phi > 0.
    auto src = [&](const Vec4& v) { return source(ConservedState(q(v)), p); };
    const auto sys = linearized_matrices(hb, pb, cb, p);
    const Jac a0 = jacobian(q, w), a1 = jacobian(f, w);
    CHECK((sys.a0 - a0).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, a0.cwiseAbs().maxCoeff()));
    CHECK((sys.a1 - a1).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, a1.cwiseAbs().maxCoeff()));
    Vec4 wp = w;
    wp[2] = 1e-5;
    Jac e;
    for (int kk = 0; kk < 4; ++kk) {
      Vec4 a = wp;
      a[kk] += 1e-7;
      const Vec4 fa = src(a), fb = src(wp);
      for (int r = 0; r < 4; ++r) e(r, kk) = (fa[r] - fb[r]) / 1e-7;
    }
    CHECK((sys.e - e).cwiseAbs().maxCoeff() < 1e-3 * std::max(1.0, e.cwiseAbs().maxCoeff()));
    CHECK((sys.a - (sys.a1 - cb * sys.a0)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("left kernels annihilate A") {
  const auto p = test::shallow_params();
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> h(0.3, 2.0), s(0.1, 2.0), c(0.5, 8.0);
  for (int k = 0; k < 50; ++k) {
    const double hb = h(rng), pb = s(rng), cb = c(rng);
    const auto sys = linearized_matrices(hb, pb, cb, p);
    const double scale = sys.a.cwiseAbs().maxCoeff();
    CHECK((left_kernel_1(hb, pb) * sys.a).cwiseAbs().maxCoeff() < 1e-13 * scale * std::max(1.0, pb));
    const auto l2 = left_kernel_2(hb, pb, cb, p);
    CHECK((l2 * sys.a).cwiseAbs().maxCoeff() < 1e-13 * scale * l2.cwiseAbs().maxCoeff());
    Eigen::FullPivLU<Eigen::Matrix4d> lu(sys.a);
    lu.setThreshold(1e-10);
    CHECK(lu.rank() == 2);
  }
}

TEST_CASE("reduced coefficients on a smooth wave") {
  const auto p = test::shallow_params();
  const auto prof = gaussian_profile(p);
  const auto r = reduced_coefficients(prof);
  double f4 = 0.0;
  for (double v : r.f4) f4 = std::max(f4, std::abs(v));
  CHECK(f4 < 1e-6);
  CHECK(r.f1_minus == doctest::Approx(-p.g_parallel / (p.g_perp + 12.0)));
  CHECK(r.f1_minus < 0.0);
  CHECK(r.f1.front() == doctest::Approx(r.f1_minus).epsilon(1e-8));
  CHECK(r.f1.back() == doctest::Approx(r.f1_plus).epsilon(1e-6));
  const auto d = check_reduction(prof);
  CHECK(d.min_rank == 2);
  CHECK(d.max_rank == 2);
}

TEST_CASE("coarse sampling of a steep wave is refused") {
  const auto p = test::shallow_params();
  const auto prof = construct_from_delta(
      ProfileSpec::sampled(1.0, equilibrium_speed(1.0, p), kappa_of(1.0, 4.0, p), make_profile_grid(-5.0, 5.0, 21),
                           delta::bump(0.2, 0.0, 1.0)),
      p);
  try {
    reduced_coefficients(prof);
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::GridTooCoarse);
  }
}

TEST_CASE("dispersion roots satisfy Vieta") {
  const auto p = test::steep_params();
  const double h0 = 0.8, phi0 = 0.3;
  const double c = equilibrium_speed(h0, p), k = p.g_perp + 3 * h0 * phi0;
  for (double xi : {-50.0, -3.0, 0.0, 0.5, 7.0}) {
    const auto r = dispersion_roots(xi, h0, phi0, p);
    const cplx sum = r[0] + r[1], prod = r[0] * r[1];
    CHECK(std::abs(sum + 2 * p.c_f * c / h0) < 1e-12 * (1 + std::abs(xi)));
    CHECK(std::abs(prod - cplx(xi * xi * h0 * k, xi * p.g_parallel)) < 1e-10 * (1 + xi * xi));
  }
}

TEST_CASE("hydrodynamic stability agrees with the dispersion relation") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.05, 3.0), g(0.2, 10.0), cf(0.005, 2.0);
  for (int k = 0; k < 100; ++k) {
    const PhysParams p(g(rng), g(rng), cf(rng), 0.1);
    const double h0 = u(rng), phi0 = u(rng);
    double worst = -1e300;
    for (int i = -400; i <= 400; ++i) {
      if (i == 0) continue;
      const auto r = dispersion_roots(i * 0.25, h0, phi0, p);
      worst = std::max({worst, r[0].real(), r[1].real()});
    }
    CHECK(hydro_stable(h0, phi0, p) == (froude_endstate(h0, phi0, p) < 2.0));
    CHECK(hydro_stable(h0, phi0, p) == (worst < 0.0));
  }
}

TEST_CASE("spatial eigenvalues solve their quadratic") {
  const auto p = test::shallow_params();
  const double h0 = 1.0, phi0 = 0.4;
  const double c = equilibrium_speed(h0, p), k = p.g_perp + 3 * h0 * phi0;
  for (cplx l : {cplx(0.5, 0.0), cplx(1.0, 3.0), cplx(0.01, -2.0), cplx(4.0, 9.0)}) {
    const auto s = spatial_eigenvalues(l, phi0, h0, p);
    CHECK(s.gamma1.real() >= s.gamma2.real());
    for (cplx g : {s.gamma1, s.gamma2}) {
      const cplx res = h0 * k * g * g - p.g_parallel * g - (2 * p.c_f * c * l + h0 * l * l) / h0;
      CHECK(std::abs(res) < 1e-10 * (1 + std::norm(l)));
    }
  }
  // Radicand g^2 + 4 K (2 C_f c l + h0 l^2) is negative real for real l in (-2 C_f c / h0, 0) once small enough.
  const double lc = -p.c_f * c / h0;
  try {
    spatial_eigenvalues(cplx(lc, 0.0), phi0, h0, p);
    FAIL("expected BranchCut");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BranchCut);
  }
  CHECK_NOTHROW(spatial_eigenvalues(cplx(lc, 0.0), phi0, h0, p, true));
}

TEST_CASE("verdict table") {
  const auto p2 = test::shallow_params();
  const auto shallow = mollify(jump_profile(), 0.1);
  const auto r2 = stability_verdict(shallow, StabilityMode::standard);
  CHECK(r2.stable);
  REQUIRE(r2.strongly_stable.has_value());
  CHECK(*r2.strongly_stable);
  CHECK(r2.froude_minus < 2.0);

  const auto p4 = test::steep_params();
  const auto steep = mollify(construct_single_jump(1.0, equilibrium_speed(1.0, p4), 0.3, 0.1, 0.0, p4,
                                                  Domain{-200.0, 5.0, 8000}),
                            0.1);
  CHECK_FALSE(stability_verdict(steep, StabilityMode::standard).stable);
  CHECK_FALSE(stability_verdict(steep, StabilityMode::convective).stable);
  const auto ext = stability_verdict(steep, StabilityMode::extended_convective);
  CHECK(ext.stable);
  REQUIRE(ext.strongly_stable.has_value());
  CHECK(*ext.strongly_stable);

  const auto disc = stability_verdict(jump_profile(), StabilityMode::standard);
  CHECK(disc.discontinuous);
  CHECK_FALSE(disc.strongly_stable.has_value());
  (void)p2;
}

TEST_CASE("periodic profiles get no verdict") {
  const auto p = test::shallow_params();
  auto spec = ProfileSpec::sampled(1.0, equilibrium_speed(1.0, p), kappa_of(1.0, 1.0, p),
                                   make_profile_grid(0.0, 4.0, 201), delta::sine(0.05, 4.0));
  spec.period = 4.0;
  try {
    stability_verdict(construct_periodic(spec, p), StabilityMode::standard);
    FAIL("expected NotAsymptoticallyConstant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAsymptoticallyConstant);
  }
}

TEST_CASE("Evans function of a constant state") {
  const auto p = test::shallow_params();
  const EvansFunction ev(constant_profile(p, 0.5));
  const double k = p.g_perp + 1.5, c = equilibrium_speed(1.0, p);
  // det[W-, W+] = -h0 sqrt(g^2 + 4 K (h0 l^2 + 2 C_f c l)) against the normalization
  for (cplx l : {cplx(0.3, 0.0), cplx(1.0, 2.0), cplx(4.0, -7.0)}) {
    const cplx r = p.g_parallel * p.g_parallel + 4.0 * k * (l * l + 2.0 * p.c_f * c * l);
    const cplx expect = std::sqrt(r) / (2.0 * std::sqrt(k) * (l + p.c_f * c));
    CHECK(std::abs(ev(l) - expect) < 1e-8);
  }
  CHECK(std::abs(ev(cplx(200.0, 100.0)) - 1.0) < 1e-4);
}

TEST_CASE("Evans function is real on the real axis") {
  const auto p = test::shallow_params();
  const EvansFunction ev(bump_profile(p));
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> re(1e-3, 5.0), im(-10.0, 10.0);
  for (int k = 0; k < 10; ++k) {
    const cplx l(re(rng), im(rng));
    const cplx a = ev(l), b = ev(std::conj(l));
    CHECK(std::abs(b - std::conj(a)) <= 1e-8 * std::abs(a));
  }
  CHECK(std::abs(ev(cplx(0.7, 0.0)).imag()) < 1e-10);
}

TEST_CASE("no unstable eigenvalues for stable waves") {
  const auto p = test::shallow_params();
  CHECK(count_unstable(bump_profile(p), ContourSpec{}) == 0);
  const auto r = count_unstable_detailed(jump_profile(), ContourSpec{});
  CHECK(r.winding == 0);
  CHECK(std::abs(r.raw_winding) < 0.05);
}

TEST_CASE("constant unstable endstate has no consistent splitting") {
  const auto p = test::steep_params();
  const auto prof = constant_profile(p, 0.1, -50.0, 5.0, 1101);
  try {
    count_unstable(prof, ContourSpec{});
    FAIL("expected SplittingFailure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SplittingFailure);
  }
}

TEST_CASE("eigenfunction reconstruction and Liouville form") {
  const auto p = test::shallow_params();
  const auto prof = gaussian_profile(p, 4001);
  const cplx l(0.8, 1.5);
  CHECK(liouville_residual(prof, l) < 1e-6);
  CHECK(liouville_residual(bump_profile(p, 8001), l) < 1e-6);
  const auto sol = solve_w_system(prof, l);
  const auto ef = reconstruct_eigenfunction(prof, l, sol);
  for (const auto& v : ef.phi_large) CHECK(v == cplx(0.0));
  CHECK(mateval_residual(prof, ef) < 1e-4);
  try {
    reconstruct_eigenfunction(prof, cplx(0.0), sol);
    FAIL("expected LambdaZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LambdaZero);
  }
}

TEST_CASE("kernel modes solve the zero-eigenvalue system") {
  const auto p = test::shallow_params();
  const auto prof = bump_profile(p);
  const auto fn = delta::gaussian(0.1, 0.0, 2.0);
  std::vector<double> seed;
  for (double x : prof.x()) seed.push_back(fn(x));
  CHECK(kernel_residual(prof, kernel_modes(prof, seed)) < 1e-6);
  CHECK(kernel_residual(prof, kernel_modes(prof, seed, 0.3)) < 1e-6);
}

TEST_CASE("mollification converges at first order") {
  const auto disc = jump_profile();
  EvansOptions opt;
  const EvansFunction ref(disc, opt);
  opt.match_point = ref.match_point();
  const cplx l(1.0, 2.0);
  const cplx d = ref(l);
  double prev = 0.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    const double err = std::abs(EvansFunction(mollify(disc, eps), opt)(l) - d);
    if (prev > 0.0) CHECK(std::log2(prev / err) > 0.8);
    prev = err;
  }
}
