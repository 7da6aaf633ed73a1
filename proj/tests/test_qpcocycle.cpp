#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "prodspec/error.hpp"
#include "prodspec/qpcocycle.hpp"

using namespace prodspec;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx direct_sum(const std::vector<std::pair<int, cplx>>& modes, cplx z) {
  cplx s = 0.0;
  for (auto [m, c] : modes) s += c * std::exp(cplx(0, kTwoPi * m) * z);
  return s;
}

}  // namespace

TEST_SUITE("qpcocycle") {
  TEST_CASE("trigonometric polynomial evaluation") {
    const std::vector<std::pair<int, cplx>> modes{{0, 0.3}, {1, cplx(0.5, 0.2)}, {-1, cplx(0.5, -0.2)},
                                                  {3, cplx(-0.1, 0.4)}, {-3, cplx(-0.1, -0.4)}};
    const TrigPoly t = TrigPoly::from_modes({{0, 0.3}, {1, cplx(0.5, 0.2)}, {3, cplx(-0.1, 0.4)}});
    CHECK(t.degree() == 3);
    CHECK(t.coefficient(-1) == cplx(0.5, -0.2));
    for (cplx z : {cplx(0.1, 0.0), cplx(0.37, 0.2), cplx(-0.8, 1.1)}) {
      const cplx a = t(z), b = direct_sum(modes, z);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
    CHECK(t(0.37) == doctest::Approx(direct_sum(modes, 0.37).real()));
    CHECK_THROWS_AS(TrigPoly::from_modes({{1, 1.0}, {-1, 2.0}}), ValidationError);
    CHECK(TrigPoly::cosine(2.0, 0.5)(0.0) == doctest::Approx(4.5));
  }

  TEST_CASE("p-step matrix equals p one-step matrices") {
    const std::vector<double> bg{0.0, 0.5, -0.3};
    const PStepCocycle c(amo_with_background(2.0, bg), ContinuedFraction::golden(30), 0.4);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 100; ++t) {
      const double x = u(gen), eps = 0.3 * u(gen);
      ComplexMat2 P = ComplexMat2::identity();
      cplx pt(x, eps);
      for (int k = 0; k < c.p(); ++k) {
        P = one_step_matrix(c, pt, k) * P;
        pt += c.alpha;
      }
      const ComplexMat2 B = pstep_matrix(c, x, eps);
      const double scale = std::max({1.0, std::abs(P.a11), std::abs(P.a12), std::abs(P.a21), std::abs(P.a22)});
      CHECK(std::abs(B.a11 - P.a11) / scale < 1e-12);
      CHECK(std::abs(B.a12 - P.a12) / scale < 1e-12);
      CHECK(std::abs(B.a21 - P.a21) / scale < 1e-12);
      CHECK(std::abs(B.a22 - P.a22) / scale < 1e-12);
    }
  }

  TEST_CASE("almost Mathieu exponent in the supercritical regime") {
    // L = log lambda on the spectrum for lambda > 1; E = 0 lies in it for the
    // golden mean.
    const PStepCocycle c(amo_with_background(3.0, std::vector<double>{0.0}), ContinuedFraction::golden(40), 0.0);
    CHECK(lyapunov(c, 0.0, 50000, 1000, 0.1234) == doctest::Approx(std::log(3.0)).epsilon(0.01));
    CHECK(lyapunov_one_step(c, 0.0, 50000, 1000, 0.1234) == doctest::Approx(std::log(3.0)).epsilon(0.01));
    CHECK_THROWS_AS(lyapunov(c, 0.0, 10, 0, 0.0), ValidationError);
  }

  TEST_CASE("acceleration profile") {
    const TrigPolyTuple f = amo_with_background(5.0, std::vector<double>{0.0, 0.5});
    // An energy in the middle of the widest approximant band.
    const IntervalUnion s = rational_approx_spectrum(f, Convergent{21, 34}, 1e-12, 16);
    const Interval widest = *std::max_element(s.intervals().begin(), s.intervals().end(),
                                              [](const Interval& a, const Interval& b) { return a.length() < b.length(); });
    const PStepCocycle c(f, ContinuedFraction::golden(40), 0.5 * (widest.lo + widest.hi));
    const std::vector<double> eps{0.0, 0.05, 0.1, 0.15, 0.2};
    const LyapunovProfile a = acceleration_profile(c, eps, 20000, 500, 0.1234, Exec::serial);
    const LyapunovProfile b = acceleration_profile(c, eps, 20000, 500, 0.1234, Exec::parallel);
    CHECK(a.L_values == b.L_values);
    REQUIRE(a.accelerations.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(a.accelerations[i] == doctest::Approx(2.0).epsilon(0.05));
      CHECK(a.accelerations_per_site[i] == doctest::Approx(1.0).epsilon(0.05));
      CHECK(a.integer_distance[i] < 0.05);
    }
    CHECK(a.convexity_violations.empty());
    CHECK_THROWS_AS(acceleration_profile(c, std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5}, 2000), ValidationError);
    CHECK_THROWS_AS(acceleration_profile(c, std::vector<double>{0.0, 0.2, 0.1, 0.4, 0.5}, 2000), ValidationError);
  }

  TEST_CASE("Herman radius of the almost Mathieu operator at E = 0") {
    for (double lam : {0.5, 1.0, 2.0}) {
      const HermanRadius h = herman_radius(amo_with_background(lam, std::vector<double>{0.0}), 0.0, 1e-12);
      CHECK_FALSE(h.degenerate);
      CHECK(h.value == doctest::Approx(std::asinh(1.0 / lam) / kTwoPi).epsilon(1e-9));
    }
    TrigPolyTuple flat;
    flat.components = {TrigPoly::constant(0.5)};
    CHECK(herman_radius(flat, 0.0, 1e-9).degenerate);
    CHECK(herman_radius(flat, 10.0, 1e-9).value == 0.0);
  }

  TEST_CASE("rational approximant spectrum against Eigen at each phase") {
    const TrigPolyTuple f = amo_with_background(1.0, std::vector<double>{0.0, 0.3});
    const Convergent pq{5, 8};
    const int phases = 4;
    const IntervalUnion s = rational_approx_spectrum(f, pq, 1e-13, phases);
    std::vector<Interval> raw;
    for (int j = 0; j < phases; ++j) {
      std::vector<double> V;
      for (int n = 0; n < 16; ++n) {
        const double x = static_cast<double>(j) / phases + static_cast<double>(n * 5 % 8) / 8.0;
        V.push_back(2.0 * std::cos(kTwoPi * x) + (n % 2 == 0 ? 0.0 : 0.3));
      }
      for (auto [lo, hi] : oracle::band_edges(V)) raw.push_back({lo, hi});
    }
    CHECK(hausdorff(s, IntervalUnion(raw)) < 1e-9);
    CHECK_THROWS_AS(rational_approx_spectrum(f, Convergent{987, 1597}, 1e-12), ValidationError);
  }

  TEST_CASE("classification of simple regimes") {
    const ContinuedFraction cf = ContinuedFraction::golden(40);
    ClassifyConfig cfg;
    cfg.N = 5000;
    cfg.max_q = 34;
    cfg.phases = 16;
    const TrigPolyTuple strong = amo_with_background(5.0, std::vector<double>{0.0, 0.5});
    const double far = 3.0 * strong.sup_norm_bound();
    CHECK(classify(PStepCocycle(strong, cf, far), cf, cfg).verdict == Verdict::uniformly_hyperbolic);

    TrigPolyTuple flat;
    flat.components = {TrigPoly::constant(0.0), TrigPoly::cosine(1.0)};
    const Classification u = classify(PStepCocycle(flat, cf, 0.0), cf, cfg);
    CHECK(u.verdict == Verdict::undetermined);
    CHECK_FALSE(u.reason.empty());
    CHECK(to_string(Verdict::critical) == "critical");
  }
}
