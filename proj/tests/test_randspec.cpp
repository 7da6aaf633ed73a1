#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "prodspec/error.hpp"
#include "prodspec/randspec.hpp"

using namespace prodspec;

TEST_SUITE("randspec") {
  TEST_CASE("period-2 spectrum is the union of the pair spectra") {
    const std::vector<double> letters{0.0, 3.0};
    const Period2Model m = Period2Model::separable(letters, {0.0, 1.0});
    const IntervalUnion s = period2_spectrum(m, 1e-13);
    std::vector<Interval> raw;
    for (double a : letters)
      for (double b : letters)
        for (auto [lo, hi] : oracle::band_edges({a, b + 1.0})) raw.push_back({lo, hi});
    const IntervalUnion ref(raw);
    CHECK(hausdorff(s, ref) < 1e-9);
  }

  TEST_CASE("cone certificate off and on the spectrum") {
    const Period2Model m = Period2Model::separable(std::vector<double>{0.0, 6.0}, {0.0, 1.0});
    const IntervalUnion s = period2_spectrum(m, 1e-13);
    for (double E = -4.0; E <= 11.0; E += 0.01) {
      if (s.distance(E) < 1e-6) continue;
      const ConeCertificate c = cone_certificate(m, E);
      CHECK_MESSAGE(c.verdict == !s.contains(E), "E = " << E);
    }
    const ConeCertificate far = cone_certificate(m, 50.0);
    CHECK(far.verdict);
    CHECK(far.all_hyperbolic);
  }

  TEST_CASE("inner approximation contains the period-2 union when p = 2") {
    const std::vector<std::vector<double>> g{{0.0, 1.0}, {3.0, 4.0}};
    const InnerApprox ia = periodic_inner_approx(g, 2, 3, 1e-12);
    const Period2Model m = Period2Model::separable(std::vector<double>{0.0, 3.0}, {0.0, 1.0});
    CHECK(excess(period2_spectrum(m, 1e-12), ia.spectrum) < 1e-9);
    CHECK(ia.words > 4);
    CHECK_THROWS_AS(periodic_inner_approx(g, 2, 13, 1e-12), ValidationError);
  }

  TEST_CASE("counterexample report") {
    const CounterexampleReport r = counterexample_check();
    CHECK(r.contained);
    CHECK(r.disjoint);
    CHECK(r.gap_found);
    CHECK(r.sigma3.size() == 8);
    // Band edges against Eigen.
    const auto edges = oracle::band_edges(r.period6_values);
    std::vector<Interval> raw;
    for (auto [lo, hi] : edges) raw.push_back({lo, hi});
    CHECK(hausdorff(r.sigma6, IntervalUnion(raw)) < 1e-9);
  }

  TEST_CASE("Lyapunov scan is deterministic and thread independent") {
    const std::vector<double> probs{0.5, 0.5};
    const std::vector<std::vector<double>> g{{0.0, 0.5}, {1.0, 1.5}};
    const std::vector<double> E{-1.0, 0.5, 2.0};
    const auto a = lyapunov_positivity_scan(probs, g, 2, E, 20000, 9, Exec::serial);
    const auto b = lyapunov_positivity_scan(probs, g, 2, E, 20000, 9, Exec::parallel);
    for (std::size_t i = 0; i < E.size(); ++i) {
      CHECK(a[i].L == b[i].L);
      CHECK(a[i].L_hat == b[i].L_hat);
      CHECK(a[i].L > 0.0);
      // p-block exponent is p times the per-site one.
      CHECK(a[i].L_hat == doctest::Approx(2 * a[i].L).epsilon(0.1));
    }
    CHECK_THROWS_AS(lyapunov_positivity_scan(std::vector<double>{0.5, 0.6}, g, 2, E, 20000, 1), ValidationError);
    CHECK_THROWS_AS(lyapunov_positivity_scan(probs, g, 2, E, 100, 1), ValidationError);
  }

  TEST_CASE("constant letters give the free exponent") {
    // One letter: a periodic operator, so L = 0 inside the bands and
    // acosh(|Delta|/2)/p outside.
    const std::vector<double> probs{1.0};
    const std::vector<std::vector<double>> g{{0.0, 1.0}};
    const auto s = lyapunov_positivity_scan(probs, g, 2, std::vector<double>{4.0}, 100000, 3);
    const double delta = (4.0 - 1.0) * 4.0 - 2.0;
    CHECK(s[0].L == doctest::Approx(std::acosh(delta / 2) / 2).epsilon(1e-3));
  }
}
