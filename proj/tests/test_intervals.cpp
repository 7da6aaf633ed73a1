#include <doctest.h>

#include <limits>
#include <random>

#include "oracles.hpp"
#include "prodspec/error.hpp"
#include "prodspec/intervals.hpp"

using namespace prodspec;

TEST_SUITE("intervals") {
  TEST_CASE("union normal form") {
    const IntervalUnion u{{3, 4}, {0, 1}, {0.5, 2}, {4 + 1e-10, 5}};
    REQUIRE(u.size() == 2);
    CHECK(u[0] == Interval{0, 2});
    CHECK(u[1] == Interval{3, 5});
    CHECK(u.measure() == doctest::Approx(4.0));
    CHECK(u.contains(1.5));
    CHECK_FALSE(u.contains(2.5));
    CHECK(u.distance(2.4) == doctest::Approx(0.4));
    CHECK(u.distance(-1) == doctest::Approx(1.0));
    CHECK(u.hull() == Interval{0, 5});
    CHECK(u.intersects({2.5, 3.0}));
    CHECK_FALSE(u.intersects({2.1, 2.9}));
    CHECK_THROWS_AS(IntervalUnion({{1, 0}}), ValidationError);
    CHECK_THROWS_AS(IntervalUnion({{std::nan(""), 0}}), ValidationError);
    CHECK(IntervalUnion().distance(0) == std::numeric_limits<double>::infinity());
  }

  TEST_CASE("gaps, intersection, excess") {
    const IntervalUnion a{{0, 1}, {2, 3}};
    CHECK(a.gaps({-1, 4}) == IntervalUnion{{-1, 0}, {1, 2}, {3, 4}});
    CHECK(a.gaps({0, 3}) == IntervalUnion{{1, 2}});
    CHECK(a.intersect(IntervalUnion{{0.5, 2.5}}) == IntervalUnion{{0.5, 1}, {2, 2.5}});
    const IntervalUnion b{{0, 3}};
    CHECK(excess(a, b) == 0.0);
    CHECK(excess(b, a) == doctest::Approx(0.5));  // midpoint of the hole
    CHECK(hausdorff(a, b) == doctest::Approx(0.5));
    CHECK(excess(IntervalUnion(), a) == 0.0);
    CHECK(excess(a, IntervalUnion()) == std::numeric_limits<double>::infinity());
    CHECK(union_of(a, IntervalUnion{{1, 2}}) == b);
  }

  TEST_CASE("roots of a known cubic") {
    const EnergyPoly E = EnergyPoly::variable();
    const EnergyPoly p = (E - EnergyPoly(1.0)) * (E - EnergyPoly(2.0)) * (E + EnergyPoly(3.0));
    const auto r = real_roots(p, -10, 10);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(-3.0));
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(r[2] == doctest::Approx(2.0));
  }

  TEST_CASE("period-2 discriminant against the quadratic formula") {
    // (E - a)(E - b) - 2 = +-2
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0, 1}, {0, 3}, {-1, 2}, {0.5, 0.5}}) {
      const EnergyPoly d({a * b - 2.0, -(a + b), 1.0});
      const BandSpectrum bs = analyze_discriminant(d, 1e-13);
      const auto outer = oracle::quadratic_roots(-(a + b), a * b - 4.0);
      const auto inner = oracle::quadratic_roots(-(a + b), a * b);
      REQUIRE(outer.size() == 2);
      REQUIRE(inner.size() == 2);
      if (a == b) {
        REQUIRE(bs.bands.size() == 1);
        REQUIRE(bs.touching_points.size() == 1);
        CHECK(bs.touching_points[0] == doctest::Approx(a).epsilon(1e-6));
      } else {
        REQUIRE(bs.bands.size() == 2);
        CHECK(bs.bands[0].lo == doctest::Approx(outer[0]).epsilon(1e-11));
        CHECK(bs.bands[0].hi == doctest::Approx(inner[0]).epsilon(1e-11));
        CHECK(bs.bands[1].lo == doctest::Approx(inner[1]).epsilon(1e-11));
        CHECK(bs.bands[1].hi == doctest::Approx(outer[1]).epsilon(1e-11));
      }
    }
    CHECK_THROWS_AS(analyze_discriminant(EnergyPoly(1.0), 1e-12), ValidationError);
  }

  TEST_CASE("periodic bands against Eigen band edges") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> v(-2, 2);
    for (int t = 0; t < 60; ++t) {
      std::vector<double> V(static_cast<std::size_t>(1 + t % 14));
      for (double& x : V) x = v(gen);
      const BandSpectrum bs = periodic_bands(V, 1e-13);
      const auto edges = oracle::band_edges(V);
      CHECK(bs.raw_band_count == static_cast<int>(V.size()));
      // Oracle bands merged the same way the union merges them.
      std::vector<Interval> raw;
      for (auto [lo, hi] : edges) raw.push_back({lo, hi});
      const IntervalUnion ref(raw);
      REQUIRE(bs.bands.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(bs.bands[i].lo == doctest::Approx(ref[i].lo).epsilon(1e-9).scale(1.0));
        CHECK(bs.bands[i].hi == doctest::Approx(ref[i].hi).epsilon(1e-9).scale(1.0));
      }
      // The polynomial route agrees at small degree.
      if (V.size() <= 8) CHECK(hausdorff(spectrum_from_discriminant(word_monodromy_poly(V).trace(), 1e-13), bs.bands) < 1e-8);
    }
  }

  TEST_CASE("constant potential and touching bands") {
    const BandSpectrum one = periodic_bands(std::vector<double>{0.0}, 1e-12);
    CHECK(one.bands == IntervalUnion{{-2, 2}});
    // Period 3 with equal values: three bands that touch at two points.
    const BandSpectrum three = periodic_bands(std::vector<double>{0.0, 0.0, 0.0}, 1e-13);
    REQUIRE(three.bands.size() == 1);
    CHECK(three.bands[0].lo == doctest::Approx(-2.0));
    CHECK(three.bands[0].hi == doctest::Approx(2.0));
    CHECK(three.touching_points.size() == 2);
  }

  TEST_CASE("Sturm eigenvalues against Eigen") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> v(-3, 3);
    std::vector<double> d(40);
    for (double& x : d) x = v(gen);
    const auto ev = jacobi_eigenvalues(d, 1e-13);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(40, 40);
    for (int i = 0; i < 40; ++i) H(i, i) = d[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < 40; ++i) H(i, i + 1) = H(i + 1, i) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    for (int i = 0; i < 40; ++i) CHECK(ev[static_cast<std::size_t>(i)] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));
  }

  TEST_CASE("discriminant value against the oracle trace") {
    const std::vector<double> V{0.2, -1.0, 0.7, 1.9};
    for (double E : {-3.0, -1.0, 0.0, 0.5, 2.5}) CHECK(discriminant_value(V, E) == doctest::Approx(static_cast<double>(oracle::trace(V, E))));
    // 2^900 is still a double; 2^5000 is clamped.
    CHECK(discriminant_value(std::vector<double>(900, 0.0), 2.5) ==
          doctest::Approx(static_cast<double>(oracle::trace(std::vector<double>(900, 0.0), 2.5))).epsilon(1e-9));
    CHECK(discriminant_value(std::vector<double>(5000, 0.0), 2.5) == 1e300);
  }

  TEST_CASE("serial and parallel band computations agree bitwise") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> v(0, 3);
    std::vector<double> V(300);
    for (double& x : V) x = v(gen);
    const BandSpectrum s = periodic_bands(V, 1e-12, Exec::serial);
    const BandSpectrum p = periodic_bands(V, 1e-12, Exec::parallel);
    CHECK(s.bands == p.bands);
    CHECK(s.touching_points == p.touching_points);
  }
}
