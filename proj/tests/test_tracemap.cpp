#include <doctest.h>

#include "oracles.hpp"
#include "prodspec/error.hpp"
#include "prodspec/prodsys.hpp"
#include "prodspec/tracemap.hpp"

using namespace prodspec;

namespace {

// Values of w over one period with 1-based position m carrying residue m mod p.
std::vector<double> oracle_values(const std::vector<int>& w, const std::vector<double>& letters,
                                  const std::vector<double>& bg) {
  std::vector<double> v;
  for (std::size_t i = 0; i < w.size(); ++i) v.push_back(letters[static_cast<std::size_t>(w[i])] + bg[(i + 1) % bg.size()]);
  return v;
}

}  // namespace

TEST_SUITE("tracemap") {
  TEST_CASE("orbit traces equal direct traces") {
    const std::vector<double> letters{0.0, 1.0};
    for (const std::vector<double>& bg : std::vector<std::vector<double>>{{0.0}, {0.0, 0.7}}) {
      const CodingSequence s = CodingSequence::alternating_binary(std::vector<int>{2, 3}, 12);
      std::vector<std::pair<int, int>> raw;
      for (const auto& e : s.entries()) raw.emplace_back(e.letter, e.n);
      const DecoratedSampling dec = DecoratedSampling::separable(letters, bg);
      for (double E : {-1.7, -0.3, 0.4, 1.1, 2.6}) {
        const TraceOrbit o = trace_orbit(s, dec, E, 7);
        for (const TracePair& tp : o.pairs) {
          if (tp.saturated) continue;
          auto w = oracle::toeplitz(raw, tp.k);
          const long double x = oracle::trace(oracle_values(w, letters, bg), E);
          w.back() = raw[static_cast<std::size_t>(tp.k)].first;
          const long double y = oracle::trace(oracle_values(w, letters, bg), E);
          CHECK(std::fabs(tp.x - x) / std::max(1.0L, std::fabs(x)) < 1e-9);
          CHECK(std::fabs(tp.y - y) / std::max(1.0L, std::fabs(y)) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("seed level follows commensurability") {
    const CodingSequence s = CodingSequence::alternating_binary(std::vector<int>{2}, 12);
    const std::vector<double> letters{0.0, 1.0};
    CHECK(trace_orbit(s, DecoratedSampling::separable(letters, std::vector<double>{0.0}), 0.1, 6).k0 == 1);
    CHECK(trace_orbit(s, DecoratedSampling::separable(letters, std::vector<double>{0, 1, 2, 3}), 0.1, 6).k0 == 3);
    const DecoratedSampling three = DecoratedSampling::separable(letters, std::vector<double>{0, 1, 2});
    CHECK_THROWS_AS(trace_orbit(s, three, 0.1, 6), ValidationError);
  }

  TEST_CASE("mask shrinks as levels are dropped") {
    const CodingSequence s = CodingSequence::alternating_binary(std::vector<int>{2}, 32);
    const DecoratedSampling dec = DecoratedSampling::separable(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0});
    std::vector<double> grid;
    for (int i = 0; i <= 5000; ++i) grid.push_back(-2.5 + 6.0 * i / 5000);
    double prev = 1e9;
    for (int k = 4; k <= 8; ++k) {
      const TraceMask m = toeplitz_spectrum_mask(s, dec, grid, k, 30);
      CHECK(m.measure() < prev);
      CHECK(m.measure() > 0.0);
      prev = m.measure();
    }
    const TraceMask a = toeplitz_spectrum_mask(s, dec, grid, 5, 30, Exec::serial);
    const TraceMask b = toeplitz_spectrum_mask(s, dec, grid, 5, 30, Exec::parallel);
    CHECK(a.masked == b.masked);
    CHECK_THROWS_AS(toeplitz_spectrum_mask(s, dec, grid, 5, 41), ValidationError);
  }

  TEST_CASE("collision diagnostic") {
    const CodingSequence s = CodingSequence::alternating_binary(std::vector<int>{3}, 12);
    const DecoratedSampling dec = DecoratedSampling::separable(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0});
    for (double E : {-1.0, 0.3, 1.5}) {
      const CollisionReport r = trace_collision_diagnostic(s, dec, E, 8);
      for (double res : r.difference_residuals) CHECK(res <= 1e-8);
      for (std::size_t i = 1; i < r.partial_sums.size(); ++i) CHECK(r.partial_sums[i] >= r.partial_sums[i - 1]);
    }
    // Equal letter values make w_k and v_k share every trace.
    const DecoratedSampling flat = DecoratedSampling::separable(std::vector<double>{0.5, 0.5}, std::vector<double>{0.0});
    const CollisionReport c = trace_collision_diagnostic(s, flat, 0.2, 6);
    CHECK(c.excluded);
    CHECK(c.collision_level == 1);
  }
}
