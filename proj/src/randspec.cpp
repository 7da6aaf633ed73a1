#include "prodspec/randspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prodspec/error.hpp"
#include "prodspec/rng.hpp"
#include "prodspec/symdyn.hpp"

namespace prodspec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxWords = std::size_t{1} << 20;
}  // namespace

Period2Model Period2Model::separable(std::span<const double> letters, std::array<double, 2> c) {
  require(!letters.empty(), "alphabet must be nonempty");
  Period2Model m;
  for (double a : letters) m.g.push_back({a + c[0], a + c[1]});
  return m;
}

EnergyPoly period2_discriminant(const Period2Model& m, std::size_t a, std::size_t b) {
  const double ga = m.g.at(a)[0], gb = m.g.at(b)[1];
  // E^2 - (ga + gb) E + ga gb - 2
  return EnergyPoly(std::vector<double>{ga * gb - 2.0, -(ga + gb), 1.0});
}

IntervalUnion period2_spectrum(const Period2Model& m, double tol) {
  require(!m.g.empty(), "alphabet must be nonempty");
  std::vector<IntervalUnion> parts;
  for (std::size_t a = 0; a < m.letters(); ++a)
    for (std::size_t b = 0; b < m.letters(); ++b)
      parts.push_back(spectrum_from_discriminant(period2_discriminant(m, a, b), tol));
  return union_of(parts);
}

ConeCertificate cone_certificate(const Period2Model& m, double E) {
  require(!m.g.empty(), "alphabet must be nonempty");
  ConeCertificate c;
  c.E = E;
  c.y_plus = kInf;
  c.y_minus = -kInf;
  for (const auto& row : m.g) {
    const double y = E - row[0];
    if (y > 0.0) c.y_plus = std::min(c.y_plus, y);
    if (y < 0.0) c.y_minus = std::max(c.y_minus, y);
  }
  c.interval_lo = 2.0 / c.y_minus;  // -0 when there is no negative y
  c.interval_hi = 2.0 / c.y_plus;

  c.all_hyperbolic = true;
  bool inside = true;
  for (const auto& ra : m.g) {
    const double y = E - ra[0];
    for (const auto& rb : m.g) {
      const double x = E - rb[1];
      const double xy = x * y;
      if (std::abs(xy) <= 1e-12 || std::abs(xy - 4.0) <= 1e-12) c.marginal = true;
      if (xy >= 0.0 && xy <= 4.0) {
        c.all_hyperbolic = false;
        continue;
      }
      const double r = std::sqrt((xy - 4.0) / xy);
      const double vm = 0.5 * x * (1.0 - r);
      const double vp = 0.5 * x * (1.0 + r);
      if (!(vm > c.interval_lo && vm < c.interval_hi)) inside = false;
      if (vp >= c.interval_lo && vp <= c.interval_hi) inside = false;
    }
  }
  c.verdict = c.all_hyperbolic && inside && !c.marginal;
  return c;
}

InnerApprox periodic_inner_approx(const std::vector<std::vector<double>>& g, int p, int max_period, double tol,
                                  Exec exec) {
  require(p >= 1 && max_period >= 1, "period and max_period must be >= 1");
  require(!g.empty(), "alphabet must be nonempty");
  for (const auto& row : g) require(static_cast<int>(row.size()) == p, "sampling table row must have p entries");
  if (max_period * p > 24) throw ValidationError("enumeration cap exceeded: max_period * p must be <= 24");
  const std::size_t m = g.size();

  std::vector<std::vector<int>> words;
  for (int q = 1; q <= max_period; ++q) {
    const int L = q * p;
    double total = std::pow(static_cast<double>(m), L);
    if (total > static_cast<double>(kMaxWords))
      throw ValidationError("enumeration cap exceeded: " + std::to_string(m) + "^" + std::to_string(L) + " words");
    std::vector<int> w(static_cast<std::size_t>(L), 0);
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(total); ++idx) {
      std::size_t r = idx;
      for (int i = L - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = static_cast<int>(r % m);
        r /= m;
      }
      // Keep one representative per rotation class (shifts by multiples of p
      // keep the decoration) and skip proper powers, already seen at a
      // smaller q.
      bool keep = true;
      for (int j = 1; j < q && keep; ++j) {
        const int sh = j * p;
        int cmp = 0;
        for (int i = 0; i < L && cmp == 0; ++i) {
          const int a = w[static_cast<std::size_t>((i + sh) % L)], b = w[static_cast<std::size_t>(i)];
          cmp = (a > b) - (a < b);
        }
        if (cmp <= 0) keep = false;
      }
      if (keep) words.push_back(w);
    }
  }

  const auto parts = map_index<IntervalUnion>(exec, words.size(), [&](std::size_t i) {
    const auto& w = words[i];
    std::vector<double> values(w.size());
    for (std::size_t n = 0; n < w.size(); ++n)
      values[n] = g[static_cast<std::size_t>(w[n])][n % static_cast<std::size_t>(p)];
    return periodic_spectrum(values, tol);
  });
  InnerApprox out;
  out.words = words.size();
  out.spectrum = union_of(parts);
  return out;
}

CounterexampleReport counterexample_check(const CounterexampleModel& model) {
  require(model.letters.size() == 2, "counterexample model needs two letters");
  const auto& L = model.letters;
  const auto& c = model.background;
  CounterexampleReport rep;
  rep.period6_values = {L[0] + c[0], L[0] + c[1], L[0] + c[2], L[1] + c[0], L[1] + c[1], L[1] + c[2]};
  rep.sigma6 = periodic_spectrum(rep.period6_values, model.tol);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int d = 0; d < 2; ++d) {
        std::vector<double> v{L[static_cast<std::size_t>(a)] + c[0], L[static_cast<std::size_t>(b)] + c[1],
                              L[static_cast<std::size_t>(d)] + c[2]};
        rep.sigma3.push_back(periodic_spectrum(v, model.tol));
        rep.period3_values.push_back(std::move(v));
      }
  rep.period3_union = union_of(rep.sigma3);

  const Interval& t = model.target;
  for (const Interval& band : rep.sigma6.intervals())
    if (band.lo <= t.lo + model.slack && band.hi >= t.hi - model.slack) rep.contained = true;
  rep.disjoint = std::none_of(rep.sigma3.begin(), rep.sigma3.end(),
                              [&](const IntervalUnion& s) { return s.intersects(t); });
  if (!rep.sigma6.empty()) rep.uncovered = rep.sigma6.intersect(rep.period3_union.gaps(rep.sigma6.hull()));
  rep.gap_found = rep.uncovered.measure() > 1e-9;
  return rep;
}

std::vector<LyapunovSample> lyapunov_positivity_scan(std::span<const double> probs,
                                                     const std::vector<std::vector<double>>& g, int p,
                                                     std::span<const double> energies, std::size_t orbit_length,
                                                     std::uint64_t seed, Exec exec) {
  require(p >= 1, "period must be >= 1");
  require(!probs.empty() && probs.size() == g.size(), "need one probability per letter");
  for (const auto& row : g) require(static_cast<int>(row.size()) == p, "sampling table row must have p entries");
  double total = 0.0;
  for (double q : probs) {
    require(q > 0.0, "probabilities must be positive");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("probabilities must sum to 1 within 1e-12");
  require(orbit_length >= 10000, "orbit length must be >= 1e4");
  const std::size_t up = static_cast<std::size_t>(p);

  return map_index<LyapunovSample>(exec, energies.size(), [&](std::size_t i) {
    LyapunovSample s;
    s.E = energies[i];
    s.seed = derive_seed(seed, i);

    CounterRng rng(s.seed);
    const Word w = random_word(probs, orbit_length, rng);
    RenormalizedProduct<double> prod;
    for (std::size_t n = 0; n < w.size(); ++n)
      prod.push(transfer_matrix(g[static_cast<std::size_t>(w[n])][n % up], s.E));
    s.L = prod.log_norm() / static_cast<double>(orbit_length);

    // Regrouped cocycle over blocks of p letters, drawn from its own stream.
    CounterRng rng2(derive_seed(s.seed, 1));
    const std::size_t blocks = orbit_length / up;
    const Word wb = random_word(probs, blocks * up, rng2);
    RenormalizedProduct<double> bprod;
    for (std::size_t b = 0; b < blocks; ++b) {
      RealMat2 B = RealMat2::identity();
      for (std::size_t j = 0; j < up; ++j) B = transfer_matrix(g[static_cast<std::size_t>(wb[b * up + j])][j], s.E) * B;
      bprod.push(B);
    }
    s.L_hat = bprod.log_norm() / static_cast<double>(blocks);
    if (std::isnan(s.L) || std::isnan(s.L_hat)) throw NumericalError("numerical breakdown");
    return s;
  });
}

}  // namespace prodspec
