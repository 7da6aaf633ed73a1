#ifndef PRODSPEC_RANDSPEC_HPP
#define PRODSPEC_RANDSPEC_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "prodspec/intervals.hpp"
#include "prodspec/parallel.hpp"

namespace prodspec {

// Full shift over the letters with period-2 background: g[a][j], j in {0, 1}.
struct Period2Model {
  std::vector<std::array<double, 2>> g;

  // g(x, j) = x + c_j
  static Period2Model separable(std::span<const double> letters, std::array<double, 2> c);
  std::size_t letters() const { return g.size(); }
};

// P_ab(E) = (E - g(b,1)) (E - g(a,0)) - 2
EnergyPoly period2_discriminant(const Period2Model& m, std::size_t a, std::size_t b);

// Union over all ordered pairs (a, b) of the band sets of P_ab.
IntervalUnion period2_spectrum(const Period2Model& m, double tol);

struct ConeCertificate {
  double E = 0.0;
  double y_plus = 0.0;   // inf of the positive y_a, +inf if none
  double y_minus = 0.0;  // sup of the negative y_a, -inf if none
  double interval_lo = 0.0;  // 2 / y_minus
  double interval_hi = 0.0;  // 2 / y_plus
  bool all_hyperbolic = false;
  bool marginal = false;  // some x_b y_a within 1e-12 of 0 or 4
  bool verdict = false;
};

// With y_a = E - g(a,0), x_b = E - g(b,1): every period-2 monodromy must be
// hyperbolic (x y outside [0, 4]), every contracting fixed direction
// v- = (x/2)(1 - sqrt((xy-4)/(xy))) must lie in (2/y_-, 2/y_+) and every
// expanding one v+ outside its closure. True certifies E off the spectrum.
ConeCertificate cone_certificate(const Period2Model& m, double E);

// Union of band sets of all decorated periodic words of period q p, q <= max_period.
// g[a][j] with j in Z_p; position n (0-based) of the period carries residue n mod p.
struct InnerApprox {
  IntervalUnion spectrum;
  std::size_t words = 0;  // distinct words evaluated after rotation dedup
};
InnerApprox periodic_inner_approx(const std::vector<std::vector<double>>& g, int p, int max_period, double tol,
                                  Exec exec = Exec::serial);

struct CounterexampleModel {
  std::vector<double> letters{0.0, 3.0};
  std::array<double, 3> background{0.0, 2.0, 3.0};
  Interval target{1.385, 1.423};
  double slack = 1e-3;
  double tol = 1e-12;
};

struct CounterexampleReport {
  std::vector<double> period6_values;   // the word (aaabbb) with its background
  IntervalUnion sigma6;
  std::vector<std::vector<double>> period3_values;  // the 8 words abc
  std::vector<IntervalUnion> sigma3;
  IntervalUnion period3_union;
  IntervalUnion uncovered;  // sigma6 minus the period-3 union
  bool contained = false;   // target inside one band of sigma6, up to slack
  bool disjoint = false;    // target meets none of the period-3 spectra
  bool gap_found = false;   // uncovered has positive measure
};

CounterexampleReport counterexample_check(const CounterexampleModel& model = {});

struct LyapunovSample {
  double E = 0.0;
  double L = 0.0;      // per-site exponent from the one-step product
  double L_hat = 0.0;  // exponent of the regrouped p-block product, independent stream
  std::uint64_t seed = 0;
};

// For each E: i.i.d. letters with probs (stream derive_seed(seed, index)),
// decorated values g[letter][n mod p], renormalized product over N sites.
std::vector<LyapunovSample> lyapunov_positivity_scan(std::span<const double> probs,
                                                     const std::vector<std::vector<double>>& g, int p,
                                                     std::span<const double> energies, std::size_t orbit_length,
                                                     std::uint64_t seed, Exec exec = Exec::serial);

}  // namespace prodspec

#endif  // PRODSPEC_RANDSPEC_HPP
