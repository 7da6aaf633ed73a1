#ifndef PRODSPEC_TRACEMAP_HPP
#define PRODSPEC_TRACEMAP_HPP

#include <span>
#include <vector>

#include "prodspec/parallel.hpp"
#include "prodspec/symdyn.hpp"

namespace prodspec {

// Window function on the decorated alphabet: g[letter][residue].
// Position m of a Toeplitz word (1-based) carries residue m mod p, so the
// last letter of every w_k with p | |w_k| sits at residue 0.
struct DecoratedSampling {
  std::vector<std::vector<double>> g;
  int p = 1;

  DecoratedSampling() = default;
  DecoratedSampling(std::vector<std::vector<double>> table, int period);
  // g(letter, j) = letter_values[letter] + background[j]
  static DecoratedSampling separable(std::span<const double> letter_values, std::span<const double> background);

  double operator()(int letter, int residue) const;
  double sup_norm() const;
};

// Potential values of a Toeplitz word under the decoration above.
std::vector<double> decorated_values(std::span<const int> w, const DecoratedSampling& dec);

inline constexpr double kTraceSaturation = 1e150;

struct TracePair {
  int k = 0;
  double x = 0.0;  // Tr M_E(w_k)
  double y = 0.0;  // Tr M_E(v_k)
  bool saturated = false;
};

struct TraceOrbit {
  double E = 0.0;
  int k0 = 0;
  std::vector<TracePair> pairs;  // levels k0..depth; saturated entries carry no values
  int escape_level = -1;         // first level with |x| or |y| > kTraceSaturation
};

// Seeds at the first level k0 with p | |w_k0| from direct monodromy traces,
// then runs x' = S_n(x) y - 2 S_{n-1}(x), y' = S_n(x) x - 2 S_{n-1}(x).
TraceOrbit trace_orbit(const CodingSequence& s, const DecoratedSampling& dec, double E, int depth);

struct TraceMask {
  std::vector<double> grid;
  std::vector<bool> masked;
  int k_min = 0;
  int k_max = 0;
  double measure() const;  // masked cells times grid step (uniform grids)
  std::size_t count() const;
};

// E is marked when |x_k(E)| <= 2 for some k in [k_min, k_max].
TraceMask toeplitz_spectrum_mask(const CodingSequence& s, const DecoratedSampling& dec,
                                 std::span<const double> grid, int k_min, int k_max,
                                 Exec exec = Exec::serial);

struct CollisionReport {
  double E = 0.0;
  bool excluded = false;          // |x_k - y_k| < 1e-9 at some level
  int collision_level = -1;
  std::vector<double> partial_sums;  // sum of |x_j|^2 for j = k0..k
  std::vector<double> gap_factors;   // |S_{n_k}(x_k)|
  std::vector<double> difference_residuals;  // relative, of |x'-y'| = |S_n(x)||x-y|
  int escape_level = -1;
};

CollisionReport trace_collision_diagnostic(const CodingSequence& s, const DecoratedSampling& dec, double E,
                                           int depth);

}  // namespace prodspec

#endif  // PRODSPEC_TRACEMAP_HPP
