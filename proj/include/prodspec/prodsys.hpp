#ifndef PRODSPEC_PRODSYS_HPP
#define PRODSPEC_PRODSYS_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <span>

#include "prodspec/parallel.hpp"
#include "prodspec/symdyn.hpp"

namespace prodspec {

// s(m) = number of minimal components of the m-th power of the dynamics.
// Stored as a multiplicity per prime (kInfinite = unbounded), so that
// s(q^l) = min(q^l, q^{l_q}), plus an optional one-shot factor h that
// contributes h exactly once when h | m (constant-length substitutions).
class SFunction {
 public:
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  SFunction() = default;

  void set_multiplicity(std::uint64_t prime, int ell);
  int multiplicity(std::uint64_t prime) const;
  void set_one_shot(std::uint64_t h);
  std::uint64_t one_shot() const { return h_; }
  const std::map<std::uint64_t, int>& multiplicities() const { return mult_; }

  std::uint64_t operator()(std::uint64_t m) const;

 private:
  std::map<std::uint64_t, int> mult_;
  std::uint64_t h_ = 1;
};

std::uint64_t s_of(std::uint64_t m, const SFunction& sfun);

// Constant-length-ell substitution with height h: prime factors of ell are
// unbounded, h enters at most once.
SFunction sfun_constant_length(std::uint64_t ell, std::uint64_t h);

// Odometer with scale t_k = n_1 ... n_k known to the coding's depth:
// kappa(q) = exponent of q in t_depth.
SFunction sfun_odometer(const CodingSequence& s);

// kappa rule: min(q^l, q^kappa), saturating.
std::uint64_t odometer_s_prime_power(std::uint64_t q, int l, int kappa);

std::vector<std::uint64_t> prime_factors(std::uint64_t m);  // distinct, ascending

struct Commensurability {
  bool commensurate = false;
  int k0 = 0;     // minimal k >= 1 with p | t_k, when commensurate
  int depth = 0;  // number of coding entries searched
};

Commensurability commensurate(std::uint64_t p, const CodingSequence& s);

// Smallest Toeplitz level k with p | |w_k| = t_{k-1}; 0 if none within depth.
int trace_seed_level(std::uint64_t p, const CodingSequence& s);

struct GordonStats {
  int n = 0;
  std::int64_t hits = 0;
  std::int64_t window = 0;  // positions scanned, |x| - 3n + 1
  double estimate = 0.0;
};

// Positions j with x[j, j+n) = x[j+n, j+2n) = x[j+2n, j+3n).
GordonStats gordon_scan(std::span<const int> x, int n, Exec exec = Exec::serial);

// (sp + 1) / 2 for odd sp, sp / 2 + delta for even sp.
int reflection_spectra_bound(int sp, bool delta_flag);

// Counts minimal components of (subshift x Z_p) from a long prefix: residues
// mod p at which the same length-L word occurs are merged; the number of
// resulting classes estimates s(p).
int empirical_components(std::span<const int> prefix, int p, int block_length);

}  // namespace prodspec

#endif  // PRODSPEC_PRODSYS_HPP
