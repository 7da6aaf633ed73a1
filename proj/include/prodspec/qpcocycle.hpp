#ifndef PRODSPEC_QPCOCYCLE_HPP
#define PRODSPEC_QPCOCYCLE_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "prodspec/intervals.hpp"
#include "prodspec/mat2.hpp"
#include "prodspec/parallel.hpp"
#include "prodspec/symdyn.hpp"

namespace prodspec {

using cplx = std::complex<double>;

// One real trigonometric polynomial sum_m c_m e^{2 pi i m x}, stored for
// m = -d..d with c_{-m} = conj(c_m).
class TrigPoly {
 public:
  TrigPoly() = default;
  // Coefficients for m >= 0 only; negative modes follow by symmetry.
  static TrigPoly from_nonnegative(std::vector<cplx> c);
  // Arbitrary (m, c_m) pairs; a missing partner is filled in as its
  // conjugate, an inconsistent one is rejected.
  static TrigPoly from_modes(const std::vector<std::pair<int, cplx>>& modes);
  static TrigPoly constant(double c);
  static TrigPoly cosine(double amplitude, double shift = 0.0);  // amplitude * 2 cos(2 pi x) + shift

  int degree() const;  // largest |m| with |c_m| > 1e-14
  cplx coefficient(int m) const;
  cplx operator()(cplx z) const;
  double operator()(double x) const;

 private:
  std::vector<cplx> c_;  // c_[m] for m >= 0
};

// p components f(., k) and a coupling lambda: the sampling function is
// lambda * f(x, k).
struct TrigPolyTuple {
  std::vector<TrigPoly> components;
  double lambda = 1.0;

  int p() const { return static_cast<int>(components.size()); }
  int total_degree() const;
  bool has_constant_component() const;
  double sup_norm_bound() const;  // lambda * sum |c_m| over the worst component
};

// lambda f0 + c_k with f0 = 2 cos(2 pi x): modes +-1 carry lambda, mode 0
// carries c_k, coupling 1.
TrigPolyTuple amo_with_background(double lambda, std::span<const double> background);

cplx eval_sampling(const TrigPolyTuple& f, cplx z, int k);
double eval_sampling(const TrigPolyTuple& f, double x, int k);

struct PStepCocycle {
  TrigPolyTuple f;
  double alpha = 0.0;  // rotation number, taken from the deepest convergent
  double E = 0.0;

  PStepCocycle(TrigPolyTuple f_, const ContinuedFraction& cf, double energy);
  PStepCocycle(TrigPolyTuple f_, double alpha_, double energy);
  int p() const { return f.p(); }
};

// A_E at the point (x, k): [[E - f(T(x,k)), -1], [1, 0]] with T(x, k) = (x + alpha, k + 1).
ComplexMat2 one_step_matrix(const PStepCocycle& c, cplx x, int k);

// B(x + i eps) = A^p((x, 0)): factors f(x + j alpha + i eps, j mod p) for
// j = 1..p, the j = p factor leftmost.
ComplexMat2 pstep_matrix(const PStepCocycle& c, double x, double eps);

// p-step exponent (1/N) log ||B(x0 + (N-1) p alpha) ... B(x0)|| at imaginary
// part eps, after burn_in steps whose growth is discarded.
double lyapunov(const PStepCocycle& c, double eps, std::size_t N, std::size_t burn_in, double x0);

// Per-site exponent from the one-step cocycle, averaged over the p starting
// residues (x0, k), each run for N p steps.
double lyapunov_one_step(const PStepCocycle& c, double eps, std::size_t N, std::size_t burn_in, double x0);

enum class Verdict { subcritical, critical, supercritical, uniformly_hyperbolic, undetermined };
std::string to_string(Verdict v);

struct LyapunovProfile {
  double E = 0.0;
  int p = 1;
  std::vector<double> epsilons;
  std::vector<double> L_values;           // p-step exponent
  std::vector<double> accelerations;      // forward slopes / 2 pi of L_values, one per interval
  std::vector<double> accelerations_per_site;  // the same divided by p
  std::vector<double> integer_distance;   // of accelerations_per_site
  std::vector<int> convexity_violations;  // interior indices with slope drop > 0.02
  Verdict classification = Verdict::undetermined;
  std::size_t orbit_length = 0;
  double x0 = 0.0;
};

LyapunovProfile acceleration_profile(const PStepCocycle& c, std::span<const double> eps_grid, std::size_t N,
                                     std::size_t burn_in = 1000, double x0 = 0.1234, Exec exec = Exec::serial);

struct HermanRadius {
  double value = 0.0;
  bool degenerate = false;  // constant f: the predicate never fails
};

// sup{eps >= 0 : min over a 1024-point x grid and k of |f(x + i eps, k) - E| <= 2}
HermanRadius herman_radius(const TrigPolyTuple& f, double E, double tol);

// Union over phases j / phases of the band sets of the (q p)-periodic
// potentials V(n) = f(theta + n P/Q, n mod p).
IntervalUnion rational_approx_spectrum(const TrigPolyTuple& f, const Convergent& pq, double tol, int phases = 64,
                                       Exec exec = Exec::serial);

struct ClassifyConfig {
  double margin = 1e-6;
  double L_tol = 0.05;     // on the per-site exponent
  double eps_probe = 0.05;
  int probe_points = 4;
  std::size_t N = 20000;
  std::size_t burn_in = 1000;
  double x0 = 0.1234;
  std::int64_t max_q = 89;  // deepest convergent denominator used for the spectrum
  int phases = 64;
  double spectrum_tol = 1e-12;
};

struct Classification {
  Verdict verdict = Verdict::undetermined;
  std::string reason;
  double distance_to_spectrum = 0.0;
  double margin_used = 0.0;
  double L0 = 0.0;  // per site
  std::vector<double> probe_eps;
  std::vector<double> probe_L;  // per site
};

Classification classify(const PStepCocycle& c, const ContinuedFraction& cf, const ClassifyConfig& cfg,
                        Exec exec = Exec::serial);

}  // namespace prodspec

#endif  // PRODSPEC_QPCOCYCLE_HPP
