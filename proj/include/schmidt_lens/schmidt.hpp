#pragma once

#include <string_view>

#include "schmidt_lens/channels.hpp"
#include "schmidt_lens/linalg.hpp"
#include "schmidt_lens/states.hpp"

namespace schmidt_lens {

inline constexpr double kCertificationTol = 1e-9;

// W = I - (d / r) |phi+><phi+| on C^d (x) C^d. Tr(W rho) >= 0 for every
// state of Schmidt number <= r.
struct SNWitness {
  std::size_t d = 0;
  std::size_t r = 0;
  ComplexMatrix matrix;
};

SNWitness witness(std::size_t d, std::size_t r);
double witness_value(const SNWitness& w, const DensityMatrix& rho);

// X -> Tr(X) I - k X. r-positive exactly when k <= 1/r.
class LambdaMap {
 public:
  LambdaMap(std::size_t d, double k);

  std::size_t d() const noexcept { return d_; }
  double k() const noexcept { return k_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  std::size_t d_;
  double k_;
};

// (id (x) Lambda_k) acting blockwise on the B factor.
ComplexMatrix apply_id_lambda(const DensityMatrix& rho, double k);
ComplexMatrix apply_id_lambda(const ComplexMatrix& m, BipartiteDims dims, double k);

// Open-closed interval (lo, hi] of k for which Lambda_k is r-positive but
// (r+1)-negative.
struct KWindow {
  double lo;  // exclusive
  double hi;  // inclusive
  bool contains(double k) const noexcept { return k > lo && k <= hi; }
};

KWindow r_positivity_window(std::size_t r);

enum class Verdict { CertifiedAbove, ConsistentWithAtMost, Inconclusive };

std::string_view to_token(Verdict v);

struct CertificationResult {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t r = 0;
  double evidence_value = 0.0;
  double tolerance = kCertificationTol;
};

// One-sided test for Schmidt number > r: the smaller of the witness value and
// the lowest eigenvalue of (id (x) Lambda_{1/r})(rho). Never claims SN <= r.
CertificationResult certify_sn_above(const DensityMatrix& rho, std::size_t r,
                                     double tol = kCertificationTol);

// Max rank over the canonical Kraus operators. Only an upper bound on the
// Schmidt number of the Choi state; accepts any CP map.
std::size_t sn_upper_bound_via_kraus(const QuantumChannel& ch, double rank_tol = kDefaultRankTol);

// (r d - 1) / (d^2 - 1)
double isotropic_sn_threshold(std::size_t d, std::size_t r);

// (r - 1) / (d - 1)
double dephasing_sn_threshold(std::size_t d, std::size_t r);

}  // namespace schmidt_lens
