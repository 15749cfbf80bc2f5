#include "schmidt_lens/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

SNWitness witness(std::size_t d, std::size_t r) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "witness needs d >= 2");
  if (r < 1 || r >= d) throw Error(ErrorKind::InvalidRank, "witness needs 1 <= r < d");
  ComplexMatrix m = ComplexMatrix::identity(d * d);
  m -= max_entangled(d).projector() * Complex(static_cast<double>(d) / static_cast<double>(r));
  return {d, r, std::move(m)};
}

double witness_value(const SNWitness& w, const DensityMatrix& rho) {
  if (rho.dim() != w.d * w.d) {
    throw Error(ErrorKind::DimensionMismatch, "state is " + std::to_string(rho.dim()) +
                                                  "-dimensional, witness " + std::to_string(w.d * w.d));
  }
  // Tr(W rho) = sum_ij W_ij rho_ji
  Complex total = 0.0;
  const auto& m = w.matrix;
  const auto& r = rho.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) total += m(i, j) * r(j, i);
  if (std::abs(total.imag()) > 1e-10) {
    throw Error(ErrorKind::NotHermitian, "witness expectation has imaginary part " +
                                             std::to_string(total.imag()));
  }
  return total.real();
}

LambdaMap::LambdaMap(std::size_t d, double k) : d_(d), k_(k) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "LambdaMap needs d >= 1");
  if (!std::isfinite(k)) throw Error(ErrorKind::ParamOutOfRange, "k must be finite");
}

ComplexMatrix LambdaMap::apply(const ComplexMatrix& x) const {
  if (!x.is_square() || x.rows() != d_) throw Error(ErrorKind::DimensionMismatch, "LambdaMap::apply");
  ComplexMatrix out = x * Complex(-k_);
  const Complex tr = x.trace();
  for (std::size_t i = 0; i < d_; ++i) out(i, i) += tr;
  return out;
}

ComplexMatrix apply_id_lambda(const ComplexMatrix& m, BipartiteDims dims, double k) {
  if (!m.is_square() || m.rows() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "apply_id_lambda: matrix does not match dims");
  }
  const LambdaMap lambda(dims.b, k);
  const std::size_t da = dims.a, db = dims.b;
  ComplexMatrix out(m.rows(), m.cols());
  ComplexMatrix block(db, db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      for (std::size_t x = 0; x < db; ++x)
        for (std::size_t y = 0; y < db; ++y) block(x, y) = m(i * db + x, j * db + y);
      const ComplexMatrix mapped = lambda.apply(block);
      for (std::size_t x = 0; x < db; ++x)
        for (std::size_t y = 0; y < db; ++y) out(i * db + x, j * db + y) = mapped(x, y);
    }
  return out;
}

ComplexMatrix apply_id_lambda(const DensityMatrix& rho, double k) {
  return apply_id_lambda(rho.matrix(), rho.bipartite_dims(), k);
}

KWindow r_positivity_window(std::size_t r) {
  if (r < 1) throw Error(ErrorKind::InvalidRank, "r must be >= 1");
  const double rr = static_cast<double>(r);
  return {1.0 / (rr + 1.0), 1.0 / rr};
}

std::string_view to_token(Verdict v) {
  switch (v) {
    case Verdict::CertifiedAbove: return "certified_above";
    case Verdict::ConsistentWithAtMost: return "consistent_with_at_most";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

CertificationResult certify_sn_above(const DensityMatrix& rho, std::size_t r, double tol) {
  const BipartiteDims dims = rho.bipartite_dims();
  if (dims.a != dims.b) throw Error(ErrorKind::DimensionMismatch, "certify_sn_above needs a d x d state");
  const double w = witness_value(witness(dims.a, r), rho);
  const double lambda_min = min_eigenvalue(apply_id_lambda(rho, 1.0 / static_cast<double>(r)));
  CertificationResult result;
  result.r = r;
  result.tolerance = tol;
  result.evidence_value = std::min(w, lambda_min);
  result.verdict = result.evidence_value < -tol ? Verdict::CertifiedAbove : Verdict::ConsistentWithAtMost;
  return result;
}

std::size_t sn_upper_bound_via_kraus(const QuantumChannel& ch, double rank_tol) {
  if (!ch.is_square()) throw Error(ErrorKind::NonSquareChannel, "sn_upper_bound_via_kraus");
  const auto kraus = kraus_from_choi_operator(choi_operator(ch), ch.d_in(), ch.d_out());
  std::size_t best = 0;
  for (const auto& k : kraus) best = std::max(best, matrix_rank(k, rank_tol));
  return best;
}

double isotropic_sn_threshold(std::size_t d, std::size_t r) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "d must be >= 2");
  if (r < 1 || r > d) throw Error(ErrorKind::InvalidRank, "need 1 <= r <= d");
  const double dd = static_cast<double>(d), rr = static_cast<double>(r);
  return (rr * dd - 1.0) / (dd * dd - 1.0);
}

double dephasing_sn_threshold(std::size_t d, std::size_t r) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "d must be >= 2");
  if (r < 1 || r > d) throw Error(ErrorKind::InvalidRank, "need 1 <= r <= d");
  return (static_cast<double>(r) - 1.0) / (static_cast<double>(d) - 1.0);
}

}  // namespace schmidt_lens
