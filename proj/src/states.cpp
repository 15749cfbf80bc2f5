#include "schmidt_lens/states.hpp"

#include <cmath>
#include <random>
#include <string>

#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

namespace {

ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    ComplexMatrix u(n, n);
    for (Complex& z : u.data()) z = Complex(gauss(rng), gauss(rng));
    if (orthonormalize_columns(u)) return u;
  }
}

// Uniform point on the probability simplex (normalized exponentials).
std::vector<double> simplex_sample(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  for (double& x : w) x /= total;
  return w;
}

void check_rank(std::size_t dA, std::size_t dB, std::size_t r) {
  if (r < 1 || r > std::min(dA, dB)) {
    throw Error(ErrorKind::InvalidRank, "r=" + std::to_string(r) + " outside [1, min(dA, dB)]");
  }
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, BipartiteDims dims)
    : amplitudes_(std::move(amplitudes)), dims_(dims) {
  if (dims_.a == 0 || dims_.b == 0 || amplitudes_.size() != dims_.total()) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude count " + std::to_string(amplitudes_.size()) +
                                                  " does not match dims");
  }
  double norm = 0.0;
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, "amplitude is NaN or Inf");
    }
    norm += std::norm(z);
  }
  if (std::abs(std::sqrt(norm) - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotNormalized, "||psi|| = " + std::to_string(std::sqrt(norm)));
  }
}

ComplexMatrix PureState::coefficient_matrix() const {
  return ComplexMatrix(dims_.a, dims_.b, amplitudes_);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) { validate(); }

DensityMatrix::DensityMatrix(ComplexMatrix matrix, BipartiteDims dims)
    : matrix_(std::move(matrix)), dims_(dims) {
  if (dims.a == 0 || dims.b == 0 || dims.total() != matrix_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "bipartite dims do not match matrix size");
  }
  validate();
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), psi.dims());
}

BipartiteDims DensityMatrix::bipartite_dims() const {
  if (!dims_) throw Error(ErrorKind::NotBipartite, "state has no bipartite structure");
  return *dims_;
}

void DensityMatrix::validate() const {
  if (!matrix_.is_square() || matrix_.empty()) throw Error(ErrorKind::NotSquare, "density matrix");
  if (!is_hermitian(matrix_, kStateHermiticityTol)) {
    throw Error(ErrorKind::NotHermitian, "density matrix not Hermitian to 1e-9");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kStateTraceTol) {
    throw Error(ErrorKind::NotNormalized, "trace " + std::to_string(tr));
  }
  const double lowest = min_eigenvalue(matrix_);
  if (lowest < -kStatePsdTol) {
    throw Error(ErrorKind::NotPSD, "min eigenvalue " + std::to_string(lowest));
  }
}

PureState max_entangled(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "max_entangled needs d >= 2");
  std::vector<Complex> amps(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) amps[i * d + i] = a;
  return PureState(std::move(amps), {d, d});
}

std::vector<double> schmidt_coefficients(const PureState& psi) {
  std::vector<double> sigma = singular_values(psi.coefficient_matrix());
  for (double& s : sigma) s *= s;
  return sigma;
}

std::size_t schmidt_rank(const PureState& psi, double tol) {
  std::size_t count = 0;
  for (double lambda : schmidt_coefficients(psi))
    if (lambda > tol) ++count;
  return count;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(n, rng);
}

PureState pure_with_schmidt_coefficients(std::size_t dA, std::size_t dB,
                                         std::span<const double> coefficients,
                                         std::uint64_t seed) {
  if (coefficients.empty() || coefficients.size() > std::min(dA, dB)) {
    throw Error(ErrorKind::InvalidRank, "too many Schmidt coefficients for the dims");
  }
  std::mt19937_64 rng(seed);
  const ComplexMatrix u = haar_unitary(dA, rng);
  const ComplexMatrix v = haar_unitary(dB, rng);
  double total = 0.0;
  for (double c : coefficients) {
    if (!(c >= 0.0)) throw Error(ErrorKind::ParamOutOfRange, "negative Schmidt coefficient");
    total += c;
  }
  std::vector<Complex> amps(dA * dB);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const double w = std::sqrt(coefficients[i] / total);
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t b = 0; b < dB; ++b) amps[a * dB + b] += w * u(a, i) * v(b, i);
  }
  // Renormalize away accumulated rounding.
  double norm = 0.0;
  for (const Complex& z : amps) norm += std::norm(z);
  norm = std::sqrt(norm);
  for (Complex& z : amps) z /= norm;
  return PureState(std::move(amps), {dA, dB});
}

PureState random_pure_with_schmidt_rank(std::size_t dA, std::size_t dB, std::size_t r,
                                        std::uint64_t seed) {
  check_rank(dA, dB, r);
  std::mt19937_64 rng(seed);
  std::vector<double> lambda = simplex_sample(r, rng);
  double total = 0.0;
  for (double& x : lambda) total += (x = std::max(x, 0.01));
  for (double& x : lambda) x /= total;
  return pure_with_schmidt_coefficients(dA, dB, lambda, rng());
}

DensityMatrix random_state_sn_at_most(std::size_t dA, std::size_t dB, std::size_t r,
                                      std::size_t terms, std::uint64_t seed) {
  check_rank(dA, dB, r);
  if (terms < 1) throw Error(ErrorKind::ParamOutOfRange, "terms must be >= 1");
  std::mt19937_64 rng(seed);
  const std::vector<double> weights = simplex_sample(terms, rng);
  ComplexMatrix rho(dA * dB, dA * dB);
  for (double w : weights) {
    const PureState psi = random_pure_with_schmidt_rank(dA, dB, r, rng());
    rho += psi.projector() * Complex(w);
  }
  return DensityMatrix(std::move(rho), {dA, dB});
}

DensityMatrix isotropic_state(std::size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "p outside [0, 1]");
  ComplexMatrix rho = max_entangled(d).projector() * Complex(p);
  const double noise = (1.0 - p) / static_cast<double>(d * d);
  for (std::size_t i = 0; i < d * d; ++i) rho(i, i) += noise;
  return DensityMatrix(std::move(rho), {d, d});
}

}  // namespace schmidt_lens
