#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "schmidt_lens/linalg.hpp"

namespace schmidt_lens {

// Normalized bipartite pure state; composite amplitude index is a * dB + b.
class PureState {
 public:
  PureState(std::vector<Complex> amplitudes, BipartiteDims dims);

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  BipartiteDims dims() const noexcept { return dims_; }

  // dA x dB matrix of amplitudes.
  ComplexMatrix coefficient_matrix() const;
  ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_); }

 private:
  std::vector<Complex> amplitudes_;
  BipartiteDims dims_;
};

// Hermitian, PSD, unit-trace operator. Single-system states carry no
// bipartite dims.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);
  DensityMatrix(ComplexMatrix matrix, BipartiteDims dims);
  static DensityMatrix from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const std::optional<BipartiteDims>& dims() const noexcept { return dims_; }
  BipartiteDims bipartite_dims() const;  // throws NotBipartite

 private:
  void validate() const;

  ComplexMatrix matrix_;
  std::optional<BipartiteDims> dims_;
};

inline constexpr double kStateHermiticityTol = 1e-9;
inline constexpr double kStatePsdTol = 1e-9;
inline constexpr double kStateTraceTol = 1e-10;

PureState max_entangled(std::size_t d);

// Squared singular values of the coefficient matrix, descending.
std::vector<double> schmidt_coefficients(const PureState& psi);
std::size_t schmidt_rank(const PureState& psi, double tol = 1e-9);

// Haar-distributed unitary (complex Gaussian columns, Gram-Schmidt).
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

// sum_i sqrt(coefficients[i]) U|i> (x) V|i> with seeded Haar U, V.
PureState pure_with_schmidt_coefficients(std::size_t dA, std::size_t dB,
                                         std::span<const double> coefficients,
                                         std::uint64_t seed);

// Schmidt rank exactly r; coefficients drawn uniformly from the simplex,
// floored at 0.01 and renormalized.
PureState random_pure_with_schmidt_rank(std::size_t dA, std::size_t dB, std::size_t r,
                                        std::uint64_t seed);

// Dirichlet-weighted mixture of `terms` pure states of Schmidt rank <= r,
// hence Schmidt number <= r.
DensityMatrix random_state_sn_at_most(std::size_t dA, std::size_t dB, std::size_t r,
                                      std::size_t terms, std::uint64_t seed);

// p |phi+><phi+| + (1 - p) I / d^2
DensityMatrix isotropic_state(std::size_t d, double p);

}  // namespace schmidt_lens
