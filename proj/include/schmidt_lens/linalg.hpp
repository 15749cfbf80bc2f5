#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace schmidt_lens {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Constructors reject NaN/Inf entries.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  // |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);
  // |e_row><e_col| in an n x n space.
  static ComplexMatrix unit(std::size_t n, std::size_t row, std::size_t col);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> data() const noexcept { return entries_; }
  std::span<Complex> data() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  // Largest absolute entry.
  double max_abs() const;
  double frobenius_norm() const;
  // Column c as a vector.
  std::vector<Complex> column(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

// Largest absolute entrywise difference; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

// Subsystem labels for bipartite operations. Composite index is a * dB + b.
enum class Subsystem { A, B };

struct BipartiteDims {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t total() const noexcept { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

inline constexpr double kHermiticityTol = 1e-9;
inline constexpr double kDefaultRankTol = 1e-9;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

// Cyclic complex Jacobi. Inputs within 1e-9 * max|h| of Hermitian are
// symmetrized first; anything further off throws NotHermitian.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

// Descending singular values (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& a);

// Number of singular values above tol * sigma_max.
std::size_t matrix_rank(const ComplexMatrix& a, double tol = kDefaultRankTol);

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep);
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Subsystem which);

bool is_hermitian(const ComplexMatrix& h, double tol);

// Reorthonormalize columns in place (modified Gram-Schmidt, two passes).
// Returns false if a column becomes numerically dependent.
bool orthonormalize_columns(ComplexMatrix& m);

// f applied to the spectrum of a Hermitian matrix: V f(diag) V^dagger.
template <typename F>
ComplexMatrix spectral_apply(const ComplexMatrix& h, F&& f) {
  const EigenDecomposition eig = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

}  // namespace schmidt_lens
