#include "schmidt_lens/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NonSquareChannel: return "NonSquareChannel";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, "matrix entry is NaN or Inf");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

void require_bipartite_square(const ComplexMatrix& m, BipartiteDims dims, const char* op) {
  if (!m.is_square() || m.rows() != dims.total() || dims.a == 0 || dims.b == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", dims " + std::to_string(dims.a) + "x" +
                    std::to_string(dims.b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch, "entry count " + std::to_string(entries_.size()) +
                                                  " != " + std::to_string(rows_ * cols_));
  }
  require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(m.entries_);
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  const std::size_t n = v.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t row, std::size_t col) {
  ComplexMatrix m(n, n);
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (Complex& z : out.entries_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::NotSquare, "trace of non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matmul: " + std::to_string(a.cols()) +
                                                  " != " + std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::DimensionMismatch, "matvec");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t br = b.rows(), bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = aij * b(k, l);
    }
  return out;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) return false;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j)
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol) return false;
  return true;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw Error(ErrorKind::NotSquare, "hermitian_eig");
  const std::size_t n = h.rows();
  const double scale = h.max_abs();
  if (!is_hermitian(h, kHermiticityTol * scale)) {
    throw Error(ErrorKind::NotHermitian, "violation exceeds 1e-9 * max|h|");
  }

  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double norm = a.frobenius_norm();
  const double target = 1e-14 * norm;
  const double negligible = 1e-18 * norm;
  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && norm > 0.0; ++sweep) {
    if (off_diagonal() <= target) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= negligible) continue;
        rotated = true;
        // Phase-rotate column q so the (p, q) entry is real, then apply the
        // real symmetric rotation that annihilates it.
        const Complex phase = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cq = std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * cq * akq;
          a(k, q) = s * akp + c * cq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * cq * vkq;
          v(k, q) = s * vkp + c * cq * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  return hermitian_eig(h).eigenvalues;
}

double min_eigenvalue(const ComplexMatrix& h) {
  const auto values = hermitian_eigenvalues(h);
  return values.empty() ? 0.0 : values.front();
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  // One-sided Jacobi: orthogonalize the columns of a (or a^dagger when wide);
  // the column norms are then the singular values. Zero singular values come
  // out at roundoff level of sigma_max instead of its square root.
  ComplexMatrix u = a.rows() >= a.cols() ? a : a.adjoint();
  const std::size_t m = u.rows(), n = u.cols();
  constexpr double kEps = 1e-15;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(u(k, p));
          beta += std::norm(u(k, q));
          gamma += std::conj(u(k, p)) * u(k, q);
        }
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / mag;
        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cq = std::conj(phase);
        for (std::size_t k = 0; k < m; ++k) {
          const Complex ukp = u(k, p), ukq = u(k, q);
          u(k, p) = c * ukp - s * cq * ukq;
          u(k, q) = s * ukp + c * cq * ukq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(u(k, j));
    sigma[j] = std::sqrt(s);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

std::size_t matrix_rank(const ComplexMatrix& a, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "rank tolerance must be positive");
  const auto sigma = singular_values(a);
  if (sigma.empty() || sigma.front() == 0.0) return 0;
  const double cutoff = tol * sigma.front();
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cutoff; }));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep) {
  require_bipartite_square(m, dims, "partial_trace");
  const std::size_t da = dims.a, db = dims.b;
  if (keep == Subsystem::A) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Subsystem which) {
  require_bipartite_square(m, dims, "partial_transpose");
  const std::size_t da = dims.a, db = dims.b;
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < db; ++k)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t l = 0; l < db; ++l) {
          const Complex value = m(i * db + k, j * db + l);
          if (which == Subsystem::A) {
            out(j * db + k, i * db + l) = value;
          } else {
            out(i * db + l, j * db + k) = value;
          }
        }
  return out;
}

bool orthonormalize_columns(ComplexMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex overlap = 0.0;
        for (std::size_t k = 0; k < rows; ++k) overlap += std::conj(m(k, prev)) * m(k, c);
        for (std::size_t k = 0; k < rows; ++k) m(k, c) -= overlap * m(k, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < rows; ++k) norm += std::norm(m(k, c));
    norm = std::sqrt(norm);
    if (norm < 1e-12) return false;
    for (std::size_t k = 0; k < rows; ++k) m(k, c) /= norm;
  }
  return true;
}

}  // namespace schmidt_lens
