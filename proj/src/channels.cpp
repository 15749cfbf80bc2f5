#include "schmidt_lens/channels.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " outside [0, 1]");
  }
}

void check_dimension(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "channel dimension must be >= 2");
}

ComplexMatrix sum_kdagger_k(const std::vector<ComplexMatrix>& kraus) {
  ComplexMatrix s(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) s += k.adjoint() * k;
  return s;
}

// X^a Z^b on C^d: X|j> = |j+1>, Z|j> = w^j |j>.
ComplexMatrix shift_clock(std::size_t d, std::size_t a, std::size_t b) {
  ComplexMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * j) % d) / static_cast<double>(d);
    m((j + a) % d, j) = std::polar(1.0, angle);
  }
  return m;
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, Unchecked) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::DimensionMismatch, "channel needs at least one Kraus operator");
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
  if (d_in_ == 0 || d_out_ == 0) throw Error(ErrorKind::InvalidDimension, "empty Kraus operator");
  for (const auto& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators disagree in shape");
    }
  }
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus)
    : QuantumChannel(std::move(kraus), Unchecked{}) {
  const double err = trace_preservation_error();
  if (err > kTracePreservingTol) {
    throw Error(ErrorKind::NotTracePreserving, "|sum K^dagger K - I| = " + std::to_string(err));
  }
}

QuantumChannel QuantumChannel::cp_map(std::vector<ComplexMatrix> kraus) {
  return QuantumChannel(std::move(kraus), Unchecked{});
}

double QuantumChannel::trace_preservation_error() const {
  return max_abs_diff(sum_kdagger_k(kraus_), ComplexMatrix::identity(d_in_));
}

ChoiMatrix::ChoiMatrix(ComplexMatrix matrix, std::size_t d_in, std::size_t d_out)
    : matrix_(std::move(matrix)), d_in_(d_in), d_out_(d_out) {
  const std::size_t n = d_in * d_out;
  if (!matrix_.is_square() || matrix_.rows() != n || n == 0) {
    throw Error(ErrorKind::DimensionMismatch, "Choi matrix size does not match d_in * d_out");
  }
  if (!is_hermitian(matrix_, kHermiticityTol * std::max(1.0, matrix_.max_abs()))) {
    throw Error(ErrorKind::NotHermitian, "Choi matrix");
  }
  const double lowest = min_eigenvalue(matrix_);
  if (lowest < -1e-9) throw Error(ErrorKind::NotPSD, "Choi min eigenvalue " + std::to_string(lowest));
  if (std::abs(matrix_.trace().real() - 1.0) > 1e-10) {
    throw Error(ErrorKind::NotTracePreserving, "Choi trace " + std::to_string(matrix_.trace().real()));
  }
  ComplexMatrix marginal = partial_trace(matrix_, {d_in, d_out}, Subsystem::A);
  ComplexMatrix expected = ComplexMatrix::identity(d_in) * Complex(1.0 / static_cast<double>(d_in));
  if (max_abs_diff(marginal, expected) > 1e-9) {
    throw Error(ErrorKind::NotTracePreserving, "Tr_out of Choi matrix is not I / d_in");
  }
}

QuantumChannel identity_channel(std::size_t d) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "identity channel needs d >= 1");
  return QuantumChannel({ComplexMatrix::identity(d)});
}

QuantumChannel depolarizing(std::size_t d, double p) {
  check_dimension(d);
  check_probability(p, "p");
  const double d2 = static_cast<double>(d * d);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(d * d);
  kraus.push_back(ComplexMatrix::identity(d) * Complex(std::sqrt(p + (1.0 - p) / d2)));
  const double w = std::sqrt((1.0 - p) / d2);
  if (w > 0.0) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        if (a != 0 || b != 0) kraus.push_back(shift_clock(d, a, b) * Complex(w));
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel dephasing(std::size_t d, double v) {
  check_dimension(d);
  check_probability(v, "v");
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(ComplexMatrix::identity(d) * Complex(std::sqrt(v)));
  const double w = std::sqrt(1.0 - v);
  if (w > 0.0) {
    for (std::size_t i = 0; i < d; ++i) kraus.push_back(ComplexMatrix::unit(d, i, i) * Complex(w));
  }
  return QuantumChannel(std::move(kraus));
}

ComplexMatrix apply_to_operator(const QuantumChannel& ch, const ComplexMatrix& x) {
  if (!x.is_square() || x.rows() != ch.d_in()) {
    throw Error(ErrorKind::DimensionMismatch, "operator is " + std::to_string(x.rows()) +
                                                  "-dimensional, channel input " + std::to_string(ch.d_in()));
  }
  ComplexMatrix out(ch.d_out(), ch.d_out());
  for (const auto& k : ch.kraus()) out += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  ComplexMatrix out = apply_to_operator(ch, rho.matrix());
  // Outputs of a bipartite state remain bipartite when the channel is square.
  if (rho.dims() && ch.is_square()) return DensityMatrix(std::move(out), *rho.dims());
  return DensityMatrix(std::move(out));
}

DensityMatrix apply_on_B(const QuantumChannel& ch, const DensityMatrix& rho) {
  const BipartiteDims dims = rho.bipartite_dims();
  if (dims.b != ch.d_in()) {
    throw Error(ErrorKind::DimensionMismatch, "subsystem B has dimension " + std::to_string(dims.b) +
                                                  ", channel input " + std::to_string(ch.d_in()));
  }
  // Block (i, j) of the output is sum_a K_a X_ij K_a^dagger.
  const std::size_t da = dims.a, din = ch.d_in(), dout = ch.d_out();
  ComplexMatrix out(da * dout, da * dout);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      ComplexMatrix block(din, din);
      for (std::size_t k = 0; k < din; ++k)
        for (std::size_t l = 0; l < din; ++l) block(k, l) = rho.matrix()(i * din + k, j * din + l);
      const ComplexMatrix mapped = apply_to_operator(ch, block);
      for (std::size_t k = 0; k < dout; ++k)
        for (std::size_t l = 0; l < dout; ++l) out(i * dout + k, j * dout + l) = mapped(k, l);
    }
  }
  return DensityMatrix(std::move(out), {da, dout});
}

ComplexMatrix choi_operator(const QuantumChannel& ch) {
  const std::size_t din = ch.d_in(), dout = ch.d_out();
  const double scale = 1.0 / std::sqrt(static_cast<double>(din));
  ComplexMatrix c(din * dout, din * dout);
  std::vector<Complex> v(din * dout);
  for (const auto& k : ch.kraus()) {
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t j = 0; j < dout; ++j) v[i * dout + j] = k(j, i) * scale;
    c += ComplexMatrix::outer(v);
  }
  return c;
}

ChoiMatrix choi(const QuantumChannel& ch) {
  if (!ch.is_square()) throw Error(ErrorKind::NonSquareChannel, "Choi matrix needs d_in == d_out");
  return ChoiMatrix(choi_operator(ch), ch.d_in(), ch.d_out());
}

std::vector<ComplexMatrix> kraus_from_choi_operator(const ComplexMatrix& c, std::size_t d_in,
                                                    std::size_t d_out) {
  if (!c.is_square() || c.rows() != d_in * d_out) {
    throw Error(ErrorKind::DimensionMismatch, "Choi operator size does not match dims");
  }
  const EigenDecomposition eig = hermitian_eig(c);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  if (top <= 0.0) throw Error(ErrorKind::NotPSD, "Choi operator has no positive eigenvalue");
  const double cutoff = 1e-10 * top;

  std::vector<ComplexMatrix> kraus;
  // Largest eigenvalue first.
  for (std::size_t idx = eig.eigenvalues.size(); idx-- > 0;) {
    const double lambda = eig.eigenvalues[idx];
    if (lambda <= cutoff) break;
    const double w = std::sqrt(static_cast<double>(d_in) * lambda);
    ComplexMatrix k(d_out, d_in);
    for (std::size_t i = 0; i < d_in; ++i)
      for (std::size_t j = 0; j < d_out; ++j) k(j, i) = w * eig.eigenvectors(i * d_out + j, idx);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

QuantumChannel canonical_kraus(const ChoiMatrix& c) {
  return QuantumChannel(kraus_from_choi_operator(c.matrix(), c.d_in(), c.d_out()));
}

QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& then) {
  if (first.d_out() != then.d_in()) {
    throw Error(ErrorKind::DimensionMismatch, "compose: first.d_out != then.d_in");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * then.kraus().size());
  for (const auto& l : then.kraus())
    for (const auto& k : first.kraus()) kraus.push_back(l * k);
  return QuantumChannel::cp_map(std::move(kraus));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& k : a.kraus())
    for (const auto& r : b.kraus()) kraus.push_back(kron(k, r));
  return QuantumChannel::cp_map(std::move(kraus));
}

QuantumChannel adjoint(const QuantumChannel& ch) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) kraus.push_back(k.adjoint());
  return QuantumChannel::cp_map(std::move(kraus));
}

bool is_cptp(const QuantumChannel& ch, double tol) {
  if (ch.trace_preservation_error() > tol) return false;
  return min_eigenvalue(choi_operator(ch)) >= -tol;
}

std::size_t max_kraus_rank(const QuantumChannel& ch, double tol) {
  std::size_t best = 0;
  for (const auto& k : ch.kraus()) best = std::max(best, matrix_rank(k, tol));
  return best;
}

double action_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw Error(ErrorKind::DimensionMismatch, "action_distance: channel shapes differ");
  }
  double worst = 0.0;
  const std::size_t d = a.d_in();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexMatrix unit = ComplexMatrix::unit(d, i, j);
      worst = std::max(worst, max_abs_diff(apply_to_operator(a, unit), apply_to_operator(b, unit)));
    }
  return worst;
}

QuantumChannel random_channel(std::size_t d, std::size_t kraus_count, std::uint64_t seed) {
  if (d < 1 || kraus_count < 1) throw Error(ErrorKind::InvalidDimension, "random_channel");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t rows = d * kraus_count;
  for (;;) {
    ComplexMatrix iso(rows, d);
    for (Complex& z : iso.data()) z = Complex(gauss(rng), gauss(rng));
    if (!orthonormalize_columns(iso)) continue;
    std::vector<ComplexMatrix> kraus;
    for (std::size_t a = 0; a < kraus_count; ++a) {
      ComplexMatrix k(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) k(i, j) = iso(a * d + i, j);
      kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus));
  }
}

QuantumChannel random_channel_with_kraus_rank(std::size_t d, std::size_t kraus_count,
                                              std::size_t max_rank, std::uint64_t seed) {
  if (max_rank < 1 || max_rank > d) throw Error(ErrorKind::InvalidRank, "Kraus rank outside [1, d]");
  if (kraus_count < 1) throw Error(ErrorKind::InvalidDimension, "kraus_count must be >= 1");
  if (kraus_count * max_rank < d) {
    throw Error(ErrorKind::InvalidRank, "kraus_count * max_rank < d: sum of K^dagger K cannot be invertible");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0;; ++attempt) {
    if (attempt == 1000) throw Error(ErrorKind::NotPSD, "could not draw an invertible sum of K^dagger K");
    std::vector<ComplexMatrix> raw;
    for (std::size_t a = 0; a < kraus_count; ++a) {
      ComplexMatrix left(d, max_rank), right(max_rank, d);
      for (Complex& z : left.data()) z = Complex(gauss(rng), gauss(rng));
      for (Complex& z : right.data()) z = Complex(gauss(rng), gauss(rng));
      raw.push_back(left * right);
    }
    const ComplexMatrix s = sum_kdagger_k(raw);
    const auto spectrum = hermitian_eigenvalues(s);
    if (spectrum.front() < 1e-6 * spectrum.back()) continue;  // S must be safely invertible
    const ComplexMatrix inv_sqrt = spectral_apply(s, [](double x) { return 1.0 / std::sqrt(x); });
    for (auto& k : raw) k = k * inv_sqrt;
    return QuantumChannel(std::move(raw));
  }
}

}  // namespace schmidt_lens
