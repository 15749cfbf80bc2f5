#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "schmidt_lens/linalg.hpp"
#include "schmidt_lens/states.hpp"

namespace schmidt_lens {

inline constexpr double kTracePreservingTol = 1e-9;

// Completely positive map in Kraus form, rho -> sum_a K_a rho K_a^dagger.
// Constructing through the public constructor enforces trace preservation;
// cp_map() admits arbitrary Kraus lists (adjoints are unital, not TP).
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);
  static QuantumChannel cp_map(std::vector<ComplexMatrix> kraus);

  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  bool is_square() const noexcept { return d_in_ == d_out_; }

  // max |sum K^dagger K - I|
  double trace_preservation_error() const;

 private:
  struct Unchecked {};
  QuantumChannel(std::vector<ComplexMatrix> kraus, Unchecked);

  std::vector<ComplexMatrix> kraus_;
  std::size_t d_in_ = 0;
  std::size_t d_out_ = 0;
};

// (id (x) Phi)(|phi+><phi+|) for a square channel: PSD, unit trace, and
// Tr_out = I / d.
class ChoiMatrix {
 public:
  ChoiMatrix(ComplexMatrix matrix, std::size_t d_in, std::size_t d_out);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  DensityMatrix as_state() const { return DensityMatrix(matrix_, {d_in_, d_out_}); }

 private:
  ComplexMatrix matrix_;
  std::size_t d_in_;
  std::size_t d_out_;
};

QuantumChannel identity_channel(std::size_t d);

// S(rho) = p rho + (1 - p) Tr(rho) I / d, via weighted identity plus the
// d^2 - 1 non-trivial shift/clock unitaries.
QuantumChannel depolarizing(std::size_t d, double p);

// D(rho) = v rho + (1 - v) sum_i <i|rho|i> |i><i|
QuantumChannel dephasing(std::size_t d, double v);

// sum_a K_a X K_a^dagger on any d_in x d_in operator.
ComplexMatrix apply_to_operator(const QuantumChannel& ch, const ComplexMatrix& x);
DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);
// Identity on A, ch on B.
DensityMatrix apply_on_B(const QuantumChannel& ch, const DensityMatrix& rho);

// Unnormalized-check Choi operator sum_a |v_a><v_a| with
// v_a[(i, j)] = K_a[j, i] / sqrt(d_in). Valid for any CP map.
ComplexMatrix choi_operator(const QuantumChannel& ch);
ChoiMatrix choi(const QuantumChannel& ch);

// Kraus operators from the spectral decomposition of a PSD Choi operator,
// discarding eigenvalues below 1e-10 * lambda_max.
std::vector<ComplexMatrix> kraus_from_choi_operator(const ComplexMatrix& c, std::size_t d_in,
                                                    std::size_t d_out);
QuantumChannel canonical_kraus(const ChoiMatrix& c);

// Kraus {L_b K_a}: `first` acts, then `then`.
QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& then);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);
QuantumChannel adjoint(const QuantumChannel& ch);

bool is_cptp(const QuantumChannel& ch, double tol = 1e-9);

// Largest matrix_rank across the channel's own Kraus list.
std::size_t max_kraus_rank(const QuantumChannel& ch, double tol = kDefaultRankTol);

// Largest entrywise difference of the two actions over all d_in^2 matrix
// units. Channel equality is always decided this way.
double action_distance(const QuantumChannel& a, const QuantumChannel& b);

// Random CPTP channel from a Haar isometry split into `kraus_count` blocks.
QuantumChannel random_channel(std::size_t d, std::size_t kraus_count, std::uint64_t seed);

// Random CPTP channel whose Kraus operators all have rank <= max_rank:
// K_a = A_a S^{-1/2} with S = sum A_a^dagger A_a and rank(A_a) <= max_rank.
// Requires kraus_count * max_rank >= d (InvalidRank otherwise).
QuantumChannel random_channel_with_kraus_rank(std::size_t d, std::size_t kraus_count,
                                              std::size_t max_rank, std::uint64_t seed);

// JSON: {"d_in": n, "d_out": m, "kraus": [[[re, im], ...], ...]}, each Kraus
// operator flattened row-major.
std::string channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const std::string& text);
QuantumChannel load_channel_file(const std::filesystem::path& path);

}  // namespace schmidt_lens
