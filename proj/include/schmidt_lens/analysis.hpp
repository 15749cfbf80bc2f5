#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schmidt_lens/channels.hpp"
#include "schmidt_lens/schmidt.hpp"

namespace schmidt_lens {

inline constexpr double kBisectionTol = 1e-9;
inline constexpr double kNegativityTol = 1e-9;

enum class Family { Depolarizing, Dephasing, Custom };

Family parse_family(std::string_view name);  // throws UnknownFamily
std::string_view to_string(Family f);

// Parameter in [0, 1] -> channel.
using ChannelFamily = std::function<QuantumChannel(double)>;

// Named one-parameter family of dimension d. Custom has no parametrization
// and throws UnknownFamily.
ChannelFamily family_channel(Family f, std::size_t d);

struct SweepRecord {
  double parameter = 0.0;
  double value = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

// Uniform grid of `grid` points on [0, 1], endpoints included.
std::vector<double> uniform_grid(std::size_t grid);

// Witness value of the Choi state along the family. `threads` > 1 spreads
// grid points across workers; records are always ordered by parameter.
std::vector<SweepRecord> snbc_witness_sweep(Family family, std::size_t d, std::size_t r,
                                            std::size_t grid, unsigned threads = 1);
std::vector<SweepRecord> snbc_witness_sweep(const ChannelFamily& family, std::size_t d,
                                            std::size_t r, std::size_t grid, unsigned threads = 1);
// A fixed channel evaluated at every grid point.
std::vector<SweepRecord> snbc_witness_sweep(const QuantumChannel& ch, std::size_t r,
                                            std::size_t grid, unsigned threads = 1);

// Adjacent grid cells whose values have strictly opposite signs, or a grid
// point that is exactly zero between non-zero neighbours.
struct SignChange {
  double lo;
  double hi;
};
std::vector<SignChange> sign_changes(const std::vector<SweepRecord>& records);

// Midpoint bisection to a bracket of width <= tol. Requires f(lo) f(hi) < 0.
double bisect_crossing(const std::function<double(double)>& f, double lo, double hi,
                       double tol = kBisectionTol);

// Bisected parameter where the witness value of the family's Choi state
// crosses zero.
double witness_crossing(Family family, std::size_t d, std::size_t r, double tol = kBisectionTol);

// Point of the probability simplex (squared Schmidt coefficients).
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> q);
  static SimplexPoint uniform(std::size_t n);

  const std::vector<double>& q() const noexcept { return q_; }
  std::size_t size() const noexcept { return q_.size(); }

 private:
  std::vector<double> q_;
};

// All points n_i / N with sum n_i = N, in lexicographic order of (n_0, n_1, ...).
std::vector<SimplexPoint> simplex_lattice(std::size_t dim, std::size_t subdivisions);

// (ch (x) ch)(|psi><psi|) with |psi> = sum_j sqrt(q_j) |jj>.
DensityMatrix two_local_output(const QuantumChannel& ch, const SimplexPoint& q);
// Same with Schmidt vectors U|j> and V|j>.
DensityMatrix two_local_output(const QuantumChannel& ch, const SimplexPoint& q,
                               const ComplexMatrix& local_a, const ComplexMatrix& local_b);

// Lowest eigenvalue of (id (x) Lambda_k)(two_local_output(ch, q)).
double snac_min_eig(const QuantumChannel& ch, const SimplexPoint& q, double k);
double snac_min_eig(const QuantumChannel& ch, const SimplexPoint& q, double k,
                    const ComplexMatrix& local_a, const ComplexMatrix& local_b);

struct SnacRecord {
  double parameter = 0.0;
  double value = 0.0;  // lattice-minimal snac_min_eig
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> q_star;
};

// For each p on a uniform grid, minimize snac_min_eig over the simplex
// lattice. Ties keep the first lattice point in lattice order.
std::vector<SnacRecord> snac_sweep(const ChannelFamily& family, std::size_t d, double k,
                                   std::size_t p_grid, std::size_t q_grid, unsigned threads = 1);
std::vector<SnacRecord> snac_sweep(std::size_t d, double k, std::size_t p_grid, std::size_t q_grid,
                                   unsigned threads = 1);

// Bisected p at which the partial transpose of the isotropic state first
// acquires a negative eigenvalue.
double eb_ppt_threshold(std::size_t d, double tol = kBisectionTol);

struct RelationReport {
  std::size_t d = 0;
  std::size_t r = 0;
  double eb_threshold = 0.0;
  double snbc_threshold = 0.0;
  double eb_analytic = 0.0;
  double snbc_analytic = 0.0;
  bool gap_nonempty = false;
  std::optional<double> midpoint;
  std::optional<double> pt_min_eig_at_midpoint;
  std::optional<double> witness_at_midpoint;
  // Midpoint is r-SNBC certified-consistent yet PPT-violating (not EB).
  bool midpoint_separates = false;
};

RelationReport relation_report(std::size_t d, std::size_t r, double tol = kBisectionTol);

struct TheoremCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

// Convexity (T1), series closure (T3), tensor-rank counterexample (T4),
// one-sided closure (P1) and adjoint rank equality (P2), each on seeded
// random instances.
std::vector<TheoremCheck> theorem_suite(std::uint64_t seed);

}  // namespace schmidt_lens
