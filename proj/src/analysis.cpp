#include "schmidt_lens/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "parallel.hpp"
#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

namespace {

void check_grid(std::size_t grid, const char* name) {
  if (grid < 2) throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " must be >= 2");
}

Verdict verdict_for(double value) {
  return value < -kNegativityTol ? Verdict::CertifiedAbove : Verdict::ConsistentWithAtMost;
}

// |psi> = sum_j sqrt(q_j) U|j> (x) V|j>
std::vector<Complex> schmidt_vector(const SimplexPoint& q, const ComplexMatrix& u, const ComplexMatrix& v) {
  const std::size_t d = q.size();
  std::vector<Complex> psi(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    const double w = std::sqrt(q.q()[j]);
    if (w == 0.0) continue;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) psi[a * d + b] += w * u(a, j) * v(b, j);
  }
  return psi;
}

DensityMatrix two_local_apply(const QuantumChannel& pair, std::size_t d, const SimplexPoint& q,
                              const ComplexMatrix& u, const ComplexMatrix& v) {
  ComplexMatrix out = apply_to_operator(pair, ComplexMatrix::outer(schmidt_vector(q, u, v)));
  return DensityMatrix(std::move(out), {d, d});
}

void check_two_local(const QuantumChannel& ch, const SimplexPoint& q) {
  if (!ch.is_square() || ch.d_in() != q.size()) {
    throw Error(ErrorKind::DimensionMismatch, "two-local analysis needs a square channel with d = |q|");
  }
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "depolarizing") return Family::Depolarizing;
  if (name == "dephasing") return Family::Dephasing;
  if (name == "custom") return Family::Custom;
  throw Error(ErrorKind::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Depolarizing: return "depolarizing";
    case Family::Dephasing: return "dephasing";
    case Family::Custom: return "custom";
  }
  return "custom";
}

ChannelFamily family_channel(Family f, std::size_t d) {
  switch (f) {
    case Family::Depolarizing: return [d](double p) { return depolarizing(d, p); };
    case Family::Dephasing: return [d](double v) { return dephasing(d, v); };
    case Family::Custom: break;
  }
  throw Error(ErrorKind::UnknownFamily, "custom channels have no parametrization");
}

std::vector<double> uniform_grid(std::size_t grid) {
  check_grid(grid, "grid");
  std::vector<double> xs(grid);
  for (std::size_t i = 0; i < grid; ++i) xs[i] = static_cast<double>(i) / static_cast<double>(grid - 1);
  return xs;
}

std::vector<SweepRecord> snbc_witness_sweep(const ChannelFamily& family, std::size_t d, std::size_t r,
                                            std::size_t grid, unsigned threads) {
  const SNWitness w = witness(d, r);
  const std::vector<double> params = uniform_grid(grid);
  std::vector<SweepRecord> records(params.size());
  detail::parallel_for(params.size(), threads, [&](std::size_t i) {
    const double value = witness_value(w, choi(family(params[i])).as_state());
    records[i] = {params[i], value, verdict_for(value)};
  });
  return records;
}

std::vector<SweepRecord> snbc_witness_sweep(Family family, std::size_t d, std::size_t r,
                                            std::size_t grid, unsigned threads) {
  return snbc_witness_sweep(family_channel(family, d), d, r, grid, threads);
}

std::vector<SweepRecord> snbc_witness_sweep(const QuantumChannel& ch, std::size_t r, std::size_t grid,
                                            unsigned threads) {
  if (!ch.is_square()) throw Error(ErrorKind::NonSquareChannel, "witness sweep");
  const double value = witness_value(witness(ch.d_in(), r), choi(ch).as_state());
  std::vector<SweepRecord> records;
  (void)threads;
  for (double x : uniform_grid(grid)) records.push_back({x, value, verdict_for(value)});
  return records;
}

std::vector<SignChange> sign_changes(const std::vector<SweepRecord>& records) {
  std::vector<SignChange> out;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const double a = records[i].value, b = records[i + 1].value;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      out.push_back({records[i].parameter, records[i + 1].parameter});
    } else if (b == 0.0 && a != 0.0 && i + 2 < records.size()) {
      const double c = records[i + 2].value;
      if ((a < 0.0 && c > 0.0) || (a > 0.0 && c < 0.0)) {
        out.push_back({records[i + 1].parameter, records[i + 1].parameter});
      }
    }
  }
  return out;
}

double bisect_crossing(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "bisection tolerance must be positive");
  if (!(lo < hi)) throw Error(ErrorKind::ParamOutOfRange, "bisection needs lo < hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) {
    throw Error(ErrorKind::NoSignChange, "f(" + std::to_string(lo) + ") = " + std::to_string(flo) + ", f(" +
                                             std::to_string(hi) + ") = " + std::to_string(fhi));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double witness_crossing(Family family, std::size_t d, std::size_t r, double tol) {
  const SNWitness w = witness(d, r);
  const ChannelFamily make = family_channel(family, d);
  return bisect_crossing([&](double x) { return witness_value(w, choi(make(x)).as_state()); }, 0.0, 1.0, tol);
}

SimplexPoint::SimplexPoint(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty()) throw Error(ErrorKind::InvalidDimension, "empty simplex point");
  double total = 0.0;
  for (double x : q_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorKind::ParamOutOfRange, "simplex component < 0");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::NotNormalized, "simplex components must sum to 1");
}

SimplexPoint SimplexPoint::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "empty simplex point");
  return SimplexPoint(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::vector<SimplexPoint> simplex_lattice(std::size_t dim, std::size_t subdivisions) {
  if (dim == 0) throw Error(ErrorKind::InvalidDimension, "simplex dimension must be >= 1");
  check_grid(subdivisions, "q_grid");
  std::vector<SimplexPoint> points;
  std::vector<std::size_t> counts(dim, 0);
  const double n = static_cast<double>(subdivisions);
  // Enumerate compositions of `subdivisions` into `dim` parts.
  auto recurse = [&](auto&& self, std::size_t slot, std::size_t remaining) -> void {
    if (slot + 1 == dim) {
      counts[slot] = remaining;
      std::vector<double> q(dim);
      for (std::size_t i = 0; i < dim; ++i) q[i] = static_cast<double>(counts[i]) / n;
      points.emplace_back(std::move(q));
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      counts[slot] = c;
      self(self, slot + 1, remaining - c);
    }
  };
  recurse(recurse, 0, subdivisions);
  return points;
}

DensityMatrix two_local_output(const QuantumChannel& ch, const SimplexPoint& q) {
  const ComplexMatrix id = ComplexMatrix::identity(q.size());
  return two_local_output(ch, q, id, id);
}

DensityMatrix two_local_output(const QuantumChannel& ch, const SimplexPoint& q, const ComplexMatrix& local_a,
                               const ComplexMatrix& local_b) {
  check_two_local(ch, q);
  return two_local_apply(tensor(ch, ch), ch.d_in(), q, local_a, local_b);
}

double snac_min_eig(const QuantumChannel& ch, const SimplexPoint& q, double k) {
  return min_eigenvalue(apply_id_lambda(two_local_output(ch, q), k));
}

double snac_min_eig(const QuantumChannel& ch, const SimplexPoint& q, double k, const ComplexMatrix& local_a,
                    const ComplexMatrix& local_b) {
  return min_eigenvalue(apply_id_lambda(two_local_output(ch, q, local_a, local_b), k));
}

std::vector<SnacRecord> snac_sweep(const ChannelFamily& family, std::size_t d, double k, std::size_t p_grid,
                                   std::size_t q_grid, unsigned threads) {
  if (!(k > 0.0 && k <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "k must lie in (0, 1]");
  const std::vector<double> params = uniform_grid(p_grid);
  const std::vector<SimplexPoint> lattice = simplex_lattice(d, q_grid);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  std::vector<SnacRecord> records(params.size());
  detail::parallel_for(params.size(), threads, [&](std::size_t i) {
    const QuantumChannel ch = family(params[i]);
    if (!ch.is_square() || ch.d_in() != d) throw Error(ErrorKind::DimensionMismatch, "family dimension");
    const QuantumChannel pair = tensor(ch, ch);
    double best = std::numeric_limits<double>::infinity();
    const SimplexPoint* best_q = nullptr;
    for (const SimplexPoint& q : lattice) {
      const double value = min_eigenvalue(apply_id_lambda(two_local_apply(pair, d, q, id, id), k));
      // Ties within rounding keep the earlier lattice point.
      if (value < best - 1e-12) {
        best = value;
        best_q = &q;
      }
    }
    records[i] = {params[i], best, verdict_for(best), best_q->q()};
  });
  return records;
}

std::vector<SnacRecord> snac_sweep(std::size_t d, double k, std::size_t p_grid, std::size_t q_grid,
                                   unsigned threads) {
  return snac_sweep(family_channel(Family::Depolarizing, d), d, k, p_grid, q_grid, threads);
}

double eb_ppt_threshold(std::size_t d, double tol) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "d must be >= 2");
  return bisect_crossing(
      [d](double p) {
        return min_eigenvalue(partial_transpose(isotropic_state(d, p).matrix(), {d, d}, Subsystem::B));
      },
      0.0, 1.0, tol);
}

RelationReport relation_report(std::size_t d, std::size_t r, double tol) {
  if (r < 1 || r >= d) throw Error(ErrorKind::InvalidRank, "relation report needs 1 <= r < d");
  RelationReport report;
  report.d = d;
  report.r = r;
  report.eb_threshold = eb_ppt_threshold(d, tol);
  report.snbc_threshold = witness_crossing(Family::Depolarizing, d, r, tol);
  report.eb_analytic = 1.0 / (static_cast<double>(d) + 1.0);
  report.snbc_analytic = isotropic_sn_threshold(d, r);
  // Thresholds within twice the bisection width are the same point.
  report.gap_nonempty = report.snbc_threshold - report.eb_threshold > 2.0 * tol;
  if (report.gap_nonempty) {
    const double mid = 0.5 * (report.eb_threshold + report.snbc_threshold);
    const DensityMatrix rho = isotropic_state(d, mid);
    report.midpoint = mid;
    report.pt_min_eig_at_midpoint = min_eigenvalue(partial_transpose(rho.matrix(), {d, d}, Subsystem::B));
    report.witness_at_midpoint = witness_value(witness(d, r), rho);
    report.midpoint_separates =
        *report.pt_min_eig_at_midpoint < -kNegativityTol && *report.witness_at_midpoint >= -kNegativityTol;
  }
  return report;
}

namespace {

struct Tracker {
  double min_value = std::numeric_limits<double>::infinity();
  std::size_t trials = 0;
  std::size_t violations = 0;

  void observe(double value) {
    ++trials;
    min_value = std::min(min_value, value);
    if (value < -kNegativityTol) ++violations;
  }
};

double choi_witness(const QuantumChannel& ch, std::size_t r) {
  return witness_value(witness(ch.d_in(), r), choi(ch).as_state());
}

TheoremCheck convexity_check(std::mt19937_64& rng) {
  constexpr std::size_t d = 3, r = 2;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tracker t;
  const ChoiMatrix a = choi(depolarizing(d, 0.3));
  const ChoiMatrix b = choi(dephasing(d, 0.4));
  const SNWitness w = witness(d, r);
  const bool components_ok = witness_value(w, a.as_state()) >= -kNegativityTol &&
                             witness_value(w, b.as_state()) >= -kNegativityTol;
  std::vector<double> weights{0.5};
  for (int i = 0; i < 10; ++i) weights.push_back(unit(rng));
  for (double lambda : weights) {
    ComplexMatrix mix = a.matrix() * Complex(lambda) + b.matrix() * Complex(1.0 - lambda);
    t.observe(witness_value(w, DensityMatrix(std::move(mix), {d, d})));
  }
  for (int i = 0; i < 10; ++i) {
    const ChoiMatrix x = choi(random_channel_with_kraus_rank(d, 3, r, rng()));
    const ChoiMatrix y = choi(random_channel_with_kraus_rank(d, 2, r, rng()));
    const double lambda = unit(rng);
    ComplexMatrix mix = x.matrix() * Complex(lambda) + y.matrix() * Complex(1.0 - lambda);
    t.observe(witness_value(w, DensityMatrix(std::move(mix), {d, d})));
  }
  TheoremCheck check{"t1", components_ok && t.violations == 0, "", {}};
  check.detail = "witness on convex mixtures of 2-SNBC Choi states: " + std::to_string(t.violations) +
                 " violations in " + std::to_string(t.trials) + " mixtures";
  check.metrics = {{"trials", double(t.trials)}, {"violations", double(t.violations)}, {"min_witness", t.min_value}};
  return check;
}

TheoremCheck series_check(std::mt19937_64& rng) {
  constexpr std::size_t d = 3, r = 2;
  Tracker t;
  std::size_t worst_rank = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n1 = 2 + rng() % 3, n2 = 2 + rng() % 3;
    const std::uint64_t seed1 = rng(), seed2 = rng();
    const QuantumChannel s1 = random_channel_with_kraus_rank(d, n1, r, seed1);
    const QuantumChannel s2 = random_channel_with_kraus_rank(d, n2, r, seed2);
    const QuantumChannel both = compose(s2, s1);
    worst_rank = std::max(worst_rank, max_kraus_rank(both));
    t.observe(choi_witness(both, r));
  }
  t.observe(choi_witness(compose(dephasing(d, 0.4), depolarizing(d, 0.5)), r));
  TheoremCheck check{"t3", t.violations == 0 && worst_rank <= r, "", {}};
  check.detail = "series concatenation of 2-SNBC channels: max composite Kraus rank " +
                 std::to_string(worst_rank) + ", " + std::to_string(t.violations) + " witness violations";
  check.metrics = {{"trials", double(t.trials)},
                   {"violations", double(t.violations)},
                   {"min_witness", t.min_value},
                   {"max_composite_kraus_rank", double(worst_rank)}};
  return check;
}

TheoremCheck tensor_check() {
  // K1 = |0><0| + |1><1| (rank 2), K2 = |0><2| (rank 1).
  ComplexMatrix k1(3, 3), k2(3, 3);
  k1(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  k2(0, 2) = 1.0;
  const QuantumChannel ch({k1, k2});
  const QuantumChannel pair = tensor(ch, ch);
  const std::size_t single = max_kraus_rank(ch);
  const std::size_t product = max_kraus_rank(pair);
  const std::size_t single_bound = sn_upper_bound_via_kraus(ch);
  const std::size_t product_bound = sn_upper_bound_via_kraus(pair);
  TheoremCheck check{"t4", single == 2 && product == 4 && single_bound == 2 && product_bound == 4, "", {}};
  check.detail = "tensor of two channels with max Kraus rank " + std::to_string(single) +
                 " has a Kraus operator of rank " + std::to_string(product) + " (" +
                 std::to_string(single) + "x" + std::to_string(single) + "->" + std::to_string(product) + ")";
  check.metrics = {{"single_kraus_rank", double(single)},
                   {"tensor_kraus_rank", double(product)},
                   {"single_canonical_bound", double(single_bound)},
                   {"tensor_canonical_bound", double(product_bound)}};
  return check;
}

TheoremCheck one_sided_check(std::mt19937_64& rng) {
  constexpr std::size_t d = 3, r = 2;
  Tracker t;
  for (int i = 0; i < 10; ++i) {
    const QuantumChannel s = random_channel_with_kraus_rank(d, 3, r, rng());
    const std::size_t count = 2 + rng() % 3;
    const QuantumChannel f = random_channel(d, count, rng());
    t.observe(choi_witness(compose(f, s), r));  // S after F
    t.observe(choi_witness(compose(s, f), r));  // F after S
  }
  TheoremCheck check{"p1", t.violations == 0, "", {}};
  check.detail = "S o F and F o S with S 2-SNBC, F arbitrary: " + std::to_string(t.violations) +
                 " violations in " + std::to_string(t.trials);
  check.metrics = {{"trials", double(t.trials)}, {"violations", double(t.violations)}, {"min_witness", t.min_value}};
  return check;
}

TheoremCheck adjoint_check(std::mt19937_64& rng) {
  constexpr std::size_t d = 3;
  std::vector<QuantumChannel> family{depolarizing(d, 0.7), dephasing(d, 0.6)};
  for (int i = 0; i < 3; ++i) family.push_back(random_channel(d, 2, rng()));
  for (int i = 0; i < 3; ++i) family.push_back(random_channel_with_kraus_rank(d, 3, 1, rng()));
  std::size_t mismatches = 0;
  for (const auto& ch : family) {
    if (sn_upper_bound_via_kraus(ch) != sn_upper_bound_via_kraus(adjoint(ch))) ++mismatches;
  }
  TheoremCheck check{"p2", mismatches == 0, "", {}};
  check.detail = "canonical Kraus-rank bound equal for channel and adjoint: " + std::to_string(mismatches) +
                 " mismatches in " + std::to_string(family.size());
  check.metrics = {{"channels", double(family.size())},
                   {"mismatches", double(mismatches)},
                   {"depolarizing_bound", double(sn_upper_bound_via_kraus(family[0]))},
                   {"depolarizing_adjoint_bound", double(sn_upper_bound_via_kraus(adjoint(family[0])))}};
  return check;
}

}  // namespace

std::vector<TheoremCheck> theorem_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TheoremCheck> checks;
  checks.push_back(convexity_check(rng));
  checks.push_back(series_check(rng));
  checks.push_back(tensor_check());
  checks.push_back(one_sided_check(rng));
  checks.push_back(adjoint_check(rng));
  return checks;
}

}  // namespace schmidt_lens
