#include "schmidt_lens/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "schmidt_lens/analysis.hpp"
#include "schmidt_lens/error.hpp"

namespace schmidt_lens {

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix x(n, n);
  for (Complex& z : x.data()) z = Complex(gauss(rng), gauss(rng));
  return (x + x.adjoint()) * Complex(0.5);
}

ComplexMatrix random_low_rank(std::size_t rows, std::size_t cols, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (rank == 0) return ComplexMatrix(rows, cols);
  ComplexMatrix left(rows, rank), right(rank, cols);
  for (Complex& z : left.data()) z = Complex(gauss(rng), gauss(rng));
  for (Complex& z : right.data()) z = Complex(gauss(rng), gauss(rng));
  return left * right;
}

// The 3 x 3 two-local depolarizing output written entry by entry.
ComplexMatrix displayed_two_local_depolarizing(double p, const std::vector<double>& q) {
  const double t = (1.0 - p) * (1.0 - p) / 9.0;
  const double s1 = p * (1.0 - p) * (q[0] + q[1]) / 3.0;
  const double s2 = p * (1.0 - p) * (q[0] + q[2]) / 3.0;
  const double s3 = p * (1.0 - p) * (q[1] + q[2]) / 3.0;
  ComplexMatrix m(9, 9);
  const std::size_t jj[3] = {0, 4, 8};
  for (std::size_t j = 0; j < 3; ++j) {
    m(jj[j], jj[j]) = (p * p + 2.0 * p) * q[j] / 3.0 + t;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != j) m(jj[j], jj[k]) = p * p * std::sqrt(q[j] * q[k]);
  }
  m(1, 1) = m(3, 3) = s1 + t;
  m(2, 2) = m(6, 6) = s2 + t;
  m(5, 5) = m(7, 7) = s3 + t;
  return m;
}

struct Counter {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst = 0.0;

  void check(bool ok, double magnitude = 0.0) {
    ++trials;
    if (!ok) ++failures;
    worst = std::max(worst, magnitude);
  }
};

SuiteResult finish(std::string name, std::string summary, const Counter& c,
                   std::vector<std::pair<std::string, double>> extra = {}) {
  SuiteResult out;
  out.name = std::move(name);
  out.passed = c.failures == 0;
  out.summary = std::move(summary) + " (" + std::to_string(c.failures) + " failures in " +
                std::to_string(c.trials) + " checks)";
  out.metrics = {{"checks", double(c.trials)}, {"failures", double(c.failures)}, {"worst", c.worst}};
  out.metrics.insert(out.metrics.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace

SuiteResult linalg_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Counter c;
  for (std::size_t n : {2, 3, 5, 9, 16, 27, 81}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const EigenDecomposition eig = hermitian_eig(h);
    ComplexMatrix rebuilt(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          rebuilt(i, j) += eig.eigenvectors(i, k) * eig.eigenvalues[k] * std::conj(eig.eigenvectors(j, k));
    }
    const double scale = h.max_abs();
    const double recon = max_abs_diff(rebuilt, h) / scale;
    c.check(recon <= 1e-10, recon);
    const double unitarity =
        max_abs_diff(eig.eigenvectors.adjoint() * eig.eigenvectors, ComplexMatrix::identity(n));
    c.check(unitarity <= 1e-10, unitarity);
    double sum = 0.0;
    for (double x : eig.eigenvalues) sum += x;
    const double tr = h.trace().real();
    c.check(std::abs(sum - tr) <= 1e-10 * std::max(1.0, std::abs(tr)));
    c.check(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t da = 2 + rng() % 3, db = 2 + rng() % 3;
    const DensityMatrix a = random_state_sn_at_most(da, 1, 1, 2, rng());
    const DensityMatrix b = random_state_sn_at_most(db, 1, 1, 2, rng());
    const double pt_err = max_abs_diff(partial_trace(kron(a.matrix(), b.matrix()), {da, db}, Subsystem::A), a.matrix());
    c.check(pt_err <= 1e-12, pt_err);
    const ComplexMatrix h = random_hermitian(da * db, rng);
    const ComplexMatrix ptb = partial_transpose(h, {da, db}, Subsystem::B);
    c.check(std::abs(ptb.trace() - h.trace()) <= 1e-12);
    c.check(is_hermitian(ptb, 1e-12));
    c.check(partial_transpose(ptb, {da, db}, Subsystem::B) == h);
  }
  return finish("linalg", "eigendecomposition reconstruction, trace, partial trace/transpose", c);
}

SuiteResult states_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Counter c;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t da = 2 + rng() % 3, db = 2 + rng() % 3;
    const std::size_t r = 1 + rng() % std::min(da, db);
    const PureState psi = random_pure_with_schmidt_rank(da, db, r, rng());
    const auto coeffs = schmidt_coefficients(psi);
    double total = 0.0;
    bool nonneg = true;
    for (double x : coeffs) {
      total += x;
      nonneg = nonneg && x >= 0.0;
    }
    c.check(std::abs(total - 1.0) <= 1e-10 && nonneg, std::abs(total - 1.0));
    c.check(schmidt_rank(psi) == r);
    const ComplexMatrix local = kron(random_unitary(da, rng()), random_unitary(db, rng()));
    const std::vector<Complex> rotated = local * psi.amplitudes();
    double norm = 0.0;
    for (const Complex& z : rotated) norm += std::norm(z);
    std::vector<Complex> normalized = rotated;
    for (Complex& z : normalized) z /= std::sqrt(norm);
    c.check(schmidt_rank(PureState(normalized, {da, db})) == r);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng() % 3;
    const std::size_t terms = 1 + rng() % 4;
    const DensityMatrix rho = random_state_sn_at_most(d, d, 1, terms, rng());
    const double lowest = min_eigenvalue(partial_transpose(rho.matrix(), {d, d}, Subsystem::B));
    c.check(lowest >= -1e-9);
  }
  for (std::size_t d : {2, 3, 4}) {
    for (double p : uniform_grid(11)) {
      const DensityMatrix rho = isotropic_state(d, p);
      c.check(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-12 && min_eigenvalue(rho.matrix()) >= -1e-12);
    }
  }
  return finish("states", "Schmidt coefficients, local-unitary invariance, PPT of separable mixtures", c);
}

SuiteResult channels_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Counter c;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng() % 3;
    const std::size_t count = 1 + rng() % 4;
    const QuantumChannel ch = random_channel(d, count, rng());
    const ComplexMatrix cm = choi_operator(ch);
    const double marginal = max_abs_diff(partial_trace(cm, {d, d}, Subsystem::A),
                                         ComplexMatrix::identity(d) * Complex(1.0 / double(d)));
    c.check(marginal <= 1e-9, marginal);
    c.check(min_eigenvalue(cm) >= -1e-9);
    c.check(is_cptp(ch));
    const double twice = action_distance(adjoint(adjoint(ch)), ch);
    c.check(twice <= 1e-12, twice);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng() % 2;
    const std::uint64_t s1 = rng(), s2 = rng(), s3 = rng();
    const QuantumChannel a = random_channel(d, 2, s1);
    const QuantumChannel b = random_channel(d, 3, s2);
    const QuantumChannel e = random_channel(d, 2, s3);
    const double assoc = action_distance(compose(compose(a, b), e), compose(a, compose(b, e)));
    c.check(assoc <= 1e-9, assoc);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double p1 = unit(rng), p2 = unit(rng);
    const double dist = action_distance(compose(depolarizing(3, p1), depolarizing(3, p2)), depolarizing(3, p1 * p2));
    c.check(dist <= 1e-12, dist);
  }
  return finish("channels", "Choi marginals, complete positivity, associativity, adjoint involution", c);
}

SuiteResult witness_nonnegativity_suite(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  const SNWitness w = witness(3, 2);
  Counter c;
  double lowest = 1.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t terms = 1 + rng() % 4;
    const double value = witness_value(w, random_state_sn_at_most(3, 3, 2, terms, rng()));
    lowest = std::min(lowest, value);
    c.check(value >= -1e-9);
  }
  const double max_ent = witness_value(w, DensityMatrix::from_pure(max_entangled(3)));
  c.check(max_ent < -1e-9);
  return finish("witness", "W(3,2) non-negative on Schmidt-number-2 states, negative on |phi+>", c,
                {{"min_witness", lowest}, {"max_entangled_witness", max_ent}});
}

SuiteResult lambda_window_suite(std::uint64_t seed, std::size_t trials_per_r) {
  std::mt19937_64 rng(seed);
  Counter c;
  double lowest_positive = 1.0, highest_negative = -1.0;
  for (std::size_t r : {1, 2, 3}) {
    const std::size_t d = std::max<std::size_t>(3, r + 1);
    const KWindow window = r_positivity_window(r);
    // Positivity at the window top implies it for every smaller k.
    for (std::size_t i = 0; i < trials_per_r; ++i) {
      const std::size_t terms = 1 + rng() % 3;
      const DensityMatrix rho = random_state_sn_at_most(d, d, r, terms, rng());
      const double value = min_eigenvalue(apply_id_lambda(rho, window.hi));
      lowest_positive = std::min(lowest_positive, value);
      c.check(value >= -1e-9);
    }
    // Maximally entangled state of Schmidt rank r + 1 embedded in d (x) d.
    std::vector<Complex> amps(d * d);
    for (std::size_t i = 0; i <= r; ++i) amps[i * d + i] = 1.0 / std::sqrt(double(r + 1));
    const DensityMatrix probe = DensityMatrix::from_pure(PureState(amps, {d, d}));
    for (int step = 1; step <= 4; ++step) {
      const double k = window.lo + (window.hi - window.lo) * step / 4.0;
      const double value = min_eigenvalue(apply_id_lambda(probe, k));
      highest_negative = std::max(highest_negative, value);
      c.check(window.contains(k) && value < -1e-9);
    }
  }
  return finish("lambda", "Lambda_k r-positive and (r+1)-negative across the window, r = 1..3", c,
                {{"min_eig_on_sn_r_states", lowest_positive}, {"max_eig_on_rank_r_plus_1_probe", highest_negative}});
}

SuiteResult kron_rank_suite(std::uint64_t seed, std::size_t pairs) {
  std::mt19937_64 rng(seed);
  Counter c;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t ar = 1 + rng() % 4, ac = 1 + rng() % 4, br = 1 + rng() % 4, bc = 1 + rng() % 4;
    const std::size_t ra = rng() % (std::min(ar, ac) + 1), rb = rng() % (std::min(br, bc) + 1);
    const ComplexMatrix a = random_low_rank(ar, ac, ra, rng);
    const ComplexMatrix b = random_low_rank(br, bc, rb, rng);
    c.check(matrix_rank(a) == ra && matrix_rank(b) == rb && matrix_rank(kron(a, b)) == ra * rb);
  }
  return finish("kron", "rank(A (x) B) = rank(A) rank(B)", c);
}

SuiteResult choi_round_trip_suite(std::uint64_t seed, std::size_t channels) {
  std::mt19937_64 rng(seed);
  Counter c;
  for (std::size_t i = 0; i < channels; ++i) {
    const std::size_t d = 2 + rng() % 3;
    const std::size_t count = 1 + rng() % 4;
    const QuantumChannel ch = random_channel(d, count, rng());
    const ChoiMatrix cm = choi(ch);
    const QuantumChannel back = canonical_kraus(cm);
    const double choi_err = max_abs_diff(choi(back).matrix(), cm.matrix());
    const double action_err = action_distance(back, ch);
    c.check(choi_err <= 1e-8 && action_err <= 1e-8, std::max(choi_err, action_err));
  }
  return finish("choi", "choi -> canonical Kraus -> choi round trip", c);
}

SuiteResult threshold_suite() {
  Counter c;
  for (std::size_t d : {2, 3, 4}) {
    for (std::size_t r = 1; r < d; ++r) {
      const SNWitness w = witness(d, r);
      const double t = isotropic_sn_threshold(d, r);
      c.check(std::abs(witness_value(w, isotropic_state(d, t))) <= 1e-10);
      c.check(witness_value(w, isotropic_state(d, t - 1e-6)) > 0.0);
      c.check(witness_value(w, isotropic_state(d, t + 1e-6)) < 0.0);
      const double crossing = witness_crossing(Family::Depolarizing, d, r);
      c.check(std::abs(crossing - t) <= 1e-8 && crossing > 0.0 && crossing < 1.0, std::abs(crossing - t));
      if (r >= 2) {
        const double v = dephasing_sn_threshold(d, r);
        const double dc = witness_crossing(Family::Dephasing, d, r);
        c.check(std::abs(dc - v) <= 1e-8 && dc > 0.0 && dc < 1.0, std::abs(dc - v));
      }
    }
    const double eb = eb_ppt_threshold(d);
    c.check(std::abs(eb - 1.0 / (double(d) + 1.0)) <= 1e-8, std::abs(eb - 1.0 / (double(d) + 1.0)));
  }
  return finish("thresholds", "witness sign change at (rd-1)/(d^2-1) and (r-1)/(d-1); PPT at 1/(d+1)", c);
}

SuiteResult certification_monotone_suite(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr std::size_t d = 4;
  Counter c;
  for (std::size_t i = 0; i < trials; ++i) {
    const DensityMatrix rho = (i % 2 == 0)
                                  ? isotropic_state(d, unit(rng))
                                  : random_state_sn_at_most(d, d, 1 + rng() % d, 1 + rng() % 3, rng());
    bool above_at_higher = false;
    bool ok = true;
    for (std::size_t r = d - 1; r >= 1; --r) {
      const bool above = certify_sn_above(rho, r).verdict == Verdict::CertifiedAbove;
      if (above_at_higher && !above) ok = false;
      above_at_higher = above_at_higher || above;
    }
    c.check(ok);
  }
  return finish("monotone", "CertifiedAbove at r implies CertifiedAbove at every r' < r", c);
}

SuiteResult snac_suite(std::uint64_t seed, double k) {
  std::mt19937_64 rng(seed);
  Counter c;
  const std::vector<SimplexPoint> lattice = simplex_lattice(3, 6);
  for (double p : uniform_grid(11)) {
    const QuantumChannel ch = depolarizing(3, p);
    for (std::size_t i = 0; i < lattice.size(); i += 3) {
      const double err = max_abs_diff(two_local_output(ch, lattice[i]).matrix(),
                                      displayed_two_local_depolarizing(p, lattice[i].q()));
      c.check(err <= 1e-12, err);
    }
  }
  // Uniform-q output is isotropic with weight p^2, so the lowest eigenvalue of
  // (id (x) Lambda_k) is 1/d - k (p^2 + (1 - p^2)/d^2).
  double formula_err = 0.0;
  for (double p : uniform_grid(50)) {
    const double expected = 1.0 / 3.0 - k * (p * p + (1.0 - p * p) / 9.0);
    const double err = std::abs(snac_min_eig(depolarizing(3, p), SimplexPoint::uniform(3), k) - expected);
    formula_err = std::max(formula_err, err);
    c.check(err <= 1e-9, err);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double p = unit(rng);
    const SimplexPoint& q = lattice[rng() % lattice.size()];
    const std::uint64_t su = rng(), sv = rng();
    const ComplexMatrix u = random_unitary(3, su), v = random_unitary(3, sv);
    const QuantumChannel ch = depolarizing(3, p);
    const double err = std::abs(snac_min_eig(ch, q, k, u, v) - snac_min_eig(ch, q, k));
    c.check(err <= 1e-9, err);
  }
  return finish("snac", "two-local output matches the displayed matrix; uniform-q closed form; local covariance", c,
                {{"k", k}, {"max_formula_error", formula_err}});
}

SuiteResult relations_suite(std::size_t d, std::size_t r) {
  const RelationReport report = relation_report(d, r);
  Counter c;
  c.check(std::abs(report.eb_threshold - report.eb_analytic) <= 1e-8);
  c.check(std::abs(report.snbc_threshold - report.snbc_analytic) <= 1e-8);
  const bool expect_gap = report.snbc_analytic - report.eb_analytic > 1e-8;
  c.check(report.gap_nonempty == expect_gap);
  if (report.gap_nonempty) c.check(report.midpoint_separates);
  std::vector<std::pair<std::string, double>> extra{{"d", double(d)},
                                                    {"r", double(r)},
                                                    {"gap_lo", report.eb_threshold},
                                                    {"gap_hi", report.snbc_threshold}};
  if (report.midpoint) {
    extra.emplace_back("midpoint", *report.midpoint);
    extra.emplace_back("pt_min_eig_at_midpoint", *report.pt_min_eig_at_midpoint);
    extra.emplace_back("witness_at_midpoint", *report.witness_at_midpoint);
  }
  char gap[96];
  std::snprintf(gap, sizeof gap, "gap (%.6g, %.6g]%s", report.eb_threshold, report.snbc_threshold,
                report.gap_nonempty ? "" : " is empty");
  return finish("relations", std::string("EB vs r-SNBC for depolarizing: ") + gap, c, std::move(extra));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"linalg", "states", "channels", "witness", "lambda",
                                              "kron",   "choi",   "thresholds", "monotone", "snac",
                                              "t1",     "t3",     "t4",       "p1",      "p2",
                                              "relations"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "linalg") return linalg_suite(o.seed);
  if (name == "states") return states_suite(o.seed);
  if (name == "channels") return channels_suite(o.seed);
  if (name == "witness") return witness_nonnegativity_suite(o.seed);
  if (name == "lambda") return lambda_window_suite(o.seed);
  if (name == "kron") return kron_rank_suite(o.seed);
  if (name == "choi") return choi_round_trip_suite(o.seed);
  if (name == "thresholds") return threshold_suite();
  if (name == "monotone") return certification_monotone_suite(o.seed);
  if (name == "snac") return snac_suite(o.seed, o.k);
  if (name == "relations") return relations_suite(o.d, o.r);
  if (name == "t1" || name == "t3" || name == "t4" || name == "p1" || name == "p2") {
    for (const TheoremCheck& check : theorem_suite(o.seed)) {
      if (check.name == name) return {check.name, check.passed, check.detail, check.metrics};
    }
  }
  throw Error(ErrorKind::ParamOutOfRange, "unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& o) {
  std::vector<SuiteResult> results;
  for (const std::string& name : suite_names()) {
    if (name == "t1") {
      for (const TheoremCheck& check : theorem_suite(o.seed))
        results.push_back({check.name, check.passed, check.detail, check.metrics});
      continue;
    }
    if (name == "t3" || name == "t4" || name == "p1" || name == "p2") continue;
    results.push_back(run_suite(name, o));
  }
  return results;
}

}  // namespace schmidt_lens
