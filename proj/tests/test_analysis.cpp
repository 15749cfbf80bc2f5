#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "schmidt_lens/analysis.hpp"
#include "schmidt_lens/states.hpp"

using namespace schmidt_lens;
using testing::error_kind_of;

TEST_CASE("family names") {
  CHECK(parse_family("depolarizing") == Family::Depolarizing);
  CHECK(parse_family("dephasing") == Family::Dephasing);
  CHECK(parse_family("custom") == Family::Custom);
  CHECK(to_string(Family::Dephasing) == "dephasing");
  CHECK(error_kind_of([] { parse_family("amplitude_damping"); }) == ErrorKind::UnknownFamily);
  CHECK(error_kind_of([] { family_channel(Family::Custom, 3); }) == ErrorKind::UnknownFamily);
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == 0.5);
  CHECK_THROWS_AS(uniform_grid(1), Error);
}

TEST_CASE("depolarizing witness sweep") {
  const auto records = snbc_witness_sweep(Family::Depolarizing, 3, 2, 101);
  REQUIRE(records.size() == 101);
  CHECK(records.front().value == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(records.back().value == doctest::Approx(-0.5).epsilon(1e-13));
  const auto changes = sign_changes(records);
  REQUIRE(changes.size() == 1);
  CHECK(changes[0].lo <= 0.625);
  CHECK(changes[0].hi >= 0.625);
  CHECK(changes[0].hi - changes[0].lo < 0.011);
  for (const auto& rec : records) {
    CHECK(rec.verdict == (rec.value < -1e-9 ? Verdict::CertifiedAbove : Verdict::ConsistentWithAtMost));
  }
}

TEST_CASE("dephasing witness sweep") {
  const auto records = snbc_witness_sweep(Family::Dephasing, 3, 2, 101);
  CHECK(records.front().value == doctest::Approx(0.5).epsilon(1e-14));
  const auto changes = sign_changes(records);
  REQUIRE(changes.size() == 1);
  CHECK(changes[0].lo <= 0.5);
  CHECK(changes[0].hi >= 0.5);
}

TEST_CASE("sweeps are identical across thread counts") {
  const auto one = snbc_witness_sweep(Family::Depolarizing, 4, 2, 41, 1);
  const auto many = snbc_witness_sweep(Family::Depolarizing, 4, 2, 41, 4);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].parameter == many[i].parameter);
    CHECK(one[i].value == many[i].value);
  }
}

TEST_CASE("fixed-channel sweep of the identity is constant") {
  const auto records = snbc_witness_sweep(identity_channel(3), 2, 11);
  for (const auto& rec : records) CHECK(rec.value == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("bisect_crossing") {
  CHECK(std::abs(bisect_crossing([](double x) { return x - 0.5; }, 0.0, 1.0, 1e-9) - 0.5) <= 1e-9);
  CHECK(std::abs(bisect_crossing([](double x) { return 0.3 - x * x; }, 0.0, 1.0, 1e-12) - std::sqrt(0.3)) <= 1e-12);
  CHECK(error_kind_of([] { bisect_crossing([](double x) { return x + 1.0; }, 0.0, 1.0); }) == ErrorKind::NoSignChange);
  CHECK(std::abs(witness_crossing(Family::Depolarizing, 3, 2) - 0.625) <= 1e-9);
  CHECK(std::abs(witness_crossing(Family::Dephasing, 3, 2) - 0.5) <= 1e-9);
}

TEST_CASE("crossing matches the general law") {
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t r = 1; r < d; ++r) {
      CHECK(std::abs(witness_crossing(Family::Depolarizing, d, r) - isotropic_sn_threshold(d, r)) <= 1e-8);
      if (r >= 2) CHECK(std::abs(witness_crossing(Family::Dephasing, d, r) - dephasing_sn_threshold(d, r)) <= 1e-8);
    }
}

TEST_CASE("dephasing witness has no interior crossing at r = 1") {
  // Threshold (r - 1)/(d - 1) = 0 sits on the boundary of [0, 1].
  CHECK(error_kind_of([] { witness_crossing(Family::Dephasing, 3, 1); }) == ErrorKind::NoSignChange);
}

TEST_CASE("simplex points and lattice") {
  CHECK(error_kind_of([] { SimplexPoint({0.5, 0.6}); }) == ErrorKind::NotNormalized);
  CHECK(error_kind_of([] { SimplexPoint({1.2, -0.2}); }) == ErrorKind::ParamOutOfRange);
  const auto lattice = simplex_lattice(3, 30);
  CHECK(lattice.size() == 496);
  CHECK(lattice.front().q() == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(lattice.back().q() == std::vector<double>{1.0, 0.0, 0.0});
  bool has_uniform = false;
  for (const auto& pt : lattice) {
    double total = 0.0;
    for (double x : pt.q()) {
      CHECK(x >= 0.0);
      total += x;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    has_uniform = has_uniform || (pt.q()[0] == 10.0 / 30.0 && pt.q()[1] == 10.0 / 30.0);
  }
  CHECK(has_uniform);
}

TEST_CASE("two-local output") {
  const DensityMatrix prod = two_local_output(identity_channel(3), SimplexPoint({1.0, 0.0, 0.0}));
  CHECK(max_abs_diff(prod.matrix(), ComplexMatrix::unit(9, 0, 0)) < 1e-15);

  const auto lattice = simplex_lattice(3, 5);
  for (double p : {0.0, 0.2, 0.5, 0.77, 1.0})
    for (const auto& q : lattice) {
      const ComplexMatrix mine = two_local_output(depolarizing(3, p), q).matrix();
      CHECK(max_abs_diff(mine, oracle::two_local_depolarizing(3, p, q.q())) < 1e-14);
    }

  const ComplexMatrix full = two_local_output(depolarizing(3, 1.0), SimplexPoint::uniform(3)).matrix();
  CHECK(max_abs_diff(partial_trace(full, {3, 3}, Subsystem::A), ComplexMatrix::identity(3) * Complex(1.0 / 3)) <
        1e-14);
  CHECK(error_kind_of([] { two_local_output(depolarizing(3, 0.5), SimplexPoint::uniform(2)); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("snac minimum eigenvalue at uniform q") {
  // The uniform-q output is the isotropic state of weight p^2; its lowest
  // (id (x) Lambda_k) eigenvalue is 1/3 - k (p^2 + (1 - p^2)/9).
  for (double k : {0.5, 1.0})
    for (double p : uniform_grid(21)) {
      const ComplexMatrix out = apply_id_lambda(two_local_output(depolarizing(3, p), SimplexPoint::uniform(3)), k);
      const double expected = 1.0 / 3.0 - k * (p * p + (1.0 - p * p) / 9.0);
      CHECK(std::abs(snac_min_eig(depolarizing(3, p), SimplexPoint::uniform(3), k) - expected) < 1e-12);
      CHECK(std::abs(oracle::min_eig(out) - expected) < 1e-12);
    }
  // At k = 1 the closed form reduces to (2 - 8 p^2)/9.
  for (double p : uniform_grid(11)) {
    CHECK(std::abs(snac_min_eig(depolarizing(3, p), SimplexPoint::uniform(3), 1.0) - (2.0 - 8.0 * p * p) / 9.0) <
          1e-12);
  }
}

TEST_CASE("snac_min_eig is invariant under local unitaries on the input") {
  const ComplexMatrix u = random_unitary(3, 1), v = random_unitary(3, 2);
  const SimplexPoint q({0.5, 0.3, 0.2});
  for (double p : {0.1, 0.6, 0.95}) {
    const QuantumChannel ch = depolarizing(3, p);
    CHECK(std::abs(snac_min_eig(ch, q, 0.5, u, v) - snac_min_eig(ch, q, 0.5)) < 1e-12);
  }
}

TEST_CASE("snac sweep") {
  const auto recs = snac_sweep(3, 0.5, 5, 6);
  REQUIRE(recs.size() == 5);
  CHECK(recs.front().parameter == 0.0);
  CHECK(recs.back().parameter == 1.0);
  // p = 1: the uniform point minimizes, value 1/3 - 1/2.
  CHECK(recs.back().value == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
  CHECK(recs.back().q_star == SimplexPoint::uniform(3).q());
  CHECK(recs.back().verdict == Verdict::CertifiedAbove);
  // p = 0: every output is I/9, every lattice point ties, the first is kept.
  CHECK(recs.front().q_star == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(recs.front().verdict == Verdict::ConsistentWithAtMost);

  const auto threaded = snac_sweep(3, 0.5, 5, 6, 3);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(threaded[i].value == recs[i].value);
    CHECK(threaded[i].q_star == recs[i].q_star);
  }
  CHECK(error_kind_of([] { snac_sweep(3, 0.0, 5, 6); }) == ErrorKind::ParamOutOfRange);
  CHECK(error_kind_of([] { snac_sweep(3, 1.5, 5, 6); }) == ErrorKind::ParamOutOfRange);
}

TEST_CASE("EB threshold") {
  CHECK(std::abs(eb_ppt_threshold(2) - 1.0 / 3.0) <= 1e-9);
  CHECK(std::abs(eb_ppt_threshold(3) - 0.25) <= 1e-9);
  CHECK(std::abs(eb_ppt_threshold(4) - 0.2) <= 1e-9);
}

TEST_CASE("relation report") {
  const RelationReport r32 = relation_report(3, 2);
  CHECK(r32.gap_nonempty);
  CHECK(r32.eb_threshold == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(r32.snbc_threshold == doctest::Approx(0.625).epsilon(1e-8));
  REQUIRE(r32.midpoint.has_value());
  CHECK(*r32.pt_min_eig_at_midpoint < 0.0);
  CHECK(*r32.witness_at_midpoint > 0.0);
  CHECK(r32.midpoint_separates);

  const RelationReport r31 = relation_report(3, 1);
  CHECK_FALSE(r31.gap_nonempty);
  CHECK_FALSE(r31.midpoint.has_value());

  const RelationReport r42 = relation_report(4, 2);
  CHECK(r42.eb_threshold == doctest::Approx(0.2).epsilon(1e-8));
  CHECK(r42.snbc_threshold == doctest::Approx(7.0 / 15.0).epsilon(1e-8));
  CHECK(error_kind_of([] { relation_report(3, 3); }) == ErrorKind::InvalidRank);
}

TEST_CASE("theorem suite") {
  const auto checks = theorem_suite(0);
  REQUIRE(checks.size() == 5);
  const char* names[] = {"t1", "t3", "t4", "p1", "p2"};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CHECK(checks[i].name == names[i]);
    CHECK_MESSAGE(checks[i].passed, checks[i].detail);
  }
  CHECK(checks[2].detail.find("2x2->4") != std::string::npos);
  // Deterministic for a fixed seed.
  const auto again = theorem_suite(0);
  for (std::size_t i = 0; i < checks.size(); ++i) CHECK(checks[i].metrics == again[i].metrics);
}
