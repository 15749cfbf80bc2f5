#include <cmath>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "schmidt_lens/channels.hpp"
#include "schmidt_lens/schmidt.hpp"
#include "schmidt_lens/states.hpp"

using namespace schmidt_lens;
using testing::error_kind_of;

namespace {

DensityMatrix random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix x = testing::random_matrix(n, n, rng);
  ComplexMatrix rho = x * x.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return DensityMatrix(rho);
}

ComplexMatrix dephased_phi(std::size_t d, double v) {
  ComplexMatrix out = max_entangled(d).projector() * Complex(v);
  for (std::size_t i = 0; i < d; ++i) out(i * d + i, i * d + i) += (1.0 - v) / static_cast<double>(d);
  return out;
}

}  // namespace

TEST_CASE("identity channel leaves states unchanged") {
  const DensityMatrix rho = random_state(3, 1);
  CHECK(max_abs_diff(apply(identity_channel(3), rho).matrix(), rho.matrix()) < 1e-15);
  const DensityMatrix bip = random_state(9, 2);
  const DensityMatrix bip_dims(bip.matrix(), {3, 3});
  CHECK(max_abs_diff(apply_on_B(identity_channel(3), bip_dims).matrix(), bip.matrix()) < 1e-15);
}

TEST_CASE("depolarizing action") {
  const DensityMatrix rho = random_state(3, 3);
  CHECK(max_abs_diff(apply(depolarizing(3, 0.0), rho).matrix(), ComplexMatrix::identity(3) * Complex(1.0 / 3)) <
        1e-14);
  CHECK(max_abs_diff(apply(depolarizing(3, 1.0), rho).matrix(), rho.matrix()) < 1e-14);
  const DensityMatrix zero(ComplexMatrix::unit(3, 0, 0));
  const ComplexMatrix out = apply(depolarizing(3, 0.5), zero).matrix();
  CHECK(max_abs_diff(out, ComplexMatrix::diagonal({2.0 / 3, 1.0 / 6, 1.0 / 6})) < 1e-14);
  CHECK(depolarizing(3, 0.5).kraus().size() == 9);
  CHECK(error_kind_of([] { depolarizing(3, 1.01); }) == ErrorKind::ParamOutOfRange);
  CHECK(error_kind_of([] { depolarizing(1, 0.5); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("dephasing action") {
  const DensityMatrix rho = random_state(3, 4);
  CHECK(max_abs_diff(apply(dephasing(3, 1.0), rho).matrix(), rho.matrix()) < 1e-14);
  ComplexMatrix diag(3, 3);
  for (std::size_t i = 0; i < 3; ++i) diag(i, i) = rho.matrix()(i, i);
  CHECK(max_abs_diff(apply(dephasing(3, 0.0), rho).matrix(), diag) < 1e-14);
  const ComplexMatrix half = apply(dephasing(3, 0.3), rho).matrix();
  CHECK(std::abs(half(0, 1) - 0.3 * rho.matrix()(0, 1)) < 1e-14);
  CHECK(std::abs(half(2, 2) - rho.matrix()(2, 2)) < 1e-14);
  CHECK(error_kind_of([] { dephasing(3, -0.2); }) == ErrorKind::ParamOutOfRange);
}

TEST_CASE("apply_on_B with depolarizing gives the isotropic state") {
  const DensityMatrix phi = DensityMatrix::from_pure(max_entangled(3));
  for (double p : {0.0, 0.25, 0.625, 1.0}) {
    CHECK(max_abs_diff(apply_on_B(depolarizing(3, p), phi).matrix(), isotropic_state(3, p).matrix()) < 1e-14);
  }
  CHECK(error_kind_of([&] { apply_on_B(depolarizing(2, 0.5), phi); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([&] { apply(depolarizing(2, 0.5), phi); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("Choi matrices of the named families") {
  CHECK(max_abs_diff(choi(identity_channel(3)).matrix(), max_entangled(3).projector()) < 1e-15);
  for (double p : {0.0, 0.3, 0.9}) {
    CHECK(max_abs_diff(choi(depolarizing(3, p)).matrix(), isotropic_state(3, p).matrix()) < 1e-14);
    CHECK(max_abs_diff(choi(dephasing(3, p)).matrix(), dephased_phi(3, p)) < 1e-14);
  }
  ComplexMatrix rect(2, 3);
  rect(0, 0) = 1.0;
  rect(1, 1) = 1.0;
  ComplexMatrix rest(2, 3);
  rest(0, 2) = 1.0;
  const QuantumChannel nonsquare({rect, rest});
  CHECK(error_kind_of([&] { choi(nonsquare); }) == ErrorKind::NonSquareChannel);
}

TEST_CASE("ChoiMatrix validation") {
  CHECK(error_kind_of([] { ChoiMatrix(ComplexMatrix::diagonal({1, 0, 0, 0}), 2, 2); }) ==
        ErrorKind::NotTracePreserving);
  CHECK(error_kind_of([] { ChoiMatrix(ComplexMatrix::diagonal({0.75, -0.25, 0.25, 0.25}), 2, 2); }) ==
        ErrorKind::NotPSD);
}

TEST_CASE("canonical Kraus decomposition") {
  const QuantumChannel one = canonical_kraus(choi(identity_channel(3)));
  REQUIRE(one.kraus().size() == 1);
  const ComplexMatrix& k = one.kraus()[0];
  const Complex phase = k(0, 0);
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
  CHECK(max_abs_diff(k, ComplexMatrix::identity(3) * phase) < 1e-12);

  const ChoiMatrix mixed(ComplexMatrix::identity(9) * Complex(1.0 / 9.0), 3, 3);
  const QuantumChannel nine = canonical_kraus(mixed);
  REQUIRE(nine.kraus().size() == 9);
  for (const auto& op : nine.kraus()) {
    CHECK(matrix_rank(op) == 1);
    CHECK(op.frobenius_norm() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }

  const ChoiMatrix c = choi(depolarizing(3, 0.7));
  CHECK(max_abs_diff(choi(canonical_kraus(c)).matrix(), c.matrix()) < 1e-8);
}

TEST_CASE("canonical Kraus ranks of depolarizing(3, 0.5)") {
  const QuantumChannel ch = canonical_kraus(choi(depolarizing(3, 0.5)));
  REQUIRE(ch.kraus().size() == 9);
  // Largest Choi eigenvalue first: its Kraus operator is proportional to I.
  CHECK(matrix_rank(ch.kraus()[0]) == 3);
  std::size_t rank_one = 0;
  for (std::size_t i = 1; i < ch.kraus().size(); ++i) rank_one += matrix_rank(ch.kraus()[i]) == 1;
  // The remaining eigenvalue is 8-fold degenerate, so its eigenbasis is not
  // unique; only the identity component has a fixed rank.
  CHECK(rank_one <= 8);
  CHECK(sn_upper_bound_via_kraus(depolarizing(3, 0.5)) == 3);
}

TEST_CASE("is_cptp") {
  CHECK(is_cptp(identity_channel(3)));
  CHECK_FALSE(is_cptp(QuantumChannel::cp_map({ComplexMatrix::identity(2) * Complex(std::sqrt(2.0))})));
  for (int i = 0; i <= 20; ++i) CHECK(is_cptp(depolarizing(3, i / 20.0)));
  CHECK(error_kind_of([] { QuantumChannel({ComplexMatrix::identity(2) * Complex(std::sqrt(2.0))}); }) ==
        ErrorKind::NotTracePreserving);
  CHECK(error_kind_of([] { QuantumChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([] { QuantumChannel(std::vector<ComplexMatrix>{}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("composition") {
  for (double p1 : {0.2, 0.5, 0.9})
    for (double p2 : {0.1, 0.6}) {
      CHECK(action_distance(compose(depolarizing(3, p1), depolarizing(3, p2)), depolarizing(3, p1 * p2)) < 1e-14);
    }
  const QuantumChannel a = random_channel(3, 2, 1), b = random_channel(3, 3, 2), c = random_channel(3, 2, 3);
  CHECK(action_distance(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-13);
  // compose(first, then) applies `first` to the input.
  const DensityMatrix rho = random_state(3, 8);
  CHECK(max_abs_diff(apply(compose(a, b), rho).matrix(), apply(b, apply(a, rho)).matrix()) < 1e-13);
  CHECK(error_kind_of([] { compose(depolarizing(2, 0.5), depolarizing(3, 0.5)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("tensor and adjoint") {
  ComplexMatrix k1(3, 3), k2(3, 3);
  k1(0, 0) = k1(1, 1) = 1.0;
  k2(0, 2) = 1.0;
  const QuantumChannel ch({k1, k2});
  CHECK(max_kraus_rank(ch) == 2);
  CHECK(max_kraus_rank(tensor(ch, ch)) == 4);
  CHECK(is_cptp(tensor(depolarizing(2, 0.3), dephasing(3, 0.4))));

  const QuantumChannel r = random_channel(3, 3, 17);
  CHECK(action_distance(adjoint(adjoint(r)), r) < 1e-15);
  // The adjoint of a channel is unital.
  CHECK(max_abs_diff(apply_to_operator(adjoint(r), ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) < 1e-13);
  // Duality: Tr(Phi(X) Y) = Tr(X Phi*(Y)).
  std::mt19937_64 rng(6);
  const ComplexMatrix x = testing::random_matrix(3, 3, rng), y = testing::random_matrix(3, 3, rng);
  const Complex lhs = (apply_to_operator(r, x) * y).trace();
  const Complex rhs = (x * apply_to_operator(adjoint(r), y)).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("random channels") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(is_cptp(random_channel(3, 4, seed)));
    const QuantumChannel low = random_channel_with_kraus_rank(3, 3, 2, seed);
    CHECK(is_cptp(low));
    CHECK(max_kraus_rank(low) <= 2);
  }
  CHECK(error_kind_of([] { random_channel_with_kraus_rank(3, 2, 1, 0); }) == ErrorKind::InvalidRank);
  CHECK(error_kind_of([] { random_channel_with_kraus_rank(3, 2, 4, 0); }) == ErrorKind::InvalidRank);
}

TEST_CASE("Choi round trip on random channels") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChoiMatrix c = choi(random_channel(3, 1 + seed % 5, seed));
    CHECK(max_abs_diff(choi(canonical_kraus(c)).matrix(), c.matrix()) < 1e-8);
  }
}

TEST_CASE("JSON round trip and parse errors") {
  const QuantumChannel ch = random_channel(3, 2, 4);
  const QuantumChannel back = channel_from_json(channel_to_json(ch));
  REQUIRE(back.kraus().size() == ch.kraus().size());
  for (std::size_t i = 0; i < ch.kraus().size(); ++i) CHECK(back.kraus()[i] == ch.kraus()[i]);

  const QuantumChannel id = channel_from_json(R"({"d_in":2,"d_out":2,"kraus":[[[1,0],[0,0],[0,0],[1,0]]]})");
  CHECK(action_distance(id, identity_channel(2)) == 0.0);

  CHECK(error_kind_of([] { channel_from_json("{"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { channel_from_json(R"({"d_in":2,"d_out":2})"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { channel_from_json(R"({"d_in":2,"d_out":2,"kraus":[[[1,0]]]})"); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind_of([] { channel_from_json(R"({"d_in":2,"d_out":2,"kraus":[[[2,0],[0,0],[0,0],[1,0]]]})"); }) ==
        ErrorKind::NotTracePreserving);
  CHECK(error_kind_of([] { load_channel_file("/nonexistent/channel.json"); }) == ErrorKind::ParseError);

  const auto path = std::filesystem::temp_directory_path() / "schmidt_lens_channel_test.json";
  std::ofstream(path) << channel_to_json(depolarizing(3, 0.4));
  CHECK(action_distance(load_channel_file(path), depolarizing(3, 0.4)) < 1e-15);
  std::filesystem::remove(path);
}
