#pragma once

#include <random>

#include "doctest.h"
#include "schmidt_lens/error.hpp"
#include "schmidt_lens/linalg.hpp"

namespace testing {

using namespace schmidt_lens;

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Complex& z : m.data()) z = Complex(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix x = random_matrix(n, n, rng);
  return (x + x.adjoint()) * Complex(0.5);
}

template <typename F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected schmidt_lens::Error");
  return ErrorKind::ParseError;
}

}  // namespace testing
