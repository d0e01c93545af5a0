#include <doctest.h>

#include <cmath>

#include "drsdiag/linalg.hpp"
#include "oracles.hpp"

using namespace drsdiag;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("vectors reject non-finite entries") {
  CHECK_THROWS_AS((Vec{std::nan("")}), InputError);
  CHECK_THROWS_AS((Vec{1.0, kInf}), InputError);
}

TEST_CASE("eigh on a diagonal matrix returns sorted eigenvalues and axis vectors") {
  EigDecomp d = eigh(SymMat::diag({3.0, 1.0, 2.0}));
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t r = 0; r < 3; ++r) {
      double v = std::abs(d.eigenvectors(r, c));
      CHECK((v < 1e-14 || std::abs(v - 1.0) < 1e-14));
    }
  }
}

TEST_CASE("eigh on the identity") {
  SymMat eye(5);
  for (std::size_t i = 0; i < 5; ++i) eye.set(i, i, 1.0);
  EigDecomp d = eigh(eye);
  for (double lam : d.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigh on the 2x2 exchange matrix") {
  SymMat m(2);
  m.set(1, 0, 1.0);
  EigDecomp d = eigh(m);
  // characteristic polynomial lambda^2 - 1
  CHECK(d.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(d.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigh reconstruction on random symmetric matrices") {
  testing_oracles::Rng rng(42);
  std::uniform_int_distribution<std::size_t> ord(2, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = ord(rng.gen);
    SymMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) m.set(i, j, rng());
    }
    EigDecomp d = eigh(m);
    double err = 0.0, orth = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(d.eigenvalues[i] >= (i > 0 ? d.eigenvalues[i - 1] : -kInf));
      for (std::size_t j = 0; j < n; ++j) {
        double rebuilt = 0.0, qq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          rebuilt += d.eigenvalues[k] * d.eigenvectors(i, k) * d.eigenvectors(j, k);
          qq += d.eigenvectors(k, i) * d.eigenvectors(k, j);
        }
        err = std::max(err, std::abs(rebuilt - m(i, j)));
        orth = std::max(orth, std::abs(qq - (i == j ? 1.0 : 0.0)));
      }
    }
    CHECK(err <= 1e-12 * std::max(1.0, m.frobenius_norm()));
    CHECK(orth <= 1e-12);
  }
}

TEST_CASE("svec of the 2x2 identity puts the scaled off-diagonal in the middle") {
  SymMat eye(2);
  eye.set(0, 0, 1.0);
  eye.set(1, 1, 1.0);
  Vec v = svec(eye);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 1.0);
}

TEST_CASE("svec inner products equal traces") {
  Vec a = svec(SymMat::diag({1.0, 2.0}));
  CHECK(dot(a, a) == doctest::Approx(5.0).epsilon(1e-15));  // trace(A^2)

  SymMat x(2);
  x.set(1, 0, 1.0);
  Vec b = svec(x);
  CHECK(dot(b, b) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("svec/smat round trip is exact and the isometry holds on random pairs") {
  testing_oracles::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 6;
    SymMat a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        a.set(i, j, rng());
        b.set(i, j, rng());
      }
    }
    SymMat back = smat(svec(a));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) CHECK(back(i, j) == doctest::Approx(a(i, j)));
    }
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) tr += a(i, j) * b(j, i);
    }
    CHECK(std::abs(dot(svec(a), svec(b)) - tr) <=
          1e-14 * (1.0 + a.frobenius_norm() * b.frobenius_norm()));
  }
}

TEST_CASE("smat rejects non-triangular lengths") {
  CHECK_THROWS_AS(smat(Vec{1.0, 2.0}), InputError);
  CHECK_THROWS_AS(smat(Vec{1.0, 2.0, 3.0, 4.0}), InputError);
}

TEST_CASE("from_dense rejects asymmetric input") {
  CHECK_THROWS_AS(SymMat::from_dense(2, {1.0, 2.0, 3.0, 4.0}), InputError);
}

TEST_SUITE_END();
