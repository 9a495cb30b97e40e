#include "doctest.h"

#include <random>
#include <set>

#include "cotorsion/matrix.hpp"

using namespace ctl;

namespace {

Matrix random_matrix(std::mt19937& rng, int r, int c, int p) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = static_cast<int>(rng() % p);
  return m;
}

// number of vectors x in F_p^c with m x = 0, by listing them all
int brute_kernel_size(const Field& F, const Matrix& m) {
  int total = 1;
  for (int j = 0; j < m.cols(); ++j) total *= F.p();
  int count = 0;
  for (int code = 0; code < total; ++code) {
    Matrix x(m.cols(), 1);
    int c = code;
    for (int j = 0; j < m.cols(); ++j, c /= F.p()) x(j, 0) = c % F.p();
    if (multiply(F, m, x).is_zero()) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("field arithmetic") {
  Field f7(7);
  CHECK(f7.mul(3, f7.inv(3)) == 1);
  CHECK(f7.sub(2, 5) == 4);
  CHECK(f7.reduce(-15) == 6);
  CHECK_THROWS(Field(4));
  CHECK_THROWS(Field(101));
  CHECK_THROWS(f7.inv(0));
}

TEST_CASE("nullspace size matches brute force") {
  std::mt19937 rng(11);
  for (int p : {2, 3}) {
    Field F(p);
    for (int trial = 0; trial < 60; ++trial) {
      const int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 5);
      const Matrix m = random_matrix(rng, r, c, p);
      const Matrix k = nullspace(F, m);
      CHECK(multiply(F, m, k).is_zero());
      int expect = 1;
      for (int i = 0; i < k.cols(); ++i) expect *= p;
      CHECK(brute_kernel_size(F, m) == expect);
      CHECK(rank(F, m) + k.cols() == c);
    }
  }
}

TEST_CASE("solve and inverse") {
  std::mt19937 rng(5);
  Field F(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix a = random_matrix(rng, 3, 3, 5);
    auto inv = inverse(F, a);
    if (rank(F, a) == 3) {
      REQUIRE(inv);
      CHECK(multiply(F, a, *inv) == Matrix::identity(3));
    } else {
      CHECK_FALSE(inv);
    }
    const Matrix x = random_matrix(rng, 3, 2, 5);
    const Matrix b = multiply(F, a, x);
    auto y = solve(F, a, b);
    REQUIRE(y);
    CHECK(multiply(F, a, *y) == b);
  }
}

TEST_CASE("complement columns complete a basis") {
  Field F(2);
  Matrix b(3, 1, {1, 1, 0});
  const Matrix c = complement_columns(F, b, 3);
  CHECK(c.cols() == 2);
  CHECK(rank(F, hstack(b, c)) == 3);
}

TEST_CASE("subspace enumeration counts Gaussian binomials") {
  // subspaces of F_q^m: m=3,q=2 gives 1+7+7+1; m=2,q=3 gives 1+4+1
  auto count = [](int p, int m) {
    Field F(p);
    int n = 0;
    std::set<std::vector<std::vector<int>>> seen;
    for_each_subspace(F, m, [&](const Matrix& b) {
      ++n;
      CHECK(rank(F, b) == b.cols());
      seen.insert(b.to_rows());
      return true;
    });
    CHECK(seen.size() == static_cast<size_t>(n));
    return n;
  };
  CHECK(count(2, 3) == 16);
  CHECK(count(3, 2) == 6);
  CHECK(count(2, 0) == 1);
  CHECK(count(2, 4) == 67);
}

TEST_CASE("subspace enumeration hits every subspace of F_2^3 once") {
  // independent oracle: subsets of F_2^3 containing 0 and closed under +
  Field F(2);
  std::set<int> oracle;
  for (int mask = 0; mask < 256; ++mask) {
    if (!(mask & 1)) continue;
    bool closed = true;
    for (int a = 0; a < 8 && closed; ++a)
      for (int b = 0; b < 8 && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> (a ^ b) & 1)) closed = false;
    if (closed) oracle.insert(mask);
  }
  std::set<int> got;
  for_each_subspace(F, 3, [&](const Matrix& b) {
    int mask = 0;
    for (int code = 0; code < (1 << b.cols()); ++code) {
      int v = 0;
      for (int row = 0; row < 3; ++row) {
        int bit = 0;
        for (int c = 0; c < b.cols(); ++c) bit ^= (code >> c & 1) * b(row, c);
        v |= bit << row;
      }
      mask |= 1 << v;
    }
    got.insert(mask);
    return true;
  });
  CHECK(got == oracle);
}
