#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specfold/field.hpp"

using namespace specfold;

namespace {

KMat random_kmat(Rng& rng, GfOps ops, int r, int c) {
  KMat m(ops, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<i64>(rng.below(ops.p));
  return m;
}

}  // namespace

TEST_CASE("fixed irreducible moduli are pinned") {
  CHECK(smallest_irreducible(7, 2) == Poly{1, 0, 1});   // x^2 + 1
  CHECK(smallest_irreducible(7, 3) == Poly{2, 0, 0, 1}); // x^3 + 2
  CHECK(smallest_irreducible(11, 2) == Poly{1, 0, 1});  // x^2 + 1
  CHECK(smallest_irreducible(13, 2) == Poly{2, 0, 1});  // x^2 + 2
}

TEST_CASE("field axioms hold on random triples") {
  for (int k = 1; k <= 3; ++k) {
    Fq f(7, k);
    Rng rng(1000 + k);
    auto rand_elem = [&] {
      std::vector<i64> c(k);
      for (auto& x : c) x = static_cast<i64>(rng.below(7));
      return f.from_coeffs(c);
    };
    for (int trial = 0; trial < 10000; ++trial) {
      FqElem a = rand_elem(), b = rand_elem(), c = rand_elem();
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.is_zero(f.add(a, f.neg(a))));
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
    }
  }
}

TEST_CASE("rational arithmetic is exact") {
  QqOps q;
  Rng rng(77);
  for (int trial = 0; trial < 10000; ++trial) {
    Rational a(static_cast<i64>(rng.below(2001)) - 1000,
               static_cast<i64>(rng.below(99)) + 1);
    Rational b(static_cast<i64>(rng.below(2001)) - 1000,
               static_cast<i64>(rng.below(99)) + 1);
    Rational c(static_cast<i64>(rng.below(2001)) - 1000,
               static_cast<i64>(rng.below(99)) + 1);
    CHECK(q.mul(q.mul(a, b), c) == q.mul(a, q.mul(b, c)));
    CHECK(q.mul(a, q.add(b, c)) == q.add(q.mul(a, b), q.mul(a, c)));
    CHECK(q.is_zero(q.add(a, q.neg(a))));
    if (!q.is_zero(a)) CHECK(q.mul(a, q.inv(a)) == q.one());
  }
}

TEST_CASE("tower embedding GF(p) -> GF(p^k) is a ring homomorphism") {
  Fq g(7, 2);
  for (i64 a = 0; a < 7; ++a)
    for (i64 b = 0; b < 7; ++b) {
      CHECK(g.add(g.from_int(a), g.from_int(b)) == g.from_int(a + b));
      CHECK(g.mul(g.from_int(a), g.from_int(b)) == g.from_int(a * b));
    }
}

TEST_CASE("rref identity and zero cases") {
  GfOps ops{7};
  KMat id = KMat::identity(ops, 3);
  auto f = id.rref();
  CHECK(f.reduced == id);
  CHECK(f.pivots == std::vector<int>{0, 1, 2});

  KMat z(ops, 2, 4);
  auto fz = z.rref();
  CHECK(fz.reduced == z);
  CHECK(fz.pivots.empty());
  CHECK(z.kernel_basis().size() == 4);
}

TEST_CASE("rank-nullity and recorded row operations on random matrices") {
  GfOps ops{7};
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    KMat m = random_kmat(rng, ops, 5, 7);
    auto f = m.rref();
    int rank = static_cast<int>(f.pivots.size());
    CHECK(rank + static_cast<int>(m.kernel_basis().size()) == 7);
    CHECK(f.transform * m == f.reduced);            // row equivalence witness
    CHECK(f.transform.rank() == 5);                 // transform invertible
    for (const auto& v : m.kernel_basis()) {
      auto mv = m.apply(v);
      for (i64 x : mv) CHECK(x == 0);
    }
  }
}

TEST_CASE("kernel of [[1,1]] over GF(5)") {
  GfOps ops{5};
  KMat m(ops, 1, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == std::vector<i64>{4, 1});  // (-1, 1) normalized
  CHECK(m.apply(ker[0]) == std::vector<i64>{0});
}

TEST_CASE("solve: identity, inconsistent, and GF(7) system with substitution") {
  GfOps ops{7};
  KMat id = KMat::identity(ops, 3);
  std::vector<i64> b{3, 1, 4};
  CHECK(id.solve(b) == b);

  KMat z(ops, 2, 2);
  CHECK_THROWS_AS(z.solve(std::vector<i64>{1, 0}), Error);

  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    KMat m = random_kmat(rng, ops, 3, 3);
    std::vector<i64> x0{static_cast<i64>(rng.below(7)),
                        static_cast<i64>(rng.below(7)),
                        static_cast<i64>(rng.below(7))};
    auto rhs = m.apply(x0);
    auto x = m.solve(rhs);
    CHECK(m.apply(x) == rhs);
  }
}

TEST_CASE("rational matrices: rref over Q") {
  QqOps ops;
  QMat m(ops, 2, 3);
  m.at(0, 0) = Rational(1, 2);
  m.at(0, 1) = 1;
  m.at(0, 2) = 2;
  m.at(1, 0) = 1;
  m.at(1, 1) = 2;
  m.at(1, 2) = 3;
  auto f = m.rref();
  CHECK(f.pivots.size() == 2);
  CHECK(f.transform * m == f.reduced);
  CHECK(m.kernel_basis().size() == 1);
}

TEST_CASE("trace dual basis pairs against the power basis") {
  for (int k = 2; k <= 3; ++k) {
    Fq g(7, k);
    std::vector<FqElem> power;
    for (int i = 0; i < k; ++i) power.push_back(g.pow_basis(i));
    auto dual = g.trace_dual_basis(power);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        CHECK(g.trace(g.mul(dual[i], power[j])) == (i == j ? 1 : 0));
  }
}

TEST_CASE("berlekamp factors squarefree polynomials") {
  // (x^2+1)(x+3) over GF(7)
  Poly f = poly_mul(Poly{1, 0, 1}, Poly{3, 1}, 7);
  auto factors = factor_squarefree(f, 7);
  REQUIRE(factors.size() == 2);
  Poly prod{1};
  for (const auto& g : factors) prod = poly_mul(prod, g, 7);
  CHECK(prod == poly_trim(f));
}

TEST_CASE("split_semisimple_commutative on GF(7^2) tensor GF(7^2)") {
  // A = GF(49) x GF(49) presented as GF(7)[x,y]/(x^2+1, y^2+1) via basis
  // 1, x, y, xy; multiplication table by structure constants.
  GfOps ops{7};
  i64 p = 7;
  auto idx = [](int a, int b) { return a * 2 + b; };  // x^a y^b
  std::vector<KMat> mult(4, KMat(ops, 4, 4));
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          int xa = a1 + a2, yb = b1 + b2;
          i64 coeff = 1;
          if (xa == 2) { xa = 0; coeff = (coeff * (p - 1)) % p; }
          if (yb == 2) { yb = 0; coeff = (coeff * (p - 1)) % p; }
          mult[idx(a1, b1)].at(idx(xa, yb), idx(a2, b2)) =
              (mult[idx(a1, b1)].at(idx(xa, yb), idx(a2, b2)) + coeff) % p;
        }
  std::vector<i64> one{1, 0, 0, 0};
  auto blocks = split_semisimple_commutative(mult, one, p);
  CHECK(blocks.size() == 2);  // GF(49) (x) GF(49) = GF(49) x GF(49)
  // idempotent sanity
  for (const auto& e : blocks) {
    std::vector<i64> sq(4, 0);
    for (int i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (e[j] == 0) continue;
        for (int t = 0; t < 4; ++t)
          sq[t] = (sq[t] + e[i] * e[j] % p * mult[i].at(t, j)) % p;
      }
    }
    CHECK(sq == e);
  }
}
