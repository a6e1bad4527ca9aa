#pragma once

// Exact scalar arithmetic and linear algebra over Q and over finite field
// towers GF(p) < GF(p^k), k in {1,2,3}.  All downstream modules do their
// matrix work over the prime field; the extension fields only appear when
// bimodule bases and their duals are set up.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "specfold/common.hpp"

namespace specfold {

using i64 = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

bool is_odd_prime(i64 p);

// ---------------------------------------------------------------------------
// Element operations for the two scalar domains, as small context structs the
// matrix template is parameterized over.

struct GfOps {
  i64 p = 7;
  using Elem = i64;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(i64 n) const { return ((n % p) + p) % p; }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return (a - b + p) % p; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return (p - a) % p; }
  Elem inv(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
};

struct QqOps {
  using Elem = Rational;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(i64 n) const { return n; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) fail(ErrorKind::Invalid, "division by zero");
    return 1 / a;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

// ---------------------------------------------------------------------------
// Dense matrices with deterministic Gaussian elimination: leftmost pivot,
// first nonzero row.

template <class Ops>
class Mat {
 public:
  using E = typename Ops::Elem;

  Mat() = default;
  Mat(Ops ops, int rows, int cols)
      : ops_(ops), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, ops.zero()) {}

  static Mat identity(Ops ops, int n) {
    Mat m(ops, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ops.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Ops& ops() const { return ops_; }
  E& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const E& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!ops_.eq(a_[i], o.a_[i])) return false;
    return true;
  }

  Mat operator*(const Mat& o) const {
    Mat r(ops_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const E& x = at(i, k);
        if (ops_.is_zero(x)) continue;
        for (int j = 0; j < o.cols_; ++j)
          r.at(i, j) = ops_.add(r.at(i, j), ops_.mul(x, o.at(k, j)));
      }
    return r;
  }

  struct Rref {
    Mat reduced;             // R, the reduced row echelon form
    Mat transform;           // T with T * A = R; T is invertible
    std::vector<int> pivots; // pivot column per pivot row
  };

  Rref rref() const {
    Mat r = *this;
    Mat t = identity(ops_, rows_);
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pr = -1;
      for (int i = row; i < rows_; ++i)
        if (!ops_.is_zero(r.at(i, col))) { pr = i; break; }
      if (pr < 0) continue;
      if (pr != row) { r.swap_rows(pr, row); t.swap_rows(pr, row); }
      E piv_inv = ops_.inv(r.at(row, col));
      r.scale_row(row, piv_inv);
      t.scale_row(row, piv_inv);
      for (int i = 0; i < rows_; ++i) {
        if (i == row || ops_.is_zero(r.at(i, col))) continue;
        E f = r.at(i, col);
        r.axpy_row(i, row, ops_.neg(f));
        t.axpy_row(i, row, ops_.neg(f));
      }
      pivots.push_back(col);
      ++row;
    }
    return Rref{std::move(r), std::move(t), std::move(pivots)};
  }

  int rank() const { return static_cast<int>(rref().pivots.size()); }

  // Echelon-normalized basis of the right kernel; count = cols - rank.
  std::vector<std::vector<E>> kernel_basis() const {
    Rref f = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : f.pivots) is_pivot[c] = true;
    std::vector<std::vector<E>> out;
    for (int c = 0; c < cols_; ++c) {
      if (is_pivot[c]) continue;
      std::vector<E> v(cols_, ops_.zero());
      v[c] = ops_.one();
      for (size_t pr = 0; pr < f.pivots.size(); ++pr)
        v[f.pivots[pr]] = ops_.neg(f.reduced.at(static_cast<int>(pr), c));
      out.push_back(std::move(v));
    }
    return out;
  }

  // Some x with A x = b, or ErrorKind::Inconsistent.  Free variables are 0.
  std::vector<E> solve(const std::vector<E>& b) const {
    if (static_cast<int>(b.size()) != rows_)
      fail(ErrorKind::Invalid, "solve: dimension mismatch");
    Mat aug(ops_, rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    Rref f = aug.rref();
    std::vector<E> x(cols_, ops_.zero());
    for (size_t pr = 0; pr < f.pivots.size(); ++pr) {
      if (f.pivots[pr] == cols_)
        fail(ErrorKind::Inconsistent, "solve: inconsistent system");
      x[f.pivots[pr]] = f.reduced.at(static_cast<int>(pr), cols_);
    }
    return x;
  }

  std::vector<E> apply(const std::vector<E>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      fail(ErrorKind::Invalid, "apply: dimension mismatch");
    std::vector<E> out(rows_, ops_.zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        out[i] = ops_.add(out[i], ops_.mul(at(i, j), v[j]));
    return out;
  }

 private:
  void swap_rows(int i, int j) {
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }
  void scale_row(int i, const E& f) {
    for (int c = 0; c < cols_; ++c) at(i, c) = ops_.mul(at(i, c), f);
  }
  void axpy_row(int i, int j, const E& f) {  // row_i += f * row_j
    for (int c = 0; c < cols_; ++c)
      at(i, c) = ops_.add(at(i, c), ops_.mul(f, at(j, c)));
  }

  Ops ops_;
  int rows_ = 0, cols_ = 0;
  std::vector<E> a_;
};

using KMat = Mat<GfOps>;  // over GF(p)
using QMat = Mat<QqOps>;  // over Q

// ---------------------------------------------------------------------------
// Polynomials over GF(p), coefficient vectors low degree first.

using Poly = std::vector<i64>;

Poly poly_trim(Poly a);
Poly poly_add(const Poly& a, const Poly& b, i64 p);
Poly poly_sub(const Poly& a, const Poly& b, i64 p);
Poly poly_mul(const Poly& a, const Poly& b, i64 p);
Poly poly_mod(Poly a, const Poly& m, i64 p);
Poly poly_gcd(Poly a, Poly b, i64 p);  // monic gcd
Poly poly_powmod(Poly base, boost::multiprecision::cpp_int e, const Poly& m, i64 p);
bool poly_is_irreducible(const Poly& f, i64 p);

// Lexicographically smallest monic irreducible of degree k over GF(p);
// the fixed normal form used for every tower in this project.
Poly smallest_irreducible(i64 p, int k);

// Distinct-irreducible factorization of a squarefree monic polynomial
// (Berlekamp).  Deterministic output ordering.
std::vector<Poly> factor_squarefree(const Poly& f, i64 p);

// ---------------------------------------------------------------------------
// GF(p^k) with a fixed irreducible modulus.  Elements are coefficient vectors
// in the power basis 1, x, .., x^{k-1}.

struct FqElem {
  std::array<i64, 3> c{0, 0, 0};
  bool operator==(const FqElem& o) const { return c == o.c; }
};

class Fq {
 public:
  Fq() = default;
  Fq(i64 p, int k);  // modulus = smallest_irreducible(p, k)

  i64 p() const { return p_; }
  int k() const { return k_; }
  const Poly& modulus() const { return mod_; }

  FqElem zero() const { return {}; }
  FqElem one() const { return from_int(1); }
  FqElem x() const;  // the power-basis generator
  FqElem from_int(i64 n) const;
  FqElem from_coeffs(const std::vector<i64>& c) const;
  bool is_zero(const FqElem& a) const { return a == FqElem{}; }

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem inv(const FqElem& a) const;
  FqElem pow_basis(int i) const;  // x^i reduced

  // Trace to the prime field GF(p).
  i64 trace(const FqElem& a) const;
  // Basis {b_i} with trace(b_i * a_j) = delta_ij for a given basis {a_j}.
  std::vector<FqElem> trace_dual_basis(const std::vector<FqElem>& basis) const;

 private:
  i64 p_ = 7;
  int k_ = 1;
  Poly mod_;
};

// ---------------------------------------------------------------------------
// The paper-facing Scalar: an exact rational or an element of a fixed tower
// field.  Downstream code uses the concrete types directly; this sum type is
// the documented library surface for generic scalar input.

struct Scalar {
  // exactly one of the two is active; fq null means rational
  std::optional<Rational> rat;
  std::optional<std::pair<Fq, FqElem>> fin;
};

// Primitive idempotent decomposition of a commutative semisimple K-algebra
// given by structure constants: mult[i] is the matrix of multiplication by
// basis element i, one is the coordinate vector of the unit.  Returns the
// idempotents as coordinate vectors, deterministically ordered.
std::vector<std::vector<i64>> split_semisimple_commutative(
    const std::vector<KMat>& mult, const std::vector<i64>& one, i64 p);

}  // namespace specfold
