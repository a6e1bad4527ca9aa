#include "specfold/field.hpp"

#include <algorithm>

namespace specfold {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Invalid: return "Invalid";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::Cyclic: return "Cyclic";
    case ErrorKind::NotDynkin: return "NotDynkin";
    case ErrorKind::TruncationHit: return "TruncationHit";
    case ErrorKind::TableMismatch: return "TableMismatch";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::NotAlmostKoszul: return "NotAlmostKoszul";
    case ErrorKind::MixedStarDegree: return "MixedStarDegree";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::NoFunctional: return "NoFunctional";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::HomologyLeak: return "HomologyLeak";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SignError: return "SignError";
  }
  return "Unknown";
}

bool is_odd_prime(i64 p) {
  if (p < 3 || p % 2 == 0) return false;
  for (i64 d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

static i64 mod_pow(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

GfOps::Elem GfOps::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::Invalid, "division by zero in GF(p)");
  return mod_pow(a, p - 2, p);
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over GF(p).

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_add(const Poly& a, const Poly& b, i64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    i64 v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = v % p;
  }
  return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b, i64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    i64 v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = ((v % p) + p) % p;
  }
  return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_trim(std::move(r));
}

Poly poly_mod(Poly a, const Poly& m, i64 p) {
  a = poly_trim(std::move(a));
  if (m.empty()) fail(ErrorKind::Invalid, "poly_mod by zero");
  GfOps f{p};
  i64 lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    i64 c = a.back() * lead_inv % p;
    size_t off = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i)
      a[off + i] = ((a[off + i] - c * m[i]) % p + p) % p;
    a = poly_trim(std::move(a));
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    GfOps f{p};
    i64 inv = f.inv(a.back());
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

Poly poly_powmod(Poly base, boost::multiprecision::cpp_int e, const Poly& m, i64 p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = poly_mod(poly_mul(r, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

bool poly_is_irreducible(const Poly& f, i64 p) {
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  using boost::multiprecision::cpp_int;
  // x^(p^n) == x mod f, and x^(p^(n/q)) != x for every prime divisor q of n.
  cpp_int q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  Poly xp = poly_powmod(Poly{0, 1}, q, f, p);
  if (poly_trim(poly_sub(xp, Poly{0, 1}, p)).size() != 0) return false;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool d_is_max_proper = false;
    for (int prime = 2; prime <= n; ++prime)
      if (n % prime == 0 && n / prime == d) d_is_max_proper = true;
    if (!d_is_max_proper) continue;
    cpp_int qd = 1;
    for (int i = 0; i < d; ++i) qd *= p;
    Poly xd = poly_powmod(Poly{0, 1}, qd, f, p);
    Poly g = poly_gcd(poly_sub(xd, Poly{0, 1}, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly smallest_irreducible(i64 p, int k) {
  if (k == 1) return Poly{0, 1};  // x itself; GF(p) needs no modulus
  // enumerate monic x^k + a_{k-1} x^{k-1} + .. + a_0 by (a_{k-1},..,a_0) lex
  std::vector<i64> a(k, 0);
  while (true) {
    Poly f(k + 1, 0);
    f[k] = 1;
    for (int i = 0; i < k; ++i) f[k - 1 - i] = a[i];
    if (poly_is_irreducible(f, p)) return f;
    int pos = k - 1;
    while (pos >= 0 && a[pos] == p - 1) a[pos--] = 0;
    if (pos < 0) fail(ErrorKind::Invalid, "no irreducible polynomial found");
    ++a[pos];
  }
}

std::vector<Poly> factor_squarefree(const Poly& f_in, i64 p) {
  Poly f = poly_trim(f_in);
  if (f.size() <= 1) fail(ErrorKind::Invalid, "factor of constant");
  GfOps ops{p};
  {  // make monic
    i64 inv = ops.inv(f.back());
    for (auto& c : f) c = c * inv % p;
  }
  std::vector<Poly> todo{f}, done;
  while (!todo.empty()) {
    Poly g = todo.back();
    todo.pop_back();
    int n = static_cast<int>(g.size()) - 1;
    if (n == 1) { done.push_back(g); continue; }
    // Berlekamp subalgebra: kernel of (Frobenius - id) on GF(p)[x]/(g)
    KMat q(ops, n, n);
    for (int j = 0; j < n; ++j) {
      Poly xj = poly_powmod(Poly{0, 1}, boost::multiprecision::cpp_int(p) * 0 + p, g, p);
      // compute x^(p*j) mod g as (x^p)^j
      Poly col = Poly{1};
      for (int t = 0; t < j; ++t) col = poly_mod(poly_mul(col, xj, p), g, p);
      for (int i = 0; i < n; ++i)
        q.at(i, j) = (i < static_cast<int>(col.size()) ? col[i] : 0);
    }
    for (int i = 0; i < n; ++i) q.at(i, i) = ops.sub(q.at(i, i), 1);
    auto ker = q.kernel_basis();
    if (ker.size() <= 1) { done.push_back(g); continue; }  // irreducible
    bool split = false;
    for (const auto& v : ker) {
      Poly vp = poly_trim(Poly(v.begin(), v.end()));
      if (vp.size() <= 1) continue;  // the constants split nothing
      for (i64 s = 0; s < p && !split; ++s) {
        Poly shifted = poly_sub(vp, Poly{s}, p);
        Poly d = poly_gcd(shifted, g, p);
        if (d.size() > 1 && d.size() < g.size()) {
          Poly rest = g;
          // rest / d by repeated poly division
          Poly quot;
          {
            Poly num = rest;
            GfOps fo{p};
            i64 dlead = fo.inv(d.back());
            quot.assign(num.size() - d.size() + 1, 0);
            for (int pos = static_cast<int>(num.size()) - 1;
                 pos >= static_cast<int>(d.size()) - 1; --pos) {
              i64 c = num[pos] * dlead % p;
              quot[pos - d.size() + 1] = c;
              if (c == 0) continue;
              size_t off = pos - (d.size() - 1);
              for (size_t i = 0; i < d.size(); ++i)
                num[off + i] = ((num[off + i] - c * d[i]) % p + p) % p;
            }
          }
          todo.push_back(d);
          todo.push_back(poly_trim(std::move(quot)));
          split = true;
        }
      }
      if (split) break;
    }
    if (!split) done.push_back(g);  // should not happen for squarefree input
  }
  std::sort(done.begin(), done.end());
  return done;
}

// ---------------------------------------------------------------------------
// GF(p^k)

Fq::Fq(i64 p, int k) : p_(p), k_(k) {
  if (!is_odd_prime(p) || p >= (1 << 16))
    fail(ErrorKind::Invalid, "prime must be odd and < 2^16");
  if (k < 1 || k > 3) fail(ErrorKind::Invalid, "tower degree must be 1..3");
  mod_ = smallest_irreducible(p, k);
}

FqElem Fq::x() const {
  FqElem e;
  if (k_ == 1) {
    // x reduces to the root of the degree-1 modulus; not used for k = 1
    fail(ErrorKind::Invalid, "no generator in the prime field");
  }
  e.c[1] = 1;
  return e;
}

FqElem Fq::from_int(i64 n) const {
  FqElem e;
  e.c[0] = ((n % p_) + p_) % p_;
  return e;
}

FqElem Fq::from_coeffs(const std::vector<i64>& c) const {
  if (static_cast<int>(c.size()) > k_)
    fail(ErrorKind::Invalid, "coefficient vector too long");
  FqElem e;
  for (size_t i = 0; i < c.size(); ++i) e.c[i] = ((c[i] % p_) + p_) % p_;
  return e;
}

FqElem Fq::add(const FqElem& a, const FqElem& b) const {
  FqElem r;
  for (int i = 0; i < k_; ++i) r.c[i] = (a.c[i] + b.c[i]) % p_;
  return r;
}

FqElem Fq::sub(const FqElem& a, const FqElem& b) const {
  FqElem r;
  for (int i = 0; i < k_; ++i) r.c[i] = (a.c[i] - b.c[i] + p_) % p_;
  return r;
}

FqElem Fq::neg(const FqElem& a) const {
  FqElem r;
  for (int i = 0; i < k_; ++i) r.c[i] = (p_ - a.c[i]) % p_;
  return r;
}

FqElem Fq::mul(const FqElem& a, const FqElem& b) const {
  Poly pa(a.c.begin(), a.c.begin() + k_), pb(b.c.begin(), b.c.begin() + k_);
  Poly prod = poly_mod(poly_mul(poly_trim(pa), poly_trim(pb), p_), mod_, p_);
  FqElem r;
  for (size_t i = 0; i < prod.size(); ++i) r.c[i] = prod[i];
  return r;
}

FqElem Fq::inv(const FqElem& a) const {
  if (is_zero(a)) fail(ErrorKind::Invalid, "division by zero in GF(p^k)");
  // a^(p^k - 2)
  boost::multiprecision::cpp_int e = 1;
  for (int i = 0; i < k_; ++i) e *= p_;
  e -= 2;
  FqElem base = a, r = one();
  while (e > 0) {
    if ((e & 1) != 0) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FqElem Fq::pow_basis(int i) const {
  Poly xi(i + 1, 0);
  xi[i] = 1;
  xi = poly_mod(std::move(xi), mod_, p_);
  FqElem r;
  for (size_t j = 0; j < xi.size(); ++j) r.c[j] = xi[j];
  return r;
}

i64 Fq::trace(const FqElem& a) const {
  // Tr(a) = sum of Frobenius conjugates a^(p^i); always lands in GF(p).
  FqElem acc = zero(), t = a;
  for (int i = 0; i < k_; ++i) {
    acc = add(acc, t);
    // t := t^p
    FqElem base = t, r = one();
    i64 e = p_;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    t = r;
  }
  if (k_ > 1)
    for (int i = 1; i < k_; ++i)
      if (acc.c[i] != 0) fail(ErrorKind::Invalid, "trace not in prime field");
  return acc.c[0];
}

std::vector<FqElem> Fq::trace_dual_basis(const std::vector<FqElem>& basis) const {
  if (static_cast<int>(basis.size()) != k_)
    fail(ErrorKind::Invalid, "trace_dual_basis needs a full basis");
  GfOps ops{p_};
  // Solve Tr(b_i a_j) = delta_ij: unknowns are power-basis coords of b_i.
  KMat m(ops, k_, k_);
  for (int j = 0; j < k_; ++j)
    for (int c = 0; c < k_; ++c)
      m.at(j, c) = trace(mul(pow_basis(c), basis[j]));
  std::vector<FqElem> out;
  for (int i = 0; i < k_; ++i) {
    std::vector<i64> rhs(k_, 0);
    rhs[i] = 1;
    auto sol = m.solve(rhs);
    out.push_back(from_coeffs(sol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Primitive idempotents of a commutative semisimple algebra over GF(p).

namespace {

std::vector<i64> mat_apply_vec(const KMat& m, const std::vector<i64>& v, i64 p) {
  std::vector<i64> out(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out[i] = (out[i] + m.at(i, j) * v[j]) % p;
  return out;
}

// minimal polynomial of the multiplication operator restricted to the span
// of {one, r, r^2, ...} started at seed vector
Poly min_poly_of(const std::vector<KMat>& mult, const std::vector<i64>& one,
                 const std::vector<i64>& r, i64 p) {
  GfOps ops{p};
  int n = static_cast<int>(one.size());
  // multiplication-by-r matrix
  KMat mr(ops, n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<i64> ej(n, 0);
    ej[j] = 1;
    // r * e_j = sum_i r_i * (mult[i] e_j)
    std::vector<i64> acc(n, 0);
    for (int i = 0; i < n; ++i) {
      if (r[i] == 0) continue;
      auto mi = mat_apply_vec(mult[i], ej, p);
      for (int t = 0; t < n; ++t) acc[t] = (acc[t] + r[i] * mi[t]) % p;
    }
    for (int t = 0; t < n; ++t) mr.at(t, j) = acc[t];
  }
  // Krylov: powers of r applied to one
  std::vector<std::vector<i64>> pows;
  std::vector<i64> cur = one;
  for (int d = 0; d <= n; ++d) {
    pows.push_back(cur);
    cur = mat_apply_vec(mr, cur, p);
  }
  // first linear dependency gives the minimal polynomial
  for (int d = 1; d <= n; ++d) {
    KMat sys(ops, n, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < n; ++i) sys.at(i, j) = pows[j][i];
    std::vector<i64> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = pows[d][i];
    try {
      auto sol = sys.solve(rhs);
      Poly mp(d + 1, 0);
      mp[d] = 1;
      for (int j = 0; j < d; ++j) mp[j] = (p - sol[j]) % p;
      return mp;
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorKind::Invalid, "no minimal polynomial found");
}

std::vector<i64> eval_poly_at(const std::vector<KMat>& mult,
                              const std::vector<i64>& one,
                              const std::vector<i64>& r, const Poly& f, i64 p) {
  GfOps ops{p};
  int n = static_cast<int>(one.size());
  KMat mr(ops, n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<i64> ej(n, 0);
    ej[j] = 1;
    std::vector<i64> acc(n, 0);
    for (int i = 0; i < n; ++i) {
      if (r[i] == 0) continue;
      auto mi = mat_apply_vec(mult[i], ej, p);
      for (int t = 0; t < n; ++t) acc[t] = (acc[t] + r[i] * mi[t]) % p;
    }
    for (int t = 0; t < n; ++t) mr.at(t, j) = acc[t];
  }
  std::vector<i64> out(n, 0), pw = one;
  for (size_t d = 0; d < f.size(); ++d) {
    for (int t = 0; t < n; ++t) out[t] = (out[t] + f[d] * pw[t]) % p;
    pw = mat_apply_vec(mr, pw, p);
  }
  return out;
}

std::vector<i64> alg_mul(const std::vector<KMat>& mult,
                         const std::vector<i64>& a, const std::vector<i64>& b,
                         i64 p) {
  int n = static_cast<int>(a.size());
  std::vector<i64> out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    auto mb = mat_apply_vec(mult[i], b, p);
    for (int t = 0; t < n; ++t) out[t] = (out[t] + a[i] * mb[t]) % p;
  }
  return out;
}

}  // namespace

std::vector<std::vector<i64>> split_semisimple_commutative(
    const std::vector<KMat>& mult, const std::vector<i64>& one, i64 p) {
  int n = static_cast<int>(one.size());
  std::vector<std::vector<i64>> blocks{one};
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t bi = 0; bi < blocks.size() && !changed; ++bi) {
      const auto f = blocks[bi];
      // try splitting the block through each basis direction
      for (int g = 0; g < n && !changed; ++g) {
        std::vector<i64> eg(n, 0);
        eg[g] = 1;
        auto r = alg_mul(mult, f, alg_mul(mult, eg, f, p), p);  // f*e_g*f
        Poly mp = min_poly_of(mult, f, r, p);
        auto factors = factor_squarefree(mp, p);
        if (factors.size() <= 1) continue;
        // CRT idempotents of GF(p)[x]/(mp) pushed through evaluation at r
        std::vector<std::vector<i64>> parts;
        for (const auto& fac : factors) {
          // h = (mp / fac) * inverse(mp/fac mod fac)  evaluated at r
          Poly rest{1};
          for (const auto& other : factors)
            if (other != fac) rest = poly_mul(rest, other, p);
          // invert rest modulo fac by extended euclid via kernel trick
          // find u with rest*u = 1 mod fac: brute linear solve
          int d = static_cast<int>(fac.size()) - 1;
          GfOps ops{p};
          KMat sys(ops, d, d);
          for (int j = 0; j < d; ++j) {
            Poly xj(j + 1, 0);
            xj[j] = 1;
            Poly col = poly_mod(poly_mul(rest, xj, p), fac, p);
            for (int i = 0; i < d; ++i)
              sys.at(i, j) = (i < static_cast<int>(col.size()) ? col[i] : 0);
          }
          std::vector<i64> rhs(d, 0);
          rhs[0] = 1;
          auto u = sys.solve(rhs);
          Poly h = poly_mul(rest, poly_trim(Poly(u.begin(), u.end())), p);
          h = poly_mod(std::move(h), mp, p);
          parts.push_back(eval_poly_at(mult, f, r, h, p));
        }
        blocks.erase(blocks.begin() + bi);
        for (auto& part : parts) blocks.push_back(std::move(part));
        changed = true;
      }
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace specfold
