#include "specfold/ar_quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace specfold {

K0Vector IntMat::apply(const K0Vector& v) const {
  K0Vector out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += at(i, j) * v[j];
  return out;
}

IntMat IntMat::operator*(const IntMat& o) const {
  IntMat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

IntMat IntMat::identity(int n) {
  IntMat r(n);
  for (int i = 0; i < n; ++i) r.at(i, i) = 1;
  return r;
}

namespace {

// invert a unimodular integer matrix exactly (via rational elimination)
IntMat int_inverse(const IntMat& m) {
  QqOps ops;
  int n = m.n;
  QMat a(ops, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a.at(i, j) = m.at(i, j);
    a.at(i, n + i) = 1;
  }
  auto f = a.rref();
  if (static_cast<int>(f.pivots.size()) != n || f.pivots[n - 1] != n - 1)
    fail(ErrorKind::Invalid, "matrix is singular");
  IntMat out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = f.reduced.at(i, n + j);
      if (denominator(v) != 1)
        fail(ErrorKind::Invalid, "matrix is not unimodular");
      out.at(i, j) = static_cast<i64>(numerator(v));
    }
  return out;
}

enum class Sign { Positive, Negative, Mixed, Zero };

Sign sign_of(const K0Vector& v) {
  bool pos = false, neg = false;
  for (i64 x : v) {
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  if (pos && neg) return Sign::Mixed;
  if (pos) return Sign::Positive;
  if (neg) return Sign::Negative;
  return Sign::Zero;
}

}  // namespace

std::vector<K0Vector> projective_classes(const Species& s) {
  ValuedQuiver q = s.valued_quiver();
  auto topo = q.topo_order();  // throws Cyclic
  int n = static_cast<int>(s.vertices.size());
  std::vector<K0Vector> p(n, K0Vector(n, 0));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int vi = s.vertex_index(*it);
    p[vi][vi] = 1;  // [D_i]
    for (size_t a = 0; a < s.arrows.size(); ++a) {
      if (s.arrows[a].src != *it) continue;
      int ti = s.vertex_index(s.arrows[a].tgt);
      i64 mult = s.dim_over_tgt(static_cast<int>(a));
      for (int c = 0; c < n; ++c) p[vi][c] += mult * p[ti][c];
    }
  }
  return p;
}

std::vector<K0Vector> injective_classes(const Species& s) {
  ValuedQuiver q = s.valued_quiver();
  auto topo = q.topo_order();
  int n = static_cast<int>(s.vertices.size());
  std::vector<K0Vector> inj(n, K0Vector(n, 0));
  for (int id : topo) {
    int vi = s.vertex_index(id);
    inj[vi][vi] = 1;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
      if (s.arrows[a].tgt != id) continue;
      int si = s.vertex_index(s.arrows[a].src);
      i64 mult = s.dim_over_src(static_cast<int>(a));
      for (int c = 0; c < n; ++c) inj[vi][c] += mult * inj[si][c];
    }
  }
  return inj;
}

IntMat coxeter(const Species& s) {
  int n = static_cast<int>(s.vertices.size());
  auto p = projective_classes(s);
  auto inj = injective_classes(s);
  IntMat pm(n), im(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      pm.at(i, j) = p[j][i];
      im.at(i, j) = inj[j][i];
    }
  IntMat c = im * int_inverse(pm);
  for (auto& x : c.a) x = -x;
  return c;
}

IntMat coxeter_inverse(const Species& s) {
  int n = static_cast<int>(s.vertices.size());
  auto p = projective_classes(s);
  auto inj = injective_classes(s);
  IntMat pm(n), im(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      pm.at(i, j) = p[j][i];
      im.at(i, j) = inj[j][i];
    }
  IntMat c = pm * int_inverse(im);
  for (auto& x : c.a) x = -x;
  return c;
}

int ArQuiver::vertex_index(int proj, int t) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].proj == proj && vertices[i].t == t)
      return static_cast<int>(i);
  fail(ErrorKind::Invalid, "no such AR vertex");
}

ArQuiver knit(const Species& s) {
  Classification cl = classify(s.valued_quiver());
  if (!cl.type) fail(ErrorKind::NotDynkin, "knitting needs a Dynkin species");
  ArQuiver ar;
  ar.species = s;
  ar.type = *cl.type;
  int n = static_cast<int>(s.vertices.size());
  auto pcls = projective_classes(s);
  auto icls = injective_classes(s);
  IntMat cinv = coxeter_inverse(s);

  // orbits: advance with c^{-1} until the next class is negative
  std::vector<std::vector<K0Vector>> orbit(n);
  for (int i = 0; i < n; ++i) {
    K0Vector v = pcls[i];
    while (true) {
      if (sign_of(v) != Sign::Positive)
        fail(ErrorKind::NotDynkin, "class dichotomy failed during knitting");
      orbit[i].push_back(v);
      K0Vector w = cinv.apply(v);
      Sign sg = sign_of(w);
      if (sg == Sign::Negative) break;  // v was injective
      if (sg != Sign::Positive)
        fail(ErrorKind::NotDynkin, "class dichotomy failed during knitting");
      v = w;
      if (orbit[i].size() > 64)
        fail(ErrorKind::NotDynkin, "orbit failed to terminate");
    }
    ar.orbit_len.push_back(static_cast<int>(orbit[i].size()));
  }

  // vertices, round-robin by projective position for stable numbering
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < ar.orbit_len[i]; ++t) {
      ArVertex v;
      v.proj = i;
      v.t = t;
      v.cls = orbit[i][t];
      v.kdim = 0;
      for (int c = 0; c < n; ++c)
        v.kdim += v.cls[c] * s.vertices[c].ext_degree;
      v.delta = s.vertices[i].ext_degree;
      v.projective = t == 0;
      v.injective = t == ar.orbit_len[i] - 1;
      ar.vertices.push_back(v);
    }

  // arrows: Q-arrow alpha: i -> j yields P_j -> P_i and its translates
  for (size_t a = 0; a < s.arrows.size(); ++a) {
    int i = s.vertex_index(s.arrows[a].src);
    int j = s.vertex_index(s.arrows[a].tgt);
    i64 d = s.bimodule_kdim(static_cast<int>(a));
    for (int t = 0; t < ar.orbit_len[j] && t < ar.orbit_len[i]; ++t)
      ar.arrows.push_back({ar.vertex_index(j, t), ar.vertex_index(i, t), d});
    for (int t = 0; t + 1 < ar.orbit_len[j] && t < ar.orbit_len[i]; ++t)
      ar.arrows.push_back({ar.vertex_index(i, t), ar.vertex_index(j, t + 1), d});
  }

  // mesh check: [X] + [tau X] = sum over arrows Y -> X of val/delta(Y) * [Y]
  for (const auto& v : ar.vertices) {
    if (v.t == 0) continue;
    K0Vector sum(n, 0);
    for (const auto& arr : ar.arrows) {
      if (!(ar.vertices[arr.to].proj == v.proj && ar.vertices[arr.to].t == v.t))
        continue;
      const auto& y = ar.vertices[arr.from];
      i64 mult = arr.val / y.delta;
      for (int c = 0; c < n; ++c) sum[c] += mult * y.cls[c];
    }
    K0Vector expect(n, 0);
    const auto& prev = orbit[v.proj][v.t - 1];
    for (int c = 0; c < n; ++c) expect[c] = v.cls[c] + prev[c];
    if (sum != expect)
      fail(ErrorKind::NotDynkin, "mesh relation failed during knitting");
  }

  // Nakayama permutation: the orbit of P_j ends at I_i  =>  sigma(i) = j
  NakayamaData nd;
  nd.sigma.assign(n, -1);
  nd.l.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    const K0Vector& last = orbit[j].back();
    int which = -1;
    for (int i = 0; i < n; ++i)
      if (icls[i] == last) which = i;
    if (which < 0)
      fail(ErrorKind::NotDynkin, "orbit does not end at an injective class");
    nd.sigma[which] = j;
    nd.l[which] = ar.orbit_len[j];
  }
  int h = 0;
  for (int i = 0; i < n; ++i) {
    int hi = nd.l[i] + nd.l[nd.sigma[i]];
    if (h == 0) h = hi;
    if (h != hi)
      fail(ErrorKind::NotDynkin, "l_i + l_{sigma(i)} is not constant");
  }
  nd.h = h;
  bool homog = true;
  for (int i = 0; i < n; ++i)
    if (nd.l[i] != nd.l[0]) homog = false;
  if (homog) nd.homogeneous_l = nd.l[0];
  ar.nakayama = nd;
  return ar;
}

NakayamaData nakayama_permutation(const ArQuiver& ar) {
  const Species& s = ar.species;
  Classification cl = classify(s.valued_quiver());
  auto table = nakayama_table(ar.type);
  for (size_t i = 0; i < s.vertices.size(); ++i) {
    int li = cl.canonical_label.at(s.vertices[i].id);
    int lsig = cl.canonical_label.at(s.vertices[ar.nakayama.sigma[i]].id);
    if (table[li] != lsig)
      fail(ErrorKind::TableMismatch,
           "computed Nakayama permutation disagrees with the closed form at "
           "vertex " + std::to_string(s.vertices[i].id));
  }
  return ar.nakayama;
}

std::optional<int> homogeneity(const NakayamaData& nd, const Species& s) {
  if (!nd.homogeneous_l) return {};
  Classification cl = classify(s.valued_quiver());
  if (cl.type && homogeneous_l_table(*cl.type) != *nd.homogeneous_l)
    fail(ErrorKind::TableMismatch,
         "homogeneous l disagrees with the closed-form table");
  return nd.homogeneous_l;
}

i64 path_weight(const Species& s, int from_id, int to_id) {
  if (from_id == to_id) return 0;
  // BFS in the underlying tree
  std::map<int, std::pair<int, i64>> parent;  // vertex -> (prev, step weight)
  std::vector<int> queue{from_id};
  parent[from_id] = {from_id, 0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (const auto& a : s.arrows) {
      int other = -1;
      i64 w = 0;
      if (a.src == v) {
        other = a.tgt;
        w = -1;  // traversing the plain arrow
      } else if (a.tgt == v) {
        other = a.src;
        w = 1;  // traversing the starred arrow
      } else {
        continue;
      }
      if (parent.count(other)) continue;
      parent[other] = {v, w};
      queue.push_back(other);
    }
  }
  if (!parent.count(to_id)) fail(ErrorKind::Disconnected, "no path");
  i64 total = 0;
  int cur = to_id;
  while (cur != from_id) {
    total += parent[cur].second;
    cur = parent[cur].first;
  }
  return total;
}

i64 ArQuiver::weight(int v_from, int v_to) const {
  const auto& a = vertices[v_from];
  const auto& b = vertices[v_to];
  return 2 * (static_cast<i64>(b.t) - a.t) +
         path_weight(species, species.vertices[a.proj].id,
                     species.vertices[b.proj].id);
}

std::vector<i64> hom_star_dims(const ArQuiver& ar) {
  int maxlen = 0;
  for (int l : ar.orbit_len) maxlen = std::max(maxlen, l);
  std::vector<i64> out(maxlen, 0);
  for (const auto& v : ar.vertices) out[v.t] += v.kdim;
  return out;
}

i64 total_indecomposable_dim(const ArQuiver& ar) {
  i64 total = 0;
  for (const auto& v : ar.vertices) total += v.kdim;
  return total;
}

std::string ArQuiver::dot() const {
  std::ostringstream os;
  os << "digraph ar {\n  rankdir=LR;\n";
  for (const auto& v : vertices) {
    os << "  \"P" << species.vertices[v.proj].id << "_t" << v.t
       << "\" [label=\"";
    if (v.t == 0)
      os << "P" << species.vertices[v.proj].id;
    else
      os << "t^-" << v.t << "P" << species.vertices[v.proj].id;
    os << " [";
    for (size_t c = 0; c < v.cls.size(); ++c)
      os << (c ? "," : "") << v.cls[c];
    os << "]\"];\n";
  }
  std::vector<std::string> lines;
  for (const auto& a : arrows) {
    std::ostringstream ls;
    const auto& u = vertices[a.from];
    const auto& v = vertices[a.to];
    ls << "  \"P" << species.vertices[u.proj].id << "_t" << u.t << "\" -> \"P"
       << species.vertices[v.proj].id << "_t" << v.t << "\" [label=\"" << a.val
       << "\"];\n";
    lines.push_back(ls.str());
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l;
  os << "}\n";
  return os.str();
}

}  // namespace specfold
