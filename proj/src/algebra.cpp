#include "specfold/algebra.hpp"

#include <algorithm>
#include <cassert>

namespace specfold {

SpVec spvec_normalize(SpVec v, i64 p) {
  std::sort(v.begin(), v.end());
  SpVec out;
  for (const auto& [i, c] : v) {
    i64 cc = ((c % p) + p) % p;
    if (!out.empty() && out.back().first == i)
      out.back().second = (out.back().second + cc) % p;
    else
      out.push_back({i, cc});
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second == 0; }),
            out.end());
  return out;
}

SpVec spvec_add(const SpVec& a, const SpVec& b, i64 p) {
  SpVec v = a;
  v.insert(v.end(), b.begin(), b.end());
  return spvec_normalize(std::move(v), p);
}

SpVec spvec_scale(const SpVec& a, i64 c, i64 p) {
  c = ((c % p) + p) % p;
  if (c == 0) return {};
  SpVec v;
  for (const auto& [i, x] : a) v.push_back({i, x * c % p});
  return v;
}

int GradedAlgebra::vertex_pos(int id) const {
  for (size_t i = 0; i < vertex_ids_.size(); ++i)
    if (vertex_ids_[i] == id) return static_cast<int>(i);
  fail(ErrorKind::Invalid, "unknown vertex id");
}

SpVec GradedAlgebra::mul(const SpVec& a, const SpVec& b) const {
  SpVec acc;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) {
      SpVec pr = product(i, j);
      for (auto& [k, ck] : pr) acc.push_back({k, ck * (ci * cj % prime_) % prime_});
    }
  return spvec_normalize(std::move(acc), prime_);
}

std::map<std::pair<int, int>, i64> GradedAlgebra::hilbert() const {
  std::map<std::pair<int, int>, i64> h;
  for (const auto& m : meta_) ++h[{m.deg, m.star}];
  return h;
}

int GradedAlgebra::top_degree() const {
  int t = 0;
  for (const auto& m : meta_) t = std::max(t, m.deg);
  return t;
}

int GradedAlgebra::top_star() const {
  int t = 0;
  for (const auto& m : meta_) t = std::max(t, m.star);
  return t;
}

i64 GradedAlgebra::star_slice_dim(int k) const {
  i64 n = 0;
  for (const auto& m : meta_)
    if (m.star == k) ++n;
  return n;
}

std::vector<int> GradedAlgebra::column_basis(int src_vertex_id) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (meta_[i].src == src_vertex_id) out.push_back(i);
  return out;
}

GradedAlgebra::SocleInfo GradedAlgebra::socle(int src_vertex_id) const {
  auto cols = column_basis(src_vertex_id);
  std::vector<int> gens;
  for (int i = 0; i < dim(); ++i)
    if (meta_[i].deg == 1) gens.push_back(i);
  GfOps ops{prime_};
  KMat m(ops, static_cast<int>(gens.size()) * dim(), static_cast<int>(cols.size()));
  for (size_t cj = 0; cj < cols.size(); ++cj) {
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      if (meta_[cols[cj]].tgt != meta_[gens[gi]].src) continue;
      SpVec pr = product(gens[gi], cols[cj]);
      for (const auto& [k, c] : pr)
        m.at(static_cast<int>(gi) * dim() + k, static_cast<int>(cj)) = c;
    }
  }
  auto ker = m.kernel_basis();
  SocleInfo info;
  info.vertex = src_vertex_id;
  info.deg = -1;
  info.star = -1;
  info.support_vertex = -1;
  for (const auto& v : ker) {
    SpVec vec;
    for (size_t j = 0; j < cols.size(); ++j)
      if (v[j] != 0) vec.push_back({cols[j], v[j]});
    for (const auto& [i, c] : vec) {
      if (info.deg < 0) {
        info.deg = meta_[i].deg;
        info.star = meta_[i].star;
        info.support_vertex = meta_[i].tgt;
      } else if (info.deg != meta_[i].deg || info.support_vertex != meta_[i].tgt) {
        fail(ErrorKind::Invalid, "socle is not concentrated");
      }
    }
    info.basis.push_back(std::move(vec));
  }
  i64 support_kdim = 0;
  for (const auto& b : blocks_)
    if (b.vertex == info.support_vertex) support_kdim += b.kdim;
  info.d_dim = support_kdim > 0
                   ? static_cast<i64>(info.basis.size()) / support_kdim
                   : 0;
  return info;
}

// ---------------------------------------------------------------------------
// TableAlgebra

SpVec TableAlgebra::product(int a, int b) const {
  return table_[a][b];
}

SpVec TableAlgebra::letter(int bimod, int midx) const {
  // 1_{R_tgt} * letter
  int tv = bimods_[bimod].tgt;
  SpVec acc;
  int slot = letter_slot_.at({bimod, midx});
  for (size_t rp = 0; rp < ring_basis_.size(); ++rp) {
    if (vertex_ids_[rp] != tv) continue;
    // unit coords are encoded in the degree-0 reduction: sum over ring basis
    // weighted by the unit's coordinates, which the builder stored as idems_
    for (const auto& [i, c] : idems_[rp]) {
      const SpVec& red = red_letter_[i][slot];
      for (const auto& [k, ck] : red) acc.push_back({k, ck * c % prime_});
    }
  }
  return spvec_normalize(std::move(acc), prime_);
}

// ---------------------------------------------------------------------------
// Builder

TableAlgebra build_presented(const Presentation& pres, int cap,
                             ErrorKind cap_error) {
  TableAlgebra alg;
  alg.prime_ = pres.prime;
  alg.bimods_ = pres.bimods;
  const i64 p = pres.prime;
  GfOps ops{p};

  // vertex layout
  for (const auto& r : pres.rings) {
    alg.vertex_ids_.push_back(r.vertex);
    alg.labels_.push_back({r.vertex});
  }

  // letter slots
  int total_slots = 0;
  for (size_t b = 0; b < pres.bimods.size(); ++b) {
    for (int m = 0; m < pres.bimods[b].dim; ++m)
      alg.letter_slot_[{static_cast<int>(b), m}] = total_slots++;
  }

  // degree 0: ring bases
  std::vector<std::vector<int>> degree_basis;  // per degree: global indices
  std::vector<std::vector<SpVec>> ract;        // per basis elt: right ring action
  alg.ring_basis_.resize(pres.rings.size());
  degree_basis.emplace_back();
  for (size_t rp = 0; rp < pres.rings.size(); ++rp) {
    const auto& r = pres.rings[rp];
    for (int i = 0; i < r.dim; ++i) {
      int gi = static_cast<int>(alg.meta_.size());
      alg.meta_.push_back({r.vertex, r.vertex, 0, 0});
      alg.words_.push_back({-1, -1, i, static_cast<int>(rp)});
      alg.ring_basis_[rp].push_back({gi, i});
      degree_basis[0].push_back(gi);
    }
  }
  // degree-0 right action: (rp, i) * d = column d of mult[i]
  for (size_t rp = 0; rp < pres.rings.size(); ++rp) {
    const auto& r = pres.rings[rp];
    for (int i = 0; i < r.dim; ++i) {
      std::vector<SpVec> row;
      for (int d = 0; d < r.dim; ++d) {
        SpVec v;
        for (int t = 0; t < r.dim; ++t) {
          i64 c = r.mult[i].at(t, d);
          if (c) v.push_back({alg.ring_basis_[rp][t].first, c});
        }
        row.push_back(spvec_normalize(std::move(v), p));
      }
      ract.push_back(std::move(row));
    }
  }
  // idempotents = ring units
  for (size_t rp = 0; rp < pres.rings.size(); ++rp) {
    SpVec e;
    for (int i = 0; i < pres.rings[rp].dim; ++i)
      if (pres.rings[rp].one[i])
        e.push_back({alg.ring_basis_[rp][i].first, pres.rings[rp].one[i]});
    alg.idems_.push_back(spvec_normalize(std::move(e), p));
  }

  auto ring_pos_of_vertex = [&](int vid) {
    for (size_t rp = 0; rp < pres.rings.size(); ++rp)
      if (pres.rings[rp].vertex == vid) return static_cast<int>(rp);
    fail(ErrorKind::Invalid, "bimodule endpoint has no ring");
  };

  alg.red_letter_.assign(alg.meta_.size(), {});

  // degree-by-degree construction
  for (int n = 1;; ++n) {
    const auto& prev = degree_basis[n - 1];
    // raw slots ordered by (bimod, midx, u)
    struct Raw {
      int b, m, u;
    };
    std::vector<Raw> raws;
    for (size_t b = 0; b < pres.bimods.size(); ++b)
      for (int m = 0; m < pres.bimods[b].dim; ++m)
        for (int u : prev)
          if (alg.meta_[u].src == pres.bimods[b].tgt)
            raws.push_back({static_cast<int>(b), m, u});
    if (raws.empty()) break;

    // cells keyed by (src vertex, tgt vertex, star)
    std::map<std::tuple<int, int, int>, std::vector<int>> cells;
    for (size_t ri = 0; ri < raws.size(); ++ri) {
      const auto& r = raws[ri];
      cells[{pres.bimods[r.b].src, alg.meta_[r.u].tgt,
             alg.meta_[r.u].star + pres.bimods[r.b].star}]
          .push_back(static_cast<int>(ri));
    }
    std::vector<int> raw_to_cellpos(raws.size());
    for (auto& [key, list] : cells)
      for (size_t j = 0; j < list.size(); ++j)
        raw_to_cellpos[list[j]] = static_cast<int>(j);

    // relation rows per cell
    std::map<std::tuple<int, int, int>, std::vector<std::vector<i64>>> rows;
    auto add_row = [&](const std::map<int, i64>& coords) {
      // determine the cell from the first nonzero coordinate
      int first = -1;
      for (const auto& [ri, c] : coords)
        if (c % p != 0) { first = ri; break; }
      if (first < 0) return;
      const auto& r0 = raws[first];
      std::tuple<int, int, int> key{pres.bimods[r0.b].src, alg.meta_[r0.u].tgt,
                                    alg.meta_[r0.u].star + pres.bimods[r0.b].star};
      std::vector<i64> row(cells[key].size(), 0);
      for (const auto& [ri, c] : coords) {
        i64 cc = ((c % p) + p) % p;
        if (!cc) continue;
        const auto& r = raws[ri];
        std::tuple<int, int, int> k2{pres.bimods[r.b].src, alg.meta_[r.u].tgt,
                                     alg.meta_[r.u].star + pres.bimods[r.b].star};
        if (k2 != key) fail(ErrorKind::Invalid, "relation row not homogeneous");
        row[raw_to_cellpos[ri]] = (row[raw_to_cellpos[ri]] + cc) % p;
      }
      rows[key].push_back(std::move(row));
    };
    // fast lookup raw slot index
    std::map<std::tuple<int, int, int>, int> raw_index;
    for (size_t ri = 0; ri < raws.size(); ++ri)
      raw_index[{raws[ri].b, raws[ri].m, raws[ri].u}] = static_cast<int>(ri);

    // balancing rows: (u*d) (x) m  -  u (x) (d*m)
    for (int u : prev) {
      int rp = ring_pos_of_vertex(alg.meta_[u].src);
      const auto& ring = pres.rings[rp];
      if (ring.dim == 1) continue;  // scalar action balances trivially
      for (size_t b = 0; b < pres.bimods.size(); ++b) {
        if (pres.bimods[b].tgt != alg.meta_[u].src) continue;
        for (int d = 0; d < ring.dim; ++d) {
          for (int m = 0; m < pres.bimods[b].dim; ++m) {
            std::map<int, i64> coords;
            for (const auto& [w, c] : ract[u][d])
              coords[raw_index.at({static_cast<int>(b), m, w})] += c;
            for (int t = 0; t < pres.bimods[b].dim; ++t) {
              i64 c = pres.bimods[b].left_act[d].at(t, m);
              if (c)
                coords[raw_index.at({static_cast<int>(b), t, u})] -= c;
            }
            add_row(coords);
          }
        }
      }
    }

    // quadratic relation rows: u * rel * d for u in degree n-2
    if (n >= 2) {
      for (int u : degree_basis[n - 2]) {
        for (const auto& rel : pres.relations) {
          // all terms of one relation share src/tgt; check composability
          bool compatible = false;
          for (const auto& t : rel)
            if (pres.bimods[t.b2].tgt == alg.meta_[u].src) compatible = true;
          if (!compatible) continue;
          // base row: sum coeff * (u * letter(b2,m2)) (x) (b1,m1)
          std::map<int, i64> base;
          for (const auto& t : rel) {
            if (pres.bimods[t.b2].tgt != alg.meta_[u].src) continue;
            const SpVec& red = alg.red_letter_[u][alg.letter_slot_.at({t.b2, t.m2})];
            for (const auto& [w, c] : red)
              base[raw_index.at({t.b1, t.m1, w})] += t.coeff * c % p;
          }
          if (base.empty()) continue;
          // right ring multiples
          int src_v = -1;
          for (const auto& t : rel)
            if (pres.bimods[t.b2].tgt == alg.meta_[u].src)
              src_v = pres.bimods[t.b1].src;
          int rp = ring_pos_of_vertex(src_v);
          for (int d = 0; d < pres.rings[rp].dim; ++d) {
            std::map<int, i64> coords;
            for (const auto& [ri, c] : base) {
              const auto& r = raws[ri];
              for (int t2 = 0; t2 < pres.bimods[r.b].dim; ++t2) {
                i64 cc = pres.bimods[r.b].right_act[d].at(t2, r.m);
                if (cc)
                  coords[raw_index.at({r.b, t2, r.u})] += c * cc % p;
              }
            }
            add_row(coords);
          }
        }
      }
    }

    // per-cell RREF and basis extraction
    std::vector<SpVec> raw_red(raws.size());
    std::vector<int> new_basis;
    for (auto& [key, list] : cells) {
      auto rit = rows.find(key);
      int nrows = rit == rows.end() ? 0 : static_cast<int>(rit->second.size());
      KMat m(ops, nrows, static_cast<int>(list.size()));
      for (int i = 0; i < nrows; ++i)
        for (size_t j = 0; j < list.size(); ++j) m.at(i, static_cast<int>(j)) = rit->second[i][j];
      auto f = m.rref();
      std::vector<bool> is_pivot(list.size(), false);
      std::vector<int> pivot_row(list.size(), -1);
      for (size_t pr = 0; pr < f.pivots.size(); ++pr) {
        is_pivot[f.pivots[pr]] = true;
        pivot_row[f.pivots[pr]] = static_cast<int>(pr);
      }
      // non-pivots become basis elements, in raw order
      std::map<int, int> cellpos_to_global;
      for (size_t j = 0; j < list.size(); ++j) {
        if (is_pivot[j]) continue;
        const auto& r = raws[list[j]];
        int gi = static_cast<int>(alg.meta_.size());
        alg.meta_.push_back({pres.bimods[r.b].src, alg.meta_[r.u].tgt, n,
                             alg.meta_[r.u].star + pres.bimods[r.b].star});
        alg.words_.push_back({r.u, r.b, r.m, -1});
        cellpos_to_global[static_cast<int>(j)] = gi;
        new_basis.push_back(gi);
        raw_red[list[j]] = SpVec{{gi, 1}};
      }
      for (size_t j = 0; j < list.size(); ++j) {
        if (!is_pivot[j]) continue;
        SpVec v;
        int prow = pivot_row[j];
        for (size_t t = 0; t < list.size(); ++t) {
          if (is_pivot[t] || t == j) continue;
          i64 c = f.reduced.at(prow, static_cast<int>(t));
          if (c) v.push_back({cellpos_to_global.at(static_cast<int>(t)), (p - c) % p});
        }
        raw_red[list[j]] = spvec_normalize(std::move(v), p);
      }
    }

    // store letter reductions for all degree n-1 basis elements
    alg.red_letter_.resize(alg.meta_.size());
    for (int u : prev) {
      alg.red_letter_[u].assign(total_slots, SpVec{});
      for (size_t b = 0; b < pres.bimods.size(); ++b) {
        if (pres.bimods[b].tgt != alg.meta_[u].src) continue;
        for (int m = 0; m < pres.bimods[b].dim; ++m)
          alg.red_letter_[u][alg.letter_slot_.at({static_cast<int>(b), m})] =
              raw_red[raw_index.at({static_cast<int>(b), m, u})];
      }
    }

    if (new_basis.empty()) break;
    degree_basis.push_back(new_basis);

    // right ring action on the new elements: (u,b,m)*d = u (x) (m*d)
    ract.resize(alg.meta_.size());
    for (int g : new_basis) {
      const auto& w = alg.words_[g];
      int rp = ring_pos_of_vertex(alg.meta_[g].src);
      std::vector<SpVec> row;
      for (int d = 0; d < pres.rings[rp].dim; ++d) {
        SpVec acc;
        for (int t = 0; t < pres.bimods[w.bimod].dim; ++t) {
          i64 c = pres.bimods[w.bimod].right_act[d].at(t, w.midx);
          if (!c) continue;
          const SpVec& red = raw_red[raw_index.at({w.bimod, t, w.prev})];
          for (const auto& [k, ck] : red) acc.push_back({k, ck * c % p});
        }
        row.push_back(spvec_normalize(std::move(acc), p));
      }
      ract[g] = std::move(row);
    }

    if (n >= cap)
      fail(cap_error, "graded construction still nonzero at degree cap " +
                          std::to_string(cap));
  }

  // elements of the final degree have no continuation
  alg.red_letter_.resize(alg.meta_.size());
  for (auto& r : alg.red_letter_)
    if (r.empty()) r.assign(total_slots, SpVec{});

  // blocks from the vertex rings
  for (size_t rp = 0; rp < pres.rings.size(); ++rp) {
    const auto& r = pres.rings[rp];
    auto idems = split_semisimple_commutative(r.mult, r.one, p);
    for (const auto& e : idems) {
      SpVec v;
      for (int i = 0; i < r.dim; ++i)
        if (e[i]) v.push_back({alg.ring_basis_[rp][i].first, e[i]});
      // K-dimension of the block = rank of multiplication by e
      KMat me(ops, r.dim, r.dim);
      for (int i = 0; i < r.dim; ++i) {
        if (!e[i]) continue;
        for (int t = 0; t < r.dim; ++t)
          for (int d = 0; d < r.dim; ++d)
            me.at(t, d) = (me.at(t, d) + e[i] * r.mult[i].at(t, d)) % p;
      }
      alg.blocks_.push_back({r.vertex, spvec_normalize(std::move(v), p),
                             me.rank()});
    }
  }

  // full product table: pairs ordered by the degree of the right factor
  int dim = alg.dim();
  alg.table_.assign(dim, std::vector<SpVec>(dim));
  std::vector<int> by_deg(dim);
  for (int i = 0; i < dim; ++i) by_deg[i] = i;
  std::stable_sort(by_deg.begin(), by_deg.end(), [&](int a, int b) {
    return alg.meta_[a].deg < alg.meta_[b].deg;
  });
  for (int b : by_deg) {
    for (int a = 0; a < dim; ++a) {
      const auto& wb = alg.words_[b];
      if (alg.meta_[b].deg == 0) {
        if (alg.meta_[a].src != alg.meta_[b].src) continue;
        alg.table_[a][b] = ract[a][wb.midx];
      } else {
        if (alg.meta_[a].src != alg.meta_[b].tgt) continue;
        const SpVec& au = alg.table_[a][wb.prev];
        SpVec acc;
        int slot = alg.letter_slot_.at({wb.bimod, wb.midx});
        for (const auto& [w, c] : au) {
          const SpVec& red = alg.red_letter_[w][slot];
          for (const auto& [k, ck] : red) acc.push_back({k, ck * c % p});
        }
        alg.table_[a][b] = spvec_normalize(std::move(acc), p);
      }
    }
  }
  return alg;
}

// ---------------------------------------------------------------------------
// Species presentations

namespace {

// multiplication matrix of GF(p^m) element `e` in the power basis
KMat fq_mult_matrix(const Fq& h, const FqElem& e, i64 p) {
  GfOps ops{p};
  int m = h.k();
  KMat out(ops, m, m);
  for (int j = 0; j < m; ++j) {
    FqElem col = h.mul(e, h.pow_basis(j));
    for (int i = 0; i < m; ++i) out.at(i, j) = col.c[i];
  }
  return out;
}

}  // namespace

Presentation species_presentation(const Species& s, bool doubled) {
  s.validate();
  Presentation pres;
  pres.prime = s.prime;
  for (const auto& v : s.vertices) {
    Fq f(s.prime, v.ext_degree);
    RingSpec r;
    r.vertex = v.id;
    r.dim = v.ext_degree;
    for (int i = 0; i < r.dim; ++i)
      r.mult.push_back(fq_mult_matrix(f, f.pow_basis(i), s.prime));
    r.one.assign(r.dim, 0);
    r.one[0] = 1;
    pres.rings.push_back(std::move(r));
  }
  auto ring_action = [&](const Fq& h, int vertex_k) {
    // action matrices of the vertex ring basis, embedded in H
    std::vector<KMat> acts;
    for (int d = 0; d < vertex_k; ++d)
      acts.push_back(fq_mult_matrix(h, h.pow_basis(d), s.prime));
    return acts;
  };
  for (size_t a = 0; a < s.arrows.size(); ++a) {
    int m = s.bimodule_kdim(static_cast<int>(a));
    Fq h(s.prime, m);
    int ks = s.ext_degree(s.arrows[a].src), kt = s.ext_degree(s.arrows[a].tgt);
    BimoduleSpec plain;
    plain.src = s.arrows[a].src;
    plain.tgt = s.arrows[a].tgt;
    plain.star = 0;
    plain.dim = m;
    plain.left_act = ring_action(h, kt);
    plain.right_act = ring_action(h, ks);
    pres.bimods.push_back(plain);
    if (doubled) {
      BimoduleSpec star;
      star.src = s.arrows[a].tgt;
      star.tgt = s.arrows[a].src;
      star.star = 1;
      star.dim = m;
      star.left_act = ring_action(h, ks);
      star.right_act = ring_action(h, kt);
      pres.bimods.push_back(star);
    }
  }
  if (doubled) {
    auto dbl_index = [](DArrow d) { return 2 * d.arrow + (d.starred ? 1 : 0); };
    std::map<int, std::vector<RelTerm>> by_vertex;
    for (const auto& t : s.casimir()) {
      int v = s.dtgt(t.second);
      int m2dim = s.bimodule_kdim(t.second.arrow);
      int m1dim = s.bimodule_kdim(t.first.arrow);
      for (int i = 0; i < m2dim; ++i) {
        if (!t.second_elem.c[i]) continue;
        for (int j = 0; j < m1dim; ++j) {
          if (!t.first_elem.c[j]) continue;
          i64 coeff = t.sign * t.second_elem.c[i] % s.prime * t.first_elem.c[j] % s.prime;
          by_vertex[v].push_back({dbl_index(t.second), i, dbl_index(t.first), j,
                                  ((coeff % s.prime) + s.prime) % s.prime});
        }
      }
    }
    for (auto& [v, terms] : by_vertex) pres.relations.push_back(std::move(terms));
  }
  return pres;
}

TableAlgebra tensor_algebra(const Species& s, int max_degree) {
  if (max_degree < 0) fail(ErrorKind::Invalid, "max_degree must be >= 0");
  return build_presented(species_presentation(s, false), max_degree,
                         ErrorKind::TruncationHit);
}

TableAlgebra preprojective(const Species& s, int cap) {
  if (!classify(s.valued_quiver()).type)
    fail(ErrorKind::NotDynkin, "preprojective algebra needs a Dynkin species");
  return build_presented(species_presentation(s, true), cap,
                         ErrorKind::TruncationHit);
}

}  // namespace specfold
