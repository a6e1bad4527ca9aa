#include "specfold/species.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace specfold {

using nlohmann::json;

void Species::validate() const {
  if (!is_odd_prime(prime) || prime >= (1 << 16))
    fail(ErrorKind::Invalid, "/prime: must be an odd prime < 2^16");
  std::set<int> ids;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const auto& v = vertices[i];
    if (!ids.insert(v.id).second)
      fail(ErrorKind::Invalid,
           "/vertices/" + std::to_string(i) + "/id: duplicate");
    if (v.ext_degree < 1 || v.ext_degree > 3)
      fail(ErrorKind::Invalid,
           "/vertices/" + std::to_string(i) + "/ext_degree: must be 1..3");
  }
  std::set<std::pair<int, int>> pairs;
  std::set<int> aids;
  for (size_t i = 0; i < arrows.size(); ++i) {
    const auto& a = arrows[i];
    std::string at = "/arrows/" + std::to_string(i);
    if (!aids.insert(a.id).second)
      fail(ErrorKind::Invalid, at + "/id: duplicate");
    if (!ids.count(a.src)) fail(ErrorKind::Invalid, at + "/source: unknown vertex");
    if (!ids.count(a.tgt)) fail(ErrorKind::Invalid, at + "/target: unknown vertex");
    if (a.src == a.tgt) fail(ErrorKind::Invalid, at + ": loop arrow");
    int u = std::min(a.src, a.tgt), v = std::max(a.src, a.tgt);
    if (!pairs.insert({u, v}).second)
      fail(ErrorKind::Invalid, at + ": multiple arrows between one vertex pair");
    int ks = ext_degree(a.src), kt = ext_degree(a.tgt);
    if (ks % kt != 0 && kt % ks != 0)
      fail(ErrorKind::Invalid,
           at + ": endpoint tower degrees are incomparable, no larger field");
  }
}

int Species::vertex_index(int id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  fail(ErrorKind::Invalid, "unknown vertex id " + std::to_string(id));
}

ValuedQuiver Species::valued_quiver() const {
  ValuedQuiver q;
  for (const auto& v : vertices) q.vertices.push_back({v.id, v.ext_degree});
  for (size_t i = 0; i < arrows.size(); ++i) {
    const auto& a = arrows[i];
    int m = bimodule_kdim(static_cast<int>(i));
    q.arrows.push_back({a.id, a.src, a.tgt, m / ext_degree(a.src),
                        m / ext_degree(a.tgt)});
  }
  return q;
}

int Species::bimodule_kdim(int a) const {
  return std::max(ext_degree(arrows[a].src), ext_degree(arrows[a].tgt));
}

std::vector<DArrow> Species::double_arrows() const {
  std::vector<DArrow> out;
  for (size_t i = 0; i < arrows.size(); ++i) {
    out.push_back({static_cast<int>(i), false});
    out.push_back({static_cast<int>(i), true});
  }
  return out;
}

ArrowBases Species::arrow_bases(int a, std::optional<FqElem> scale) const {
  const auto& ar = arrows[a];
  int ks = ext_degree(ar.src), kt = ext_degree(ar.tgt);
  int m = bimodule_kdim(a);
  ArrowBases out;
  out.m = m;
  out.h = Fq(prime, m);
  const Fq& h = out.h;
  int nbasis = m / std::min(ks, kt);  // max(ds, dt)
  for (int i = 0; i < nbasis; ++i) out.y.push_back(h.pow_basis(i));
  if (scale)
    for (auto& v : out.y) v = h.mul(v, *scale);
  if (ks == kt) {
    // both rings equal H; the dual of {y1} is right multiplication by y1^-1
    out.mu.push_back(h.inv(out.y[0]));
    return out;
  }
  if (ks > kt) {
    // The source carries H, so {y1} is the D_s-basis and its dual is forced
    // to be mu_1 = y1^-1.  The remaining mu_l complete a basis of the dual
    // bimodule through the trace pairing: pick u with Tr(u y_j y1^-1) =
    // delta_{j1}, then Tr(u y_j mu_l) = delta_{jl}.
    FqElem y1_inv = h.inv(out.y[0]);
    std::vector<FqElem> anchored;
    for (const auto& v : out.y) anchored.push_back(h.mul(v, y1_inv));
    FqElem u = h.trace_dual_basis(anchored)[0];
    std::vector<FqElem> scaled;
    for (const auto& v : out.y) scaled.push_back(h.mul(u, v));
    out.mu = h.trace_dual_basis(scaled);
  } else {
    // target carries H: mu is the trace-dual basis of y
    out.mu = h.trace_dual_basis(out.y);
  }
  return out;
}

std::vector<CasimirTerm> Species::casimir(
    const std::map<int, FqElem>& scale) const {
  std::vector<CasimirTerm> terms;
  for (size_t a = 0; a < arrows.size(); ++a) {
    std::optional<FqElem> sc;
    auto it = scale.find(static_cast<int>(a));
    if (it != scale.end()) sc = it->second;
    ArrowBases b = arrow_bases(static_cast<int>(a), sc);
    int ds = dim_over_src(static_cast<int>(a));
    int dt = dim_over_tgt(static_cast<int>(a));
    DArrow plain{static_cast<int>(a), false}, star{static_cast<int>(a), true};
    // c_alpha = sum_{i<ds} y_i (x) mu_i, a loop at tgt(alpha), sign +1
    for (int i = 0; i < ds; ++i)
      terms.push_back({plain, b.y[i], star, b.mu[i], +1});
    // c_{alpha*} = sum_{i<dt} mu_i (x) y_i, a loop at src(alpha), sign -1
    for (int i = 0; i < dt; ++i)
      terms.push_back({star, b.mu[i], plain, b.y[i], -1});
  }
  return terms;
}

void Species::certify_dualisable() const {
  for (size_t a = 0; a < arrows.size(); ++a) {
    ArrowBases b = arrow_bases(static_cast<int>(a));
    const Fq& h = b.h;
    int ds = dim_over_src(static_cast<int>(a));
    int dt = dim_over_tgt(static_cast<int>(a));
    int ks = ext_degree(arrows[a].src);
    // Right D_s-side: functionals f_i(x) in D_s with x = sum y_i * f_i(x).
    // In the field model f_i(x) is the D_s-coordinate of x in the y-basis;
    // verify the reconstruction identity on every power-basis element.
    for (int e = 0; e < b.m; ++e) {
      FqElem x = h.pow_basis(e);
      // coordinates of x over D_s in basis y_1..y_ds: solve the K-linear
      // system sum y_i * c_i = x with c_i in D_s
      GfOps ops{prime};
      int kd = ks;
      KMat sys(ops, b.m, ds * kd);
      for (int i = 0; i < ds; ++i)
        for (int j = 0; j < kd; ++j) {
          FqElem col = h.mul(b.y[i], h.pow_basis(j));  // y_i * (D_s basis elt)
          for (int r = 0; r < b.m; ++r) sys.at(r, i * kd + j) = col.c[r];
        }
      std::vector<i64> rhs(b.m);
      for (int r = 0; r < b.m; ++r) rhs[r] = x.c[r];
      auto sol = sys.solve(rhs);  // throws Inconsistent if y is not a basis
      // reconstruct and compare
      FqElem acc = h.zero();
      for (int i = 0; i < ds; ++i) {
        std::vector<i64> c(sol.begin() + i * kd, sol.begin() + (i + 1) * kd);
        acc = h.add(acc, h.mul(b.y[i], h.from_coeffs(c)));
      }
      if (!(acc == x))
        fail(ErrorKind::Invalid, "dual basis reconstruction failed (source side)");
    }
    // Left D_t-side: same with the y_1..y_dt prefix
    int kt = ext_degree(arrows[a].tgt);
    for (int e = 0; e < b.m; ++e) {
      FqElem x = h.pow_basis(e);
      GfOps ops{prime};
      KMat sys(ops, b.m, dt * kt);
      for (int i = 0; i < dt; ++i)
        for (int j = 0; j < kt; ++j) {
          FqElem col = h.mul(h.pow_basis(j), b.y[i]);
          for (int r = 0; r < b.m; ++r) sys.at(r, i * kt + j) = col.c[r];
        }
      std::vector<i64> rhs(b.m);
      for (int r = 0; r < b.m; ++r) rhs[r] = x.c[r];
      auto sol = sys.solve(rhs);
      FqElem acc = h.zero();
      for (int i = 0; i < dt; ++i) {
        std::vector<i64> c(sol.begin() + i * kt, sol.begin() + (i + 1) * kt);
        acc = h.add(acc, h.mul(h.from_coeffs(c), b.y[i]));
      }
      if (!(acc == x))
        fail(ErrorKind::Invalid, "dual basis reconstruction failed (target side)");
    }
  }
}

Species realize(const ValuedQuiver& q, i64 prime) {
  Classification c = classify(q);
  if (!c.type)
    fail(ErrorKind::NotDynkin, "cannot realize a non-Dynkin valued quiver");
  Species s;
  s.prime = prime;
  s.name = c.type->name();
  int big = 1;
  switch (c.type->family) {
    case DynkinFamily::B:
    case DynkinFamily::C:
    case DynkinFamily::F: big = 2; break;
    case DynkinFamily::G: big = 3; break;
    default: big = 1; break;
  }
  for (const auto& v : q.vertices) {
    int label = c.canonical_label.at(v.id);
    int k = 1;
    switch (c.type->family) {
      case DynkinFamily::B: k = label == 1 ? 1 : big; break;
      case DynkinFamily::C: k = label == 1 ? big : 1; break;
      case DynkinFamily::F: k = label <= 2 ? big : 1; break;
      case DynkinFamily::G: k = label == 1 ? big : 1; break;
      default: k = 1; break;
    }
    s.vertices.push_back({v.id, k});
  }
  for (const auto& a : q.arrows) s.arrows.push_back({a.id, a.src, a.tgt});
  s.validate();
  s.certify_dualisable();
  return s;
}

Species species_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Invalid, std::string("/: not valid JSON: ") + e.what());
  }
  Species s;
  if (!j.is_object()) fail(ErrorKind::Invalid, "/: expected an object");
  s.name = j.value("name", "");
  if (!j.contains("prime") || !j["prime"].is_number_integer())
    fail(ErrorKind::Invalid, "/prime: required integer");
  s.prime = j["prime"].get<i64>();
  if (!j.contains("vertices") || !j["vertices"].is_array())
    fail(ErrorKind::Invalid, "/vertices: required array");
  for (size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    std::string at = "/vertices/" + std::to_string(i);
    if (!v.is_object() || !v.contains("id") || !v.contains("ext_degree") ||
        !v["id"].is_number_integer() || !v["ext_degree"].is_number_integer())
      fail(ErrorKind::Invalid, at + ": expected {id, ext_degree}");
    s.vertices.push_back({v["id"].get<int>(), v["ext_degree"].get<int>()});
  }
  if (!j.contains("arrows") || !j["arrows"].is_array())
    fail(ErrorKind::Invalid, "/arrows: required array");
  for (size_t i = 0; i < j["arrows"].size(); ++i) {
    const auto& a = j["arrows"][i];
    std::string at = "/arrows/" + std::to_string(i);
    if (!a.is_object() || !a.contains("id") || !a.contains("source") ||
        !a.contains("target"))
      fail(ErrorKind::Invalid, at + ": expected {id, source, target}");
    s.arrows.push_back({a["id"].get<int>(), a["source"].get<int>(),
                        a["target"].get<int>()});
  }
  s.validate();
  return s;
}

std::string species_to_json(const Species& s) {
  json j;
  j["name"] = s.name;
  j["prime"] = s.prime;
  j["vertices"] = json::array();
  for (const auto& v : s.vertices)
    j["vertices"].push_back({{"id", v.id}, {"ext_degree", v.ext_degree}});
  j["arrows"] = json::array();
  for (const auto& a : s.arrows)
    j["arrows"].push_back({{"id", a.id}, {"source", a.src}, {"target", a.tgt}});
  return j.dump(2);
}

}  // namespace specfold
