#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "specfold/species.hpp"

using namespace specfold;

namespace {

Species linear_species(std::vector<int> ks, i64 p = 7) {
  Species s;
  s.prime = p;
  for (size_t i = 0; i < ks.size(); ++i)
    s.vertices.push_back({static_cast<int>(i) + 1, ks[i]});
  for (size_t i = 0; i + 1 < ks.size(); ++i)
    s.arrows.push_back({static_cast<int>(i) + 1, static_cast<int>(i) + 1,
                        static_cast<int>(i) + 2});
  s.validate();
  return s;
}

// coordinates of a sum of pure tensors in M_{b2} (x)_{D_v} M_{b1}, reduced
// modulo the balancing relations; used to compare Casimir elements.
std::vector<i64> balanced_coords(const Species& s, DArrow b2, DArrow b1,
                                 const std::vector<std::pair<std::pair<FqElem, FqElem>, i64>>& terms) {
  int a2 = b2.arrow, a1 = b1.arrow;
  int m2 = s.bimodule_kdim(a2), m1 = s.bimodule_kdim(a1);
  Fq h2(s.prime, m2), h1(s.prime, m1);
  int v = s.dtgt(b1);
  REQUIRE(s.dsrc(b2) == v);
  int kv = s.ext_degree(v);
  GfOps ops{s.prime};
  // relation rows: (h x^d) (x) h' - h (x) (x^d h') for ring basis x^d
  std::vector<std::vector<i64>> rows;
  for (int d = 0; d < kv; ++d) {
    if (d == 0) continue;  // scalar 1 balances trivially
    for (int i = 0; i < m2; ++i)
      for (int j = 0; j < m1; ++j) {
        std::vector<i64> row(m2 * m1, 0);
        FqElem hd2 = h2.mul(h2.pow_basis(i), h2.pow_basis(d));
        for (int t = 0; t < m2; ++t)
          row[t * m1 + j] = (row[t * m1 + j] + hd2.c[t]) % s.prime;
        FqElem hd1 = h1.mul(h1.pow_basis(d), h1.pow_basis(j));
        for (int t = 0; t < m1; ++t)
          row[i * m1 + t] =
              ((row[i * m1 + t] - hd1.c[t]) % s.prime + s.prime) % s.prime;
        rows.push_back(std::move(row));
      }
  }
  KMat rel(ops, static_cast<int>(rows.size()), m2 * m1);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < m2 * m1; ++c) rel.at(static_cast<int>(r), c) = rows[r][c];
  auto rr = rel.rref();
  // raw vector of the term sum
  std::vector<i64> raw(m2 * m1, 0);
  for (const auto& [pair, coeff] : terms)
    for (int i = 0; i < m2; ++i)
      for (int j = 0; j < m1; ++j)
        raw[i * m1 + j] =
            ((raw[i * m1 + j] + coeff * pair.first.c[i] * pair.second.c[j]) %
                 s.prime + s.prime) % s.prime;
  // reduce raw modulo the row space of rel
  for (size_t pr = 0; pr < rr.pivots.size(); ++pr) {
    int pc = rr.pivots[pr];
    i64 f = raw[pc];
    if (f == 0) continue;
    for (int c = 0; c < m2 * m1; ++c)
      raw[c] = ((raw[c] - f * rr.reduced.at(static_cast<int>(pr), c)) %
                    s.prime + s.prime) % s.prime;
  }
  return raw;
}

}  // namespace

TEST_CASE("realize assigns Figure-2 towers") {
  // C3: dims (2,1,1)
  ValuedQuiver c3;
  c3.vertices = {{1, 2}, {2, 1}, {3, 1}};
  c3.arrows = {{1, 1, 2, 1, 2}, {2, 2, 3, 1, 1}};
  Species s = realize(c3, 7);
  CHECK(s.ext_degree(1) == 2);
  CHECK(s.ext_degree(2) == 1);
  CHECK(s.ext_degree(3) == 1);
  CHECK(s.bimodule_kdim(0) == 2);
  CHECK(s.bimodule_kdim(1) == 1);

  ValuedQuiver a2;
  a2.vertices = {{1, 1}, {2, 1}};
  a2.arrows = {{1, 1, 2, 1, 1}};
  Species sa = realize(a2, 7);
  CHECK(sa.ext_degree(1) == 1);
  CHECK(sa.ext_degree(2) == 1);

  ValuedQuiver g2;
  g2.vertices = {{1, 3}, {2, 1}};
  g2.arrows = {{1, 1, 2, 1, 3}};
  Species sg = realize(g2, 7);
  CHECK(sg.ext_degree(1) == 3);
  CHECK(sg.ext_degree(2) == 1);
  CHECK(sg.bimodule_kdim(0) == 3);  // [G:F] = 3

  ValuedQuiver cyc;
  cyc.vertices = {{1, 1}, {2, 1}, {3, 1}};
  cyc.arrows = {{1, 1, 2, 1, 1}, {2, 2, 3, 1, 1}, {3, 3, 1, 1, 1}};
  CHECK_THROWS_AS(realize(cyc, 7), Error);
}

TEST_CASE("double quiver of D4 has 6 arrows; A1 has empty Casimir") {
  Species d4;
  d4.prime = 7;
  d4.vertices = {{1, 1}, {2, 1}, {3, 1}, {4, 1}};
  d4.arrows = {{1, 1, 2}, {2, 2, 3}, {3, 2, 4}};
  CHECK(d4.double_arrows().size() == 6);

  Species a1 = linear_species({1});
  CHECK(a1.double_arrows().empty());
  CHECK(a1.casimir().empty());
}

TEST_CASE("C3 Casimir has the five-term shape of the worked example") {
  Species c3 = linear_species({2, 1, 1});
  auto terms = c3.casimir();
  REQUIRE(terms.size() == 5);
  // arrow 0 (bimodule G): +1 loop at vertex 2 and two -1 loops at vertex 1
  int pos2 = 0, neg1 = 0, pos3 = 0, neg2 = 0;
  for (const auto& t : terms) {
    int loop_at = c3.dtgt(t.second);
    CHECK(c3.dsrc(t.first) == loop_at);
    if (t.sign == 1 && loop_at == 2 && !t.second.starred) ++pos2;
    if (t.sign == -1 && loop_at == 1 && t.second.starred) ++neg1;
    if (t.sign == 1 && loop_at == 3) ++pos3;
    if (t.sign == -1 && loop_at == 2 && t.second.starred) ++neg2;
  }
  CHECK(pos2 == 1);
  CHECK(neg1 == 2);
  CHECK(pos3 == 1);
  CHECK(neg2 == 1);
  // y^1 = 1 normalization on plain arrows
  for (size_t a = 0; a < c3.arrows.size(); ++a) {
    auto b = c3.arrow_bases(static_cast<int>(a));
    CHECK(b.y[0] == b.h.one());
  }
}

TEST_CASE("vertex-loop shape of e_i c e_i: incoming positive, outgoing negative") {
  Species c3 = linear_species({2, 1, 1});
  auto terms = c3.casimir();
  for (int v = 1; v <= 3; ++v) {
    i64 incoming = 0, outgoing = 0;
    for (const auto& t : terms) {
      if (c3.dtgt(t.second) != v) continue;
      if (t.sign == 1) ++incoming;   // t.second is an unstarred arrow into v
      else ++outgoing;
    }
    i64 expect_in = 0, expect_out = 0;
    for (size_t a = 0; a < c3.arrows.size(); ++a) {
      if (c3.arrows[a].tgt == v) expect_in += c3.dim_over_src(static_cast<int>(a));
      if (c3.arrows[a].src == v) expect_out += c3.dim_over_tgt(static_cast<int>(a));
    }
    CHECK(incoming == expect_in);
    CHECK(outgoing == expect_out);
  }
}

TEST_CASE("Casimir is invariant under dual-basis rescaling") {
  for (auto ks : {std::vector<int>{2, 1}, std::vector<int>{1, 2},
                  std::vector<int>{3, 1}, std::vector<int>{1, 1}}) {
    Species s = linear_species(ks);
    Fq h(s.prime, s.bimodule_kdim(0));
    // scale by a unit of D_src (the whole field when src is the big vertex)
    FqElem a = s.ext_degree(s.arrows[0].src) == h.k()
                   ? (h.k() > 1 ? h.add(h.x(), h.from_int(3)) : h.from_int(3))
                   : h.from_int(3);
    auto plain = s.casimir();
    std::map<int, FqElem> sc{{0, a}};
    auto scaled = s.casimir(sc);
    REQUIRE(plain.size() == scaled.size());
    // compare the two elements loop by loop in balanced coordinates
    for (auto second : s.double_arrows()) {
      DArrow first{second.arrow, !second.starred};
      auto collect = [&](const std::vector<CasimirTerm>& ts) {
        std::vector<std::pair<std::pair<FqElem, FqElem>, i64>> out;
        for (const auto& t : ts)
          if (t.second == second && t.first == first)
            out.push_back({{t.second_elem, t.first_elem}, t.sign});
        return out;
      };
      auto c0 = balanced_coords(s, second, first, collect(plain));
      auto c1 = balanced_coords(s, second, first, collect(scaled));
      CHECK(c0 == c1);
    }
  }
}

TEST_CASE("dualisability certificate passes for all realized types") {
  for (auto ks : {std::vector<int>{1, 1, 1}, std::vector<int>{2, 1, 1},
                  std::vector<int>{1, 2, 2}, std::vector<int>{3, 1},
                  std::vector<int>{2, 2, 1, 1}}) {
    Species s = linear_species(ks);
    s.certify_dualisable();
  }
}

TEST_CASE("species JSON round trip and validation paths") {
  Species c3 = linear_species({2, 1, 1});
  c3.name = "C3";
  Species back = species_from_json(species_to_json(c3));
  CHECK(back.name == "C3");
  CHECK(back.vertices.size() == 3);
  CHECK(back.arrows.size() == 2);

  CHECK_THROWS_WITH_AS(species_from_json("{\"prime\": 7, \"vertices\": 3}"),
                       doctest::Contains("/vertices"), Error);
  CHECK_THROWS_WITH_AS(
      species_from_json("{\"prime\": 7, \"vertices\": [{\"id\": 1, "
                        "\"ext_degree\": 9}], \"arrows\": []}"),
      doctest::Contains("/vertices/0/ext_degree"), Error);
  CHECK_THROWS_AS(species_from_json("not json"), Error);
  // incomparable towers on one edge are rejected
  CHECK_THROWS_AS(
      species_from_json("{\"prime\": 7, \"vertices\": [{\"id\":1,\"ext_degree\":2},"
                        "{\"id\":2,\"ext_degree\":3}], \"arrows\": "
                        "[{\"id\":1,\"source\":1,\"target\":2}]}"),
      Error);
}

TEST_CASE("realize then classify is stable") {
  ValuedQuiver b3;
  b3.vertices = {{1, 1}, {2, 2}, {3, 2}};
  b3.arrows = {{1, 2, 1, 1, 2}, {2, 2, 3, 1, 1}};
  Species s = realize(b3, 7);
  auto c = classify(s.valued_quiver());
  REQUIRE(c.type.has_value());
  CHECK(c.type->name() == "B3");
  Species s2 = realize(s.valued_quiver(), 7);
  for (size_t i = 0; i < s.vertices.size(); ++i)
    CHECK(s.vertices[i].ext_degree == s2.vertices[i].ext_degree);
}
