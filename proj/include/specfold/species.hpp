#pragma once

// Species over finite-field towers: a quiver whose vertex i carries
// GF(p^{k_i}) and whose arrow carries the larger endpoint field as a
// bimodule.  Provides the double quiver, the distinguished bimodule bases
// together with their dual bases, and the Casimir element that presents the
// preprojective algebra.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specfold/field.hpp"
#include "specfold/quiver.hpp"

namespace specfold {

struct SpeciesVertex {
  int id;
  int ext_degree;  // k_i: D_i = GF(p^{k_i})
};

struct SpeciesArrow {
  int id;
  int src, tgt;
};

// A double-quiver arrow: an original arrow or its reversed starred partner.
struct DArrow {
  int arrow;     // index into Species::arrows
  bool starred;
  bool operator==(const DArrow& o) const {
    return arrow == o.arrow && starred == o.starred;
  }
  bool operator<(const DArrow& o) const {
    return arrow != o.arrow ? arrow < o.arrow : starred < o.starred;
  }
};

// Distinguished bases of one arrow's bimodule and of its dual.
struct ArrowBases {
  int m;                    // K-dimension of the bimodule field H = GF(p^m)
  Fq h;                     // the field H
  std::vector<FqElem> y;    // y^1..y^{max(ds,dt)}, a power-basis prefix
  std::vector<FqElem> mu;   // matching basis of the dual bimodule
};

// One term of the Casimir element: coeff * (second letter) (x) (first
// letter), the first letter being the path-initial arrow.
struct CasimirTerm {
  DArrow second;
  FqElem second_elem;
  DArrow first;
  FqElem first_elem;
  int sign;  // +1 or -1
};

class Species {
 public:
  std::string name;
  i64 prime = 7;
  std::vector<SpeciesVertex> vertices;
  std::vector<SpeciesArrow> arrows;

  void validate() const;

  int vertex_index(int id) const;
  int ext_degree(int id) const { return vertices[vertex_index(id)].ext_degree; }
  i64 vertex_dim(int id) const { return ext_degree(id); }  // dim_K D_i
  ValuedQuiver valued_quiver() const;

  // K-dimension of the bimodule on arrow a (the larger endpoint field).
  int bimodule_kdim(int a) const;
  int dim_over_src(int a) const { return bimodule_kdim(a) / ext_degree(arrows[a].src); }
  int dim_over_tgt(int a) const { return bimodule_kdim(a) / ext_degree(arrows[a].tgt); }

  // endpoints of a double-quiver arrow
  int dsrc(DArrow b) const { return b.starred ? arrows[b.arrow].tgt : arrows[b.arrow].src; }
  int dtgt(DArrow b) const { return b.starred ? arrows[b.arrow].src : arrows[b.arrow].tgt; }
  std::vector<DArrow> double_arrows() const;

  // Bases with y^1 = 1 and the dual basis chosen so every c_beta is a
  // Casimir element; optional right scaling y -> y*a for invariance tests.
  ArrowBases arrow_bases(int a, std::optional<FqElem> scale = {}) const;

  // c = sum over double arrows of sgn * (diagonal dual-basis tensor)
  std::vector<CasimirTerm> casimir(
      const std::map<int, FqElem>& scale = {}) const;

  // Exhibits dual bases on both sides of every arrow's bimodule, certifying
  // Hom_{D_s^op}(M, D_s) iso Hom_{D_t}(M, D_t); throws Invalid on failure.
  void certify_dualisable() const;
};

// Figure-2 realization of a Dynkin valued quiver over GF(p)-towers.
Species realize(const ValuedQuiver& q, i64 prime);

// JSON I/O for the species spec file format.
Species species_from_json(const std::string& text);
std::string species_to_json(const Species& s);

}  // namespace specfold
