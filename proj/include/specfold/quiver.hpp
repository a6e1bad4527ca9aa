#pragma once

// Valued quivers and Dynkin classification.  A valued quiver records, per
// vertex, the K-dimension of its division ring and, per arrow, the pair
// (dim over the source ring, dim over the target ring) of the edge bimodule.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specfold/common.hpp"
#include "specfold/field.hpp"

namespace specfold {

struct QuiverVertex {
  int id;
  i64 d;  // dim_K of the division ring at this vertex
};

struct QuiverArrow {
  int id;
  int src, tgt;
  i64 dim_src, dim_tgt;  // dim over D_src resp. D_tgt of the bimodule
};

struct ValuedQuiver {
  std::vector<QuiverVertex> vertices;
  std::vector<QuiverArrow> arrows;

  int vertex_index(int id) const;
  void validate() const;  // no multi-arrows, valuation consistency
  bool is_connected() const;
  bool is_acyclic() const;
  std::vector<int> topo_order() const;  // sources first; Cyclic on failure
};

enum class DynkinFamily { A, B, C, D, E, F, G };

struct DynkinType {
  DynkinFamily family;
  int rank;
  std::string name() const;  // "A4", "E6", ...
  int coxeter_number() const;
  bool operator==(const DynkinType& o) const {
    return family == o.family && rank == o.rank;
  }
};

struct Classification {
  std::optional<DynkinType> type;           // empty: not Dynkin
  bool representation_finite = false;
  // canonical label (1..n per the standard diagram numbering) per vertex id
  std::map<int, int> canonical_label;
};

// Orientation-independent Dynkin detection with canonical vertex labels.
// Throws Disconnected for disconnected input.
Classification classify(const ValuedQuiver& q);

// Closed-form Nakayama permutation on canonical labels 1..n.
std::vector<int> nakayama_table(const DynkinType& t);

// Closed-form l value for sigma-stable orientations (Coxeter number / 2
// wherever integral per diagram family).
int homogeneous_l_table(const DynkinType& t);

}  // namespace specfold
