#pragma once

// Finite bigraded algebras with explicit bases and structure constants over
// GF(p).  A PresentedBuilder constructs them degree by degree from vertex
// rings, arrow bimodules, and quadratic relations; tensor algebras and
// preprojective algebras of species are the two instantiations here, Segre
// products provide a third implementation of the same interface.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "specfold/field.hpp"
#include "specfold/species.hpp"

namespace specfold {

// sparse vector over the algebra basis: sorted by index, no zero coeffs
using SpVec = std::vector<std::pair<int, i64>>;

SpVec spvec_normalize(SpVec v, i64 p);
SpVec spvec_add(const SpVec& a, const SpVec& b, i64 p);
SpVec spvec_scale(const SpVec& a, i64 c, i64 p);

struct BasisMeta {
  int src, tgt;   // vertex ids: element lies in e_tgt A e_src
  int deg, star;  // bidegree (total degree, star degree)
};

struct Block {
  int vertex;   // vertex id
  SpVec idem;   // primitive central idempotent of the degree-0 part
  int kdim;     // K-dimension of the corresponding simple module
};

class GradedAlgebra {
 public:
  virtual ~GradedAlgebra() = default;

  i64 prime() const { return prime_; }
  int dim() const { return static_cast<int>(meta_.size()); }
  const BasisMeta& meta(int i) const { return meta_[i]; }

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int vertex_id(int vi) const { return vertex_ids_[vi]; }
  int vertex_pos(int id) const;
  const std::vector<int>& vertex_label(int vi) const { return labels_[vi]; }
  const SpVec& idempotent(int vi) const { return idems_[vi]; }
  const std::vector<Block>& blocks() const { return blocks_; }

  virtual SpVec product(int a, int b) const = 0;
  SpVec mul(const SpVec& a, const SpVec& b) const;

  std::map<std::pair<int, int>, i64> hilbert() const;  // (deg, star) -> dim
  int top_degree() const;
  int top_star() const;
  i64 star_slice_dim(int k) const;

  // basis indices of e_tgt A e_src restricted helpers
  std::vector<int> column_basis(int src_vertex_id) const;

  // left socle of A e_i per vertex: basis vectors, all annihilated by the
  // positive-degree part acting on the left
  struct SocleInfo {
    int vertex;                 // the column's vertex id
    std::vector<SpVec> basis;   // socle basis vectors
    int deg, star;              // common bidegree (checked)
    int support_vertex;         // vertex id carrying the socle
    i64 d_dim;                  // dimension over the division ring there
  };
  SocleInfo socle(int src_vertex_id) const;

 protected:
  i64 prime_ = 7;
  std::vector<BasisMeta> meta_;
  std::vector<int> vertex_ids_;
  std::vector<std::vector<int>> labels_;
  std::vector<SpVec> idems_;
  std::vector<Block> blocks_;
};

// ---------------------------------------------------------------------------
// Presentations.

struct RingSpec {
  int vertex;  // vertex id
  int dim;
  std::vector<KMat> mult;  // mult[i]: multiplication by basis element i
  std::vector<i64> one;
};

struct BimoduleSpec {
  int src, tgt;  // vertex ids
  int star;
  int dim;
  std::vector<KMat> left_act;   // per basis element of the target ring
  std::vector<KMat> right_act;  // per basis element of the source ring
};

struct RelTerm {
  int b2, m2;  // second letter: bimodule index, K-basis index
  int b1, m1;  // first letter (path-initial)
  i64 coeff;
};

struct Presentation {
  i64 prime = 7;
  std::vector<RingSpec> rings;
  std::vector<BimoduleSpec> bimods;
  std::vector<std::vector<RelTerm>> relations;  // degree-2 elements
};

class TableAlgebra : public GradedAlgebra {
 public:
  SpVec product(int a, int b) const override;

  // construction bookkeeping exposed for morphism machinery: every basis
  // element of positive degree is (previous element) * letter(bimod, k-index)
  struct WordStep {
    int prev;   // basis index in the previous degree, -1 for degree 0
    int bimod;  // -1 for degree 0
    int midx;   // K-basis index within the bimodule (or ring for degree 0)
    int ring;   // ring position for degree-0 elements, else -1
  };
  const WordStep& word(int i) const { return words_[i]; }
  int num_bimods() const { return static_cast<int>(bimods_.size()); }
  const BimoduleSpec& bimod(int b) const { return bimods_[b]; }
  // the class of letter (bimod, midx) as an algebra element
  SpVec letter(int bimod, int midx) const;

  friend TableAlgebra build_presented(const Presentation& pres, int cap,
                                      ErrorKind cap_error);

 private:
  std::vector<WordStep> words_;
  std::vector<BimoduleSpec> bimods_;
  std::vector<std::vector<std::pair<int, int>>> ring_basis_;  // vertex -> deg0 ids
  std::vector<std::vector<SpVec>> red_letter_;  // [basis u][raw (b,m) slot]
  std::map<std::pair<int, int>, int> letter_slot_;  // (bimod, midx) -> slot
  mutable std::vector<std::vector<SpVec>> table_;  // full product table
};

// Builds the graded quotient algebra, stopping when a degree vanishes.
// Throws `cap_error` if degree `cap` is still nonzero.
TableAlgebra build_presented(const Presentation& pres, int cap,
                             ErrorKind cap_error);

// The two species-level constructions.
TableAlgebra tensor_algebra(const Species& s, int max_degree);
TableAlgebra preprojective(const Species& s, int cap = 64);

// Presentation pieces shared with the Segre module.
Presentation species_presentation(const Species& s, bool doubled);

}  // namespace specfold
