#pragma once

// Combinatorial Auslander-Reiten theory for Dynkin species: Grothendieck
// lattice, Coxeter transformation, knitting, Nakayama permutation, orbit
// lengths, Coxeter number, and the path-length weight on the knitted quiver.

#include <optional>
#include <string>
#include <vector>

#include "specfold/quiver.hpp"
#include "specfold/species.hpp"

namespace specfold {

using K0Vector = std::vector<i64>;  // coordinates in the basis {[D_i]}

struct IntMat {
  int n = 0;
  std::vector<i64> a;
  IntMat() = default;
  explicit IntMat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
  i64& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  i64 at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
  K0Vector apply(const K0Vector& v) const;
  IntMat operator*(const IntMat& o) const;
  bool operator==(const IntMat& o) const { return n == o.n && a == o.a; }
  static IntMat identity(int n);
};

// classes of the indecomposable projectives/injectives, columns indexed by
// vertex position in the species
std::vector<K0Vector> projective_classes(const Species& s);
std::vector<K0Vector> injective_classes(const Species& s);

// the Coxeter transformation c with c[P_i] = -[I_i]
IntMat coxeter(const Species& s);
IntMat coxeter_inverse(const Species& s);

struct ArVertex {
  int proj;        // vertex position of the orbit's projective
  int t;           // tau^{-t} power
  K0Vector cls;    // dimension vector in the {[D_i]} basis
  i64 kdim;
  i64 delta;       // dim_K End/rad of this vertex's module
  bool projective, injective;
};

struct ArArrow {
  int from, to;
  i64 val;  // d_XY = K-dimension of irreducible maps
};

struct NakayamaData {
  std::vector<int> sigma;        // per vertex position
  std::vector<int> l;            // l_i with P_{sigma(i)} = tau^{l_i-1} I_i
  int h = 0;                     // Coxeter number
  std::optional<int> homogeneous_l;
};

struct ArQuiver {
  Species species;
  DynkinType type;
  std::vector<ArVertex> vertices;
  std::vector<ArArrow> arrows;
  std::vector<int> orbit_len;  // length of the tau-orbit of P_i, per position
  NakayamaData nakayama;

  int vertex_index(int proj, int t) const;
  // W weight between two knitted vertices
  i64 weight(int v_from, int v_to) const;
  std::string dot() const;
};

ArQuiver knit(const Species& s);

// reads sigma, l_i, h off a knitted quiver and validates against the
// closed-form table for the detected type (TableMismatch on disagreement)
NakayamaData nakayama_permutation(const ArQuiver& ar);

std::optional<int> homogeneity(const NakayamaData& nd, const Species& s);

// signed path weight between two species vertices in the double quiver
i64 path_weight(const Species& s, int from_id, int to_id);

// dim_K Hom(Lambda, tau^{-k} Lambda) per star degree, from the knitting
std::vector<i64> hom_star_dims(const ArQuiver& ar);
i64 total_indecomposable_dim(const ArQuiver& ar);

}  // namespace specfold
