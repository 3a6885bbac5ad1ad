// framed_complex.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// \file
// Framed simplicial combinatorics: kinship and frame restriction on standard
// simplices, framings of complexes via 1-simplex labels, integration of flat
// framings by iterated projection, the translations between flat proframed
// cell complexes and closed trusses, and the boundary shelling desk check.

#ifndef TRUSS_FRAMED_COMPLEX_HPP_
#define TRUSS_FRAMED_COMPLEX_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "truss/trussn.hpp"

namespace truss {

// ---------------------------------------------------------------------------
// Frames and proframes on standard simplices.

// Vectors are pairs (a,b) with a < b in [m]. Two vectors are akin when they
// share a unit step, i.e. their index intervals overlap.
bool akin(int m, std::pair<int, int> v, std::pair<int, int> w);

// A frame on [m] into <n>: injective spine labels, spine vector i -> i+1
// carries labels[i] in 1..n.
struct SimplexFrame {
  int m = 0;
  int n = 0;
  std::vector<int> labels;  // size m
};

// Label of any vector: the minimum label over akin spine vectors.
int restrict_frame_to_vector(const SimplexFrame &f, std::pair<int, int> v);
// Restriction along a face [j] -> [m] given by its strictly increasing
// vertex images.
SimplexFrame restrict_frame(const SimplexFrame &f, const std::vector<int> &face);

// A proframe on [m] into <n>: a tower of codimension <= 1 collapses,
// top level first. collapse_at[k] is the spine vector index collapsed by
// p_{n-k}, or -1 for the identity.
struct SimplexProframe {
  int m = 0;
  int n = 0;
  std::vector<int> collapse_at;  // size n
  friend bool operator==(const SimplexProframe &, const SimplexProframe &) = default;
};

SimplexProframe integrate_simplex_frame(const SimplexFrame &f);
SimplexFrame gradient_simplex_proframe(const SimplexProframe &p);

// ---------------------------------------------------------------------------
// Framed complexes.

// An ordered simplicial complex with frame labels on its 1-simplices.
// Directions are stored per edge as (tail, head); simplices are vertex sets.
struct FramedComplex {
  int ambient = 0;  // n
  std::vector<int> vertices;
  std::set<std::vector<int>> simplices;              // sorted vertex ids, downward closed
  std::map<std::pair<int, int>, int> edges;          // (tail -> head) -> label

  bool has_edge(int u, int v) const;          // either direction
  std::pair<int, int> directed(int u, int v) const;  // oriented copy
  int label(int u, int v) const;

  // Vertex order of a simplex per the edge directions; throws when the
  // directions are not a strict total order on it.
  std::vector<int> simplex_order(const std::vector<int> &simplex) const;

  friend bool operator==(const FramedComplex &, const FramedComplex &) = default;
};

// Makes the simplex family downward closed and validates basic shape
// (edges defined exactly on 1-simplices, vertex ids known).
FramedComplex make_complex(int ambient, std::vector<int> vertices,
                           std::set<std::vector<int>> simplices,
                           std::map<std::pair<int, int>, int> edges);

// Per-simplex validation: acyclic directions, distinct spine labels, every
// non-spine label equal to its kinship restriction. Empty report = valid.
std::vector<std::string> validate_framing(const FramedComplex &c);

// ---------------------------------------------------------------------------
// Proframed towers.

// A tower of ordered simplicial surjections K_n -> ... -> K_0 = point. Each
// level stores its complex; as produced by the truss translation the levels
// also carry cellular posets whose nerves the complexes are.
struct ProframedTower {
  std::vector<FramedComplex> complexes;    // 0..n (labels only where known)
  std::vector<std::map<int, int>> proj;    // proj[i] : K_{i+1} vertices -> K_i vertices
  std::vector<Poset> cell_posets;          // one per level when cellular

  int depth() const { return static_cast<int>(complexes.size()) - 1; }
  bool has_cells() const { return !cell_posets.empty(); }

  friend bool operator==(const ProframedTower &, const ProframedTower &) = default;
};

// Iterated projection: quotient along the 1-simplices labeled i, top level
// first, checking at each level that the quotient is a well-defined ordered
// complex and that fibers are linear with endpoint-preserving transitions.
struct FlatIntegration {
  bool flat = false;
  std::vector<std::string> problems;  // witnesses when not flat
  ProframedTower tower;               // valid only when flat
};
FlatIntegration integrate_flat(const FramedComplex &c);

// Attaches entrance-path cell posets to a flat simplicial tower: level i
// becomes the poset of nondegenerate simplices of K_i ordered by reverse
// inclusion, with the nerve as its complex.
ProframedTower entrance_tower(const ProframedTower &simplicial);

// Truss translation kT: from a flat proframed tower with cellular posets to
// a closed tower. Throws when the input violates the flatness contract.
TrussTower truss_translate(const ProframedTower &t);

// Framed complex translation kX: level posets are the face posets, 1-simplex
// directions follow the frame order within fibers and the base direction
// over base arrows, labels are the collapse levels of the integral
// proframing.
struct ComplexTranslation {
  ProframedTower tower;
  FramedComplex complex;  // the top level with its gradient framing
};
ComplexTranslation complex_translate(const TrussTower &t);

// ---------------------------------------------------------------------------
// Cellularity desk check.

// Facet ordering of the boundary of a closed block by bottom sections, side
// spacers in scaffold order, and top sections; verifies purity, the shelling
// condition, and thinness.
struct ShellingReport {
  bool ok = false;
  std::vector<std::string> problems;
  std::vector<std::vector<int>> facets;  // chains, ascending in the face order
  int facet_dimension = -1;
  long boundary_euler = 0;
};
ShellingReport shell_boundary(const TrussTower &t);

}  // namespace truss

#endif  // TRUSS_FRAMED_COMPLEX_HPP_
