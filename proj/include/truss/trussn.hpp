// trussn.hpp
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
// n-trusses and n-truss bundles as towers of 1-truss bundles: validation,
// truncation, generating arrows, dualization, suspension, cubical
// compactification, (epi,mono)-factorization, face blocks, and exhaustive
// map enumeration for the small-scale oracles.

#ifndef TRUSS_TRUSSN_HPP_
#define TRUSS_TRUSSN_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "truss/bundle1.hpp"

namespace truss {

// A tower of 1-truss bundles over `base` (the point poset for an n-truss;
// towers over [1] are bordisms, over general posets they are bundles). Level
// i's base poset must equal level i-1's total poset, element-id exact.
// Optional labeling lives on the top total poset (see stratified module).
class TrussTower {
 public:
  TrussTower() = default;

  static TrussTower make(Poset base, std::vector<Bundle1> levels,
                         std::map<int, std::string> labels = {});

  int depth() const { return static_cast<int>(levels_.size()); }
  const Poset &base() const { return base_; }
  const std::vector<Bundle1> &levels() const { return levels_; }
  const Bundle1 &level(int i) const;  // 1-based, like the tower maps p_i
  // The total poset of the top level (= base when depth is 0).
  const Poset &top_poset() const;
  int total_elements() const;

  bool labeled() const { return !labels_.empty(); }
  const std::map<int, std::string> &labels() const { return labels_; }
  TrussTower with_labels(std::map<int, std::string> labels) const;
  TrussTower without_labels() const;

  bool closed() const;
  bool open() const;

  // Keep levels 1..k; labels dropped.
  TrussTower lower_truncate(int k) const;
  // Keep levels k+1..n over the total poset of level k; labels kept.
  TrussTower upper_truncate(int k) const;

  TrussTower dualize() const;
  // Levelwise suspension; labeled towers are rejected.
  TrussTower suspend() const;

  // Re-numbers every level's total poset to the canonical 0..N-1 ids.
  TrussTower canonicalize() const;

  friend bool operator==(const TrussTower &a, const TrussTower &b) {
    return a.base_ == b.base_ && a.levels_ == b.levels_ && a.labels_ == b.labels_;
  }
  friend bool operator!=(const TrussTower &a, const TrussTower &b) { return !(a == b); }

 private:
  Poset base_;
  std::vector<Bundle1> levels_;
  std::map<int, std::string> labels_;
};

// Levelwise assignments; levels[0] maps base elements, levels[i] the total
// poset of level i.
struct TowerMap {
  std::vector<std::map<int, int>> levels;

  const std::map<int, int> &top() const { return levels.back(); }
  friend auto operator<=>(const TowerMap &, const TowerMap &) = default;
};

TowerMap identity_tower_map(const TrussTower &t);
TowerMap compose(const TowerMap &g, const TowerMap &f);  // g after f

// True iff every level is a diposet map, squares commute, and fibers map
// into fibers monotonely.
bool is_tower_map(const TrussTower &src, const TrussTower &dst, const TowerMap &m,
                  std::vector<std::string> *why = nullptr);

struct TowerMapClass {
  bool singular = false;
  bool regular = false;
  bool balanced = false;
  bool injective = false;   // levelwise fiberwise injective
  bool surjective = false;  // levelwise surjective
  bool face = false;
  bool embedding = false;
  bool degeneracy = false;
  bool coarsening = false;
};
TowerMapClass classify_tower_map(const TrussTower &src, const TrussTower &dst,
                                 const TowerMap &m);

// Generating arrows of level i's total poset: in-fiber covers plus arrows
// over generating base arrows between two regulars or two singulars. Equal
// to the covering relation (asserted against the stored poset).
std::set<std::pair<int, int>> generating_arrows(const TrussTower &t, int level);

// Pullback along a map into the base; levelwise. Returns tower plus the
// levelwise total maps into the original tower.
std::pair<TrussTower, TowerMap> tower_pullback(const TrussTower &t, const PosetMap &g);

// Cubical compactification: the universal closed tower densely containing t
// with a retraction.
struct Compactification {
  TrussTower closed;
  TowerMap inclusion;   // t -> closed, dense
  TowerMap retraction;  // closed -> t, surjective; retraction . inclusion = id
};
Compactification compactify(const TrussTower &t);

// Verifies existence and uniqueness of the mediating surjection from a
// candidate (closed tower + dense inclusion + retraction) onto compactify(t)
// by exhaustive map search.
bool universal_property_check(const TrussTower &t, const TrussTower &candidate,
                              const TowerMap &incl, const TowerMap &retr);

// Unique (degeneracy, face) factorization of a singular map of closed
// towers (mode closed_singular), resp. (coarsening, embedding) of a regular
// map of open towers (mode open_regular).
enum class FactorizationMode { kClosedSingular, kOpenRegular };
struct EpiMonoFactorization {
  TrussTower image;
  TowerMap epi;   // src ->> image
  TowerMap mono;  // image -> dst
};
EpiMonoFactorization epi_mono_factorize(const TrussTower &src, const TrussTower &dst,
                                        const TowerMap &f, FactorizationMode mode);

// The face block of x in a closed tower: levelwise upper closures of the
// projections of x, recanonicalized. Returns the block and the levelwise
// inclusion into t.
struct FaceBlock {
  TrussTower block;
  TowerMap inclusion;
};
FaceBlock face_block(const TrussTower &t, int x);

// Depth of the block (= depth of its initial element); requires a block.
int block_dimension(const TrussTower &t);

// All tower maps src -> dst passing the filter, by levelwise backtracking.
// The filter sees the classification of the finished map.
std::vector<TowerMap> enumerate_maps(const TrussTower &src, const TrussTower &dst,
                                     const std::function<bool(const TowerMapClass &)> &filter);

// Composition of two tower bordisms (towers over [1]) by totalizing over the
// 2-simplex and restricting to its long edge. Composability means the
// restriction of r1 to {1} equals the restriction of r2 to {0}.
TrussTower compose_over_2simplex(const TrussTower &r1, const TrussTower &r2);

// Restriction of a tower bundle to the fiber over one base element / to a
// subposet of the base, recanonicalized only on request.
TrussTower restrict_to_base(const TrussTower &t, const std::vector<int> &base_elems);

}  // namespace truss

#endif  // TRUSS_TRUSSN_HPP_
