// bundle1.hpp
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
// 1-truss bundles over finite posets: a 1-truss fiber per base element and a
// bordism per base covering arrow. Bordisms over longer arrows are derived
// composites (cached); functoriality over parallel cover paths is checked at
// construction. Totalization materializes the total poset; elements carry a
// (base element, fiber position) pair. Immutable after construction.

#ifndef TRUSS_BUNDLE1_HPP_
#define TRUSS_BUNDLE1_HPP_

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "truss/bordism.hpp"
#include "truss/poset.hpp"
#include "truss/truss1.hpp"

namespace truss {

struct BundleSuspension;

class Bundle1 {
 public:
  Bundle1() = default;

  // Validates and totalizes: every base cover must have a bordism with the
  // right endpoints, and all parallel cover paths must compose to the same
  // bordism. Total poset ids are allocated 0..N-1 in (base id, fiber
  // position) order.
  static Bundle1 totalize(Poset base, std::map<int, Truss1> fibers,
                          std::map<std::pair<int, int>, Bordism1> cover_bordisms);

  const Poset &base() const { return base_; }
  const Truss1 &fiber(int base_elem) const;
  const std::map<int, Truss1> &fibers() const { return fibers_; }
  const Bordism1 &cover_bordism(int x, int y) const;
  const std::map<std::pair<int, int>, Bordism1> &cover_bordisms() const { return bordisms_; }

  // Inverse of totalize up to identity of data.
  std::pair<std::map<int, Truss1>, std::map<std::pair<int, int>, Bordism1>> classify() const {
    return {fibers_, bordisms_};
  }

  // Derived composite over any related base pair (identity when x == y).
  Bordism1 bordism_over(int x, int y) const;

  // Total poset: face order generated by in-fiber covers and by related
  // pairs between two singulars or two regulars over base covers. Those
  // generating arrows are exactly the covering relation.
  const Poset &total_poset() const { return total_; }
  int total_size() const { return static_cast<int>(entries_.size()); }
  int total_id(int base_elem, int pos) const;
  int base_of(int total_id) const;
  int pos_of(int total_id) const;
  int dim_of(int total_id) const;
  // Total ids over a base element, in frame order.
  std::vector<int> fiber_ids(int base_elem) const;

  bool closed() const;
  bool open() const;

  Bundle1 dualize() const;
  // Adjoins bottom/top base elements (ids max+1, max+2) carrying the
  // initial "R" / terminal "S" fibers; old total ids are kept.
  Bundle1 suspend() const;
  BundleSuspension suspend_with_ids() const;

  // Pullback along g into the base. Returns the bundle over g's source and
  // the total map sending pulled-back total ids to total ids of *this.
  std::pair<Bundle1, std::map<int, int>> pullback(const PosetMap &g) const;

  friend bool operator==(const Bundle1 &a, const Bundle1 &b) {
    return a.base_ == b.base_ && a.fibers_ == b.fibers_ && a.bordisms_ == b.bordisms_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const Bundle1 &a, const Bundle1 &b) { return !(a == b); }

 private:
  // Builds total poset data from base/fibers/bordisms with an explicit id
  // for each (base, pos) entry.
  void materialize(std::vector<std::pair<std::pair<int, int>, int>> entry_ids);
  static void validate_parts(const Poset &base, const std::map<int, Truss1> &fibers,
                             const std::map<std::pair<int, int>, Bordism1> &bordisms);

  Poset base_;
  std::map<int, Truss1> fibers_;
  std::map<std::pair<int, int>, Bordism1> bordisms_;

  std::vector<std::pair<std::pair<int, int>, int>> entries_;  // ((base,pos) -> id), sorted
  std::map<int, std::pair<int, int>> by_id_;
  Poset total_;
  // All derived composites, precomputed so reads need no synchronization.
  std::map<std::pair<int, int>, Bordism1> composites_;
};

struct BundleSuspension {
  Bundle1 bundle;
  int bottom_base, top_base;    // new base ids
  int bottom_total, top_total;  // ids of the two new total elements
};

}  // namespace truss

#endif  // TRUSS_BUNDLE1_HPP_
