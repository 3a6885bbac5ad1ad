// poset.hpp
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
// Finite posets stored by elements and covering arrows, poset maps, and the
// quotient / nerve machinery everything else builds on.

#ifndef TRUSS_POSET_HPP_
#define TRUSS_POSET_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "truss/errors.hpp"

namespace truss {

// A finite poset. Only the covering arrows are stored; (a,b) in covers()
// means a -> b is a non-refinable arrow of the order. Element ids are opaque
// integers: every canonical order is derived, never read off id order.
// Values are immutable after construction and safe to share across threads.
class Poset {
 public:
  Poset() = default;
  // Validates: ids unique, covers irreflexive and acyclic, and no cover pair
  // implied by a longer path (covers must be exactly the covering relation).
  Poset(std::vector<int> elements, std::set<std::pair<int, int>> covers);

  static Poset point(int id = 0);
  // 0 -> 1 -> ... -> n-1
  static Poset chain(int n);

  const std::vector<int> &elements() const { return elems_; }
  const std::set<std::pair<int, int>> &covers() const { return covers_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(int e) const;

  // Reflexive-transitive closure query.
  bool leq(int a, int b) const;
  bool lt(int a, int b) const { return a != b && leq(a, b); }

  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  std::optional<int> initial_element() const;

  // Elements b with a <= b (resp. a < b), sorted by id.
  std::vector<int> up_closure(int a) const;
  std::vector<int> strict_up_closure(int a) const;

  // Maximal length of a chain starting at a (a maximal element has depth 0).
  int depth_of(int a) const;

  bool is_chain() const;
  // For a chain, its elements in face order; throws otherwise.
  std::vector<int> chain_order() const;

  // A linear extension (ids ordered compatibly with leq).
  std::vector<int> linear_extension() const;

  Poset opposite() const;

  // Full subposet on `subset`; covers are recomputed for the restriction.
  Poset induced(const std::vector<int> &subset) const;

  // Connected components of `subset` in the undirected cover graph of the
  // whole poset restricted to `subset`. Each component sorted by id; the
  // list is sorted by smallest member.
  std::vector<std::vector<int>> undirected_components(const std::vector<int> &subset) const;

  friend bool operator==(const Poset &a, const Poset &b) {
    return a.elems_ == b.elems_ && a.covers_ == b.covers_;
  }
  friend bool operator!=(const Poset &a, const Poset &b) { return !(a == b); }

 private:
  int index_of(int e) const;

  std::vector<int> elems_;  // sorted
  std::set<std::pair<int, int>> covers_;
  // Reachability over indices; filled at construction (validation needs it).
  std::vector<std::vector<bool>> closure_;
};

// A monotone map of posets, total on the source.
struct PosetMap {
  PosetMap() = default;
  // Validates totality and monotonicity (on covers, which suffices).
  PosetMap(Poset source, Poset target, std::map<int, int> assignment);

  int operator()(int e) const;

  Poset source;
  Poset target;
  std::map<int, int> assignment;
};

PosetMap identity_map(const Poset &p);
PosetMap compose(const PosetMap &g, const PosetMap &f);  // g after f

// True iff f is surjective on elements and on covers.
bool is_quotient(const PosetMap &f);

// True iff f is a quotient whose preimages are nonempty and connected in the
// undirected cover graph of the source.
bool is_connected_quotient(const PosetMap &f);

// Canonical factorization f = s . q where q's preimages are the connected
// components of f's preimages and s is a discrete map. The middle poset gets
// fresh ids 0..k-1, components ordered by smallest source element.
struct ComponentSplit {
  PosetMap characteristic;  // q : source ->> components
  PosetMap labels;          // s : components -> target, discrete
};
ComponentSplit connected_component_split(const PosetMap &f);

// Nondegenerate chains per dimension: result[d] lists the injective monotone
// maps [d] -> p, each as a strictly increasing id chain, lexicographically
// ordered. max_dim < 0 means "all dimensions".
std::vector<std::vector<std::vector<int>>> nerve(const Poset &p, int max_dim = -1);

// Alternating sum of nondegenerate chain counts.
long euler_characteristic(const Poset &p);

}  // namespace truss

#endif  // TRUSS_POSET_HPP_
