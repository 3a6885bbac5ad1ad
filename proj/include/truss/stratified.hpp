// stratified.hpp
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
// Stratified trusses: towers with a connected-quotient labeling of the top
// poset. Label-preserving truss coarsenings, confluent normalization to the
// canonical representative, and the decision procedure for isomorphism.

#ifndef TRUSS_STRATIFIED_HPP_
#define TRUSS_STRATIFIED_HPP_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "truss/trussn.hpp"

namespace truss {

class StratifiedTruss {
 public:
  StratifiedTruss() = default;

  // Derives the stratum poset as the transitive closure of stratum-level
  // arrows, rejects cycles, and checks that the labeling is a
  // connected-quotient map onto it.
  static StratifiedTruss validate(TrussTower labeled_tower);

  const TrussTower &tower() const { return tower_; }
  const Poset &stratum_poset() const { return strata_; }
  const std::vector<std::string> &stratum_names() const { return names_; }
  int stratum_of(int elem) const;
  const std::string &label_of(int elem) const { return tower_.labels().at(elem); }

  friend bool operator==(const StratifiedTruss &a, const StratifiedTruss &b) {
    return a.tower_ == b.tower_;
  }

 private:
  TrussTower tower_;
  Poset strata_;                    // on indices 0..k-1
  std::vector<std::string> names_;  // index -> user-facing name, sorted
};

// All non-identity label-preserving truss coarsenings out of s, each with
// its codomain. Complete at desk scale; deterministic order.
struct Coarsening {
  TowerMap map;
  StratifiedTruss target;
};
std::vector<Coarsening> enumerate_truss_coarsenings(const StratifiedTruss &s);

bool is_normalized(const StratifiedTruss &s);

// Repeatedly applies coarsenings until none applies; by confluence the
// result does not depend on the choices. `rng` picks a random available
// coarsening per step; without it the first found is used.
struct Normalization {
  StratifiedTruss normal_form;
  TowerMap reduction;  // composite coarsening s -> normal_form
};
Normalization normalize(const StratifiedTruss &s, std::mt19937 *rng = nullptr);

// Decides framed stratified isomorphism: normalizes both sides, then builds
// the unique candidate balanced label-compatible isomorphism level by level
// (fibers matched along the frame order, stratum names matched on the fly).
struct IsoWitness {
  TowerMap map;                                  // between the normal forms
  std::map<std::string, std::string> label_map;  // stratum names a -> b
};
std::optional<IsoWitness> decide_iso(const StratifiedTruss &a, const StratifiedTruss &b);

}  // namespace truss

#endif  // TRUSS_STRATIFIED_HPP_
