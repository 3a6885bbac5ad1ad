// scaffold.hpp
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
// Truss induction: sections and spacers of 1-truss bundles over chains, the
// scaffold norm and order, successor/predecessor stepping, and fiber
// categories with their transition functors.

#ifndef TRUSS_SCAFFOLD_HPP_
#define TRUSS_SCAFFOLD_HPP_

#include <vector>

#include "truss/bundle1.hpp"

namespace truss {

// A section of a bundle over a chain base: one fiber position per base
// element, consecutive entries related by the cover bordisms. `vertices[i]`
// is the position in the fiber over the i-th chain element.
struct Section {
  std::vector<int> vertices;
  friend auto operator<=>(const Section &, const Section &) = default;
};

// A spacer: a section with one doubled base index j carrying a fiber arrow
// regular -> singular. `vertices` has m+2 entries; entries j and j+1 both
// live in fiber j, one regular and one singular, frame-adjacent.
struct Spacer {
  int transition = 0;  // the doubled base index j
  std::vector<int> vertices;
  friend auto operator<=>(const Spacer &, const Spacer &) = default;
};

// Throws unless the base is a chain. Returns base elements in face order.
std::vector<int> require_chain(const Bundle1 &b);

bool is_section(const Bundle1 &b, const Section &s);
bool is_spacer(const Bundle1 &b, const Spacer &s);

// Sum of 0-based fiber positions.
int scaffold_norm(const Bundle1 &b, const Section &s);
// Mean of the two boundary sections' norms, always a strict half-integer.
double spacer_norm(const Bundle1 &b, const Spacer &s);

Section bottom_section(const Bundle1 &b);
Section top_section(const Bundle1 &b);

// Successor in the scaffold order (norm + 1). Computed inside the suspended
// bundle and restricted back. Throws on the top section.
Section successor(const Bundle1 &b, const Section &s);
Section predecessor(const Bundle1 &b, const Section &s);

// All sections in scaffold order, by successor iteration from the bottom
// section. Norms are exactly 0..#T-#B.
std::vector<Section> sections_in_order(const Bundle1 &b);
// Independent oracle: product enumeration with the relatedness constraints.
std::vector<Section> sections_brute_force(const Bundle1 &b);

// Lower and upper boundary sections of a spacer.
Section lower_boundary(const Bundle1 &b, const Spacer &s);
Section upper_boundary(const Bundle1 &b, const Spacer &s);

// All spacers with their boundaries, in scaffold order; norms are exactly
// the half-integers strictly between 0 and #T-#B.
struct SpacerWithBoundaries {
  Spacer spacer;
  Section lower;
  Section upper;
};
std::vector<SpacerWithBoundaries> spacers_with_boundaries(const Bundle1 &b);

// Builds the free category on sections (objects) and spacers (generators)
// of the bundle pulled back along a nondegenerate chain in the base, and
// reports whether it is a total order and whether every face restriction
// preserves bottom/top sections.
struct FiberCategoryReport {
  bool is_total_order = false;
  bool transitions_endpoint_preserving = false;
};
FiberCategoryReport fiber_category_report(const Bundle1 &b, const std::vector<int> &base_chain);

}  // namespace truss

#endif  // TRUSS_SCAFFOLD_HPP_
