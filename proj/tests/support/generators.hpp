// generators.hpp
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
// Test-only random generators for trusses, bordisms, bundles and towers.

#ifndef TRUSS_TESTS_GENERATORS_HPP_
#define TRUSS_TESTS_GENERATORS_HPP_

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "truss/bundle1.hpp"
#include "truss/trussn.hpp"

namespace truss::testing {

using Rng = std::mt19937;

inline int uniform(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Truss1 random_truss1(Rng &rng, int max_len = 7) {
  int len = uniform(rng, 1, max_len);
  std::string w;
  char c = uniform(rng, 0, 1) ? 'R' : 'S';
  for (int i = 0; i < len; ++i) {
    w += c;
    c = c == 'R' ? 'S' : 'R';
  }
  return Truss1::make(w);
}

inline Truss1 random_closed_truss1(Rng &rng, int max_len = 7) {
  int k = uniform(rng, 0, (max_len - 1) / 2);
  std::string w = "S";
  for (int i = 0; i < k; ++i) w += "RS";
  return Truss1::make(w);
}

// A monotone map of position lists with fixed endpoints where required; used
// to build random singular functions. Returns false when impossible.
inline bool random_monotone(Rng &rng, const std::vector<int> &dom, const std::vector<int> &cod,
                            bool pin_low, bool pin_high, std::map<int, int> *out) {
  out->clear();
  if (dom.empty()) return true;
  if (cod.empty()) return false;
  int lo = 0, hi = static_cast<int>(cod.size()) - 1;
  std::vector<int> pick(dom.size());
  int prev = pin_low ? 0 : uniform(rng, lo, hi);
  pick[0] = pin_low ? 0 : prev;
  for (std::size_t i = 1; i < dom.size(); ++i) pick[i] = uniform(rng, pick[i - 1], hi);
  if (pin_high) {
    pick.back() = hi;
    for (std::size_t i = dom.size(); i-- > 1;)
      if (pick[i - 1] > pick[i]) pick[i - 1] = pick[i];
    if (pin_low && pick[0] != 0) return false;
  }
  for (std::size_t i = 0; i < dom.size(); ++i) (*out)[dom[i]] = cod[pick[i]];
  return true;
}

// A random bordism t -> s via singular or regular determination; retries the
// other determination when one side has no candidates. Returns false when no
// bordism exists at all.
inline bool random_bordism(Rng &rng, const Truss1 &t, const Truss1 &s, Bordism1 *out) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool via_sing = uniform(rng, 0, 1) == 0;
    std::map<int, int> f;
    if (via_sing) {
      if (!random_monotone(rng, t.singulars(), s.singulars(), t.singular(0),
                           t.singular(t.length() - 1), &f))
        continue;
      try {
        *out = Bordism1::from_singular_function(t, s, f);
        return true;
      } catch (const ValidationError &) {
        continue;
      }
    } else {
      if (!random_monotone(rng, s.regulars(), t.regulars(), s.regular(0),
                           s.regular(s.length() - 1), &f))
        continue;
      try {
        *out = Bordism1::from_regular_function(t, s, f);
        return true;
      } catch (const ValidationError &) {
        continue;
      }
    }
  }
  return false;
}

// A random bundle over the chain [m]; chains have no parallel cover paths,
// so any choice of bordisms is functorial.
inline Bundle1 random_chain_bundle(Rng &rng, int m, int max_fiber = 7, bool closed = false) {
  std::map<int, Truss1> fibers;
  for (int i = 0; i <= m; ++i)
    fibers[i] = closed ? random_closed_truss1(rng, max_fiber) : random_truss1(rng, max_fiber);
  std::map<std::pair<int, int>, Bordism1> bordisms;
  for (int i = 0; i < m; ++i) {
    Bordism1 r;
    while (!random_bordism(rng, fibers.at(i), fibers.at(i + 1), &r)) {
      fibers[i + 1] = closed ? random_closed_truss1(rng, max_fiber) : random_truss1(rng, max_fiber);
      // Rebuild the previous bordism target if we changed the fiber mid-way.
    }
    bordisms.emplace(std::make_pair(i, i + 1), r);
  }
  return Bundle1::totalize(Poset::chain(m + 1), std::move(fibers), std::move(bordisms));
}

// A random poset with up to max_elems elements, built by sprinkling cover
// arrows over a height grading (so acyclicity is free).
inline Poset random_poset(Rng &rng, int max_elems) {
  int n = uniform(rng, 1, max_elems);
  std::vector<int> height(n);
  for (int i = 0; i < n; ++i) height[i] = uniform(rng, 0, 2);
  std::set<std::pair<int, int>> arrows;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (height[a] < height[b] && uniform(rng, 0, 2) == 0) arrows.insert({a, b});
  // Reduce to the covering relation by dropping implied arrows.
  auto reach = [&](const std::set<std::pair<int, int>> &rel, int from, int to) {
    std::vector<int> stack{from};
    std::set<int> seen{from};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (const auto &[p, q] : rel)
        if (p == x && !seen.count(q)) {
          seen.insert(q);
          stack.push_back(q);
        }
    }
    return false;
  };
  std::set<std::pair<int, int>> covers;
  for (const auto &[a, b] : arrows) {
    auto rest = arrows;
    rest.erase({a, b});
    if (!reach(rest, a, b)) covers.insert({a, b});
  }
  std::vector<int> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = i;
  return Poset(std::move(elems), std::move(covers));
}

// A random bundle over an arbitrary poset: pull a random chain bundle back
// along a height-graded monotone map, which is functorial by construction.
inline Bundle1 random_bundle(Rng &rng, const Poset &base, int max_fiber = 7,
                             bool closed = false) {
  // Height grading: length of the longest chain ending at the element.
  std::map<int, int> grade;
  int depth = 0;
  for (int e : base.linear_extension()) {
    int g = 0;
    for (const auto &[a, b] : base.covers())
      if (b == e) g = std::max(g, grade.at(a) + 1);
    grade[e] = g;
    depth = std::max(depth, g);
  }
  Bundle1 over_chain = random_chain_bundle(rng, depth, max_fiber, closed);
  std::map<int, int> assign;
  for (int e : base.elements()) assign[e] = grade.at(e);
  PosetMap g(base, Poset::chain(depth + 1), std::move(assign));
  return over_chain.pullback(g).first;
}

// A random n-truss with closed fibers, each level built over the previous
// total poset via the pullback trick.
inline TrussTower random_closed_tower(Rng &rng, int depth, int max_fiber = 5) {
  std::vector<Bundle1> levels;
  Poset base = Poset::point();
  for (int i = 0; i < depth; ++i) {
    levels.push_back(random_bundle(rng, base, max_fiber, /*closed=*/true));
    base = levels.back().total_poset();
  }
  return TrussTower::make(Poset::point(), std::move(levels));
}

// A random tower with arbitrary fibers.
inline TrussTower random_tower(Rng &rng, int depth, int max_fiber = 5) {
  std::vector<Bundle1> levels;
  Poset base = Poset::point();
  for (int i = 0; i < depth; ++i) {
    levels.push_back(random_bundle(rng, base, max_fiber, /*closed=*/false));
    base = levels.back().total_poset();
  }
  return TrussTower::make(Poset::point(), std::move(levels));
}

// A random valid stratified labeling: push a height grading through a random
// monotone collapse onto a chain, then split into connected components.
inline TrussTower random_stratified_tower(Rng &rng, int depth, int max_fiber = 5) {
  TrussTower t = random_tower(rng, depth, max_fiber);
  const Poset &top = t.top_poset();
  std::map<int, int> grade;
  int maxg = 0;
  for (int e : top.linear_extension()) {
    int g = 0;
    for (const auto &[a, b] : top.covers())
      if (b == e) g = std::max(g, grade.at(a) + 1);
    grade[e] = g;
    maxg = std::max(maxg, g);
  }
  std::vector<int> collapse(maxg + 1, 0);
  for (int g = 1; g <= maxg; ++g) collapse[g] = collapse[g - 1] + uniform(rng, 0, 1);
  std::map<int, int> assign;
  for (int e : top.elements()) assign[e] = collapse[grade.at(e)];
  PosetMap f(top, Poset::chain(collapse[maxg] + 1), std::move(assign));
  auto split = connected_component_split(f);
  std::map<int, std::string> labels;
  for (int e : top.elements()) labels[e] = "s" + std::to_string(split.characteristic(e));
  return t.with_labels(std::move(labels));
}

}  // namespace truss::testing

#endif  // TRUSS_TESTS_GENERATORS_HPP_
