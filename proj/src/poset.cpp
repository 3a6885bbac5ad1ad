// poset.cpp
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

#include "truss/poset.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace truss {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + " -> " + std::to_string(b) + ")";
}

}  // namespace

Poset::Poset(std::vector<int> elements, std::set<std::pair<int, int>> covers)
    : elems_(std::move(elements)), covers_(std::move(covers)) {
  std::sort(elems_.begin(), elems_.end());
  if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end())
    throw ValidationError("poset: duplicate element id");
  std::vector<std::string> bad;
  for (const auto &[a, b] : covers_) {
    if (a == b) bad.push_back("reflexive cover " + pair_str(a, b));
    if (!contains(a) || !contains(b)) bad.push_back("cover on unknown element " + pair_str(a, b));
  }
  if (!bad.empty()) throw ValidationError("poset: invalid covers", bad);

  const int n = static_cast<int>(elems_.size());
  // Longest-path layering doubles as the acyclicity check.
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (const auto &[a, b] : covers_) {
    out[index_of(a)].push_back(index_of(b));
    ++indeg[index_of(b)];
  }
  std::queue<int> q;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push(i);
  std::vector<int> topo;
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    topo.push_back(i);
    for (int j : out[i])
      if (--indeg[j] == 0) q.push(j);
  }
  if (static_cast<int>(topo.size()) != n)
    throw ValidationError("poset: covers contain a cycle");

  closure_.assign(n, std::vector<bool>(n, false));
  for (int k = n - 1; k >= 0; --k) {
    int i = topo[k];
    closure_[i][i] = true;
    for (int j : out[i])
      for (int m = 0; m < n; ++m)
        if (closure_[j][m]) closure_[i][m] = true;
  }

  for (const auto &[a, b] : covers_) {
    // A cover must not be implied by a path of length >= 2.
    int i = index_of(a), j = index_of(b);
    for (int m : out[i]) {
      if (m != j && closure_[m][j])
        bad.push_back("redundant cover " + pair_str(a, b));
    }
  }
  if (!bad.empty()) throw ValidationError("poset: covers are not the covering relation", bad);
}

Poset Poset::point(int id) { return Poset({id}, {}); }

Poset Poset::chain(int n) {
  std::vector<int> elems(n);
  std::iota(elems.begin(), elems.end(), 0);
  std::set<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.insert({i, i + 1});
  return Poset(std::move(elems), std::move(covers));
}

bool Poset::contains(int e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

int Poset::index_of(int e) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
  if (it == elems_.end() || *it != e)
    throw ValidationError("poset: unknown element id " + std::to_string(e));
  return static_cast<int>(it - elems_.begin());
}

bool Poset::leq(int a, int b) const { return closure_[index_of(a)][index_of(b)]; }

std::vector<int> Poset::minimal_elements() const {
  std::vector<int> out;
  for (int e : elems_) {
    bool min = true;
    for (const auto &[a, b] : covers_)
      if (b == e) min = false;
    if (min) out.push_back(e);
  }
  return out;
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> out;
  for (int e : elems_) {
    bool max = true;
    for (const auto &[a, b] : covers_)
      if (a == e) max = false;
    if (max) out.push_back(e);
  }
  return out;
}

std::optional<int> Poset::initial_element() const {
  auto mins = minimal_elements();
  if (mins.size() != 1) return std::nullopt;
  for (int e : elems_)
    if (!leq(mins[0], e)) return std::nullopt;
  return mins[0];
}

std::vector<int> Poset::up_closure(int a) const {
  std::vector<int> out;
  for (int e : elems_)
    if (leq(a, e)) out.push_back(e);
  return out;
}

std::vector<int> Poset::strict_up_closure(int a) const {
  std::vector<int> out;
  for (int e : elems_)
    if (a != e && leq(a, e)) out.push_back(e);
  return out;
}

int Poset::depth_of(int a) const {
  int best = 0;
  for (const auto &[x, y] : covers_)
    if (x == a) best = std::max(best, 1 + depth_of(y));
  return best;
}

bool Poset::is_chain() const {
  for (int a : elems_)
    for (int b : elems_)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

std::vector<int> Poset::chain_order() const {
  if (!is_chain()) throw ValidationError("poset: not a chain");
  std::vector<int> out = elems_;
  std::sort(out.begin(), out.end(), [&](int a, int b) { return lt(a, b); });
  return out;
}

std::vector<int> Poset::linear_extension() const {
  // Repeated extraction of minima; deterministic (smallest ready id first).
  std::vector<int> rest = elems_, topo;
  std::set<int> placed;
  while (!rest.empty()) {
    for (auto it = rest.begin(); it != rest.end(); ++it) {
      bool ready = true;
      for (const auto &[a, b] : covers_)
        if (b == *it && !placed.count(a)) ready = false;
      if (ready) {
        topo.push_back(*it);
        placed.insert(*it);
        rest.erase(it);
        break;
      }
    }
  }
  return topo;
}

Poset Poset::opposite() const {
  std::set<std::pair<int, int>> rev;
  for (const auto &[a, b] : covers_) rev.insert({b, a});
  return Poset(elems_, std::move(rev));
}

Poset Poset::induced(const std::vector<int> &subset) const {
  std::vector<int> sub = subset;
  std::sort(sub.begin(), sub.end());
  for (int e : sub)
    if (!contains(e)) throw ValidationError("poset: unknown element id " + std::to_string(e));
  auto in = [&](int e) { return std::binary_search(sub.begin(), sub.end(), e); };
  // Covers of the restriction: a < b in sub with nothing of sub strictly between.
  std::set<std::pair<int, int>> covers;
  for (int a : sub)
    for (int b : sub) {
      if (a == b || !leq(a, b)) continue;
      bool refinable = false;
      for (int c : sub)
        if (c != a && c != b && leq(a, c) && leq(c, b) && in(c)) refinable = true;
      if (!refinable) covers.insert({a, b});
    }
  return Poset(std::move(sub), std::move(covers));
}

std::vector<std::vector<int>> Poset::undirected_components(const std::vector<int> &subset) const {
  std::vector<int> sub = subset;
  std::sort(sub.begin(), sub.end());
  auto in = [&](int e) { return std::binary_search(sub.begin(), sub.end(), e); };
  std::map<int, int> comp;
  int next = 0;
  for (int e : sub) comp[e] = -1;
  for (int e : sub) {
    if (comp[e] != -1) continue;
    int c = next++;
    std::queue<int> q;
    q.push(e);
    comp[e] = c;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (const auto &[a, b] : covers_) {
        int other = -1;
        if (a == x && in(b)) other = b;
        if (b == x && in(a)) other = a;
        if (other >= 0 && comp[other] == -1) {
          comp[other] = c;
          q.push(other);
        }
      }
    }
  }
  std::vector<std::vector<int>> out(next);
  for (int e : sub) out[comp[e]].push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

PosetMap::PosetMap(Poset src, Poset tgt, std::map<int, int> assign)
    : source(std::move(src)), target(std::move(tgt)), assignment(std::move(assign)) {
  std::vector<std::string> bad;
  for (int e : source.elements()) {
    auto it = assignment.find(e);
    if (it == assignment.end()) {
      bad.push_back("no image for element " + std::to_string(e));
      continue;
    }
    if (!target.contains(it->second))
      bad.push_back("image of " + std::to_string(e) + " is not a target element");
  }
  if (bad.empty()) {
    for (const auto &[a, b] : source.covers())
      if (!target.leq(assignment.at(a), assignment.at(b)))
        bad.push_back("not monotone on cover (" + std::to_string(a) + " -> " + std::to_string(b) + ")");
  }
  if (!bad.empty()) throw ValidationError("poset map: invalid", bad);
}

int PosetMap::operator()(int e) const {
  auto it = assignment.find(e);
  if (it == assignment.end())
    throw ValidationError("poset map: unknown element id " + std::to_string(e));
  return it->second;
}

PosetMap identity_map(const Poset &p) {
  std::map<int, int> a;
  for (int e : p.elements()) a[e] = e;
  return PosetMap(p, p, std::move(a));
}

PosetMap compose(const PosetMap &g, const PosetMap &f) {
  std::map<int, int> a;
  for (int e : f.source.elements()) a[e] = g(f(e));
  return PosetMap(f.source, g.target, std::move(a));
}

bool is_quotient(const PosetMap &f) {
  std::set<int> image;
  for (int e : f.source.elements()) image.insert(f(e));
  if (image.size() != f.target.size()) return false;
  for (const auto &[c, d] : f.target.covers()) {
    bool hit = false;
    for (const auto &[a, b] : f.source.covers())
      if (f(a) == c && f(b) == d) hit = true;
    // A pair a <= b mapping onto the cover always contains such a cover,
    // so checking source covers is enough.
    if (!hit) return false;
  }
  return true;
}

bool is_connected_quotient(const PosetMap &f) {
  if (!is_quotient(f)) return false;
  for (int t : f.target.elements()) {
    std::vector<int> pre;
    for (int e : f.source.elements())
      if (f(e) == t) pre.push_back(e);
    if (pre.empty()) return false;
    if (f.source.undirected_components(pre).size() != 1) return false;
  }
  return true;
}

ComponentSplit connected_component_split(const PosetMap &f) {
  // Components of the preimages, ordered by smallest member.
  std::vector<std::vector<int>> comps;
  for (int t : f.target.elements()) {
    std::vector<int> pre;
    for (int e : f.source.elements())
      if (f(e) == t) pre.push_back(e);
    for (auto &c : f.source.undirected_components(pre)) comps.push_back(c);
  }
  std::sort(comps.begin(), comps.end());
  std::map<int, int> comp_of;
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (int e : comps[i]) comp_of[e] = i;

  // Order on components generated by images of source covers.
  std::set<std::pair<int, int>> arrows;
  for (const auto &[a, b] : f.source.covers())
    if (comp_of[a] != comp_of[b]) arrows.insert({comp_of[a], comp_of[b]});
  // Reduce to the covering relation of the generated order.
  int k = static_cast<int>(comps.size());
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i) reach[i][i] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &[a, b] : arrows)
      for (int m = 0; m < k; ++m)
        if (reach[b][m] && !reach[a][m]) {
          reach[a][m] = true;
          changed = true;
        }
  }
  std::set<std::pair<int, int>> covers;
  for (const auto &[a, b] : arrows) {
    bool refinable = false;
    for (int m = 0; m < k; ++m)
      if (m != a && m != b && reach[a][m] && reach[m][b]) refinable = true;
    if (!refinable) covers.insert({a, b});
  }
  std::vector<int> elems(k);
  std::iota(elems.begin(), elems.end(), 0);
  Poset middle(elems, covers);

  std::map<int, int> q_assign;
  for (const auto &[e, c] : comp_of) q_assign[e] = c;
  std::map<int, int> s_assign;
  for (int i = 0; i < k; ++i) s_assign[i] = f(comps[i][0]);
  ComponentSplit out{PosetMap(f.source, middle, std::move(q_assign)),
                     PosetMap(std::move(middle), f.target, std::move(s_assign))};
  return out;
}

std::vector<std::vector<std::vector<int>>> nerve(const Poset &p, int max_dim) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> topo = p.linear_extension();
  std::vector<std::vector<int>> current;
  for (int e : topo) current.push_back({e});
  int d = 0;
  while (!current.empty() && (max_dim < 0 || d <= max_dim)) {
    std::sort(current.begin(), current.end());
    out.push_back(current);
    std::vector<std::vector<int>> next;
    for (const auto &chain : current)
      for (int e : topo)
        if (e != chain.back() && p.leq(chain.back(), e)) {
          auto c = chain;
          c.push_back(e);
          next.push_back(std::move(c));
        }
    current = std::move(next);
    ++d;
  }
  return out;
}

long euler_characteristic(const Poset &p) {
  auto chains = nerve(p);
  long chi = 0;
  for (std::size_t d = 0; d < chains.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(chains[d].size());
  return chi;
}

}  // namespace truss
