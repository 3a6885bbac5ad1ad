// bundle1.cpp
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

#include "truss/bundle1.hpp"

#include <algorithm>
#include <functional>

namespace truss {

void Bundle1::validate_parts(const Poset &base, const std::map<int, Truss1> &fibers,
                             const std::map<std::pair<int, int>, Bordism1> &bordisms) {
  if (base.empty()) throw ValidationError("bundle: empty base");
  std::vector<std::string> bad;
  for (int x : base.elements())
    if (!fibers.count(x)) bad.push_back("no fiber over base element " + std::to_string(x));
  for (const auto &[cover, r] : bordisms) {
    if (!base.covers().count(cover)) {
      bad.push_back("bordism over non-cover (" + std::to_string(cover.first) + " -> " +
                    std::to_string(cover.second) + ")");
      continue;
    }
    if (fibers.count(cover.first) && r.domain() != fibers.at(cover.first))
      bad.push_back("bordism domain mismatch over " + std::to_string(cover.first));
    if (fibers.count(cover.second) && r.codomain() != fibers.at(cover.second))
      bad.push_back("bordism codomain mismatch over " + std::to_string(cover.second));
  }
  for (const auto &cover : base.covers())
    if (!bordisms.count(cover))
      bad.push_back("no bordism over cover (" + std::to_string(cover.first) + " -> " +
                    std::to_string(cover.second) + ")");
  if (!bad.empty()) throw ValidationError("bundle: incomplete data", bad);
}

Bundle1 Bundle1::totalize(Poset base, std::map<int, Truss1> fibers,
                          std::map<std::pair<int, int>, Bordism1> cover_bordisms) {
  validate_parts(base, fibers, cover_bordisms);

  Bundle1 b;
  b.base_ = std::move(base);
  b.fibers_ = std::move(fibers);
  b.bordisms_ = std::move(cover_bordisms);

  // Composites along all cover paths; parallel paths must agree.
  std::vector<std::string> bad;
  for (int x : b.base_.elements())
    for (int y : b.base_.elements()) {
      if (x == y || !b.base_.leq(x, y)) continue;
      std::vector<Bordism1> results;
      std::function<void(int, const Bordism1 *)> walk = [&](int at, const Bordism1 *acc) {
        if (at == y) {
          results.push_back(*acc);
          return;
        }
        for (const auto &[cover, r] : b.bordisms_) {
          if (cover.first != at || !b.base_.leq(cover.second, y)) continue;
          Bordism1 next = acc ? compose(*acc, r) : r;
          walk(cover.second, &next);
        }
      };
      walk(x, nullptr);
      for (std::size_t i = 1; i < results.size(); ++i)
        if (!(results[i] == results[0])) {
          bad.push_back("parallel cover paths from " + std::to_string(x) + " to " +
                        std::to_string(y) + " compose to different bordisms");
          break;
        }
      if (!results.empty()) b.composites_.emplace(std::make_pair(x, y), results[0]);
    }
  if (!bad.empty()) throw ValidationError("bundle: not functorial", bad);

  // Canonical total ids: 0..N-1 in (base id, position) order.
  std::vector<std::pair<std::pair<int, int>, int>> entries;
  int next = 0;
  for (int x : b.base_.elements())
    for (int p = 0; p < b.fibers_.at(x).length(); ++p)
      entries.push_back({{x, p}, next++});
  b.materialize(std::move(entries));
  return b;
}

void Bundle1::materialize(std::vector<std::pair<std::pair<int, int>, int>> entry_ids) {
  entries_ = std::move(entry_ids);
  std::sort(entries_.begin(), entries_.end());
  by_id_.clear();
  for (const auto &[bp, id] : entries_) by_id_[id] = bp;

  std::vector<int> elems;
  for (const auto &[bp, id] : entries_) elems.push_back(id);
  std::set<std::pair<int, int>> covers;
  // In-fiber covers, oriented regular -> singular.
  for (int x : base_.elements()) {
    const Truss1 &f = fibers_.at(x);
    for (int i = 0; i + 1 < f.length(); ++i) {
      int a = total_id(x, i), b = total_id(x, i + 1);
      if (f.dim(i) == 1)
        covers.insert({a, b});
      else
        covers.insert({b, a});
    }
  }
  // Same-dimension related pairs over base covers.
  for (const auto &[cover, r] : bordisms_) {
    for (int a = 0; a < r.domain().length(); ++a)
      for (int c = 0; c < r.codomain().length(); ++c)
        if (r.rel(a, c) && r.domain().dim(a) == r.codomain().dim(c))
          covers.insert({total_id(cover.first, a), total_id(cover.second, c)});
  }
  total_ = Poset(std::move(elems), std::move(covers));
}

const Truss1 &Bundle1::fiber(int base_elem) const {
  auto it = fibers_.find(base_elem);
  if (it == fibers_.end())
    throw ValidationError("bundle: unknown base element " + std::to_string(base_elem));
  return it->second;
}

const Bordism1 &Bundle1::cover_bordism(int x, int y) const {
  auto it = bordisms_.find({x, y});
  if (it == bordisms_.end())
    throw ValidationError("bundle: no bordism over (" + std::to_string(x) + " -> " +
                          std::to_string(y) + ")");
  return it->second;
}

Bordism1 Bundle1::bordism_over(int x, int y) const {
  if (x == y) return Bordism1::identity(fiber(x));
  auto it = composites_.find({x, y});
  if (it == composites_.end())
    throw ValidationError("bundle: base elements not related (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
  return it->second;
}

int Bundle1::total_id(int base_elem, int pos) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(),
                             std::make_pair(std::make_pair(base_elem, pos), -1));
  if (it == entries_.end() || it->first != std::make_pair(base_elem, pos))
    throw ValidationError("bundle: no total element (" + std::to_string(base_elem) + "," +
                          std::to_string(pos) + ")");
  return it->second;
}

int Bundle1::base_of(int tid) const {
  auto it = by_id_.find(tid);
  if (it == by_id_.end())
    throw ValidationError("bundle: unknown total id " + std::to_string(tid));
  return it->second.first;
}

int Bundle1::pos_of(int tid) const {
  auto it = by_id_.find(tid);
  if (it == by_id_.end())
    throw ValidationError("bundle: unknown total id " + std::to_string(tid));
  return it->second.second;
}

int Bundle1::dim_of(int tid) const { return fiber(base_of(tid)).dim(pos_of(tid)); }

std::vector<int> Bundle1::fiber_ids(int base_elem) const {
  std::vector<int> out;
  for (int p = 0; p < fiber(base_elem).length(); ++p) out.push_back(total_id(base_elem, p));
  return out;
}

bool Bundle1::closed() const {
  for (const auto &[x, f] : fibers_)
    if (!f.closed()) return false;
  return true;
}

bool Bundle1::open() const {
  for (const auto &[x, f] : fibers_)
    if (!f.open()) return false;
  return true;
}

Bundle1 Bundle1::dualize() const {
  std::map<int, Truss1> fibers;
  for (const auto &[x, f] : fibers_) fibers[x] = f.dualize();
  std::map<std::pair<int, int>, Bordism1> bordisms;
  for (const auto &[cover, r] : bordisms_)
    bordisms.emplace(std::make_pair(cover.second, cover.first), r.dualize());
  Bundle1 b;
  b.base_ = base_.opposite();
  b.fibers_ = std::move(fibers);
  b.bordisms_ = std::move(bordisms);
  for (const auto &[pair, r] : composites_)
    b.composites_.emplace(std::make_pair(pair.second, pair.first), r.dualize());
  b.materialize(entries_);  // same ids, same (base,pos) pairs
  return b;
}

BundleSuspension Bundle1::suspend_with_ids() const {
  BundleSuspension s;
  int max_base = *std::max_element(base_.elements().begin(), base_.elements().end());
  s.bottom_base = max_base + 1;
  s.top_base = max_base + 2;

  std::vector<int> elems = base_.elements();
  elems.push_back(s.bottom_base);
  elems.push_back(s.top_base);
  std::set<std::pair<int, int>> covers = base_.covers();
  for (int m : base_.minimal_elements()) covers.insert({s.bottom_base, m});
  for (int m : base_.maximal_elements()) covers.insert({m, s.top_base});
  Poset new_base(std::move(elems), std::move(covers));

  std::map<int, Truss1> fibers = fibers_;
  fibers[s.bottom_base] = Truss1::make("R");
  fibers[s.top_base] = Truss1::make("S");

  std::map<std::pair<int, int>, Bordism1> bordisms = bordisms_;
  for (int m : base_.minimal_elements()) {
    std::vector<std::vector<bool>> rel(1, std::vector<bool>(fiber(m).length(), true));
    bordisms.emplace(std::make_pair(s.bottom_base, m),
                     Bordism1::make(Truss1::make("R"), fiber(m), std::move(rel)));
  }
  for (int m : base_.maximal_elements()) {
    std::vector<std::vector<bool>> rel(fiber(m).length(), std::vector<bool>(1, true));
    bordisms.emplace(std::make_pair(m, s.top_base),
                     Bordism1::make(fiber(m), Truss1::make("S"), std::move(rel)));
  }

  Bundle1 b = totalize(std::move(new_base), std::move(fibers), std::move(bordisms));
  // Reassign total ids: keep the old ones, append the two new elements.
  int max_total = -1;
  for (const auto &[bp, id] : entries_) max_total = std::max(max_total, id);
  std::vector<std::pair<std::pair<int, int>, int>> entries = entries_;
  s.bottom_total = max_total + 1;
  s.top_total = max_total + 2;
  entries.push_back({{s.bottom_base, 0}, s.bottom_total});
  entries.push_back({{s.top_base, 0}, s.top_total});
  b.materialize(std::move(entries));
  s.bundle = std::move(b);
  return s;
}

Bundle1 Bundle1::suspend() const { return suspend_with_ids().bundle; }

std::pair<Bundle1, std::map<int, int>> Bundle1::pullback(const PosetMap &g) const {
  if (g.target != base_) throw ValidationError("bundle: pullback map does not target the base");
  std::map<int, Truss1> fibers;
  for (int c : g.source.elements()) fibers[c] = fiber(g(c));
  std::map<std::pair<int, int>, Bordism1> bordisms;
  for (const auto &[c, c2] : g.source.covers())
    bordisms.emplace(std::make_pair(c, c2), bordism_over(g(c), g(c2)));
  Bundle1 pulled = totalize(g.source, std::move(fibers), std::move(bordisms));
  std::map<int, int> total_map;
  for (const auto &[bp, id] : pulled.entries_)
    total_map[id] = total_id(g(bp.first), bp.second);
  return {std::move(pulled), std::move(total_map)};
}

}  // namespace truss
