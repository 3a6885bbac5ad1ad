// trussn.cpp
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

#include "truss/trussn.hpp"

#include <algorithm>

namespace truss {

namespace {

// A sub-tower from levelwise element subsets (level 0 = base elements,
// level i = total ids). Subsets must be projection-closed, cut fibers along
// contiguous intervals, and induce valid bordisms; violations throw with a
// witness. Returns the new tower plus per-level maps in both directions.
struct SubTowerResult {
  TrussTower tower;
  std::vector<std::map<int, int>> to_parent;    // new ids -> old ids
  std::vector<std::map<int, int>> from_parent;  // old kept ids -> new ids
};

SubTowerResult subtower(const TrussTower &t, const std::vector<std::set<int>> &keep) {
  if (static_cast<int>(keep.size()) != t.depth() + 1)
    throw ValidationError("subtower: need one element set per level");
  SubTowerResult out;
  std::vector<int> base_elems(keep[0].begin(), keep[0].end());
  Poset new_base = t.base().induced(base_elems);
  std::map<int, int> ident;
  for (int e : base_elems) ident[e] = e;
  out.to_parent.push_back(ident);
  out.from_parent.push_back(ident);

  Poset cur_base = new_base;
  std::vector<Bundle1> levels;
  for (int i = 1; i <= t.depth(); ++i) {
    const Bundle1 &lvl = t.level(i);
    std::map<int, Truss1> fibers;
    std::map<int, std::pair<int, int>> interval;  // old base elem -> [lo,hi] kept positions
    for (int y_old : keep[i - 1]) {
      std::vector<int> kept;
      for (int p = 0; p < lvl.fiber(y_old).length(); ++p)
        if (keep[i].count(lvl.total_id(y_old, p))) kept.push_back(p);
      if (kept.empty())
        throw ValidationError("subtower: empty fiber over element " + std::to_string(y_old));
      if (kept.back() - kept.front() + 1 != static_cast<int>(kept.size()))
        throw ValidationError("subtower: kept positions over " + std::to_string(y_old) +
                              " are not a frame interval");
      interval[y_old] = {kept.front(), kept.back()};
      std::string w;
      for (int p : kept) w += lvl.fiber(y_old).singular(p) ? 'S' : 'R';
      fibers[out.from_parent[i - 1].at(y_old)] = Truss1::make(w);  // may throw: not a subtruss
    }
    std::map<std::pair<int, int>, Bordism1> bordisms;
    for (const auto &[a, b] : cur_base.covers()) {
      int ya = out.to_parent[i - 1].at(a), yb = out.to_parent[i - 1].at(b);
      Bordism1 big = lvl.bordism_over(ya, yb);
      auto [alo, ahi] = interval.at(ya);
      auto [blo, bhi] = interval.at(yb);
      std::vector<std::vector<bool>> rel(ahi - alo + 1, std::vector<bool>(bhi - blo + 1));
      for (int p = alo; p <= ahi; ++p)
        for (int q = blo; q <= bhi; ++q) rel[p - alo][q - blo] = big.rel(p, q);
      bordisms.emplace(std::make_pair(a, b),
                       Bordism1::make(fibers.at(a), fibers.at(b), std::move(rel)));
    }
    Bundle1 nb = Bundle1::totalize(cur_base, std::move(fibers), std::move(bordisms));
    std::map<int, int> to_parent, from_parent;
    for (int y_old : keep[i - 1]) {
      auto [lo, hi] = interval.at(y_old);
      for (int p = lo; p <= hi; ++p) {
        int old_id = lvl.total_id(y_old, p);
        int new_id = nb.total_id(out.from_parent[i - 1].at(y_old), p - lo);
        to_parent[new_id] = old_id;
        from_parent[old_id] = new_id;
      }
    }
    out.to_parent.push_back(std::move(to_parent));
    out.from_parent.push_back(std::move(from_parent));
    cur_base = nb.total_poset();
    levels.push_back(std::move(nb));
  }

  std::map<int, std::string> labels;
  if (t.labeled())
    for (const auto &[e, s] : t.labels())
      if (keep[t.depth()].count(e)) labels[out.from_parent[t.depth()].at(e)] = s;
  out.tower = TrussTower::make(std::move(new_base), std::move(levels), std::move(labels));
  return out;
}

// A bundle with every fiber compactified and bordisms extended in the unique
// endpoint-preserving way.
struct CompactifiedBundle {
  Bundle1 bundle;
  std::map<int, int> inclusion;   // old total id -> new total id
  std::map<int, int> retraction;  // new total id -> old total id
};

CompactifiedBundle compactify_bundle(const Bundle1 &b) {
  std::map<int, Truss1> fibers;
  std::map<int, int> off;  // 1 when a lower singular endpoint was adjoined
  for (const auto &[x, f] : b.fibers()) {
    std::string w = f.word();
    off[x] = 0;
    if (w.front() == 'R') {
      w = "S" + w;
      off[x] = 1;
    }
    if (w.back() == 'R') w += "S";
    fibers[x] = Truss1::make(w);
  }
  std::map<std::pair<int, int>, Bordism1> bordisms;
  for (const auto &[cover, r] : b.cover_bordisms()) {
    const auto [x, y] = cover;
    std::map<int, int> f;
    for (const auto &[s, img] : r.singular_function()) f[s + off.at(x)] = img + off.at(y);
    if (off.at(x)) f[0] = 0;
    if (fibers.at(x).length() == r.domain().length() + off.at(x) + 1)
      f[fibers.at(x).length() - 1] = fibers.at(y).length() - 1;
    bordisms.emplace(cover, Bordism1::from_singular_function(fibers.at(x), fibers.at(y), f));
  }
  CompactifiedBundle out;
  out.bundle = Bundle1::totalize(b.base(), std::move(fibers), std::move(bordisms));
  for (int x : b.base().elements()) {
    for (int p = 0; p < b.fiber(x).length(); ++p)
      out.inclusion[b.total_id(x, p)] = out.bundle.total_id(x, p + off.at(x));
    for (int p = 0; p < out.bundle.fiber(x).length(); ++p) {
      int q = std::clamp(p - off.at(x), 0, b.fiber(x).length() - 1);
      out.retraction[out.bundle.total_id(x, p)] = b.total_id(x, q);
    }
  }
  return out;
}

std::vector<std::map<int, int>> all_poset_maps(const Poset &src, const Poset &tgt) {
  std::vector<std::map<int, int>> out;
  const auto &se = src.elements();
  const auto &te = tgt.elements();
  std::vector<std::size_t> pick(se.size(), 0);
  while (true) {
    std::map<int, int> a;
    for (std::size_t i = 0; i < se.size(); ++i) a[se[i]] = te[pick[i]];
    bool mono = true;
    for (const auto &[x, y] : src.covers())
      if (!tgt.leq(a[x], a[y])) mono = false;
    if (mono) out.push_back(std::move(a));
    std::size_t i = 0;
    while (i < pick.size() && pick[i] + 1 == te.size()) pick[i++] = 0;
    if (i == pick.size()) break;
    ++pick[i];
  }
  return out;
}

}  // namespace

TrussTower TrussTower::make(Poset base, std::vector<Bundle1> levels,
                            std::map<int, std::string> labels) {
  std::vector<std::string> bad;
  const Poset *expect = &base;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].base() != *expect)
      bad.push_back("level " + std::to_string(i + 1) +
                    " base poset does not equal the previous total poset");
    expect = &levels[i].total_poset();
  }
  if (!labels.empty()) {
    for (int e : expect->elements())
      if (!labels.count(e)) bad.push_back("label missing for element " + std::to_string(e));
    for (const auto &[e, s] : labels)
      if (!expect->contains(e)) bad.push_back("label on unknown element " + std::to_string(e));
  }
  if (!bad.empty()) throw ValidationError("tower: invalid", bad);
  TrussTower t;
  t.base_ = std::move(base);
  t.levels_ = std::move(levels);
  t.labels_ = std::move(labels);
  return t;
}

const Bundle1 &TrussTower::level(int i) const {
  if (i < 1 || i > depth()) throw ValidationError("tower: level out of range");
  return levels_[i - 1];
}

const Poset &TrussTower::top_poset() const {
  return levels_.empty() ? base_ : levels_.back().total_poset();
}

int TrussTower::total_elements() const {
  int n = static_cast<int>(base_.size());
  for (const auto &l : levels_) n += l.total_size();
  return n;
}

TrussTower TrussTower::with_labels(std::map<int, std::string> labels) const {
  return make(base_, levels_, std::move(labels));
}

TrussTower TrussTower::without_labels() const { return make(base_, levels_); }

bool TrussTower::closed() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const Bundle1 &b) { return b.closed(); });
}

bool TrussTower::open() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const Bundle1 &b) { return b.open(); });
}

TrussTower TrussTower::lower_truncate(int k) const {
  if (k < 0 || k > depth()) throw ValidationError("tower: truncation level out of range");
  return make(base_, std::vector<Bundle1>(levels_.begin(), levels_.begin() + k));
}

TrussTower TrussTower::upper_truncate(int k) const {
  if (k < 0 || k > depth()) throw ValidationError("tower: truncation level out of range");
  Poset new_base = k == 0 ? base_ : levels_[k - 1].total_poset();
  return make(std::move(new_base), std::vector<Bundle1>(levels_.begin() + k, levels_.end()),
              labels_);
}

TrussTower TrussTower::dualize() const {
  std::vector<Bundle1> levels;
  for (const auto &l : levels_) levels.push_back(l.dualize());
  return make(base_.opposite(), std::move(levels), labels_);
}

TrussTower TrussTower::suspend() const {
  if (labeled()) throw ValidationError("tower: labeled suspension is not defined");
  std::vector<Bundle1> levels;
  for (const auto &l : levels_) levels.push_back(l.suspend());
  Poset new_base = levels.empty() ? base_ : levels.front().base();
  if (levels.empty()) {
    // Suspend the bare base poset the same way a bundle suspension would.
    int mx = *std::max_element(base_.elements().begin(), base_.elements().end());
    std::vector<int> elems = base_.elements();
    elems.push_back(mx + 1);
    elems.push_back(mx + 2);
    std::set<std::pair<int, int>> covers = base_.covers();
    for (int m : base_.minimal_elements()) covers.insert({mx + 1, m});
    for (int m : base_.maximal_elements()) covers.insert({m, mx + 2});
    new_base = Poset(std::move(elems), std::move(covers));
  }
  return make(std::move(new_base), std::move(levels));
}

TrussTower TrussTower::canonicalize() const {
  std::map<int, int> rename;
  for (int e : base_.elements()) rename[e] = e;
  Poset cur_base = base_;
  std::vector<Bundle1> levels;
  for (const auto &l : levels_) {
    std::map<int, Truss1> fibers;
    for (const auto &[x, f] : l.fibers()) fibers[rename.at(x)] = f;
    std::map<std::pair<int, int>, Bordism1> bordisms;
    for (const auto &[cover, r] : l.cover_bordisms())
      bordisms.emplace(std::make_pair(rename.at(cover.first), rename.at(cover.second)), r);
    Bundle1 nb = Bundle1::totalize(cur_base, std::move(fibers), std::move(bordisms));
    std::map<int, int> next;
    for (int x : l.base().elements())
      for (int p = 0; p < l.fiber(x).length(); ++p)
        next[l.total_id(x, p)] = nb.total_id(rename.at(x), p);
    rename = std::move(next);
    cur_base = nb.total_poset();
    levels.push_back(std::move(nb));
  }
  std::map<int, std::string> labels;
  for (const auto &[e, s] : labels_) labels[rename.at(e)] = s;
  return make(base_, std::move(levels), std::move(labels));
}

TowerMap identity_tower_map(const TrussTower &t) {
  TowerMap m;
  std::map<int, int> base;
  for (int e : t.base().elements()) base[e] = e;
  m.levels.push_back(std::move(base));
  for (int i = 1; i <= t.depth(); ++i) {
    std::map<int, int> lvl;
    for (int e : t.level(i).total_poset().elements()) lvl[e] = e;
    m.levels.push_back(std::move(lvl));
  }
  return m;
}

TowerMap compose(const TowerMap &g, const TowerMap &f) {
  TowerMap out;
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    std::map<int, int> lvl;
    for (const auto &[k, v] : f.levels[i]) lvl[k] = g.levels[i].at(v);
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

bool is_tower_map(const TrussTower &src, const TrussTower &dst, const TowerMap &m,
                  std::vector<std::string> *why) {
  std::vector<std::string> bad;
  if (src.depth() != dst.depth() || static_cast<int>(m.levels.size()) != src.depth() + 1) {
    if (why) why->push_back("level count mismatch");
    return false;
  }
  // Base map monotone.
  for (int e : src.base().elements()) {
    if (!m.levels[0].count(e) || !dst.base().contains(m.levels[0].at(e))) {
      bad.push_back("base image missing for " + std::to_string(e));
    }
  }
  if (bad.empty())
    for (const auto &[x, y] : src.base().covers())
      if (!dst.base().leq(m.levels[0].at(x), m.levels[0].at(y)))
        bad.push_back("base map not monotone");
  for (int i = 1; i <= src.depth() && bad.empty(); ++i) {
    const Bundle1 &sl = src.level(i);
    const Bundle1 &dl = dst.level(i);
    const auto &fi = m.levels[i];
    for (int e : sl.total_poset().elements()) {
      auto it = fi.find(e);
      if (it == fi.end() || !dl.total_poset().contains(it->second)) {
        bad.push_back("level " + std::to_string(i) + ": image missing for " + std::to_string(e));
        continue;
      }
      // Square commutes.
      if (dl.base_of(it->second) != m.levels[i - 1].at(sl.base_of(e)))
        bad.push_back("level " + std::to_string(i) + ": square does not commute at " +
                      std::to_string(e));
    }
    if (!bad.empty()) break;
    // Frame order fiberwise.
    for (int x : sl.base().elements()) {
      const Truss1 &f = sl.fiber(x);
      for (int p = 0; p + 1 < f.length(); ++p)
        if (dl.pos_of(fi.at(sl.total_id(x, p))) > dl.pos_of(fi.at(sl.total_id(x, p + 1))))
          bad.push_back("level " + std::to_string(i) + ": frame order broken over " +
                        std::to_string(x));
    }
    // Face order on covers.
    for (const auto &[a, b] : sl.total_poset().covers())
      if (!dl.total_poset().leq(fi.at(a), fi.at(b)))
        bad.push_back("level " + std::to_string(i) + ": face order broken on (" +
                      std::to_string(a) + " -> " + std::to_string(b) + ")");
  }
  if (why) *why = bad;
  return bad.empty();
}

TowerMapClass classify_tower_map(const TrussTower &src, const TrussTower &dst,
                                 const TowerMap &m) {
  TowerMapClass c;
  c.singular = c.regular = c.injective = c.surjective = true;
  bool fiberwise_face = true, fiberwise_embedding = true;
  bool fiberwise_degeneracy = true, fiberwise_coarsening = true;
  // Base level: injectivity/surjectivity of the base map.
  {
    std::set<int> img;
    for (int e : src.base().elements()) img.insert(m.levels[0].at(e));
    if (img.size() != src.base().size()) c.injective = false;
    if (img.size() != dst.base().size()) c.surjective = false;
  }
  for (int i = 1; i <= src.depth(); ++i) {
    const Bundle1 &sl = src.level(i);
    const Bundle1 &dl = dst.level(i);
    for (int x : sl.base().elements()) {
      std::vector<int> assign;
      for (int p = 0; p < sl.fiber(x).length(); ++p)
        assign.push_back(dl.pos_of(m.levels[i].at(sl.total_id(x, p))));
      Truss1Map fm(sl.fiber(x), dl.fiber(m.levels[i - 1].at(x)), assign);
      MapClass mc = classify_map(fm);
      c.singular &= mc.singular;
      c.regular &= mc.regular;
      c.injective &= mc.injective;
      fiberwise_face &= mc.face;
      fiberwise_embedding &= mc.embedding;
      fiberwise_degeneracy &= mc.degeneracy;
      fiberwise_coarsening &= mc.coarsening;
    }
    std::set<int> img;
    for (const auto &[k, v] : m.levels[i]) img.insert(v);
    if (img.size() != dl.total_poset().size()) c.surjective = false;
  }
  c.balanced = c.singular && c.regular;
  c.face = c.injective && fiberwise_face;
  c.embedding = c.injective && fiberwise_embedding;
  c.degeneracy = c.surjective && fiberwise_degeneracy;
  c.coarsening = c.surjective && fiberwise_coarsening;
  return c;
}

std::set<std::pair<int, int>> generating_arrows(const TrussTower &t, int level) {
  const Bundle1 &l = t.level(level);
  std::set<std::pair<int, int>> arrows;
  for (int x : l.base().elements()) {
    const Truss1 &f = l.fiber(x);
    for (int p = 0; p + 1 < f.length(); ++p) {
      if (f.regular(p))
        arrows.insert({l.total_id(x, p), l.total_id(x, p + 1)});
      else
        arrows.insert({l.total_id(x, p + 1), l.total_id(x, p)});
    }
  }
  for (const auto &[cover, r] : l.cover_bordisms())
    for (int a = 0; a < r.domain().length(); ++a)
      for (int b = 0; b < r.codomain().length(); ++b)
        if (r.rel(a, b) && r.domain().dim(a) == r.codomain().dim(b))
          arrows.insert({l.total_id(cover.first, a), l.total_id(cover.second, b)});

  // Cross-check against a direct covering-relation computation on the full
  // face order.
  auto related = [&](int s, int u) {
    int xs = l.base_of(s), xu = l.base_of(u);
    if (xs == xu) return l.fiber(xs).face_leq(l.pos_of(s), l.pos_of(u));
    if (!l.base().leq(xs, xu)) return false;
    return l.bordism_over(xs, xu).rel(l.pos_of(s), l.pos_of(u));
  };
  std::set<std::pair<int, int>> covering;
  const auto &elems = l.total_poset().elements();
  for (int s : elems)
    for (int u : elems) {
      if (s == u || !related(s, u)) continue;
      bool refinable = false;
      for (int v : elems)
        if (v != s && v != u && related(s, v) && related(v, u)) refinable = true;
      if (!refinable) covering.insert({s, u});
    }
  if (covering != arrows)
    throw ValidationError("tower: generating arrows disagree with the covering relation");
  return arrows;
}

std::pair<TrussTower, TowerMap> tower_pullback(const TrussTower &t, const PosetMap &g) {
  if (g.target != t.base()) throw ValidationError("tower: pullback map does not target the base");
  TowerMap maps;
  maps.levels.push_back(g.assignment);
  std::vector<Bundle1> levels;
  Poset cur = g.source;
  PosetMap along = g;
  for (int i = 1; i <= t.depth(); ++i) {
    auto [pulled, tot] = t.level(i).pullback(along);
    levels.push_back(pulled);
    maps.levels.push_back(tot);
    cur = pulled.total_poset();
    along = PosetMap(cur, t.level(i).total_poset(), tot);
  }
  std::map<int, std::string> labels;
  if (t.labeled())
    for (const auto &[e, v] : maps.levels.back()) labels[e] = t.labels().at(v);
  return {TrussTower::make(g.source, std::move(levels), std::move(labels)), std::move(maps)};
}

TrussTower restrict_to_base(const TrussTower &t, const std::vector<int> &base_elems) {
  Poset sub = t.base().induced(base_elems);
  std::map<int, int> incl;
  for (int e : sub.elements()) incl[e] = e;
  return tower_pullback(t, PosetMap(sub, t.base(), std::move(incl))).first;
}

Compactification compactify(const TrussTower &t) {
  Compactification out;
  std::map<int, int> incl_prev, retr_prev;
  for (int e : t.base().elements()) incl_prev[e] = retr_prev[e] = e;
  out.inclusion.levels.push_back(incl_prev);
  out.retraction.levels.push_back(retr_prev);

  std::vector<Bundle1> levels;
  Poset closed_base = t.base();
  for (int i = 1; i <= t.depth(); ++i) {
    // Pull the level back along the previous retraction, then compactify
    // fiberwise.
    PosetMap r(closed_base, t.level(i).base(), retr_prev);
    auto [pulled, tot] = t.level(i).pullback(r);
    CompactifiedBundle cb = compactify_bundle(pulled);
    levels.push_back(cb.bundle);

    std::map<int, int> incl, retr;
    for (int x : t.level(i).base().elements())
      for (int p = 0; p < t.level(i).fiber(x).length(); ++p) {
        int old_id = t.level(i).total_id(x, p);
        incl[old_id] = cb.inclusion.at(pulled.total_id(incl_prev.at(x), p));
      }
    for (const auto &[new_id, mid] : cb.retraction) retr[new_id] = tot.at(mid);
    out.inclusion.levels.push_back(incl);
    out.retraction.levels.push_back(retr);
    incl_prev = std::move(incl);
    retr_prev = std::move(retr);
    closed_base = cb.bundle.total_poset();
  }
  out.closed = TrussTower::make(t.base(), std::move(levels));
  return out;
}

bool universal_property_check(const TrussTower &t, const TrussTower &candidate,
                              const TowerMap &incl, const TowerMap &retr) {
  Compactification comp = compactify(t);
  if (candidate.depth() != comp.closed.depth()) return false;

  // Count tower surjections H : candidate -> compactification with
  // H . incl = ci and cr . H = retr, by levelwise backtracking with the two
  // equations enforced as the fibers are assigned.
  std::vector<std::map<int, int>> pinned(candidate.depth() + 1);
  for (std::size_t i = 0; i < incl.levels.size(); ++i)
    for (const auto &[e, v] : incl.levels[i]) pinned[i][v] = comp.inclusion.levels[i].at(e);

  int mediating = 0;
  TowerMap h;
  h.levels.assign(candidate.depth() + 1, {});
  // Bases are equal for compactifications; the base map is the identity and
  // must agree with the pins.
  for (int e : candidate.base().elements()) h.levels[0][e] = e;
  for (const auto &[e, v] : pinned[0])
    if (h.levels[0].count(e) && h.levels[0].at(e) != v) return false;

  std::function<void(int)> rec_level = [&](int level) {
    if (level > candidate.depth()) {
      TowerMapClass c = classify_tower_map(candidate, comp.closed, h);
      if (c.surjective) ++mediating;
      return;
    }
    const Bundle1 &sl = candidate.level(level);
    const Bundle1 &dl = comp.closed.level(level);
    std::vector<int> base_elems = sl.base().elements();

    std::function<void(std::size_t)> rec_fiber = [&](std::size_t bi) {
      if (bi == base_elems.size()) {
        for (const auto &[a, b] : sl.total_poset().covers())
          if (!dl.total_poset().leq(h.levels[level].at(a), h.levels[level].at(b))) return;
        rec_level(level + 1);
        return;
      }
      int x = base_elems[bi];
      int y = h.levels[level - 1].at(x);
      const Truss1 &fs = sl.fiber(x);
      const Truss1 &fd = dl.fiber(y);
      std::vector<int> assign(fs.length(), 0);
      std::function<void(int)> rec_pos = [&](int p) {
        if (p == fs.length()) {
          bool face_ok = true;
          for (int q = 0; q + 1 < fs.length() && face_ok; ++q) {
            int a = q, b = q + 1;
            if (fs.singular(a)) std::swap(a, b);
            if (!fd.face_leq(assign[a], assign[b])) face_ok = false;
          }
          if (!face_ok) return;
          for (int q = 0; q < fs.length(); ++q)
            h.levels[level][sl.total_id(x, q)] = dl.total_id(y, assign[q]);
          bool cover_ok = true;
          for (const auto &[a, b] : sl.total_poset().covers()) {
            auto ia = h.levels[level].find(a);
            auto ib = h.levels[level].find(b);
            if (ia != h.levels[level].end() && ib != h.levels[level].end() &&
                !dl.total_poset().leq(ia->second, ib->second))
              cover_ok = false;
          }
          if (cover_ok) rec_fiber(bi + 1);
          for (int q = 0; q < fs.length(); ++q) h.levels[level].erase(sl.total_id(x, q));
          return;
        }
        int lo = p == 0 ? 0 : assign[p - 1];
        for (int v = lo; v < fd.length(); ++v) {
          int tid = sl.total_id(x, p);
          int did = dl.total_id(y, v);
          auto pin = pinned[level].find(tid);
          if (pin != pinned[level].end() && pin->second != did) continue;
          if (comp.retraction.levels[level].at(did) != retr.levels[level].at(tid)) continue;
          assign[p] = v;
          rec_pos(p + 1);
        }
      };
      rec_pos(0);
    };
    rec_fiber(0);
  };
  rec_level(1);
  return mediating == 1;
}

EpiMonoFactorization epi_mono_factorize(const TrussTower &src, const TrussTower &dst,
                                        const TowerMap &f, FactorizationMode mode) {
  std::vector<std::string> why;
  if (!is_tower_map(src, dst, f, &why))
    throw ValidationError("factorize: not a tower map", why);
  TowerMapClass c = classify_tower_map(src, dst, f);
  if (mode == FactorizationMode::kClosedSingular) {
    if (!src.closed() || !dst.closed() || !c.singular)
      throw ValidationError("factorize: needs a singular map of closed towers");
  } else {
    if (!src.open() || !dst.open() || !c.regular)
      throw ValidationError("factorize: needs a regular map of open towers");
  }

  std::vector<std::set<int>> image(src.depth() + 1);
  for (std::size_t i = 0; i < f.levels.size(); ++i)
    for (const auto &[e, v] : f.levels[i]) image[i].insert(v);
  SubTowerResult sub = subtower(dst, image);  // throws with witness if not a sub-tower

  EpiMonoFactorization out;
  out.image = sub.tower;
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    std::map<int, int> epi;
    for (const auto &[e, v] : f.levels[i]) epi[e] = sub.from_parent[i].at(v);
    out.epi.levels.push_back(std::move(epi));
    out.mono.levels.push_back(sub.to_parent[i]);
  }

  TowerMapClass ec = classify_tower_map(src, out.image, out.epi);
  TowerMapClass mc = classify_tower_map(out.image, dst, out.mono);
  const bool epi_ok =
      mode == FactorizationMode::kClosedSingular ? ec.degeneracy : ec.coarsening;
  const bool mono_ok = mode == FactorizationMode::kClosedSingular ? mc.face : mc.embedding;
  if (!epi_ok || !mono_ok)
    throw ValidationError("factorize: image does not split into the expected classes");
  return out;
}

FaceBlock face_block(const TrussTower &t, int x) {
  if (!t.closed()) throw ValidationError("face block: tower is not closed");
  if (!t.top_poset().contains(x))
    throw ValidationError("face block: unknown element " + std::to_string(x));
  std::vector<std::set<int>> keep(t.depth() + 1);
  int cur = x;
  for (int i = t.depth(); i >= 1; --i) {
    auto up = t.level(i).total_poset().up_closure(cur);
    keep[i] = std::set<int>(up.begin(), up.end());
    cur = t.level(i).base_of(cur);
  }
  auto base_up = t.base().up_closure(cur);
  keep[0] = std::set<int>(base_up.begin(), base_up.end());

  SubTowerResult sub = subtower(t, keep);
  FaceBlock out;
  out.block = sub.tower;
  out.inclusion.levels = sub.to_parent;
  if (!out.block.top_poset().initial_element())
    throw ValidationError("face block: result has no initial element");
  return out;
}

int block_dimension(const TrussTower &t) {
  auto init = t.top_poset().initial_element();
  if (!init) throw ValidationError("block: no initial element");
  return t.top_poset().depth_of(*init);
}

std::vector<TowerMap> enumerate_maps(const TrussTower &src, const TrussTower &dst,
                                     const std::function<bool(const TowerMapClass &)> &filter) {
  std::vector<TowerMap> out;
  if (src.depth() != dst.depth()) return out;

  // All frame-monotone fiber assignments src fiber -> dst fiber that are
  // 1-truss maps.
  auto fiber_assignments = [](const Truss1 &a, const Truss1 &b) {
    std::vector<std::vector<int>> result;
    std::vector<int> pick(a.length(), 0);
    while (true) {
      bool mono = true;
      for (int i = 0; i + 1 < a.length(); ++i)
        if (pick[i] > pick[i + 1]) mono = false;
      if (mono) {
        bool face_ok = true;
        for (int i = 0; i + 1 < a.length() && face_ok; ++i) {
          int p = i, q = i + 1;
          if (a.singular(p)) std::swap(p, q);
          if (!b.face_leq(pick[p], pick[q])) face_ok = false;
        }
        if (face_ok) result.push_back(pick);
      }
      int i = 0;
      while (i < a.length() && pick[i] + 1 == b.length()) pick[i++] = 0;
      if (i == a.length()) break;
      ++pick[i];
    }
    return result;
  };

  for (auto &base_map : all_poset_maps(src.base(), dst.base())) {
    TowerMap m;
    m.levels.assign(src.depth() + 1, {});
    m.levels[0] = base_map;

    std::function<void(int)> rec_level = [&](int level) {
      if (level > src.depth()) {
        TowerMapClass c = classify_tower_map(src, dst, m);
        if (filter(c)) out.push_back(m);
        return;
      }
      const Bundle1 &sl = src.level(level);
      const Bundle1 &dl = dst.level(level);
      std::vector<int> base_elems = sl.base().elements();

      std::function<void(std::size_t)> rec_fiber = [&](std::size_t bi) {
        if (bi == base_elems.size()) {
          // Global face-order check on cross-fiber covers.
          for (const auto &[a, b] : sl.total_poset().covers())
            if (!dl.total_poset().leq(m.levels[level].at(a), m.levels[level].at(b))) return;
          rec_level(level + 1);
          return;
        }
        int x = base_elems[bi];
        int y = m.levels[level - 1].at(x);
        for (const auto &assign : fiber_assignments(sl.fiber(x), dl.fiber(y))) {
          for (int p = 0; p < sl.fiber(x).length(); ++p)
            m.levels[level][sl.total_id(x, p)] = dl.total_id(y, assign[p]);
          // Prune: covers whose endpoints are both assigned already.
          bool ok = true;
          for (const auto &[a, b] : sl.total_poset().covers()) {
            auto ia = m.levels[level].find(a);
            auto ib = m.levels[level].find(b);
            if (ia != m.levels[level].end() && ib != m.levels[level].end() &&
                !dl.total_poset().leq(ia->second, ib->second))
              ok = false;
          }
          if (ok) rec_fiber(bi + 1);
          for (int p = 0; p < sl.fiber(x).length(); ++p)
            m.levels[level].erase(sl.total_id(x, p));
        }
      };
      rec_fiber(0);
    };
    rec_level(1);
  }
  return out;
}

TrussTower compose_over_2simplex(const TrussTower &r1, const TrussTower &r2) {
  if (r1.depth() != r2.depth()) throw ValidationError("compose: depth mismatch");
  auto chain1 = r1.base().chain_order();
  auto chain2 = r2.base().chain_order();
  if (chain1.size() != 2 || chain2.size() != 2)
    throw ValidationError("compose: expected tower bordisms over the 1-simplex");

  TrussTower a = r1.canonicalize(), b = r2.canonicalize();

  // Middle correspondence, built level by level: cod(a) elements <-> dom(b).
  std::map<int, int> mid;  // a-side id -> b-side id (level i-1), plus base seed
  std::map<int, int> m1, m2;  // a / b level-(i-1) ids -> W ids
  Poset wbase = Poset::chain(3);
  m1[chain1[0]] = 0;
  m1[chain1[1]] = 1;
  m2[chain2[0]] = 1;
  m2[chain2[1]] = 2;
  mid[chain1[1]] = chain2[0];

  Poset cur = wbase;
  std::vector<Bundle1> levels;
  for (int i = 1; i <= a.depth(); ++i) {
    const Bundle1 &la = a.level(i);
    const Bundle1 &lb = b.level(i);
    // Fibers of W over every current base element.
    std::map<int, Truss1> fibers;
    for (const auto &[u, w] : m1) fibers[w] = la.fiber(u);
    for (const auto &[v, w] : m2) {
      if (fibers.count(w)) {
        if (fibers.at(w) != lb.fiber(v))
          throw ValidationError("compose: middle fibers disagree at level " + std::to_string(i));
      } else {
        fibers[w] = lb.fiber(v);
      }
    }
    std::map<std::pair<int, int>, Bordism1> bordisms;
    std::map<int, int> m1_inv, m2_inv;
    for (const auto &[u, w] : m1) m1_inv[w] = u;
    for (const auto &[v, w] : m2) m2_inv[w] = v;
    for (const auto &[x, y] : cur.covers()) {
      if (m1_inv.count(x) && m1_inv.count(y)) {
        bordisms.emplace(std::make_pair(x, y), la.cover_bordism(m1_inv.at(x), m1_inv.at(y)));
      } else if (m2_inv.count(x) && m2_inv.count(y)) {
        bordisms.emplace(std::make_pair(x, y), lb.cover_bordism(m2_inv.at(x), m2_inv.at(y)));
      } else {
        throw ValidationError("compose: cover crosses the gluing unexpectedly");
      }
    }
    // Middle covers present on both sides must carry equal bordisms.
    for (const auto &[x, y] : cur.covers())
      if (m1_inv.count(x) && m1_inv.count(y) && m2_inv.count(x) && m2_inv.count(y))
        if (!(la.cover_bordism(m1_inv.at(x), m1_inv.at(y)) ==
              lb.cover_bordism(m2_inv.at(x), m2_inv.at(y))))
          throw ValidationError("compose: middle bordisms disagree at level " + std::to_string(i));

    Bundle1 wl = Bundle1::totalize(cur, std::move(fibers), std::move(bordisms));
    std::map<int, int> n1, n2;
    for (const auto &[u, w] : m1)
      for (int p = 0; p < la.fiber(u).length(); ++p)
        n1[la.total_id(u, p)] = wl.total_id(w, p);
    for (const auto &[v, w] : m2)
      for (int p = 0; p < lb.fiber(v).length(); ++p)
        n2[lb.total_id(v, p)] = wl.total_id(w, p);
    m1 = std::move(n1);
    m2 = std::move(n2);
    cur = wl.total_poset();
    levels.push_back(std::move(wl));
  }
  TrussTower w = TrussTower::make(Poset::chain(3), std::move(levels));
  // Restrict to the long edge 0 -> 2 and renumber the base to the 1-simplex.
  Poset edge = Poset::chain(3).induced({0, 2});
  std::map<int, int> incl{{0, 0}, {2, 2}};
  TrussTower long_edge = tower_pullback(w, PosetMap(edge, Poset::chain(3), incl)).first;
  std::map<int, int> renum{{0, 0}, {1, 2}};
  return tower_pullback(long_edge, PosetMap(Poset::chain(2), edge, renum)).first;
}

}  // namespace truss
