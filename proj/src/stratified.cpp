// stratified.cpp
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

#include "truss/stratified.hpp"

#include <algorithm>
#include <functional>

namespace truss {

namespace {

// One fiberwise coarsening: consecutive frame intervals, each either a lone
// singular (image S) or containing a regular (image R), with alternating
// images and matching endpoint dimensions.
struct FiberPartition {
  std::vector<std::pair<int, int>> intervals;  // inclusive [lo,hi]
  std::string image;
};

std::vector<FiberPartition> fiber_coarsenings(const Truss1 &f) {
  std::vector<FiberPartition> out;
  const std::string w = f.word();
  const int n = f.length();
  FiberPartition cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (cur.image.back() == w.back()) out.push_back(cur);
      return;
    }
    for (int j = i; j < n; ++j) {
      bool has_regular = false;
      for (int k = i; k <= j; ++k) has_regular |= w[k] == 'R';
      char img;
      if (!has_regular) {
        if (j != i) break;  // two singulars can never share an interval
        img = 'S';
      } else {
        img = 'R';
      }
      if (!cur.image.empty() && cur.image.back() == img) continue;
      if (cur.image.empty() && img != w[0]) continue;  // lower endpoint type
      cur.intervals.push_back({i, j});
      cur.image += img;
      rec(j + 1);
      cur.intervals.pop_back();
      cur.image.pop_back();
    }
  };
  rec(0);
  return out;
}

int interval_of(const FiberPartition &p, int pos) {
  for (std::size_t k = 0; k < p.intervals.size(); ++k)
    if (pos >= p.intervals[k].first && pos <= p.intervals[k].second) return static_cast<int>(k);
  throw ValidationError("coarsening: position outside partition");
}

// State while building a quotient tower level by level.
struct QuotientBuild {
  std::vector<Bundle1> levels;
  std::map<int, int> phi;  // current top-level old ids -> new ids
  bool identity = true;
  std::vector<std::map<int, int>> level_maps;  // per level, old -> new
};

}  // namespace

StratifiedTruss StratifiedTruss::validate(TrussTower labeled_tower) {
  if (!labeled_tower.labeled())
    throw ValidationError("stratified: tower carries no labeling");
  StratifiedTruss s;
  s.tower_ = std::move(labeled_tower);
  const Poset &top = s.tower_.top_poset();
  const auto &labels = s.tower_.labels();

  std::set<std::string> nameset;
  for (const auto &[e, name] : labels) nameset.insert(name);
  s.names_.assign(nameset.begin(), nameset.end());
  auto index_of = [&](const std::string &n) {
    return static_cast<int>(std::lower_bound(s.names_.begin(), s.names_.end(), n) -
                            s.names_.begin());
  };

  // Stratum order generated by cover images; reduce to its covering relation.
  const int k = static_cast<int>(s.names_.size());
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i) reach[i][i] = true;
  std::set<std::pair<int, int>> arrows;
  for (const auto &[a, b] : top.covers()) {
    int u = index_of(labels.at(a)), v = index_of(labels.at(b));
    if (u != v) arrows.insert({u, v});
  }
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
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && reach[i][j] && reach[j][i])
        throw ValidationError("stratified: cyclic stratum relation between \"" + s.names_[i] +
                              "\" and \"" + s.names_[j] + "\"");
  std::set<std::pair<int, int>> covers;
  for (const auto &[a, b] : arrows) {
    bool refinable = false;
    for (int m = 0; m < k; ++m)
      if (m != a && m != b && reach[a][m] && reach[m][b]) refinable = true;
    if (!refinable) covers.insert({a, b});
  }
  std::vector<int> elems(k);
  for (int i = 0; i < k; ++i) elems[i] = i;
  s.strata_ = Poset(std::move(elems), std::move(covers));

  std::map<int, int> assign;
  for (const auto &[e, name] : labels) assign[e] = index_of(name);
  PosetMap charmap(top, s.strata_, std::move(assign));
  if (!is_connected_quotient(charmap)) {
    // Give the concrete reason: a disconnected stratum.
    for (int i = 0; i < k; ++i) {
      std::vector<int> pre;
      for (const auto &[e, name] : labels)
        if (index_of(name) == i) pre.push_back(e);
      if (top.undirected_components(pre).size() != 1)
        throw ValidationError("stratified: stratum \"" + s.names_[i] + "\" is disconnected");
    }
    throw ValidationError("stratified: labeling is not a quotient map");
  }
  return s;
}

int StratifiedTruss::stratum_of(int elem) const {
  const std::string &n = tower_.labels().at(elem);
  return static_cast<int>(std::lower_bound(names_.begin(), names_.end(), n) - names_.begin());
}

std::vector<Coarsening> enumerate_truss_coarsenings(const StratifiedTruss &s) {
  const TrussTower &t = s.tower();
  std::vector<Coarsening> out;

  // Depth-first over levels; at each level choose a fiber partition per old
  // base element, constant image word per new base element.
  std::function<void(int, QuotientBuild &)> do_level = [&](int level, QuotientBuild &qb) {
    if (level > t.depth()) {
      if (qb.identity) return;
      // Label constancy per top-level block.
      std::map<int, std::string> new_labels;
      for (const auto &[old_id, new_id] : qb.phi) {
        const std::string &lbl = t.labels().at(old_id);
        auto it = new_labels.find(new_id);
        if (it == new_labels.end())
          new_labels[new_id] = lbl;
        else if (it->second != lbl)
          return;
      }
      TrussTower target;
      StratifiedTruss target_s;
      try {
        target = TrussTower::make(t.base(), qb.levels, new_labels);
        target_s = StratifiedTruss::validate(target);
      } catch (const ValidationError &) {
        return;
      }
      // Label preserving: the stratum poset must be unchanged.
      if (target_s.stratum_names() != s.stratum_names()) return;
      if (!(target_s.stratum_poset() == s.stratum_poset())) return;
      Coarsening c;
      c.map.levels = qb.level_maps;
      c.target = std::move(target_s);
      out.push_back(std::move(c));
      return;
    }

    const Bundle1 &lvl = t.level(level);
    const Poset &new_base = level == 1 ? t.base() : qb.levels.back().total_poset();
    // Group old base elements by their image.
    std::map<int, std::vector<int>> group;
    for (int x : lvl.base().elements()) group[qb.phi.at(x)].push_back(x);
    std::vector<int> group_keys;
    for (const auto &[y, xs] : group) group_keys.push_back(y);

    // Candidate partitions per old base element.
    std::map<int, std::vector<FiberPartition>> options;
    for (int x : lvl.base().elements()) options[x] = fiber_coarsenings(lvl.fiber(x));

    std::map<int, FiberPartition> chosen;  // old base elem -> partition
    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t gi, std::size_t xi) {
      if (gi == group_keys.size()) {
        // Assemble the level: fibers, forced bordisms, then validate.
        std::map<int, Truss1> fibers;
        for (int y : group_keys) fibers[y] = Truss1::make(chosen.at(group.at(y).front()).image);
        std::map<std::pair<int, int>, Bordism1> bordisms;
        for (const auto &[y, yp] : new_base.covers()) {
          // The singular function is forced by any witness pair; all
          // witnesses must agree.
          std::map<int, int> forced;
          bool ok = true;
          for (int x : group.at(y)) {
            for (int xp : group.at(yp)) {
              if (!lvl.base().leq(x, xp) || x == xp) continue;
              Bordism1 r = lvl.bordism_over(x, xp);
              const FiberPartition &px = chosen.at(x);
              const FiberPartition &pxp = chosen.at(xp);
              for (std::size_t k = 0; k < px.intervals.size() && ok; ++k) {
                if (px.image[k] != 'S') continue;
                int a = px.intervals[k].first;  // the lone singular
                int img = r.singular_function().at(a);
                int iv = interval_of(pxp, img);
                if (pxp.image[iv] != 'S') {
                  ok = false;  // a singular may not land in a regular block
                  break;
                }
                auto it = forced.find(static_cast<int>(k));
                if (it == forced.end())
                  forced[static_cast<int>(k)] = iv;
                else if (it->second != iv)
                  ok = false;
              }
              if (!ok) break;
            }
            if (!ok) break;
          }
          if (!ok) return;
          // Every singular of the quotient fiber must be pinned.
          for (int p = 0; p < fibers.at(y).length() && ok; ++p)
            if (fibers.at(y).singular(p) && !forced.count(p)) ok = false;
          if (!ok) return;
          Bordism1 rq;
          try {
            rq = Bordism1::from_singular_function(fibers.at(y), fibers.at(yp), forced);
          } catch (const ValidationError &) {
            return;
          }
          bordisms.emplace(std::make_pair(y, yp), rq);
        }
        Bundle1 nb;
        try {
          nb = Bundle1::totalize(new_base, std::move(fibers), std::move(bordisms));
        } catch (const ValidationError &) {
          return;
        }
        // The quotient assignment on this level's total poset.
        std::map<int, int> level_map;
        bool was_identity = true;
        for (int x : lvl.base().elements()) {
          const FiberPartition &p = chosen.at(x);
          if (p.intervals.size() != static_cast<std::size_t>(lvl.fiber(x).length()))
            was_identity = false;
          for (int pos = 0; pos < lvl.fiber(x).length(); ++pos)
            level_map[lvl.total_id(x, pos)] =
                nb.total_id(qb.phi.at(x), interval_of(p, pos));
        }
        // Face-order check on all old total covers (in-fiber ones hold by
        // construction, so this is about the over-base arrows).
        for (const auto &[a, b] : lvl.total_poset().covers())
          if (!nb.total_poset().leq(level_map.at(a), level_map.at(b))) return;

        QuotientBuild next = qb;
        next.levels.push_back(nb);
        next.identity = qb.identity && was_identity && group.size() == lvl.base().size();
        next.level_maps.push_back(level_map);
        next.phi = level_map;
        do_level(level + 1, next);
        return;
      }
      int y = group_keys[gi];
      const auto &xs = group.at(y);
      if (xi == xs.size()) {
        pick(gi + 1, 0);
        return;
      }
      int x = xs[xi];
      for (const FiberPartition &p : options.at(x)) {
        if (xi > 0 && p.image != chosen.at(xs[0]).image) continue;
        chosen[x] = p;
        pick(gi, xi + 1);
        chosen.erase(x);
      }
    };
    pick(0, 0);
  };

  QuotientBuild qb;
  std::map<int, int> id0;
  for (int e : t.base().elements()) id0[e] = e;
  qb.phi = id0;
  qb.level_maps.push_back(id0);
  do_level(1, qb);
  return out;
}

bool is_normalized(const StratifiedTruss &s) { return enumerate_truss_coarsenings(s).empty(); }

Normalization normalize(const StratifiedTruss &s, std::mt19937 *rng) {
  Normalization out;
  out.normal_form = s;
  out.reduction = identity_tower_map(s.tower());
  while (true) {
    auto steps = enumerate_truss_coarsenings(out.normal_form);
    if (steps.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(*rng);
    const Coarsening &step = steps[pick];
    TowerMap composed;
    for (std::size_t i = 0; i < out.reduction.levels.size(); ++i) {
      std::map<int, int> lvl;
      for (const auto &[k, v] : out.reduction.levels[i]) lvl[k] = step.map.levels[i].at(v);
      composed.levels.push_back(std::move(lvl));
    }
    out.reduction = std::move(composed);
    out.normal_form = step.target;
  }
  return out;
}

std::optional<IsoWitness> decide_iso(const StratifiedTruss &a, const StratifiedTruss &b) {
  StratifiedTruss na = normalize(a).normal_form;
  StratifiedTruss nb = normalize(b).normal_form;
  const TrussTower &ta = na.tower();
  const TrussTower &tb = nb.tower();
  if (ta.depth() != tb.depth()) return std::nullopt;
  if (ta.base().size() != tb.base().size()) return std::nullopt;

  IsoWitness w;
  // Base posets of stratified trusses are the point.
  if (ta.base().size() != 1 || tb.base().size() != 1) return std::nullopt;
  std::map<int, int> phi{{ta.base().elements()[0], tb.base().elements()[0]}};
  w.map.levels.push_back(phi);

  for (int i = 1; i <= ta.depth(); ++i) {
    const Bundle1 &la = ta.level(i);
    const Bundle1 &lb = tb.level(i);
    std::map<int, int> next;
    for (int x : la.base().elements()) {
      int y = phi.at(x);
      if (la.fiber(x) != lb.fiber(y)) return std::nullopt;
      for (int p = 0; p < la.fiber(x).length(); ++p)
        next[la.total_id(x, p)] = lb.total_id(y, p);
    }
    // Covers and bordisms must match exactly under the identification.
    if (la.base().covers().size() != lb.base().covers().size()) return std::nullopt;
    for (const auto &[x, xp] : la.base().covers()) {
      auto it = lb.base().covers().find({phi.at(x), phi.at(xp)});
      if (it == lb.base().covers().end()) return std::nullopt;
      if (!(la.cover_bordism(x, xp) == lb.cover_bordism(phi.at(x), phi.at(xp))))
        return std::nullopt;
    }
    w.map.levels.push_back(next);
    phi = std::move(next);
  }

  // Stratum names must match up to a poset isomorphism determined on the fly.
  std::map<std::string, std::string> fwd, bwd;
  for (const auto &[e, v] : w.map.levels.back()) {
    const std::string &la = ta.labels().at(e);
    const std::string &lb = tb.labels().at(v);
    auto f = fwd.find(la);
    if (f == fwd.end())
      fwd[la] = lb;
    else if (f->second != lb)
      return std::nullopt;
    auto g = bwd.find(lb);
    if (g == bwd.end())
      bwd[lb] = la;
    else if (g->second != la)
      return std::nullopt;
  }
  // Order isomorphism of the stratum posets.
  auto idx = [](const std::vector<std::string> &names, const std::string &n) {
    return static_cast<int>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
  };
  for (const std::string &u : na.stratum_names())
    for (const std::string &v : na.stratum_names()) {
      bool rel_a = na.stratum_poset().leq(idx(na.stratum_names(), u), idx(na.stratum_names(), v));
      bool rel_b = nb.stratum_poset().leq(idx(nb.stratum_names(), fwd.at(u)),
                                          idx(nb.stratum_names(), fwd.at(v)));
      if (rel_a != rel_b) return std::nullopt;
    }
  w.label_map = std::move(fwd);
  return w;
}

}  // namespace truss
