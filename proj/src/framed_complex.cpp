// framed_complex.cpp
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

#include "truss/framed_complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "truss/scaffold.hpp"

namespace truss {

namespace {

std::string vec_str(const std::vector<int> &v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Frames and proframes on standard simplices.

bool akin(int m, std::pair<int, int> v, std::pair<int, int> w) {
  if (v.first >= v.second || w.first >= w.second || v.first < 0 || w.first < 0 ||
      v.second > m || w.second > m)
    throw ValidationError("akin: degenerate or out-of-range vector");
  return std::max(v.first, w.first) < std::min(v.second, w.second);
}

int restrict_frame_to_vector(const SimplexFrame &f, std::pair<int, int> v) {
  if (v.first >= v.second || v.first < 0 || v.second > f.m)
    throw ValidationError("frame restriction: degenerate vector");
  int best = -1;
  for (int k = v.first; k < v.second; ++k)
    if (best < 0 || f.labels[k] < best) best = f.labels[k];
  return best;
}

SimplexFrame restrict_frame(const SimplexFrame &f, const std::vector<int> &face) {
  for (std::size_t i = 0; i + 1 < face.size(); ++i)
    if (face[i] >= face[i + 1])
      throw ValidationError("frame restriction: face is not strictly increasing");
  SimplexFrame out;
  out.m = static_cast<int>(face.size()) - 1;
  out.n = f.n;
  for (int i = 0; i < out.m; ++i)
    out.labels.push_back(restrict_frame_to_vector(f, {face[i], face[i + 1]}));
  return out;
}

static void check_frame(const SimplexFrame &f) {
  if (static_cast<int>(f.labels.size()) != f.m)
    throw ValidationError("simplex frame: wrong number of spine labels");
  std::set<int> seen;
  for (int l : f.labels) {
    if (l < 1 || l > f.n)
      throw ValidationError("simplex frame: label " + std::to_string(l) + " out of range");
    if (!seen.insert(l).second)
      throw ValidationError("simplex frame: spine labels are not injective");
  }
}

SimplexProframe integrate_simplex_frame(const SimplexFrame &f) {
  check_frame(f);
  SimplexProframe out;
  out.m = f.m;
  out.n = f.n;
  // Current position of each original vertex; collapsing a spine vector
  // labeled i merges two adjacent positions.
  std::vector<int> pos(f.m + 1);
  std::iota(pos.begin(), pos.end(), 0);
  for (int level = f.n; level >= 1; --level) {
    int spine = -1;
    for (int k = 0; k < f.m; ++k)
      if (f.labels[k] == level) spine = k;
    if (spine < 0) {
      out.collapse_at.push_back(-1);
      continue;
    }
    out.collapse_at.push_back(pos[spine]);
    for (int v = 0; v <= f.m; ++v)
      if (pos[v] > pos[spine]) --pos[v];
  }
  return out;
}

SimplexFrame gradient_simplex_proframe(const SimplexProframe &p) {
  if (static_cast<int>(p.collapse_at.size()) != p.n)
    throw ValidationError("simplex proframe: wrong tower height");
  SimplexFrame out;
  out.m = p.m;
  out.n = p.n;
  out.labels.assign(p.m, 0);
  // Classes of original vertices, as right endpoints; collapsing index k
  // merges classes k and k+1 and labels the original spine vector between
  // their representatives.
  std::vector<int> ends(p.m + 1);
  std::iota(ends.begin(), ends.end(), 0);
  for (int k = 0; k < p.n; ++k) {
    int level = p.n - k;
    int at = p.collapse_at[k];
    if (at < 0) continue;
    if (at + 1 >= static_cast<int>(ends.size()))
      throw ValidationError("simplex proframe: collapse index out of range");
    out.labels[ends[at]] = level;
    ends.erase(ends.begin() + at);
  }
  if (ends.size() != 1)
    throw ValidationError("simplex proframe: tower does not end at the point");
  check_frame(out);
  return out;
}

// ---------------------------------------------------------------------------
// Framed complexes.

bool FramedComplex::has_edge(int u, int v) const {
  return edges.count({u, v}) || edges.count({v, u});
}

std::pair<int, int> FramedComplex::directed(int u, int v) const {
  if (edges.count({u, v})) return {u, v};
  if (edges.count({v, u})) return {v, u};
  throw ValidationError("complex: no edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
}

int FramedComplex::label(int u, int v) const { return edges.at(directed(u, v)); }

std::vector<int> FramedComplex::simplex_order(const std::vector<int> &simplex) const {
  std::vector<int> out = simplex;
  std::map<int, int> indeg;
  for (int v : simplex) indeg[v] = 0;
  for (int u : simplex)
    for (int v : simplex) {
      if (u >= v) continue;
      auto d = directed(u, v);
      ++indeg[d.second];
    }
  std::sort(out.begin(), out.end(),
            [&](int a, int b) { return indeg[a] != indeg[b] ? indeg[a] < indeg[b] : a < b; });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (indeg[out[i]] != static_cast<int>(i))
      throw ValidationError("complex: directions on simplex " + vec_str(simplex) +
                            " are not a total order");
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (directed(out[i], out[j]) != std::make_pair(out[i], out[j]))
        throw ValidationError("complex: directions on simplex " + vec_str(simplex) +
                              " are not transitive");
  }
  return out;
}

FramedComplex make_complex(int ambient, std::vector<int> vertices,
                           std::set<std::vector<int>> simplices,
                           std::map<std::pair<int, int>, int> edges) {
  FramedComplex c;
  c.ambient = ambient;
  c.vertices = std::move(vertices);
  std::sort(c.vertices.begin(), c.vertices.end());
  if (std::adjacent_find(c.vertices.begin(), c.vertices.end()) != c.vertices.end())
    throw ValidationError("complex: duplicate vertex");
  auto known = [&](int v) {
    return std::binary_search(c.vertices.begin(), c.vertices.end(), v);
  };

  for (int v : c.vertices) c.simplices.insert({v});
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("complex: degenerate simplex " + vec_str(s));
    for (int v : s)
      if (!known(v)) throw ValidationError("complex: simplex on unknown vertex " + vec_str(s));
    // Downward closure.
    const std::size_t k = s.size();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      c.simplices.insert(face);
    }
  }
  c.edges = std::move(edges);
  for (const auto &[e, lbl] : c.edges) {
    std::vector<int> s{std::min(e.first, e.second), std::max(e.first, e.second)};
    if (!c.simplices.count(s))
      throw ValidationError("complex: edge on non-simplex " + vec_str(s));
    if (c.edges.count({e.second, e.first}))
      throw ValidationError("complex: edge " + vec_str(s) + " directed both ways");
    (void)lbl;
  }
  for (const auto &s : c.simplices)
    if (s.size() == 2 && !c.has_edge(s[0], s[1]))
      throw ValidationError("complex: 1-simplex " + vec_str(s) + " has no direction/label");
  return c;
}

std::vector<std::string> validate_framing(const FramedComplex &c) {
  std::vector<std::string> report;
  for (const auto &[e, lbl] : c.edges)
    if (lbl < 1 || (c.ambient > 0 && lbl > c.ambient))
      report.push_back("label " + std::to_string(lbl) + " out of range on edge (" +
                       std::to_string(e.first) + " -> " + std::to_string(e.second) + ")");
  for (const auto &s : c.simplices) {
    if (s.size() < 2) continue;
    std::vector<int> order;
    try {
      order = c.simplex_order(s);
    } catch (const ValidationError &err) {
      report.push_back(err.what());
      continue;
    }
    std::set<int> spine;
    bool spine_ok = true;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      int l = c.label(order[i], order[i + 1]);
      if (!spine.insert(l).second) {
        report.push_back("simplex " + vec_str(s) + ": spine labels are not distinct");
        spine_ok = false;
      }
    }
    if (!spine_ok || s.size() < 3) continue;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 2; j < order.size(); ++j) {
        int expect = c.label(order[i], order[i + 1]);
        for (std::size_t k = i + 1; k < j; ++k)
          expect = std::min(expect, c.label(order[k], order[k + 1]));
        if (c.label(order[i], order[j]) != expect)
          report.push_back("simplex " + vec_str(s) + ": edge (" + std::to_string(order[i]) +
                           "," + std::to_string(order[j]) + ") has label " +
                           std::to_string(c.label(order[i], order[j])) + ", restriction gives " +
                           std::to_string(expect));
      }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Iterated projection.

namespace {

// Sections and spacers of a level map over one base simplex, plus the linear
// order on sections. Used both for the flatness check and to orient
// entrance-path complexes.
struct FiberComplex {
  std::vector<std::vector<int>> sections;              // ordered tuples
  std::vector<std::vector<int>> spacers;               // ordered tuples
  std::map<std::vector<int>, int> section_rank;        // position in the order
  bool linear = false;
  std::string problem;
};

// The image tuple of an ordered simplex under a vertex map.
std::vector<int> image_tuple(const std::vector<int> &ordered, const std::map<int, int> &f) {
  std::vector<int> out;
  for (int v : ordered) {
    int w = f.at(v);
    if (out.empty() || out.back() != w) out.push_back(w);
  }
  return out;
}

// Boundary sections of a spacer: drop the later (resp. earlier) vertex of
// the collapsed adjacent pair.
std::pair<std::vector<int>, std::vector<int>> spacer_boundaries(const std::vector<int> &ordered,
                                                                const std::map<int, int> &f) {
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i)
    if (f.at(ordered[i]) == f.at(ordered[i + 1])) {
      std::vector<int> lower = ordered, upper = ordered;
      lower.erase(lower.begin() + i + 1);
      upper.erase(upper.begin() + i);
      return {lower, upper};
    }
  throw ValidationError("spacer has no collapsed pair");
}

FiberComplex fiber_complex(const FramedComplex &upper, const std::map<int, int> &f,
                           const std::vector<int> &base_ordered) {
  FiberComplex out;
  const std::size_t k = base_ordered.size();
  for (const auto &s : upper.simplices) {
    std::vector<int> ordered = upper.simplex_order(s);
    std::vector<int> img = image_tuple(ordered, f);
    if (img != base_ordered) continue;
    if (s.size() == k)
      out.sections.push_back(ordered);
    else if (s.size() == k + 1)
      out.spacers.push_back(ordered);
  }
  // Walk the path from the unique section that is no spacer's upper
  // boundary.
  std::map<std::vector<int>, std::vector<int>> next;  // lower -> upper
  std::set<std::vector<int>> uppers;
  for (const auto &sp : out.spacers) {
    auto [lo, hi] = spacer_boundaries(sp, f);
    if (next.count(lo)) {
      out.problem = "fiber over " + vec_str(base_ordered) + " branches";
      return out;
    }
    next[lo] = hi;
    uppers.insert(hi);
  }
  std::vector<std::vector<int>> start;
  for (const auto &s : out.sections)
    if (!uppers.count(s)) start.push_back(s);
  if (out.sections.empty() || start.size() != 1) {
    out.problem = "fiber over " + vec_str(base_ordered) + " is not a linear order";
    return out;
  }
  std::vector<int> cur = start[0];
  int rank = 0;
  while (true) {
    out.section_rank[cur] = rank++;
    auto it = next.find(cur);
    if (it == next.end()) break;
    cur = it->second;
  }
  if (out.section_rank.size() != out.sections.size() ||
      out.spacers.size() + 1 != out.sections.size()) {
    out.problem = "fiber over " + vec_str(base_ordered) + " is not a linear order";
    return out;
  }
  out.linear = true;
  return out;
}

}  // namespace

FlatIntegration integrate_flat(const FramedComplex &c) {
  FlatIntegration out;
  out.problems = validate_framing(c);
  if (!out.problems.empty()) return out;

  int n = 0;
  for (const auto &[e, lbl] : c.edges) n = std::max(n, lbl);
  n = std::max(n, c.ambient);

  std::vector<FramedComplex> levels(n + 1);
  std::vector<std::map<int, int>> proj(n);
  levels[n] = c;
  levels[n].ambient = n;

  for (int i = n; i >= 1; --i) {
    const FramedComplex &K = levels[i];
    // Classes: components of the i-labeled edge graph (level 1 collapses
    // everything: K_0 is the point).
    std::map<int, int> cls;
    {
      std::map<int, int> parent;
      std::function<int(int)> find = [&](int v) {
        return parent[v] == v ? v : parent[v] = find(parent[v]);
      };
      for (int v : K.vertices) parent[v] = v;
      for (const auto &[e, lbl] : K.edges)
        if (lbl == i || i == 1) parent[find(e.first)] = find(e.second);
      std::map<int, int> rep_index;
      for (int v : K.vertices) rep_index[find(v)];  // touch reps in sorted order
      int next_id = 0;
      for (auto &[rep, idx] : rep_index) idx = next_id++;
      for (int v : K.vertices) cls[v] = rep_index[find(v)];
    }
    proj[i - 1] = cls;

    // Per-simplex checks: the quotient must collapse at most the i-labeled
    // spine vector.
    bool bad = false;
    for (const auto &s : K.simplices) {
      if (s.size() < 2) continue;
      std::vector<int> ordered = K.simplex_order(s);
      std::vector<int> img = image_tuple(ordered, cls);
      std::set<int> distinct(img.begin(), img.end());
      if (distinct.size() != img.size()) {
        out.problems.push_back("level " + std::to_string(i) + ": order on the image of " +
                               vec_str(s) + " is ill-defined");
        bad = true;
        continue;
      }
      if (i > 1) {
        if (img.size() + 1 < ordered.size()) {
          out.problems.push_back("level " + std::to_string(i) + ": simplex " + vec_str(s) +
                                 " collapses by more than one dimension");
          bad = true;
        } else if (img.size() + 1 == ordered.size()) {
          // Exactly one adjacent pair merged; it must be the i-labeled
          // spine vector.
          for (std::size_t j = 0; j + 1 < ordered.size(); ++j)
            if (cls.at(ordered[j]) == cls.at(ordered[j + 1]) &&
                K.label(ordered[j], ordered[j + 1]) != i) {
              out.problems.push_back("level " + std::to_string(i) + ": simplex " + vec_str(s) +
                                     " collapses a spine vector not labeled " +
                                     std::to_string(i));
              bad = true;
            }
        }
      }
    }
    if (bad) return out;

    // Build the quotient complex.
    FramedComplex Q;
    Q.ambient = i - 1;
    std::set<int> verts;
    for (const auto &[v, w] : cls) verts.insert(w);
    Q.vertices.assign(verts.begin(), verts.end());
    for (const auto &s : K.simplices) {
      std::vector<int> img;
      for (int v : s) img.push_back(cls.at(v));
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      Q.simplices.insert(img);
    }
    for (const auto &[e, lbl] : K.edges) {
      int u = cls.at(e.first), v = cls.at(e.second);
      if (u == v) continue;
      auto it = Q.edges.find({u, v});
      auto rev = Q.edges.find({v, u});
      if (rev != Q.edges.end()) {
        out.problems.push_back("level " + std::to_string(i) + ": image edge {" +
                               std::to_string(u) + "," + std::to_string(v) +
                               "} inherits both directions");
        return out;
      }
      if (it == Q.edges.end())
        Q.edges[{u, v}] = lbl;
      else if (it->second != lbl) {
        out.problems.push_back("level " + std::to_string(i) + ": image edge (" +
                               std::to_string(u) + " -> " + std::to_string(v) +
                               ") inherits labels " + std::to_string(it->second) + " and " +
                               std::to_string(lbl));
        return out;
      }
    }
    auto rep = validate_framing(Q);
    if (!rep.empty()) {
      for (auto &r : rep) out.problems.push_back("level " + std::to_string(i - 1) + ": " + r);
      return out;
    }
    levels[i - 1] = std::move(Q);
  }

  if (levels[0].vertices.size() != 1) {
    out.problems.push_back("level 0 is not the point");
    return out;
  }

  // Flat proframing conditions: linear fibers, endpoint-preserving
  // transitions, for every base simplex of every level.
  for (int i = n; i >= 1; --i) {
    const FramedComplex &K = levels[i];
    const FramedComplex &B = levels[i - 1];
    std::map<std::vector<int>, FiberComplex> fibers;
    for (const auto &z : B.simplices) {
      auto fc = fiber_complex(K, proj[i - 1], B.simplex_order(z));
      if (!fc.linear) {
        out.problems.push_back("level " + std::to_string(i) + ": " + fc.problem);
        return out;
      }
      fibers[B.simplex_order(z)] = std::move(fc);
    }
    // Transitions along facets preserve bottom and top.
    for (const auto &z : B.simplices) {
      if (z.size() < 2) continue;
      std::vector<int> zo = B.simplex_order(z);
      const FiberComplex &fz = fibers.at(zo);
      auto bottom = std::find_if(fz.section_rank.begin(), fz.section_rank.end(),
                                 [](const auto &p) { return p.second == 0; });
      auto top = std::find_if(fz.section_rank.begin(), fz.section_rank.end(), [&](const auto &p) {
        return p.second == static_cast<int>(fz.sections.size()) - 1;
      });
      for (std::size_t drop = 0; drop < zo.size(); ++drop) {
        std::vector<int> wo = zo;
        wo.erase(wo.begin() + drop);
        const FiberComplex &fw = fibers.at(wo);
        auto restrict_tuple = [&](const std::vector<int> &sec) {
          std::vector<int> r;
          for (int v : sec)
            if (proj[i - 1].at(v) != zo[drop]) r.push_back(v);
          return r;
        };
        if (fw.section_rank.at(restrict_tuple(bottom->first)) != 0 ||
            fw.section_rank.at(restrict_tuple(top->first)) !=
                static_cast<int>(fw.sections.size()) - 1) {
          out.problems.push_back("level " + std::to_string(i) + ": fiber transition over " +
                                 vec_str(zo) + " is not endpoint preserving");
          return out;
        }
      }
    }
  }

  out.flat = true;
  out.tower.complexes = std::move(levels);
  out.tower.proj = std::move(proj);
  return out;
}

// ---------------------------------------------------------------------------
// Entrance-path cell posets.

ProframedTower entrance_tower(const ProframedTower &simplicial) {
  const int n = simplicial.depth();
  ProframedTower out;
  out.complexes.resize(n + 1);
  out.proj.resize(n);
  out.cell_posets.resize(n + 1);

  // Element ids per level: index of the simplex in the sorted family.
  std::vector<std::vector<std::vector<int>>> elems(n + 1);
  std::vector<std::map<std::vector<int>, int>> index(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (const auto &s : simplicial.complexes[i].simplices) elems[i].push_back(s);
    std::sort(elems[i].begin(), elems[i].end());
    for (std::size_t k = 0; k < elems[i].size(); ++k) index[i][elems[i][k]] = static_cast<int>(k);
  }

  // Posets: reverse inclusion; covers are codimension-1 inclusions.
  for (int i = 0; i <= n; ++i) {
    std::vector<int> ids(elems[i].size());
    std::iota(ids.begin(), ids.end(), 0);
    std::set<std::pair<int, int>> covers;
    for (const auto &s : elems[i]) {
      if (s.size() < 2) continue;
      for (std::size_t d = 0; d < s.size(); ++d) {
        std::vector<int> face = s;
        face.erase(face.begin() + d);
        covers.insert({index[i].at(s), index[i].at(face)});
      }
    }
    out.cell_posets[i] = Poset(ids, covers);
  }
  for (int i = 1; i <= n; ++i)
    for (const auto &s : elems[i]) {
      std::vector<int> img;
      for (int v : s) img.push_back(simplicial.proj[i - 1].at(v));
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      out.proj[i - 1][index[i].at(s)] = index[i - 1].at(img);
    }

  // Complexes: nerves, with directions from fiber orders within fibers and
  // inherited from below across fibers; labels are the collapse levels.
  // Fiber order of sections/spacers over each base simplex.
  std::vector<std::map<int, std::pair<int, int>>> fiber_pos(n + 1);  // elem -> (rank*2 parity)
  for (int i = 1; i <= n; ++i) {
    for (const auto &z : simplicial.complexes[i - 1].simplices) {
      auto zo = simplicial.complexes[i - 1].simplex_order(z);
      FiberComplex fc = fiber_complex(simplicial.complexes[i], simplicial.proj[i - 1], zo);
      if (!fc.linear) throw ValidationError("entrance tower: " + fc.problem);
      for (const auto &sec : fc.sections) {
        std::vector<int> s = sec;
        std::sort(s.begin(), s.end());
        fiber_pos[i][index[i].at(s)] = {2 * fc.section_rank.at(sec), 0};
      }
      for (const auto &sp : fc.spacers) {
        auto [lo, hi] = spacer_boundaries(sp, simplicial.proj[i - 1]);
        std::vector<int> s = sp;
        std::sort(s.begin(), s.end());
        fiber_pos[i][index[i].at(s)] = {2 * fc.section_rank.at(lo) + 1, 0};
      }
    }
  }

  std::function<std::pair<int, int>(int, int, int)> dir_label = [&](int i, int a,
                                                                    int b) -> std::pair<int, int> {
    // Returns (tail, label-level); a,b comparable distinct elements of level i.
    int pa = i > 0 ? out.proj[i - 1].at(a) : 0;
    int pb = i > 0 ? out.proj[i - 1].at(b) : 0;
    if (i == 0) throw ValidationError("entrance tower: direction at level 0");
    if (pa == pb) {
      int ra = fiber_pos[i].at(a).first, rb = fiber_pos[i].at(b).first;
      return {ra < rb ? a : b, i};
    }
    auto [tail, lbl] = dir_label(i - 1, pa, pb);
    return {tail == pa ? a : b, lbl};
  };

  for (int i = 0; i <= n; ++i) {
    FramedComplex &C = out.complexes[i];
    C.ambient = i;
    auto chains = nerve(out.cell_posets[i]);
    for (int e : out.cell_posets[i].elements()) C.vertices.push_back(e);
    for (const auto &per_dim : chains)
      for (auto chain : per_dim) {
        std::sort(chain.begin(), chain.end());
        C.simplices.insert(chain);
      }
    if (i == 0) continue;
    for (const auto &s : C.simplices) {
      if (s.size() != 2) continue;
      auto [tail, lbl] = dir_label(i, s[0], s[1]);
      int head = tail == s[0] ? s[1] : s[0];
      C.edges[{tail, head}] = lbl;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truss translation kT.

TrussTower truss_translate(const ProframedTower &t) {
  if (!t.has_cells())
    throw ValidationError("truss translation: input carries no cellular posets");
  const int n = t.depth();
  if (t.cell_posets[0].size() != 1)
    throw ValidationError("truss translation: level 0 is not the point");

  std::map<int, int> mu;  // current level cell elements -> tower total ids
  mu[t.cell_posets[0].elements()[0]] = 0;
  Poset cur_base = Poset::point();
  std::vector<Bundle1> levels;

  for (int i = 1; i <= n; ++i) {
    const Poset &cells = t.cell_posets[i];
    const Poset &below = t.cell_posets[i - 1];
    const auto &pr = t.proj[i - 1];
    const FramedComplex &C = t.complexes[i];

    // Fibers with their frame order from directed in-fiber edges.
    std::map<int, std::vector<int>> fiber_elems;  // below elem -> ordered elements
    for (int z : below.elements()) {
      std::vector<int> members;
      for (int x : cells.elements())
        if (pr.at(x) == z) members.push_back(x);
      if (members.empty())
        throw ValidationError("truss translation: empty fiber over " + std::to_string(z));
      // Successor along directed in-fiber edges.
      std::map<int, int> succ;
      std::set<int> heads;
      for (int u : members)
        for (int v : members) {
          if (u >= v || !C.has_edge(u, v)) continue;
          auto d = C.directed(u, v);
          if (succ.count(d.first))
            throw ValidationError("truss translation: fiber over " + std::to_string(z) +
                                  " branches");
          succ[d.first] = d.second;
          heads.insert(d.second);
        }
      std::vector<int> ordered;
      for (int u : members)
        if (!heads.count(u)) ordered.push_back(u);
      if (ordered.size() != 1 && members.size() > 1)
        throw ValidationError("truss translation: fiber over " + std::to_string(z) +
                              " is not a chain of 1-simplices");
      if (members.size() == 1) ordered = {members[0]};
      while (succ.count(ordered.back())) ordered.push_back(succ.at(ordered.back()));
      if (ordered.size() != members.size())
        throw ValidationError("truss translation: fiber over " + std::to_string(z) +
                              " is not totally ordered");
      fiber_elems[z] = std::move(ordered);
    }

    auto dim_of = [&](int x) {
      int same_fiber_above = 0;
      for (int y : cells.up_closure(x))
        if (pr.at(y) == pr.at(x)) ++same_fiber_above;
      return same_fiber_above > 1 ? 1 : 0;  // spacer cell -> regular
    };

    std::map<int, Truss1> fibers;
    for (int z : below.elements()) {
      std::string w;
      for (int x : fiber_elems.at(z)) w += dim_of(x) ? 'R' : 'S';
      fibers[mu.at(z)] = Truss1::make(w);  // throws when not alternating
    }
    std::map<std::pair<int, int>, Bordism1> bordisms;
    for (const auto &[z, w] : below.covers()) {
      const auto &dom = fiber_elems.at(z);
      const auto &cod = fiber_elems.at(w);
      std::vector<std::vector<bool>> rel(dom.size(), std::vector<bool>(cod.size()));
      for (std::size_t a = 0; a < dom.size(); ++a)
        for (std::size_t b = 0; b < cod.size(); ++b) rel[a][b] = cells.leq(dom[a], cod[b]);
      bordisms.emplace(std::make_pair(mu.at(z), mu.at(w)),
                       Bordism1::make(fibers.at(mu.at(z)), fibers.at(mu.at(w)), std::move(rel)));
    }
    Bundle1 nb = Bundle1::totalize(cur_base, std::move(fibers), std::move(bordisms));

    std::map<int, int> mu_next;
    for (int z : below.elements()) {
      const auto &ordered = fiber_elems.at(z);
      for (std::size_t p = 0; p < ordered.size(); ++p)
        mu_next[ordered[p]] = nb.total_id(mu.at(z), static_cast<int>(p));
    }
    // The face order of the cell poset must agree with the totalization.
    std::set<std::pair<int, int>> mapped;
    for (const auto &[a, b] : cells.covers()) mapped.insert({mu_next.at(a), mu_next.at(b)});
    if (mapped != nb.total_poset().covers())
      throw ValidationError("truss translation: cell poset disagrees with the total poset at "
                            "level " +
                            std::to_string(i));
    mu = std::move(mu_next);
    cur_base = nb.total_poset();
    levels.push_back(std::move(nb));
  }
  TrussTower out = TrussTower::make(Poset::point(), std::move(levels));
  if (!out.closed()) throw ValidationError("truss translation: result is not closed");
  return out;
}

// ---------------------------------------------------------------------------
// Framed complex translation kX.

ComplexTranslation complex_translate(const TrussTower &t) {
  if (!t.closed()) throw ValidationError("complex translation: tower is not closed");
  if (t.base().size() != 1)
    throw ValidationError("complex translation: tower base is not the point");
  const int n = t.depth();

  ComplexTranslation out;
  out.tower.complexes.resize(n + 1);
  out.tower.proj.resize(n);
  out.tower.cell_posets.resize(n + 1);
  out.tower.cell_posets[0] = t.base();

  for (int i = 1; i <= n; ++i) {
    out.tower.cell_posets[i] = t.level(i).total_poset();
    for (int e : t.level(i).total_poset().elements())
      out.tower.proj[i - 1][e] = t.level(i).base_of(e);
  }

  std::function<std::pair<int, int>(int, int, int)> dir_label =
      [&](int i, int a, int b) -> std::pair<int, int> {
    const Bundle1 &l = t.level(i);
    if (l.base_of(a) == l.base_of(b))
      return {l.pos_of(a) < l.pos_of(b) ? a : b, i};
    auto [tail, lbl] = dir_label(i - 1, l.base_of(a), l.base_of(b));
    return {tail == l.base_of(a) ? a : b, lbl};
  };

  for (int i = 0; i <= n; ++i) {
    FramedComplex &C = out.tower.complexes[i];
    C.ambient = i;
    const Poset &p = out.tower.cell_posets[i];
    C.vertices = p.elements();
    for (const auto &per_dim : nerve(p))
      for (auto chain : per_dim) {
        std::sort(chain.begin(), chain.end());
        C.simplices.insert(chain);
      }
    if (i == 0) continue;
    for (const auto &s : C.simplices) {
      if (s.size() != 2) continue;
      auto [tail, lbl] = dir_label(i, s[0], s[1]);
      int head = tail == s[0] ? s[1] : s[0];
      C.edges[{tail, head}] = lbl;
    }
  }
  out.complex = out.tower.complexes[n];
  return out;
}

// ---------------------------------------------------------------------------
// Boundary shelling.

namespace {

// Facet chains of the boundary of a block, ordered by the inductive
// bottom / sides / top construction. Chains ascend in the face order.
std::vector<std::vector<int>> boundary_facets(const TrussTower &t) {
  const int n = t.depth();
  if (n == 0) return {};
  const Bundle1 &top = t.level(n);
  int bottom = *t.top_poset().initial_element();
  int below = top.base_of(bottom);

  if (top.fiber(below).length() == 1) {
    // All fibers are singular points; the level is an isomorphism of posets.
    auto sub = boundary_facets(t.lower_truncate(n - 1));
    std::vector<std::vector<int>> out;
    for (const auto &chain : sub) {
      std::vector<int> lifted;
      for (int x : chain) lifted.push_back(top.total_id(x, 0));
      out.push_back(std::move(lifted));
    }
    return out;
  }

  std::vector<std::vector<int>> K = boundary_facets(t.lower_truncate(n - 1));
  std::vector<std::vector<int>> Kbot;
  if (K.empty()) {
    Kbot.push_back({below});
  } else {
    for (const auto &k : K) {
      std::vector<int> kb{below};
      kb.insert(kb.end(), k.begin(), k.end());
      Kbot.push_back(std::move(kb));
    }
  }

  std::vector<std::vector<int>> out;
  for (const auto &kb : Kbot) {
    std::vector<int> facet;
    for (int x : kb) facet.push_back(top.total_id(x, 0));
    out.push_back(std::move(facet));
  }
  for (const auto &k : K) {
    // Spacers over the chain, in scaffold order.
    std::map<int, int> assign;
    for (std::size_t j = 0; j < k.size(); ++j) assign[static_cast<int>(j)] = k[j];
    PosetMap g(Poset::chain(static_cast<int>(k.size())), top.base(), std::move(assign));
    auto [pulled, tot] = top.pullback(g);
    for (const auto &swb : spacers_with_boundaries(pulled)) {
      std::vector<int> facet;
      const int j = swb.spacer.transition;
      for (int slot = 0; slot < static_cast<int>(swb.spacer.vertices.size()); ++slot) {
        int base_idx = slot <= j ? slot : slot - 1;
        facet.push_back(top.total_id(k[base_idx], swb.spacer.vertices[slot]));
      }
      out.push_back(std::move(facet));
    }
  }
  for (const auto &kb : Kbot) {
    std::vector<int> facet;
    for (int x : kb) facet.push_back(top.total_id(x, top.fiber(x).length() - 1));
    out.push_back(std::move(facet));
  }
  return out;
}

}  // namespace

ShellingReport shell_boundary(const TrussTower &t) {
  ShellingReport report;
  if (!t.closed()) {
    report.problems.push_back("tower is not closed");
    return report;
  }
  auto init = t.top_poset().initial_element();
  if (!init) {
    report.problems.push_back("tower has no initial element (not a block)");
    return report;
  }

  report.facets = boundary_facets(t);
  Poset boundary = t.top_poset().induced(t.top_poset().strict_up_closure(*init));
  report.boundary_euler = euler_characteristic(boundary);
  if (report.facets.empty()) {
    report.ok = boundary.empty();
    if (!report.ok) report.problems.push_back("no facets found for a nonempty boundary");
    return report;
  }

  // Each listed facet must be a strictly increasing chain avoiding the
  // initial element.
  const std::size_t s = report.facets[0].size();
  report.facet_dimension = static_cast<int>(s) - 1;
  std::set<std::vector<int>> facet_sets;
  for (const auto &f : report.facets) {
    if (f.size() != s) report.problems.push_back("facets of different dimensions (not pure)");
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (!boundary.lt(f[i], f[i + 1]))
        report.problems.push_back("facet " + vec_str(f) + " is not a chain");
    std::vector<int> sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (!facet_sets.insert(sorted).second)
      report.problems.push_back("facet " + vec_str(f) + " listed twice");
  }

  // Purity and completeness against the nerve.
  auto chains = nerve(boundary);
  if (chains.size() != s)
    report.problems.push_back("boundary has chains of length != facet length");
  for (std::size_t d = 0; d < chains.size(); ++d)
    for (const auto &chain : chains[d]) {
      std::vector<int> sorted = chain;
      std::sort(sorted.begin(), sorted.end());
      bool inside = false;
      for (const auto &f : facet_sets)
        if (std::includes(f.begin(), f.end(), sorted.begin(), sorted.end())) inside = true;
      if (!inside) {
        report.problems.push_back("chain " + vec_str(chain) + " is not below any facet");
        break;
      }
    }

  // Shelling condition: prefix intersections pure of codimension 1. For a
  // 0-dimensional boundary the intersections are the empty complex and the
  // condition is vacuous.
  for (std::size_t k = 1; s > 1 && k < report.facets.size(); ++k) {
    std::vector<int> fk = report.facets[k];
    std::sort(fk.begin(), fk.end());
    std::vector<std::vector<int>> pieces;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<int> fi = report.facets[i];
      std::sort(fi.begin(), fi.end());
      std::vector<int> inter;
      std::set_intersection(fi.begin(), fi.end(), fk.begin(), fk.end(),
                            std::back_inserter(inter));
      if (!inter.empty()) pieces.push_back(std::move(inter));
    }
    if (pieces.empty()) {
      report.problems.push_back("facet " + std::to_string(k) +
                                " meets no earlier facet (shelling fails)");
      continue;
    }
    for (const auto &p : pieces) {
      bool maximal = true;
      for (const auto &q : pieces)
        if (p != q && std::includes(q.begin(), q.end(), p.begin(), p.end())) maximal = false;
      if (maximal && p.size() != s - 1)
        report.problems.push_back("prefix intersection at facet " + std::to_string(k) +
                                  " is not pure of codimension 1");
    }
  }

  // Thinness: every non-refinable length-2 chain has exactly one diamond
  // completion.
  for (const auto &[x, y] : boundary.covers())
    for (const auto &[y2, z] : boundary.covers()) {
      if (y2 != y) continue;
      int completions = 0;
      for (int w : boundary.elements())
        if (w != y && boundary.lt(x, w) && boundary.lt(w, z) &&
            boundary.covers().count({x, w}) && boundary.covers().count({w, z}))
          ++completions;
      if (completions != 1)
        report.problems.push_back("chain " + std::to_string(x) + " < " + std::to_string(y) +
                                  " < " + std::to_string(z) + " has " +
                                  std::to_string(completions) + " diamond completions");
    }

  report.ok = report.problems.empty();
  return report;
}

}  // namespace truss
