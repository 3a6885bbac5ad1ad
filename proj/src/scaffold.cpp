// scaffold.cpp
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

#include "truss/scaffold.hpp"

#include <algorithm>
#include <functional>

namespace truss {

namespace {

// The same bundle with every fiber frame order reversed. Positions flip to
// len-1-p; relations flip accordingly.
Bundle1 flip_bundle(const Bundle1 &b) {
  std::map<int, Truss1> fibers;
  for (const auto &[x, f] : b.fibers()) {
    std::string w = f.word();
    std::reverse(w.begin(), w.end());
    fibers[x] = Truss1::make(w);
  }
  std::map<std::pair<int, int>, Bordism1> bordisms;
  for (const auto &[cover, r] : b.cover_bordisms()) {
    const int m = r.domain().length(), n = r.codomain().length();
    std::vector<std::vector<bool>> rel(m, std::vector<bool>(n, false));
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < n; ++c) rel[m - 1 - a][n - 1 - c] = r.rel(a, c);
    bordisms.emplace(cover, Bordism1::make(fibers.at(cover.first), fibers.at(cover.second),
                                           std::move(rel)));
  }
  return Bundle1::totalize(b.base(), std::move(fibers), std::move(bordisms));
}

Section flip_section(const Bundle1 &b, const Section &s) {
  auto chain = require_chain(b);
  Section out = s;
  for (std::size_t i = 0; i < chain.size(); ++i)
    out.vertices[i] = b.fiber(chain[i]).length() - 1 - s.vertices[i];
  return out;
}

}  // namespace

std::vector<int> require_chain(const Bundle1 &b) {
  if (!b.base().is_chain()) throw ValidationError("scaffold: base is not a chain");
  return b.base().chain_order();
}

bool is_section(const Bundle1 &b, const Section &s) {
  auto chain = require_chain(b);
  if (s.vertices.size() != chain.size()) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    int len = b.fiber(chain[i]).length();
    if (s.vertices[i] < 0 || s.vertices[i] >= len) return false;
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!b.cover_bordism(chain[i], chain[i + 1]).rel(s.vertices[i], s.vertices[i + 1]))
      return false;
  return true;
}

bool is_spacer(const Bundle1 &b, const Spacer &s) {
  auto chain = require_chain(b);
  const int m = static_cast<int>(chain.size()) - 1;
  const int j = s.transition;
  if (j < 0 || j > m) return false;
  if (static_cast<int>(s.vertices.size()) != m + 2) return false;
  auto fiber_at = [&](int slot) { return chain[slot <= j ? slot : slot - 1]; };
  for (int k = 0; k <= m + 1; ++k) {
    int len = b.fiber(fiber_at(k)).length();
    if (s.vertices[k] < 0 || s.vertices[k] >= len) return false;
  }
  const Truss1 &fj = b.fiber(chain[j]);
  if (!fj.regular(s.vertices[j]) || !fj.singular(s.vertices[j + 1])) return false;
  if (std::abs(s.vertices[j] - s.vertices[j + 1]) != 1) return false;
  for (int k = 0; k <= m; ++k) {
    int bx = fiber_at(k), by = fiber_at(k + 1);
    if (bx == by) continue;  // the in-fiber arrow, checked above
    if (!b.cover_bordism(bx, by).rel(s.vertices[k], s.vertices[k + 1])) return false;
  }
  return true;
}

int scaffold_norm(const Bundle1 &b, const Section &s) {
  (void)b;
  int norm = 0;
  for (int v : s.vertices) norm += v;
  return norm;
}

double spacer_norm(const Bundle1 &b, const Spacer &s) {
  return (scaffold_norm(b, lower_boundary(b, s)) + scaffold_norm(b, upper_boundary(b, s))) / 2.0;
}

Section bottom_section(const Bundle1 &b) {
  auto chain = require_chain(b);
  return Section{std::vector<int>(chain.size(), 0)};
}

Section top_section(const Bundle1 &b) {
  auto chain = require_chain(b);
  Section s;
  for (int x : chain) s.vertices.push_back(b.fiber(x).length() - 1);
  return s;
}

Section successor(const Bundle1 &b, const Section &s) {
  if (s == top_section(b)) throw ValidationError("scaffold: top section has no successor");
  // Work inside the suspension so every section has a proper transition
  // index; restrict back at the end.
  auto susp = b.suspend_with_ids();
  const Bundle1 &sb = susp.bundle;
  auto chain = require_chain(sb);
  Section k;
  k.vertices.push_back(0);
  k.vertices.insert(k.vertices.end(), s.vertices.begin(), s.vertices.end());
  k.vertices.push_back(0);

  const int len = static_cast<int>(chain.size());
  int j = -1;
  for (int i = 0; i < len; ++i)
    if (sb.fiber(chain[i]).singular(k.vertices[i])) {
      j = i;
      break;
    }
  // The suspension starts regular and ends singular, so 0 < j < len.
  const Bordism1 jump = sb.cover_bordism(chain[j - 1], chain[j]);
  const Truss1 &fprev = sb.fiber(chain[j - 1]);
  const Truss1 &fhere = sb.fiber(chain[j]);
  Section out = k;
  if (k.vertices[j - 1] + 1 < fprev.length() && jump.rel(k.vertices[j - 1] + 1, k.vertices[j])) {
    out.vertices[j - 1] += 1;  // bump the regular below the jump
  } else if (k.vertices[j] + 1 < fhere.length() &&
             jump.rel(k.vertices[j - 1], k.vertices[j] + 1)) {
    out.vertices[j] += 1;  // bump the singular at the jump
  } else {
    throw ValidationError("scaffold: no successor step exists (not a valid section?)");
  }
  out.vertices.erase(out.vertices.begin());
  out.vertices.pop_back();
  return out;
}

Section predecessor(const Bundle1 &b, const Section &s) {
  if (s == bottom_section(b)) throw ValidationError("scaffold: bottom section has no predecessor");
  Bundle1 flipped = flip_bundle(b);
  return flip_section(flipped, successor(flipped, flip_section(flipped, s)));
}

std::vector<Section> sections_in_order(const Bundle1 &b) {
  auto chain = require_chain(b);
  int target = 0;
  for (int x : chain) target += b.fiber(x).length() - 1;
  std::vector<Section> out;
  Section s = bottom_section(b);
  out.push_back(s);
  while (scaffold_norm(b, s) < target) {
    s = successor(b, s);
    out.push_back(s);
  }
  return out;
}

std::vector<Section> sections_brute_force(const Bundle1 &b) {
  auto chain = require_chain(b);
  std::vector<Section> out;
  Section current;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == chain.size()) {
      out.push_back(current);
      return;
    }
    for (int p = 0; p < b.fiber(chain[i]).length(); ++p) {
      if (i > 0 && !b.cover_bordism(chain[i - 1], chain[i]).rel(current.vertices.back(), p))
        continue;
      current.vertices.push_back(p);
      rec(i + 1);
      current.vertices.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const Section &a, const Section &c) {
    return scaffold_norm(b, a) < scaffold_norm(b, c);
  });
  return out;
}

Section lower_boundary(const Bundle1 &b, const Spacer &s) {
  (void)b;
  const int j = s.transition;
  Section out;
  // Keep the frame-lower of the two fiber-j entries.
  const bool regular_below = s.vertices[j] < s.vertices[j + 1];
  for (int k = 0; k < static_cast<int>(s.vertices.size()); ++k) {
    if (k == j && !regular_below) continue;
    if (k == j + 1 && regular_below) continue;
    out.vertices.push_back(s.vertices[k]);
  }
  return out;
}

Section upper_boundary(const Bundle1 &b, const Spacer &s) {
  (void)b;
  const int j = s.transition;
  Section out;
  const bool regular_below = s.vertices[j] < s.vertices[j + 1];
  for (int k = 0; k < static_cast<int>(s.vertices.size()); ++k) {
    if (k == j && regular_below) continue;
    if (k == j + 1 && !regular_below) continue;
    out.vertices.push_back(s.vertices[k]);
  }
  return out;
}

std::vector<SpacerWithBoundaries> spacers_with_boundaries(const Bundle1 &b) {
  auto chain = require_chain(b);
  const int m = static_cast<int>(chain.size()) - 1;
  std::vector<SpacerWithBoundaries> out;
  // One spacer per fiber morphism: a regular element next to a singular one
  // in some fiber, transported outward by the regular/singular functions.
  for (int j = 0; j <= m; ++j) {
    const Truss1 &fj = b.fiber(chain[j]);
    for (int r = 0; r < fj.length(); ++r) {
      if (!fj.regular(r)) continue;
      for (int ds : {-1, 1}) {
        int sg = r + ds;
        if (sg < 0 || sg >= fj.length()) continue;
        Spacer sp;
        sp.transition = j;
        sp.vertices.assign(m + 2, -1);
        sp.vertices[j] = r;
        sp.vertices[j + 1] = sg;
        for (int i = j - 1; i >= 0; --i) {
          auto reg_fn = b.cover_bordism(chain[i], chain[i + 1]).regular_function();
          sp.vertices[i] = reg_fn.at(sp.vertices[i + 1 <= j ? i + 1 : i + 2]);
        }
        for (int i = j + 1; i <= m; ++i) {
          auto sing_fn = b.cover_bordism(chain[i - 1], chain[i]).singular_function();
          sp.vertices[i + 1] = sing_fn.at(sp.vertices[i]);
        }
        out.push_back({sp, lower_boundary(b, sp), upper_boundary(b, sp)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const SpacerWithBoundaries &a,
                                        const SpacerWithBoundaries &c) {
    return spacer_norm(b, a.spacer) < spacer_norm(b, c.spacer);
  });
  return out;
}

FiberCategoryReport fiber_category_report(const Bundle1 &b, const std::vector<int> &base_chain) {
  for (std::size_t i = 0; i + 1 < base_chain.size(); ++i)
    if (!b.base().lt(base_chain[i], base_chain[i + 1]))
      throw ValidationError("scaffold: base_chain is not a strictly increasing chain");

  auto pull = [&](const std::vector<int> &ids) {
    std::map<int, int> assign;
    for (std::size_t i = 0; i < ids.size(); ++i) assign[static_cast<int>(i)] = ids[i];
    PosetMap g(Poset::chain(static_cast<int>(ids.size())), b.base(), std::move(assign));
    return b.pullback(g).first;
  };

  FiberCategoryReport report;
  Bundle1 top = pull(base_chain);
  auto sections = sections_brute_force(top);
  auto spacers = spacers_with_boundaries(top);

  // Total order: section norms form an interval, spacer norms the interior
  // half-integers, and consecutive sections are bounded by exactly one
  // generator.
  report.is_total_order = true;
  for (std::size_t i = 0; i < sections.size(); ++i)
    if (scaffold_norm(top, sections[i]) != static_cast<int>(i)) report.is_total_order = false;
  if (spacers.size() + 1 != sections.size()) report.is_total_order = false;
  if (report.is_total_order) {
    for (std::size_t i = 0; i < spacers.size(); ++i) {
      if (spacers[i].lower != sections[i] || spacers[i].upper != sections[i + 1])
        report.is_total_order = false;
    }
  }

  // Endpoint preservation of every face restriction.
  report.transitions_endpoint_preserving = true;
  const std::size_t n = base_chain.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sub;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        sub.push_back(base_chain[i]);
        idx.push_back(i);
      }
    Bundle1 sb = pull(sub);
    auto restrict = [&](const Section &s) {
      Section out;
      for (std::size_t i : idx) out.vertices.push_back(s.vertices[i]);
      return out;
    };
    if (restrict(bottom_section(top)) != bottom_section(sb) ||
        restrict(top_section(top)) != top_section(sb))
      report.transitions_endpoint_preserving = false;
  }
  return report;
}

}  // namespace truss
