// bordism.cpp
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

#include "truss/bordism.hpp"

#include <algorithm>

namespace truss {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

bool Bordism1::check(const Truss1 &domain, const Truss1 &codomain,
                     const std::vector<std::vector<bool>> &rel,
                     std::vector<std::string> *report) {
  const int m = domain.length(), n = codomain.length();
  if (static_cast<int>(rel.size()) != m)
    throw ValidationError("bordism: matrix has wrong number of rows");
  for (const auto &row : rel)
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("bordism: matrix has wrong number of columns");

  std::vector<std::string> bad;
  bool nonempty = false;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) nonempty |= rel[a][b];
  if (!nonempty) bad.push_back("empty relation");

  // Profunctoriality over the face orders, checked on face covers.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) {
      if (!rel[a][b]) continue;
      for (int a2 = 0; a2 < m; ++a2)
        if (a2 != a && domain.face_leq(a2, a) && !rel[a2][b]) {
          bad.push_back("not profunctorial: rel" + pair_str(a, b) + " but not rel" +
                        pair_str(a2, b));
        }
      for (int b2 = 0; b2 < n; ++b2)
        if (b2 != b && codomain.face_leq(b, b2) && !rel[a][b2]) {
          bad.push_back("not profunctorial: rel" + pair_str(a, b) + " but not rel" +
                        pair_str(a, b2));
        }
    }

  // Bifunctionality.
  for (int a : domain.singulars()) {
    int count = 0;
    for (int b : codomain.singulars()) count += rel[a][b];
    if (count != 1)
      bad.push_back("singular " + std::to_string(a) + " relates to " + std::to_string(count) +
                    " singulars");
  }
  for (int d : codomain.regulars()) {
    int count = 0;
    for (int c : domain.regulars()) count += rel[c][d];
    if (count != 1)
      bad.push_back("regular " + std::to_string(d) + " is related to by " +
                    std::to_string(count) + " regulars");
  }

  // Bimonotonicity over the frame orders.
  for (int x = 0; x < m; ++x)
    for (int x2 = x + 1; x2 < m; ++x2)
      for (int y = 0; y < n; ++y)
        for (int y2 = y + 1; y2 < n; ++y2)
          if (rel[x][y2] && rel[x2][y])
            bad.push_back("transposition at rel" + pair_str(x, y2) + ", rel" + pair_str(x2, y));

  if (report) *report = bad;
  return bad.empty();
}

Bordism1 Bordism1::make(Truss1 domain, Truss1 codomain, std::vector<std::vector<bool>> rel) {
  std::vector<std::string> bad;
  if (!check(domain, codomain, rel, &bad))
    throw ValidationError("bordism: invalid relation", bad);
  Bordism1 r;
  r.domain_ = domain;
  r.codomain_ = codomain;
  r.rel_ = std::move(rel);
  return r;
}

Bordism1 Bordism1::identity(const Truss1 &t) {
  const int n = t.length();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rel[a][b] = t.face_leq(a, b);
  return make(t, t, std::move(rel));
}

Bordism1 Bordism1::from_singular_function(const Truss1 &domain, const Truss1 &codomain,
                                          const std::map<int, int> &f) {
  std::vector<std::string> bad;
  auto sings = domain.singulars();
  if (f.size() != sings.size()) bad.push_back("function not total on singulars");
  int prev = -1;
  for (int a : sings) {
    auto it = f.find(a);
    if (it == f.end()) {
      bad.push_back("no image for singular " + std::to_string(a));
      continue;
    }
    if (it->second < 0 || it->second >= codomain.length() || !codomain.singular(it->second))
      bad.push_back("image of " + std::to_string(a) + " is not singular");
    else if (it->second < prev)
      bad.push_back("not monotone at " + std::to_string(a));
    prev = std::max(prev, it->second);
  }
  if (bad.empty() && domain.singular(0)) {
    if (!codomain.singular(0) || f.at(0) != 0)
      bad.push_back("lower singular endpoint not preserved");
  }
  if (bad.empty() && domain.singular(domain.length() - 1)) {
    if (!codomain.singular(codomain.length() - 1) ||
        f.at(domain.length() - 1) != codomain.length() - 1)
      bad.push_back("upper singular endpoint not preserved");
  }
  if (!bad.empty()) throw ValidationError("bordism: bad singular function", bad);

  const int m = domain.length(), n = codomain.length();
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(n, false));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) {
      if (domain.singular(a)) {
        rel[a][b] = (f.at(a) == b);
      } else {
        bool ok = true;
        if (a + 1 < m && b > f.at(a + 1)) ok = false;
        if (a - 1 >= 0 && b < f.at(a - 1)) ok = false;
        rel[a][b] = ok;
      }
    }
  return make(domain, codomain, std::move(rel));
}

Bordism1 Bordism1::from_regular_function(const Truss1 &domain, const Truss1 &codomain,
                                         const std::map<int, int> &f) {
  std::vector<std::string> bad;
  auto regs = codomain.regulars();
  if (f.size() != regs.size()) bad.push_back("function not total on regulars");
  int prev = -1;
  for (int b : regs) {
    auto it = f.find(b);
    if (it == f.end()) {
      bad.push_back("no image for regular " + std::to_string(b));
      continue;
    }
    if (it->second < 0 || it->second >= domain.length() || !domain.regular(it->second))
      bad.push_back("image of " + std::to_string(b) + " is not regular");
    else if (it->second < prev)
      bad.push_back("not monotone at " + std::to_string(b));
    prev = std::max(prev, it->second);
  }
  if (bad.empty() && codomain.regular(0)) {
    if (!domain.regular(0) || f.at(0) != 0)
      bad.push_back("lower regular endpoint not preserved");
  }
  if (bad.empty() && codomain.regular(codomain.length() - 1)) {
    if (!domain.regular(domain.length() - 1) ||
        f.at(codomain.length() - 1) != domain.length() - 1)
      bad.push_back("upper regular endpoint not preserved");
  }
  if (!bad.empty()) throw ValidationError("bordism: bad regular function", bad);

  const int m = domain.length(), n = codomain.length();
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(n, false));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) {
      if (codomain.regular(b)) {
        rel[a][b] = (f.at(b) == a);
      } else {
        bool ok = true;
        if (b + 1 < n && a > f.at(b + 1)) ok = false;
        if (b - 1 >= 0 && a < f.at(b - 1)) ok = false;
        rel[a][b] = ok;
      }
    }
  return make(domain, codomain, std::move(rel));
}

std::map<int, int> Bordism1::singular_function() const {
  std::map<int, int> f;
  for (int a : domain_.singulars())
    for (int b : codomain_.singulars())
      if (rel_[a][b]) f[a] = b;
  return f;
}

std::map<int, int> Bordism1::regular_function() const {
  std::map<int, int> f;
  for (int b : codomain_.regulars())
    for (int a : domain_.regulars())
      if (rel_[a][b]) f[b] = a;
  return f;
}

Bordism1 Bordism1::dualize() const {
  const int m = domain_.length(), n = codomain_.length();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) rel[b][a] = rel_[a][b];
  return make(codomain_.dualize(), domain_.dualize(), std::move(rel));
}

Bordism1 compose(const Bordism1 &r1, const Bordism1 &r2) {
  if (r1.codomain() != r2.domain())
    throw ValidationError("bordism: compose domain mismatch");
  const int m = r1.domain().length(), k = r1.codomain().length(), n = r2.codomain().length();
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(n, false));
  for (int x = 0; x < m; ++x)
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < k && !rel[x][z]; ++y)
        if (r1.rel(x, y) && r2.rel(y, z)) rel[x][z] = true;
  return Bordism1::make(r1.domain(), r2.codomain(), std::move(rel));
}

}  // namespace truss
