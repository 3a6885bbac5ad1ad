// truss1.cpp
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

#include "truss/truss1.hpp"

#include <algorithm>

namespace truss {

std::string to_string(EndpointType t) {
  switch (t) {
    case EndpointType::kClosed: return "closed";
    case EndpointType::kOpen: return "open";
    case EndpointType::kHalfOpenClosed: return "half_open_closed";
    case EndpointType::kHalfClosedOpen: return "half_closed_open";
    case EndpointType::kTrivialClosed: return "trivial_closed";
    case EndpointType::kTrivialOpen: return "trivial_open";
  }
  return "?";
}

Truss1 Truss1::make(const std::string &dim_word) {
  if (dim_word.empty()) throw ValidationError("truss1: empty dim word");
  int first = -1;
  for (std::size_t i = 0; i < dim_word.size(); ++i) {
    int d;
    switch (dim_word[i]) {
      case 'S': d = 0; break;
      case 'R': d = 1; break;
      default:
        throw ValidationError("truss1: bad character '" + std::string(1, dim_word[i]) +
                              "' in dim word \"" + dim_word + "\"");
    }
    if (i == 0) {
      first = d;
    } else if (d == (first ^ (static_cast<int>(i - 1) & 1))) {
      throw ValidationError("truss1: dim word \"" + dim_word + "\" does not alternate at index " +
                            std::to_string(i));
    }
  }
  return Truss1(static_cast<int>(dim_word.size()), first);
}

int Truss1::dim(int i) const {
  if (i < 0 || i >= length_)
    throw ValidationError("truss1: position " + std::to_string(i) + " out of range");
  return first_dim_ ^ (i & 1);
}

std::string Truss1::word() const {
  std::string w;
  for (int i = 0; i < length_; ++i) w += dim(i) == 0 ? 'S' : 'R';
  return w;
}

std::vector<int> Truss1::singulars() const {
  std::vector<int> out;
  for (int i = 0; i < length_; ++i)
    if (dim(i) == 0) out.push_back(i);
  return out;
}

std::vector<int> Truss1::regulars() const {
  std::vector<int> out;
  for (int i = 0; i < length_; ++i)
    if (dim(i) == 1) out.push_back(i);
  return out;
}

EndpointType Truss1::endpoint_type() const {
  const int lo = dim(0), hi = dim(length_ - 1);
  if (length_ == 1) return lo == 0 ? EndpointType::kTrivialClosed : EndpointType::kTrivialOpen;
  if (lo == 0 && hi == 0) return EndpointType::kClosed;
  if (lo == 1 && hi == 1) return EndpointType::kOpen;
  if (lo == 1) return EndpointType::kHalfOpenClosed;
  return EndpointType::kHalfClosedOpen;
}

bool Truss1::closed() const {
  auto t = endpoint_type();
  return t == EndpointType::kClosed || t == EndpointType::kTrivialClosed;
}

bool Truss1::open() const {
  auto t = endpoint_type();
  return t == EndpointType::kOpen || t == EndpointType::kTrivialOpen;
}

bool Truss1::face_leq(int a, int b) const {
  if (a == b) return true;
  // Only adjacent pairs are related, and only regular -> singular.
  return std::abs(a - b) == 1 && dim(a) == 1 && dim(b) == 0;
}

Poset Truss1::face_poset() const {
  std::vector<int> elems(length_);
  for (int i = 0; i < length_; ++i) elems[i] = i;
  std::set<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < length_; ++i) {
    if (dim(i) == 1)
      covers.insert({i, i + 1});
    else
      covers.insert({i + 1, i});
  }
  return Poset(std::move(elems), std::move(covers));
}

Truss1 Truss1::dualize() const { return Truss1(length_, 1 - first_dim_); }

Truss1Map::Truss1Map(Truss1 src, Truss1 tgt, std::vector<int> assign)
    : source(src), target(tgt), assignment(std::move(assign)) {
  std::vector<std::string> bad;
  if (static_cast<int>(assignment.size()) != source.length())
    throw ValidationError("truss1 map: assignment length mismatch");
  for (int i = 0; i < source.length(); ++i)
    if (assignment[i] < 0 || assignment[i] >= target.length())
      bad.push_back("image of " + std::to_string(i) + " out of range");
  if (bad.empty()) {
    for (int i = 0; i + 1 < source.length(); ++i) {
      if (assignment[i] > assignment[i + 1])
        bad.push_back("frame order broken at " + std::to_string(i));
      // Face covers are the adjacent pairs; orientation by dims.
      int a = i, b = i + 1;
      if (source.dim(a) == 0) std::swap(a, b);  // arrow a -> b with a regular
      if (!target.face_leq(assignment[a], assignment[b]))
        bad.push_back("face order broken on cover (" + std::to_string(a) + " -> " +
                      std::to_string(b) + ")");
    }
  }
  if (!bad.empty()) throw ValidationError("truss1 map: not a diposet map", bad);
}

MapClass classify_map(const Truss1Map &f) {
  MapClass c;
  c.singular = c.regular = true;
  for (int i = 0; i < f.source.length(); ++i) {
    if (f.target.dim(f(i)) > f.source.dim(i)) c.singular = false;
    if (f.target.dim(f(i)) < f.source.dim(i)) c.regular = false;
  }
  c.balanced = c.singular && c.regular;
  std::vector<bool> hit(f.target.length(), false);
  c.injective = true;
  for (int i = 0; i < f.source.length(); ++i) {
    if (i + 1 < f.source.length() && f(i) == f(i + 1)) c.injective = false;
    hit[f(i)] = true;
  }
  c.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  // Same endpoint type means equal endpoint dimensions.
  const bool same_type = f.source.dim(0) == f.target.dim(0) &&
                         f.source.dim(f.source.length() - 1) ==
                             f.target.dim(f.target.length() - 1);
  c.face = c.injective && f.source.closed() && f.target.closed() && c.singular;
  c.embedding = c.injective && f.source.open() && f.target.open() && c.regular;
  c.degeneracy = c.surjective && c.singular && same_type;
  c.coarsening = c.surjective && c.regular && same_type;
  return c;
}

}  // namespace truss
