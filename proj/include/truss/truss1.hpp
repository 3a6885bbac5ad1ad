// truss1.hpp
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
// Linear 1-trusses and their maps. A 1-truss is canonically its dim word
// over {S,R} ("SRS" etc.); face order and frame order are derived from it.

#ifndef TRUSS_TRUSS1_HPP_
#define TRUSS_TRUSS1_HPP_

#include <string>
#include <vector>

#include "truss/errors.hpp"
#include "truss/poset.hpp"

namespace truss {

enum class EndpointType {
  kClosed,
  kOpen,
  kHalfOpenClosed,  // lower endpoint regular, upper singular
  kHalfClosedOpen,  // lower endpoint singular, upper regular
  kTrivialClosed,   // "S"
  kTrivialOpen,     // "R"
};

std::string to_string(EndpointType t);

// Index i (0-based) is the frame-order position; dim(i) alternates starting
// from first_dim. Face-order covers are the adjacent pairs, oriented regular
// -> singular. Immutable.
class Truss1 {
 public:
  Truss1() = default;
  // Word over {S,R}; alternation is enforced here (non-alternating words are
  // rejected, the endpoint classification is exhaustive only with it).
  static Truss1 make(const std::string &dim_word);

  int length() const { return length_; }
  // 0 = singular, 1 = regular.
  int dim(int i) const;
  bool singular(int i) const { return dim(i) == 0; }
  bool regular(int i) const { return dim(i) == 1; }
  std::string word() const;

  // Frame-order positions of the singular / regular elements, ascending.
  std::vector<int> singulars() const;
  std::vector<int> regulars() const;

  EndpointType endpoint_type() const;
  bool closed() const;  // both endpoints singular (incl. "S")
  bool open() const;    // both endpoints regular (incl. "R")

  // Face order on positions: adjacent pairs with arrow regular -> singular.
  bool face_leq(int a, int b) const;
  // The face poset, elements 0..length-1 with covering arrows as above.
  Poset face_poset() const;

  Truss1 dualize() const;

  friend bool operator==(const Truss1 &a, const Truss1 &b) {
    return a.length_ == b.length_ && a.first_dim_ == b.first_dim_;
  }
  friend bool operator!=(const Truss1 &a, const Truss1 &b) { return !(a == b); }
  friend bool operator<(const Truss1 &a, const Truss1 &b) {
    return a.length_ != b.length_ ? a.length_ < b.length_ : a.first_dim_ < b.first_dim_;
  }

 private:
  Truss1(int length, int first_dim) : length_(length), first_dim_(first_dim) {}

  int length_ = 1;
  int first_dim_ = 0;
};

// A diposet map of 1-trusses: monotone for the frame order and for the face
// order. `assignment[i]` is the image position of i.
struct Truss1Map {
  Truss1Map() = default;
  Truss1Map(Truss1 source, Truss1 target, std::vector<int> assignment);

  int operator()(int i) const { return assignment.at(i); }

  Truss1 source;
  Truss1 target;
  std::vector<int> assignment;
};

struct MapClass {
  bool singular = false;
  bool regular = false;
  bool balanced = false;
  bool injective = false;
  bool surjective = false;
  bool face = false;        // injective, both closed, singular
  bool embedding = false;   // injective, both open, regular
  bool degeneracy = false;  // surjective, singular, same endpoint type
  bool coarsening = false;  // surjective, regular, same endpoint type
};

MapClass classify_map(const Truss1Map &f);

}  // namespace truss

#endif  // TRUSS_TRUSS1_HPP_
