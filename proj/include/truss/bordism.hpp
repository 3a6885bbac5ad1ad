// bordism.hpp
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
// 1-truss bordisms: nonempty boolean profunctors between the face orders of
// two 1-trusses, bifunctional and bimonotone. Stored as dense boolean
// matrices; validation reports every violated clause with a witness pair.

#ifndef TRUSS_BORDISM_HPP_
#define TRUSS_BORDISM_HPP_

#include <map>
#include <string>
#include <vector>

#include "truss/truss1.hpp"

namespace truss {

class Bordism1 {
 public:
  Bordism1() = default;

  // Validates all four clauses (nonempty, profunctorial, bifunctional,
  // bimonotone); throws a ValidationError listing every violation.
  static Bordism1 make(Truss1 domain, Truss1 codomain, std::vector<std::vector<bool>> rel);

  // Like make() but collecting violations instead of throwing.
  static bool check(const Truss1 &domain, const Truss1 &codomain,
                    const std::vector<std::vector<bool>> &rel, std::vector<std::string> *report);

  // The unique bordism with the given singular function. f maps singular
  // positions of the domain to singular positions of the codomain; it must
  // be monotone and preserve singular endpoints.
  static Bordism1 from_singular_function(const Truss1 &domain, const Truss1 &codomain,
                                         const std::map<int, int> &f);
  // Dual determination: f maps regular positions of the codomain to regular
  // positions of the domain, monotone, preserving regular endpoints.
  static Bordism1 from_regular_function(const Truss1 &domain, const Truss1 &codomain,
                                        const std::map<int, int> &f);

  static Bordism1 identity(const Truss1 &t);

  const Truss1 &domain() const { return domain_; }
  const Truss1 &codomain() const { return codomain_; }
  bool rel(int a, int b) const { return rel_[a][b]; }
  const std::vector<std::vector<bool>> &matrix() const { return rel_; }

  // The witnessing functions of bifunctionality: the singular function
  // sing(domain) -> sing(codomain) and the regular function
  // reg(codomain) -> reg(domain).
  std::map<int, int> singular_function() const;
  std::map<int, int> regular_function() const;

  Bordism1 dualize() const;

  friend bool operator==(const Bordism1 &a, const Bordism1 &b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.rel_ == b.rel_;
  }
  friend bool operator!=(const Bordism1 &a, const Bordism1 &b) { return !(a == b); }
  friend bool operator<(const Bordism1 &a, const Bordism1 &b) {
    if (a.domain_ != b.domain_) return a.domain_ < b.domain_;
    if (a.codomain_ != b.codomain_) return a.codomain_ < b.codomain_;
    return a.rel_ < b.rel_;
  }

 private:
  Truss1 domain_;
  Truss1 codomain_;
  std::vector<std::vector<bool>> rel_;
};

// rel(x,z) iff some y has r1.rel(x,y) and r2.rel(y,z); revalidated.
Bordism1 compose(const Bordism1 &r1, const Bordism1 &r2);

}  // namespace truss

#endif  // TRUSS_BORDISM_HPP_
