// errors.hpp
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

#ifndef TRUSS_ERRORS_HPP_
#define TRUSS_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace truss {

// Thrown when a value fails a structural invariant or a precondition.
// `details` keeps one entry per violated clause, each with a minimal witness,
// so callers can surface the full report rather than just the first failure.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string &what) : std::runtime_error(what) {}
  ValidationError(const std::string &what, std::vector<std::string> details)
      : std::runtime_error(what + detail_suffix(details)), details_(std::move(details)) {}

  const std::vector<std::string> &details() const { return details_; }

 private:
  static std::string detail_suffix(const std::vector<std::string> &details) {
    std::string s;
    for (const auto &d : details) {
      s += "\n  - ";
      s += d;
    }
    return s;
  }

  std::vector<std::string> details_;
};

}  // namespace truss

#endif  // TRUSS_ERRORS_HPP_
