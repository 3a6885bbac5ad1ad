// io.hpp
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
// The textual exchange format (trusses, stratified trusses, framed
// complexes, bordisms), with deterministic printing, plus DOT and geometry
// exports.

#ifndef TRUSS_IO_HPP_
#define TRUSS_IO_HPP_

#include <string>
#include <variant>

#include "truss/bordism.hpp"
#include "truss/framed_complex.hpp"
#include "truss/trussn.hpp"

namespace truss {

// Parse failures carry 1-based line/column positions.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

// A document is a truss (possibly labeled, then a stratified truss), a
// framed complex, or a bare bordism.
struct Document {
  std::variant<TrussTower, FramedComplex, Bordism1> payload;

  bool is_truss() const { return std::holds_alternative<TrussTower>(payload); }
  bool is_complex() const { return std::holds_alternative<FramedComplex>(payload); }
  bool is_bordism() const { return std::holds_alternative<Bordism1>(payload); }
  const TrussTower &truss() const { return std::get<TrussTower>(payload); }
  const FramedComplex &complex() const { return std::get<FramedComplex>(payload); }
  const Bordism1 &bordism() const { return std::get<Bordism1>(payload); }

  friend bool operator==(const Document &, const Document &) = default;
};

Document parse(const std::string &text);
// Deterministic: towers are canonicalized, elements print level-major, then
// by base element id, then frame position.
std::string print(const Document &doc);

std::string render_dot(const TrussTower &t);
std::string render_dot(const Poset &p);

// Inductive coordinates: the element at fiber position i over base point x
// sits at (coords(x), i). Closed towers of depth <= 3 only.
std::string render_geometry(const TrussTower &t);

}  // namespace truss

#endif  // TRUSS_IO_HPP_
