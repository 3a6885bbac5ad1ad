// io.cpp
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

#include "truss/io.hpp"

#include <charconv>
#include <sstream>

namespace truss {

namespace {

struct Token {
  std::string text;
  int line, column;
};

// Whitespace-separated tokens; '#' starts a comment to end of line.
std::vector<Token> tokenize(const std::string &text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::string cur;
  int cur_line = 1, cur_col = 1;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({cur, cur_line, cur_col});
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '#') {
      flush();
      while (i < text.size() && text[i] != '\n') ++i;
      ++line;
      column = 1;
      continue;
    }
    if (ch == '\n') {
      flush();
      ++line;
      column = 1;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      flush();
      ++column;
      continue;
    }
    if (cur.empty()) {
      cur_line = line;
      cur_col = column;
    }
    cur += ch;
    ++column;
  }
  flush();
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return at_ >= tokens_.size(); }
  const Token &peek() const {
    if (done()) throw ParseError(last_line(), 1, "unexpected end of input");
    return tokens_[at_];
  }
  Token next() {
    Token t = peek();
    ++at_;
    return t;
  }
  void expect(const std::string &word) {
    Token t = next();
    if (t.text != word)
      throw ParseError(t.line, t.column, "expected '" + word + "', got '" + t.text + "'");
  }
  bool accept(const std::string &word) {
    if (!done() && peek().text == word) {
      ++at_;
      return true;
    }
    return false;
  }
  int integer() {
    Token t = next();
    int value = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
      throw ParseError(t.line, t.column, "expected an integer, got '" + t.text + "'");
    return value;
  }
  bool peek_integer() const {
    if (done()) return false;
    const std::string &s = peek().text;
    int value = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && p == s.data() + s.size();
  }

 private:
  int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line + 1; }
  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

Bordism1 parse_bordism_body(Cursor &cur, const Truss1 &dom, const Truss1 &cod) {
  Token kind = cur.next();
  std::vector<std::pair<int, int>> pairs;
  while (cur.peek_integer()) {
    int a = cur.integer();
    int b = cur.integer();
    pairs.push_back({a, b});
  }
  if (kind.text == "pairs") {
    std::vector<std::vector<bool>> rel(dom.length(), std::vector<bool>(cod.length(), false));
    for (auto [a, b] : pairs) {
      if (a < 0 || a >= dom.length() || b < 0 || b >= cod.length())
        throw ParseError(kind.line, kind.column, "pair index out of range");
      rel[a][b] = true;
    }
    return Bordism1::make(dom, cod, std::move(rel));
  }
  std::map<int, int> f(pairs.begin(), pairs.end());
  if (kind.text == "sing") return Bordism1::from_singular_function(dom, cod, f);
  if (kind.text == "reg") return Bordism1::from_regular_function(dom, cod, f);
  throw ParseError(kind.line, kind.column, "expected 'pairs', 'sing' or 'reg'");
}

Document parse_truss(Cursor &cur) {
  cur.expect("v1");
  cur.expect("n");
  int depth = cur.integer();
  if (depth < 0) throw ParseError(1, 1, "negative depth");

  Poset base = Poset::point();
  std::vector<Bundle1> levels;
  for (int i = 1; i <= depth; ++i) {
    cur.expect("level");
    Token lvl = cur.peek();
    if (cur.integer() != i)
      throw ParseError(lvl.line, lvl.column, "levels must appear in order 1..n");
    std::map<int, Truss1> fibers;
    std::vector<std::tuple<int, int, Bordism1>> bordisms;
    while (!cur.done() && (cur.peek().text == "fiber" || cur.peek().text == "bordism")) {
      if (cur.accept("fiber")) {
        Token at = cur.peek();
        int id = cur.integer();
        Token word = cur.next();
        if (!base.contains(id))
          throw ParseError(at.line, at.column,
                           "fiber over unknown base element " + std::to_string(id));
        if (fibers.count(id))
          throw ParseError(at.line, at.column, "duplicate fiber over " + std::to_string(id));
        try {
          fibers[id] = Truss1::make(word.text);
        } catch (const ValidationError &e) {
          throw ParseError(word.line, word.column, e.what());
        }
      } else {
        cur.expect("bordism");
        Token at = cur.peek();
        int src = cur.integer();
        int dst = cur.integer();
        if (!fibers.count(src) || !fibers.count(dst))
          throw ParseError(at.line, at.column, "bordism endpoints must follow their fibers");
        try {
          bordisms.emplace_back(src, dst, parse_bordism_body(cur, fibers.at(src), fibers.at(dst)));
        } catch (const ValidationError &e) {
          throw ParseError(at.line, at.column, e.what());
        }
      }
    }
    std::map<std::pair<int, int>, Bordism1> bmap;
    for (auto &[s, d, r] : bordisms) bmap.emplace(std::make_pair(s, d), std::move(r));
    try {
      levels.push_back(Bundle1::totalize(base, std::move(fibers), std::move(bmap)));
    } catch (const ValidationError &e) {
      throw ParseError(1, 1, std::string("level ") + std::to_string(i) + ": " + e.what());
    }
    base = levels.back().total_poset();
  }

  std::map<int, std::string> labels;
  while (!cur.done() && cur.peek().text == "label") {
    cur.expect("label");
    Token at = cur.peek();
    std::string ref = cur.next().text;
    if (ref.size() >= 2 && ref.front() == '(' && ref.back() == ')')
      ref = ref.substr(1, ref.size() - 2);
    int id = 0;
    auto [p, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), id);
    if (ec != std::errc() || p != ref.data() + ref.size())
      throw ParseError(at.line, at.column, "expected an element reference, got '" + ref + "'");
    labels[id] = cur.next().text;
  }
  if (!cur.done()) {
    Token t = cur.peek();
    throw ParseError(t.line, t.column, "unexpected token '" + t.text + "'");
  }
  try {
    return Document{TrussTower::make(Poset::point(), std::move(levels), std::move(labels))};
  } catch (const ValidationError &e) {
    throw ParseError(1, 1, e.what());
  }
}

Document parse_complex(Cursor &cur) {
  cur.expect("v1");
  std::vector<int> vertices;
  std::set<std::vector<int>> simplices;
  std::map<std::pair<int, int>, int> edges;
  int ambient = 0;
  while (!cur.done()) {
    Token t = cur.next();
    if (t.text == "vertex") {
      vertices.push_back(cur.integer());
    } else if (t.text == "edge") {
      int u = cur.integer();
      int v = cur.integer();
      cur.expect("dir");
      int head = cur.integer();
      cur.expect("label");
      int label = cur.integer();
      if (head != u && head != v)
        throw ParseError(t.line, t.column, "edge direction must name one of its endpoints");
      int tail = head == u ? v : u;
      if (edges.count({tail, head}) || edges.count({head, tail}))
        throw ParseError(t.line, t.column, "duplicate edge");
      edges[{tail, head}] = label;
      ambient = std::max(ambient, label);
      simplices.insert({std::min(u, v), std::max(u, v)});
    } else if (t.text == "simplex") {
      std::vector<int> s;
      while (cur.peek_integer()) s.push_back(cur.integer());
      if (s.empty()) throw ParseError(t.line, t.column, "empty simplex");
      simplices.insert(s);
    } else {
      throw ParseError(t.line, t.column, "unexpected token '" + t.text + "'");
    }
  }
  try {
    return Document{make_complex(ambient, std::move(vertices), std::move(simplices),
                                 std::move(edges))};
  } catch (const ValidationError &e) {
    throw ParseError(1, 1, e.what());
  }
}

Document parse_bordism_doc(Cursor &cur) {
  cur.expect("v1");
  cur.expect("domain");
  Token dw = cur.next();
  cur.expect("codomain");
  Token cw = cur.next();
  try {
    Truss1 dom = Truss1::make(dw.text);
    Truss1 cod = Truss1::make(cw.text);
    return Document{parse_bordism_body(cur, dom, cod)};
  } catch (const ValidationError &e) {
    throw ParseError(dw.line, dw.column, e.what());
  }
}

void print_bordism_body(std::ostringstream &os, const Bordism1 &r) {
  os << "sing";
  for (const auto &[a, b] : r.singular_function()) os << " " << a << " " << b;
  os << "\n";
}

}  // namespace

Document parse(const std::string &text) {
  Cursor cur(tokenize(text));
  Token head = cur.next();
  if (head.text == "TRUSS") return parse_truss(cur);
  if (head.text == "COMPLEX") return parse_complex(cur);
  if (head.text == "BORDISM") return parse_bordism_doc(cur);
  throw ParseError(head.line, head.column,
                   "expected 'TRUSS', 'COMPLEX' or 'BORDISM', got '" + head.text + "'");
}

std::string print(const Document &doc) {
  std::ostringstream os;
  if (doc.is_truss()) {
    TrussTower t = doc.truss().canonicalize();
    os << "TRUSS v1\n";
    os << "n " << t.depth() << "\n";
    for (int i = 1; i <= t.depth(); ++i) {
      const Bundle1 &l = t.level(i);
      os << "level " << i << "\n";
      for (int x : l.base().elements()) os << "  fiber " << x << " " << l.fiber(x).word() << "\n";
      for (const auto &[cover, r] : l.cover_bordisms()) {
        os << "  bordism " << cover.first << " " << cover.second << " ";
        print_bordism_body(os, r);
      }
    }
    for (const auto &[e, name] : t.labels()) os << "label (" << e << ") " << name << "\n";
  } else if (doc.is_complex()) {
    const FramedComplex &c = doc.complex();
    os << "COMPLEX v1\n";
    for (int v : c.vertices) os << "vertex " << v << "\n";
    std::map<std::pair<int, int>, std::pair<int, int>> sorted_edges;  // (lo,hi) -> (head,label)
    for (const auto &[e, lbl] : c.edges)
      sorted_edges[{std::min(e.first, e.second), std::max(e.first, e.second)}] = {e.second, lbl};
    for (const auto &[uv, hl] : sorted_edges)
      os << "edge " << uv.first << " " << uv.second << " dir " << hl.first << " label "
         << hl.second << "\n";
    for (const auto &s : c.simplices) {
      if (s.size() < 3) continue;  // vertices and edges are already explicit
      os << "simplex";
      for (int v : s) os << " " << v;
      os << "\n";
    }
  } else {
    const Bordism1 &r = doc.bordism();
    os << "BORDISM v1\n";
    os << "domain " << r.domain().word() << "\n";
    os << "codomain " << r.codomain().word() << "\n";
    print_bordism_body(os, r);
  }
  return os.str();
}

std::string render_dot(const Poset &p) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n";
  for (int e : p.elements()) os << "  n" << e << " [label=\"" << e << "\"];\n";
  for (const auto &[a, b] : p.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string render_dot(const TrussTower &t) {
  std::ostringstream os;
  os << "digraph truss {\n  rankdir=BT;\n  node [style=filled];\n";
  const Poset &top = t.top_poset();
  for (int e : top.elements()) {
    bool singular = t.depth() > 0 && t.level(t.depth()).dim_of(e) == 0;
    os << "  n" << e << " [label=\"" << e << "\", fillcolor=\""
       << (singular ? "indianred1" : "lightblue") << "\"];\n";
  }
  for (const auto &[a, b] : top.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string render_geometry(const TrussTower &t) {
  if (!t.closed()) throw ValidationError("geometry: tower is not closed");
  if (t.depth() > 3) throw ValidationError("geometry: only depth <= 3 is rendered");
  std::map<int, std::vector<int>> coords;
  coords[t.base().elements()[0]] = {};
  for (int i = 1; i <= t.depth(); ++i) {
    std::map<int, std::vector<int>> next;
    const Bundle1 &l = t.level(i);
    for (int e : l.total_poset().elements()) {
      std::vector<int> c = coords.at(l.base_of(e));
      c.push_back(l.pos_of(e));
      next[e] = std::move(c);
    }
    coords = std::move(next);
  }
  std::ostringstream os;
  for (const auto &[e, c] : coords) {
    os << "vertex " << e;
    for (int x : c) os << " " << x;
    os << "\n";
  }
  for (const auto &per_dim : nerve(t.top_poset()))
    for (const auto &chain : per_dim) {
      os << "simplex";
      for (int e : chain) os << " " << e;
      os << "\n";
    }
  return os.str();
}

}  // namespace truss
