// test_bordism.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "truss/bordism.hpp"

using namespace truss;

namespace {

int count_true(const Bordism1 &r) {
  int n = 0;
  for (const auto &row : r.matrix())
    for (bool b : row) n += b;
  return n;
}

// All monotone endpoint-preserving partial maps between the singular (resp.
// regular) position lists, i.e. all bordisms via both determinations.
std::set<Bordism1> all_bordisms(const Truss1 &t, const Truss1 &s) {
  std::set<Bordism1> out;
  auto enumerate = [](const std::vector<int> &dom, const std::vector<int> &cod,
                      auto &&emit) {
    std::vector<int> pick(dom.size(), 0);
    if (dom.empty()) {
      emit(std::map<int, int>{});
      return;
    }
    if (cod.empty()) return;
    while (true) {
      bool mono = true;
      for (std::size_t i = 0; i + 1 < pick.size(); ++i)
        if (pick[i] > pick[i + 1]) mono = false;
      if (mono) {
        std::map<int, int> f;
        for (std::size_t i = 0; i < dom.size(); ++i) f[dom[i]] = cod[pick[i]];
        emit(f);
      }
      std::size_t i = 0;
      while (i < pick.size() && pick[i] + 1 == static_cast<int>(cod.size())) pick[i++] = 0;
      if (i == pick.size()) break;
      ++pick[i];
    }
  };
  enumerate(t.singulars(), s.singulars(), [&](const std::map<int, int> &f) {
    try {
      out.insert(Bordism1::from_singular_function(t, s, f));
    } catch (const ValidationError &) {
    }
  });
  enumerate(s.regulars(), t.regulars(), [&](const std::map<int, int> &f) {
    try {
      out.insert(Bordism1::from_regular_function(t, s, f));
    } catch (const ValidationError &) {
    }
  });
  return out;
}

}  // namespace

TEST_CASE("identity is the hom relation") {
  Truss1 srs = Truss1::make("SRS");
  Bordism1 id = Bordism1::identity(srs);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(id.rel(a, b) == srs.face_leq(a, b));
  CHECK(count_true(Bordism1::identity(Truss1::make("S"))) == 1);
  CHECK(count_true(Bordism1::identity(Truss1::make("RSR"))) == 5);
}

TEST_CASE("validate rejects with witnesses") {
  Truss1 srs = Truss1::make("SRS");
  std::vector<std::vector<bool>> all_true(3, std::vector<bool>(3, true));
  std::vector<std::string> report;
  CHECK_FALSE(Bordism1::check(srs, srs, all_true, &report));
  CHECK_FALSE(report.empty());
  bool mentions_bifunctionality = false;
  for (const auto &line : report)
    if (line.find("singular 0") != std::string::npos) mentions_bifunctionality = true;
  CHECK(mentions_bifunctionality);
  CHECK_THROWS_AS(Bordism1::make(srs, srs, all_true), ValidationError);
}

TEST_CASE("terminal and initial bordisms") {
  Truss1 srs = Truss1::make("SRS");
  Truss1 s = Truss1::make("S");
  std::vector<std::vector<bool>> rel(3, std::vector<bool>(1, true));
  Bordism1 terminal = Bordism1::make(srs, s, rel);
  CHECK(terminal.singular_function() == std::map<int, int>{{0, 0}, {2, 0}});
  CHECK(terminal.regular_function().empty());

  Bordism1 dual = terminal.dualize();
  CHECK(dual.domain().word() == "R");
  CHECK(dual.codomain().word() == "RSR");
  for (int b = 0; b < 3; ++b) CHECK(dual.rel(0, b));
}

TEST_CASE("singular determination matches the formula") {
  Truss1 srs = Truss1::make("SRS");
  Truss1 srsrs = Truss1::make("SRSRS");
  Bordism1 r = Bordism1::from_singular_function(srs, srsrs, {{0, 0}, {2, 4}});
  // Two singular rows with one entry each, and the regular row relates to
  // everything between f(0) and f(2): 1 + 5 + 1 entries.
  CHECK(count_true(r) == 7);
  CHECK(r.singular_function() == std::map<int, int>{{0, 0}, {2, 4}});
  // Non-monotone function is rejected.
  CHECK_THROWS_AS(Bordism1::from_singular_function(srs, srs, {{0, 2}, {2, 0}}),
                  ValidationError);
  // Endpoint preservation: a singular lower endpoint must land on the lower
  // endpoint of the codomain.
  CHECK_THROWS_AS(Bordism1::from_singular_function(srs, srsrs, {{0, 2}, {2, 4}}),
                  ValidationError);
}

TEST_CASE("regular determination round trips") {
  // The regular function sends regular positions of the codomain to regular
  // positions of the domain; endpoints are forced.
  Truss1 rsr = Truss1::make("RSR");
  Truss1 rsrsr = Truss1::make("RSRSR");
  Bordism1 r = Bordism1::from_regular_function(rsr, rsrsr, {{0, 0}, {2, 0}, {4, 2}});
  CHECK(r.regular_function() == std::map<int, int>{{0, 0}, {2, 0}, {4, 2}});
  CHECK(Bordism1::from_regular_function(rsr, rsrsr, r.regular_function()) == r);
  // A value that is not a regular position of the domain is rejected.
  CHECK_THROWS_AS(Bordism1::from_regular_function(rsr, rsrsr, {{0, 0}, {2, 1}, {4, 2}}),
                  ValidationError);
}

TEST_CASE("composition follows the matrix product oracle") {
  Truss1 srs = Truss1::make("SRS");
  Truss1 srsrs = Truss1::make("SRSRS");
  Bordism1 up = Bordism1::from_singular_function(srs, srsrs, {{0, 0}, {2, 4}});
  Bordism1 down = Bordism1::from_singular_function(srsrs, srs, {{0, 0}, {2, 2}, {4, 2}});
  Bordism1 c = compose(up, down);
  CHECK(c.singular_function() == std::map<int, int>{{0, 0}, {2, 2}});
  // Matrix product oracle.
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) {
      bool expect = false;
      for (int y = 0; y < 5; ++y) expect |= up.rel(x, y) && down.rel(y, z);
      CHECK(c.rel(x, z) == expect);
    }

  Bordism1 id = Bordism1::identity(srs);
  CHECK(compose(id, up) == up);
  CHECK(compose(up, Bordism1::identity(srsrs)) == up);

  // Composing with the terminal bordism gives the terminal bordism.
  std::vector<std::vector<bool>> rel(5, std::vector<bool>(1, true));
  Bordism1 terminal = Bordism1::make(srsrs, Truss1::make("S"), rel);
  Bordism1 t2 = compose(up, terminal);
  CHECK(t2.domain() == srs);
  CHECK(count_true(t2) == 3);
}

TEST_CASE("dualize is a contravariant involution") {
  Truss1 srs = Truss1::make("SRS");
  Truss1 srsrs = Truss1::make("SRSRS");
  Bordism1 r = Bordism1::from_singular_function(srs, srsrs, {{0, 0}, {2, 4}});
  CHECK(r.dualize().dualize() == r);
  CHECK(Bordism1::identity(srs).dualize() == Bordism1::identity(srs.dualize()));
}

TEST_CASE("exhaustive small-bordism laws") {
  // Dimension monotonicity, endpoint preservation, full matching, and the
  // determination round trips, on every bordism between words of length <= 4.
  std::vector<Truss1> pool;
  for (const char *w : {"S", "R", "SR", "RS", "SRS", "RSR", "SRSR", "RSRS"})
    pool.push_back(Truss1::make(w));
  for (const auto &t : pool)
    for (const auto &s : pool)
      for (const auto &r : all_bordisms(t, s)) {
        for (int a = 0; a < t.length(); ++a)
          for (int b = 0; b < s.length(); ++b)
            if (r.rel(a, b)) CHECK(s.dim(b) <= t.dim(a));
        CHECK(r.rel(0, 0));
        CHECK(r.rel(t.length() - 1, s.length() - 1));
        for (int a = 0; a < t.length(); ++a) {
          bool matched = false;
          for (int b = 0; b < s.length(); ++b) matched |= r.rel(a, b);
          CHECK(matched);
        }
        CHECK(Bordism1::from_singular_function(t, s, r.singular_function()) == r);
        CHECK(Bordism1::from_regular_function(t, s, r.regular_function()) == r);
      }
}

TEST_CASE("invertible bordisms exist only between equal words and are unique") {
  std::vector<Truss1> pool;
  for (const char *w : {"S", "R", "SR", "RS", "SRS", "RSR"}) pool.push_back(Truss1::make(w));
  for (const auto &t : pool)
    for (const auto &s : pool) {
      int invertible = 0;
      for (const auto &r : all_bordisms(t, s))
        for (const auto &back : all_bordisms(s, t))
          if (compose(r, back) == Bordism1::identity(t) &&
              compose(back, r) == Bordism1::identity(s))
            ++invertible;
      if (t == s)
        CHECK(invertible == 1);
      else
        CHECK(invertible == 0);
    }
}
