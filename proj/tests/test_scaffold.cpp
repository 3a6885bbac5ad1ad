// test_scaffold.cpp
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
#include "doctest.h"
#include "support/generators.hpp"
#include "truss/scaffold.hpp"

using namespace truss;
using truss::testing::Rng;

namespace {

Bundle1 point_bundle(const std::string &word) {
  return Bundle1::totalize(Poset::point(), {{0, Truss1::make(word)}}, {});
}

Bundle1 two_chain_example() {
  Truss1 srs = Truss1::make("SRS"), srsrs = Truss1::make("SRSRS");
  Bordism1 r = Bordism1::from_singular_function(srs, srsrs, {{0, 0}, {2, 4}});
  return Bundle1::totalize(Poset::chain(2), {{0, srs}, {1, srsrs}}, {{{0, 1}, r}});
}

}  // namespace

TEST_CASE("norm extremes: bottom 0, top #T - #B") {
  Bundle1 b = two_chain_example();
  CHECK(scaffold_norm(b, bottom_section(b)) == 0);
  CHECK(scaffold_norm(b, top_section(b)) == b.total_size() - 2);
  Section s{{1, 2}};
  CHECK(is_section(b, s));
  CHECK(scaffold_norm(b, s) == 3);
}

TEST_CASE("sections of a point-base bundle are its elements") {
  Bundle1 b = point_bundle("SRS");
  auto sections = sections_in_order(b);
  REQUIRE(sections.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(sections[i].vertices == std::vector<int>{i});
}

TEST_CASE("two-chain example: 7 sections with norms 0..6") {
  Bundle1 b = two_chain_example();
  auto sections = sections_in_order(b);
  REQUIRE(sections.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(scaffold_norm(b, sections[i]) == i);
  CHECK(sections == sections_brute_force(b));

  // Suspension preserves the count and the norms.
  Bundle1 s = b.suspend();
  auto ssec = sections_in_order(s);
  REQUIRE(ssec.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(scaffold_norm(s, ssec[i]) == i);
}

TEST_CASE("successor and predecessor are inverse") {
  Bundle1 b = two_chain_example();
  auto sections = sections_in_order(b);
  for (std::size_t i = 0; i + 1 < sections.size(); ++i) {
    CHECK(successor(b, sections[i]) == sections[i + 1]);
    CHECK(predecessor(b, sections[i + 1]) == sections[i]);
  }
  CHECK_THROWS_AS(successor(b, top_section(b)), ValidationError);
  CHECK_THROWS_AS(predecessor(b, bottom_section(b)), ValidationError);

  Bundle1 p = point_bundle("SRS");
  CHECK(successor(p, bottom_section(p)).vertices == std::vector<int>{1});
}

TEST_CASE("spacers: counts and boundaries") {
  Bundle1 p = point_bundle("SRS");
  auto sp = spacers_with_boundaries(p);
  REQUIRE(sp.size() == 2);
  CHECK(spacer_norm(p, sp[0].spacer) == doctest::Approx(0.5));
  CHECK(spacer_norm(p, sp[1].spacer) == doctest::Approx(1.5));

  CHECK(spacers_with_boundaries(point_bundle("S")).empty());

  Bundle1 b = two_chain_example();
  auto spb = spacers_with_boundaries(b);
  REQUIRE(spb.size() == 6);
  auto sections = sections_in_order(b);
  for (std::size_t i = 0; i < spb.size(); ++i) {
    CHECK(is_spacer(b, spb[i].spacer));
    CHECK(spacer_norm(b, spb[i].spacer) == doctest::Approx(i + 0.5));
    CHECK(spb[i].lower == sections[i]);
    CHECK(spb[i].upper == sections[i + 1]);
    CHECK(scaffold_norm(b, spb[i].upper) == scaffold_norm(b, spb[i].lower) + 1);
  }
}

TEST_CASE("fiber category report is positive on valid bundles") {
  Bundle1 b = two_chain_example();
  auto rep = fiber_category_report(b, {0, 1});
  CHECK(rep.is_total_order);
  CHECK(rep.transitions_endpoint_preserving);

  auto rep0 = fiber_category_report(b, {0});
  CHECK(rep0.is_total_order);
  CHECK(rep0.transitions_endpoint_preserving);

  Bundle1 s = b.suspend();
  auto chain = require_chain(s);
  auto rep2 = fiber_category_report(s, chain);
  CHECK(rep2.is_total_order);
  CHECK(rep2.transitions_endpoint_preserving);
}

TEST_CASE("scaffold laws on random chain bundles") {
  Rng rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    int m = truss::testing::uniform(rng, 0, 3);
    Bundle1 b = truss::testing::random_chain_bundle(rng, m, 7);
    int target = b.total_size() - static_cast<int>(b.base().size());

    auto fast = sections_in_order(b);
    auto brute = sections_brute_force(b);
    REQUIRE(fast == brute);
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(scaffold_norm(b, fast[i]) == static_cast<int>(i));
    CHECK(static_cast<int>(fast.size()) == target + 1);

    auto spb = spacers_with_boundaries(b);
    CHECK(static_cast<int>(spb.size()) == target);
    for (std::size_t i = 0; i < spb.size(); ++i) {
      CHECK(spb[i].lower == fast[i]);
      CHECK(spb[i].upper == fast[i + 1]);
    }

    // Jump morphisms of the suspension correspond to sections.
    Bundle1 susp = b.suspend();
    auto chain = require_chain(susp);
    int jumps = 0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const Bordism1 &r = susp.cover_bordism(chain[i], chain[i + 1]);
      for (int a : r.domain().regulars())
        for (int c : r.codomain().singulars()) jumps += r.rel(a, c);
    }
    CHECK(jumps == static_cast<int>(fast.size()));
  }
}
