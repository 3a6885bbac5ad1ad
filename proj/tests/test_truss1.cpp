// test_truss1.cpp
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
#include "truss/truss1.hpp"

using namespace truss;

namespace {

// Every frame-monotone assignment source -> target; face monotonicity is
// what Truss1Map's constructor checks, so filter with a try.
std::vector<Truss1Map> all_maps(const Truss1 &src, const Truss1 &tgt) {
  std::vector<Truss1Map> out;
  std::vector<int> a(src.length(), 0);
  while (true) {
    bool mono = true;
    for (int i = 0; i + 1 < src.length(); ++i)
      if (a[i] > a[i + 1]) mono = false;
    if (mono) {
      try {
        out.emplace_back(src, tgt, a);
      } catch (const ValidationError &) {
      }
    }
    int i = 0;
    while (i < src.length() && a[i] + 1 == tgt.length()) a[i++] = 0;
    if (i == src.length()) break;
    ++a[i];
  }
  return out;
}

}  // namespace

TEST_CASE("make accepts alternating words only") {
  CHECK(Truss1::make("S").word() == "S");
  CHECK(Truss1::make("RSR").word() == "RSR");
  CHECK(Truss1::make("SR").word() == "SR");
  CHECK_THROWS_AS(Truss1::make("SS"), ValidationError);
  CHECK_THROWS_AS(Truss1::make("SRR"), ValidationError);
  CHECK_THROWS_AS(Truss1::make(""), ValidationError);
  CHECK_THROWS_AS(Truss1::make("SXR"), ValidationError);
}

TEST_CASE("endpoint classification") {
  CHECK(Truss1::make("SRS").endpoint_type() == EndpointType::kClosed);
  CHECK(Truss1::make("RSR").endpoint_type() == EndpointType::kOpen);
  CHECK(Truss1::make("R").endpoint_type() == EndpointType::kTrivialOpen);
  CHECK(Truss1::make("S").endpoint_type() == EndpointType::kTrivialClosed);
  CHECK(Truss1::make("RS").endpoint_type() == EndpointType::kHalfOpenClosed);
  CHECK(Truss1::make("SR").endpoint_type() == EndpointType::kHalfClosedOpen);
}

TEST_CASE("face poset has length-1 covers and alternating orientation") {
  for (const char *w : {"S", "R", "SRS", "RSR", "SRSRS", "RS"}) {
    Truss1 t = Truss1::make(w);
    Poset p = t.face_poset();
    CHECK(static_cast<int>(p.size()) == t.length());
    CHECK(static_cast<int>(p.covers().size()) == t.length() - 1);
    for (const auto &[a, b] : p.covers()) {
      CHECK(t.dim(a) == 1);
      CHECK(t.dim(b) == 0);
    }
  }
}

TEST_CASE("dualize flips dims and is an involution") {
  CHECK(Truss1::make("SRS").dualize().word() == "RSR");
  CHECK(Truss1::make("SR").dualize().word() == "RS");
  Truss1 t = Truss1::make("SRSRS");
  CHECK(t.dualize().dualize() == t);
  // sing and reg swap pointwise
  CHECK(t.singulars() == t.dualize().regulars());
}

TEST_CASE("classify_map on the spec examples") {
  Truss1 srs = Truss1::make("SRS");
  Truss1 srsrs = Truss1::make("SRSRS");

  Truss1Map id(srs, srs, {0, 1, 2});
  MapClass c = classify_map(id);
  CHECK(c.singular);
  CHECK(c.regular);
  CHECK(c.balanced);
  CHECK(c.degeneracy);
  CHECK(c.coarsening);

  Truss1Map deg(srsrs, srs, {0, 0, 0, 1, 2});
  c = classify_map(deg);
  CHECK(c.surjective);
  CHECK(c.singular);
  CHECK(c.degeneracy);
  CHECK_FALSE(c.injective);

  Truss1Map face(srs, srsrs, {0, 1, 2});
  c = classify_map(face);
  CHECK(c.injective);
  CHECK(c.singular);
  CHECK(c.face);
  CHECK_FALSE(c.surjective);
}

TEST_CASE("diposet map validation rejects broken face order") {
  Truss1 srs = Truss1::make("SRS");
  // Constant onto a singular from a regular source element is singular and
  // fine; mapping the regular somewhere not covering its singular image is not.
  CHECK_THROWS_AS(Truss1Map(srs, srs, {0, 0, 2}), ValidationError);
  CHECK_THROWS_AS(Truss1Map(srs, srs, {2, 1, 0}), ValidationError);
}

TEST_CASE("balanced bijections between equal words are unique") {
  for (const char *w : {"S", "R", "SR", "SRS", "RSR", "SRSR", "SRSRS", "RSRSR", "SRSRSRS"}) {
    Truss1 t = Truss1::make(w);
    int balanced_bijections = 0;
    for (const auto &f : all_maps(t, t)) {
      MapClass c = classify_map(f);
      if (c.balanced && c.injective && c.surjective) {
        ++balanced_bijections;
        for (int i = 0; i < t.length(); ++i) CHECK(f(i) == i);
      }
    }
    CHECK(balanced_bijections == 1);
  }
}
