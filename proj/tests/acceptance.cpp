// acceptance.cpp
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
// End-to-end acceptance suite. Runs each criterion and prints one pass/fail
// line; exits nonzero when any criterion fails. The corpus directory and the
// CLI binary are taken from TRUSS_CORPUS and TRUSS_CLI.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "support/generators.hpp"
#include "truss/io.hpp"
#include "truss/scaffold.hpp"
#include "truss/stratified.hpp"

using namespace truss;
using truss::testing::Rng;
using truss::testing::uniform;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- 1: scaffold laws --------------------------------------------------------

Outcome criterion1() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + trial % 3;
    Bundle1 b = truss::testing::random_chain_bundle(rng, m, 7);
    int target = b.total_size() - static_cast<int>(b.base().size());
    auto fast = sections_in_order(b);
    auto brute = sections_brute_force(b);
    if (fast != brute) return {false, "successor chain disagrees with brute force"};
    if (static_cast<int>(fast.size()) != target + 1)
      return {false, "section count is not #T-#B+1"};
    for (std::size_t i = 0; i < fast.size(); ++i)
      if (scaffold_norm(b, fast[i]) != static_cast<int>(i))
        return {false, "section norms are not 0..#T-#B"};
    auto spacers = spacers_with_boundaries(b);
    if (static_cast<int>(spacers.size()) != target) return {false, "spacer count is not #T-#B"};
    for (std::size_t i = 0; i < spacers.size(); ++i) {
      if (spacer_norm(b, spacers[i].spacer) != i + 0.5)
        return {false, "spacer norms are not the interior half-integers"};
      if (spacers[i].lower != fast[i] || spacers[i].upper != fast[i + 1])
        return {false, "spacer boundaries do not bound consecutive sections"};
    }
  }
  double secs = seconds_since(start);
  if (secs >= 10.0) return {false, "took " + std::to_string(secs) + "s (budget 10s)"};
  std::ostringstream os;
  os << "200 bundles, " << secs << "s";
  return {true, os.str()};
}

// --- 2: bordism algebra ------------------------------------------------------

Outcome criterion2() {
  std::vector<Truss1> words;
  for (const char *w : {"S", "R", "SR", "RS", "SRS", "RSR", "SRSR", "RSRS", "SRSRS", "RSRSR"})
    words.push_back(Truss1::make(w));

  auto enumerate_monotone = [](const std::vector<int> &dom, const std::vector<int> &cod,
                               auto &&emit) {
    if (dom.empty()) {
      emit(std::map<int, int>{});
      return;
    }
    if (cod.empty()) return;
    std::vector<int> pick(dom.size(), 0);
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

  std::map<std::pair<int, int>, std::vector<Bordism1>> homs;
  long total = 0;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      std::set<Bordism1> set;
      enumerate_monotone(words[i].singulars(), words[j].singulars(),
                         [&](const std::map<int, int> &f) {
                           try {
                             set.insert(Bordism1::from_singular_function(words[i], words[j], f));
                           } catch (const ValidationError &) {
                           }
                         });
      enumerate_monotone(words[j].regulars(), words[i].regulars(),
                         [&](const std::map<int, int> &f) {
                           try {
                             set.insert(Bordism1::from_regular_function(words[i], words[j], f));
                           } catch (const ValidationError &) {
                           }
                         });
      homs[{static_cast<int>(i), static_cast<int>(j)}].assign(set.begin(), set.end());
      total += static_cast<long>(set.size());
    }

  // Pointwise laws.
  for (const auto &[key, rs] : homs)
    for (const Bordism1 &r : rs) {
      for (int a = 0; a < r.domain().length(); ++a) {
        bool row = false;
        for (int b = 0; b < r.codomain().length(); ++b) {
          if (r.rel(a, b)) {
            row = true;
            if (r.codomain().dim(b) > r.domain().dim(a))
              return {false, "dimension monotonicity fails"};
          }
        }
        if (!row) return {false, "full matching fails on the domain side"};
      }
      for (int b = 0; b < r.codomain().length(); ++b) {
        bool col = false;
        for (int a = 0; a < r.domain().length(); ++a) col |= r.rel(a, b);
        if (!col) return {false, "full matching fails on the codomain side"};
      }
      if (!r.rel(0, 0) || !r.rel(r.domain().length() - 1, r.codomain().length() - 1))
        return {false, "endpoint preservation fails"};
      if (!(r.dualize().dualize() == r)) return {false, "dualize is not an involution"};
      if (!(compose(Bordism1::identity(r.domain()), r) == r) ||
          !(compose(r, Bordism1::identity(r.codomain())) == r))
        return {false, "unit law fails"};
    }

  // Associativity and contravariance of dualization, over all composable
  // triples / pairs.
  long triples = 0;
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (homs.at({static_cast<int>(a), static_cast<int>(b)}).empty()) continue;
      for (std::size_t c = 0; c < words.size(); ++c) {
        if (homs.at({static_cast<int>(b), static_cast<int>(c)}).empty()) continue;
        for (const auto &r1 : homs.at({static_cast<int>(a), static_cast<int>(b)}))
          for (const auto &r2 : homs.at({static_cast<int>(b), static_cast<int>(c)})) {
            if (!(compose(r2.dualize(), r1.dualize()) == compose(r1, r2).dualize()))
              return {false, "dualize is not contravariant"};
            for (std::size_t d = 0; d < words.size(); ++d)
              for (const auto &r3 : homs.at({static_cast<int>(c), static_cast<int>(d)})) {
                ++triples;
                if (!(compose(compose(r1, r2), r3) == compose(r1, compose(r2, r3))))
                  return {false, "associativity fails"};
              }
          }
      }
    }
  std::ostringstream os;
  os << total << " bordisms, " << triples << " composable triples, zero counterexamples";
  return {true, os.str()};
}

// --- 3: classification / totalization ---------------------------------------

Outcome criterion3() {
  Rng rng(303);
  for (int i = 0; i < 100; ++i) {
    Poset base = truss::testing::random_poset(rng, 6);
    Bundle1 b = truss::testing::random_bundle(rng, base, 5);
    auto [fibers, bordisms] = b.classify();
    if (!(Bundle1::totalize(b.base(), fibers, bordisms) == b))
      return {false, "totalize(classify(b)) != b"};
    // classify(totalize(data)) returns the stored data by construction;
    // rebuild once more to pin data equality in both directions.
    Bundle1 again = Bundle1::totalize(b.base(), fibers, bordisms);
    auto [f2, r2] = again.classify();
    if (f2 != fibers || !(r2 == bordisms)) return {false, "classify(totalize(data)) != data"};
  }
  return {true, "100 random bundles over posets with <= 6 elements"};
}

// --- 4: compactification -----------------------------------------------------

Outcome criterion4() {
  // The pinned examples first.
  {
    TrussTower r = TrussTower::make(
        Poset::point(), {Bundle1::totalize(Poset::point(), {{0, Truss1::make("R")}}, {})});
    auto c = compactify(r);
    if (c.closed.level(1).fiber(0).word() != "SRS" || c.inclusion.levels[1].at(0) != 1)
      return {false, "compactify(R) != SRS with the middle inclusion"};
  }
  {
    Bundle1 l1 = Bundle1::totalize(Poset::point(), {{0, Truss1::make("R")}}, {});
    Bundle1 l2 = Bundle1::totalize(l1.total_poset(), {{0, Truss1::make("RSR")}}, {});
    auto c = compactify(TrussTower::make(Poset::point(), {l1, l2}));
    if (c.closed.level(1).total_size() != 3 || c.closed.level(2).total_size() != 15)
      return {false, "compactify(R/RSR) sizes are not 3 and 15"};
    for (int x : c.closed.level(2).base().elements())
      if (c.closed.level(2).fiber(x).word() != "SRSRS")
        return {false, "compactify(R/RSR) fibers are not SRSRS"};
  }

  Rng rng(404);
  int done = 0;
  while (done < 100) {
    TrussTower t = truss::testing::random_tower(rng, uniform(rng, 1, 2), 5);
    if (t.total_elements() > 16) continue;
    ++done;
    auto c = compactify(t);
    if (!c.closed.closed()) return {false, "output is not closed"};
    for (int lvl = 0; lvl <= t.depth(); ++lvl)
      for (const auto &[e, v] : c.inclusion.levels[lvl])
        if (c.retraction.levels[lvl].at(v) != e)
          return {false, "retraction after inclusion is not the identity"};
    if (!universal_property_check(t, c.closed, c.inclusion, c.retraction))
      return {false, "universal property fails against the mediating-map search"};
  }
  return {true, "100 random towers plus the two pinned examples"};
}

// --- 5: normalization confluence ---------------------------------------------

Outcome criterion5() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(505);
  int done = 0;
  while (done < 200) {
    TrussTower t = truss::testing::random_stratified_tower(rng, uniform(rng, 1, 2), 5);
    if (t.total_elements() > 21) continue;
    ++done;
    StratifiedTruss s = StratifiedTruss::validate(t);
    Rng ra(done * 2 + 1), rb(done * 7 + 5);
    auto n1 = normalize(s, &ra);
    auto n2 = normalize(s, &rb);
    if (!decide_iso(n1.normal_form, n2.normal_form))
      return {false, "two maximal reduction strategies disagree"};
    if (!is_normalized(n1.normal_form)) return {false, "normal form admits a coarsening"};
  }
  double secs = seconds_since(start);
  if (secs >= 60.0) return {false, "took " + std::to_string(secs) + "s (budget 60s)"};
  std::ostringstream os;
  os << "200 stratified towers, " << secs << "s";
  return {true, os.str()};
}

// --- 6: decidability ----------------------------------------------------------

bool brute_force_iso(const StratifiedTruss &a, const StratifiedTruss &b) {
  StratifiedTruss na = normalize(a).normal_form;
  StratifiedTruss nb = normalize(b).normal_form;
  if (na.tower().depth() != nb.tower().depth()) return false;
  auto bijections = enumerate_maps(na.tower(), nb.tower(), [](const TowerMapClass &c) {
    return c.balanced && c.injective && c.surjective;
  });
  for (const auto &m : bijections) {
    TowerMap inv;
    inv.levels.resize(m.levels.size());
    for (std::size_t i = 0; i < m.levels.size(); ++i)
      for (const auto &[k, v] : m.levels[i]) inv.levels[i][v] = k;
    if (!is_tower_map(nb.tower(), na.tower(), inv)) continue;
    std::map<std::string, std::string> fwd, bwd;
    bool ok = true;
    for (const auto &[e, v] : m.levels.back()) {
      const std::string &la = na.tower().labels().at(e);
      const std::string &lb = nb.tower().labels().at(v);
      if (fwd.count(la) && fwd[la] != lb) ok = false;
      if (bwd.count(lb) && bwd[lb] != la) ok = false;
      fwd[la] = lb;
      bwd[lb] = la;
    }
    if (ok) return true;
  }
  return false;
}

Outcome criterion6() {
  Rng rng(606);
  std::vector<StratifiedTruss> pool;
  while (pool.size() < 40) {
    TrussTower t = truss::testing::random_stratified_tower(rng, uniform(rng, 1, 2), 4);
    if (t.total_elements() > 13) continue;
    pool.push_back(StratifiedTruss::validate(t));
  }
  int isomorphic = 0;
  for (const auto &a : pool)
    for (const auto &b : pool) {
      bool fast = decide_iso(a, b).has_value();
      if (fast != brute_force_iso(a, b))
        return {false, "decide_iso disagrees with the exhaustive bijection search"};
      isomorphic += fast;
    }
  std::ostringstream os;
  os << "40x40 pairs, " << isomorphic << " isomorphic, all agree with brute force";
  return {true, os.str()};
}

// --- 7: translation roundtrips -------------------------------------------------

Outcome criterion7() {
  Rng rng(707);
  int done = 0;
  while (done < 100) {
    TrussTower t = truss::testing::random_closed_tower(rng, uniform(rng, 1, 3), 5);
    if (t.total_elements() > 31) continue;
    ++done;
    auto tr = complex_translate(t);
    TrussTower back = truss_translate(tr.tower);
    if (!(back == t.canonicalize())) return {false, "kT(kX(t)) != t"};
    auto tr2 = complex_translate(back);
    if (!(tr2.tower == tr.tower) || !(tr2.complex == tr.complex))
      return {false, "kX(kT(x)) != x on a kX image"};
  }
  return {true, "100 random closed towers up to depth 3"};
}

// --- 8: cellularity desk check --------------------------------------------------

Outcome criterion8() {
  Rng rng(808);
  int done = 0;
  while (done < 50) {
    TrussTower t = truss::testing::random_closed_tower(rng, uniform(rng, 1, 3), 5);
    const auto &elems = t.top_poset().elements();
    int x = elems[uniform(rng, 0, static_cast<int>(elems.size()) - 1)];
    TrussTower block = face_block(t, x).block;
    if (block.total_elements() > 27) continue;
    ++done;
    auto rep = shell_boundary(block);
    if (!rep.ok) {
      return {false, "shelling failed: " + (rep.problems.empty() ? "?" : rep.problems[0])};
    }
    int k = block_dimension(block);
    long expect = 1 + (k % 2 == 1 ? 1 : -1);  // 1 + (-1)^(k-1)
    if (k == 0) expect = 0;
    if (rep.boundary_euler != expect)
      return {false, "chi of the boundary is not 1+(-1)^(k-1)"};
  }
  return {true, "50 random blocks shelled, boundary chi matches the sphere"};
}

// --- 9: rigidity & factorization -------------------------------------------------

Outcome criterion9() {
  Rng rng(909);
  std::vector<TrussTower> pool;
  {
    // The bigon plus random small closed towers.
    Truss1 srs = Truss1::make("SRS"), s = Truss1::make("S");
    Bundle1 l1 = Bundle1::totalize(Poset::point(), {{0, srs}}, {});
    Bordism1 down = Bordism1::from_singular_function(srs, s, {{0, 0}, {2, 0}});
    Bundle1 l2 = Bundle1::totalize(l1.total_poset(), {{0, s}, {1, srs}, {2, s}},
                                   {{{1, 0}, down}, {{1, 2}, down}});
    pool.push_back(TrussTower::make(Poset::point(), {l1, l2}));
  }
  while (pool.size() < 7) {
    TrussTower t = truss::testing::random_closed_tower(rng, uniform(rng, 1, 2), 5);
    if (t.total_elements() <= 13) pool.push_back(t);
  }

  long maps_checked = 0;
  for (const auto &src : pool)
    for (const auto &dst : pool) {
      auto singular_maps =
          enumerate_maps(src, dst, [](const TowerMapClass &c) { return c.singular; });
      // Rigidity: no two distinct singular maps are pointwise comparable.
      for (const auto &e : singular_maps)
        for (const auto &f : singular_maps) {
          if (e.levels == f.levels) continue;
          bool pointwise = true;
          for (const auto &[x, v] : e.top())
            if (!dst.top_poset().leq(v, f.top().at(x))) pointwise = false;
          if (pointwise) return {false, "a nontrivial natural transformation exists"};
        }
      // Factorization: exactly one (degeneracy, face) pair.
      for (const auto &f : singular_maps) {
        auto em = epi_mono_factorize(src, dst, f, FactorizationMode::kClosedSingular);
        auto degeneracies = enumerate_maps(
            src, em.image, [](const TowerMapClass &c) { return c.degeneracy; });
        auto faces =
            enumerate_maps(em.image, dst, [](const TowerMapClass &c) { return c.face; });
        int factorizations = 0;
        for (const auto &e : degeneracies)
          for (const auto &m : faces) {
            TowerMap composite = compose(m, e);
            if (composite.levels == f.levels) ++factorizations;
          }
        if (factorizations != 1)
          return {false, "factorization is not unique (" + std::to_string(factorizations) + ")"};
        ++maps_checked;
      }
    }
  std::ostringstream os;
  os << maps_checked << " singular maps factored uniquely, no rigidity violations";
  return {true, os.str()};
}

// --- 10: dualization --------------------------------------------------------------

Outcome criterion10() {
  Rng rng(1010);
  std::vector<TrussTower> pool;
  while (pool.size() < 6) {
    TrussTower t = truss::testing::random_closed_tower(rng, uniform(rng, 1, 2), 5);
    if (t.total_elements() <= 12) pool.push_back(t);
  }
  for (const auto &t : pool) {
    if (!(t.dualize().dualize() == t)) return {false, "dualize is not an involution"};
    if (!t.dualize().open()) return {false, "the dual of a closed tower is not open"};
  }
  for (const auto &src : pool)
    for (const auto &dst : pool) {
      auto sing = enumerate_maps(src, dst, [](const TowerMapClass &c) { return c.singular; });
      auto reg = enumerate_maps(src.dualize(), dst.dualize(),
                                [](const TowerMapClass &c) { return c.regular; });
      if (sing.size() != reg.size())
        return {false, "singular and regular hom-sets have different sizes"};
      // Dualization keeps element ids, so the bijection is the identity on
      // assignments.
      std::set<std::vector<std::map<int, int>>> regs;
      for (const auto &m : reg) regs.insert(m.levels);
      for (const auto &m : sing)
        if (!regs.count(m.levels)) return {false, "dualized map is missing from the dual hom-set"};
    }
  return {true, "involution, closed/open exchange, hom-set bijections"};
}

// --- 11: format and CLI ------------------------------------------------------------

Outcome criterion11() {
  const char *corpus_env = std::getenv("TRUSS_CORPUS");
  if (!corpus_env) return {false, "TRUSS_CORPUS is not set"};
  std::filesystem::path corpus(corpus_env);
  int docs = 0;
  for (const auto &entry : std::filesystem::directory_iterator(corpus)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path());
    std::ostringstream ss;
    ss << in.rdbuf();
    Document doc;
    try {
      doc = parse(ss.str());
    } catch (const ParseError &e) {
      return {false, entry.path().filename().string() + ": " + e.what()};
    }
    std::string printed = print(doc);
    if (!(parse(printed) == doc))
      return {false, entry.path().filename().string() + ": parse(print(x)) != x"};
    if (print(parse(printed)) != printed)
      return {false, entry.path().filename().string() + ": print is not canonical"};
    ++docs;
  }
  if (docs < 50) return {false, "corpus has only " + std::to_string(docs) + " documents"};

  const char *cli = std::getenv("TRUSS_CLI");
  if (!cli) return {false, "TRUSS_CLI is not set"};
  auto run = [&](const std::string &args) {
    int status = std::system((std::string(cli) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  std::filesystem::path tmp = std::filesystem::temp_directory_path();
  std::filesystem::path a = tmp / "truss_accept_a.truss";
  std::filesystem::path b = tmp / "truss_accept_b.truss";
  std::filesystem::path bad = tmp / "truss_accept_bad.truss";
  {
    std::ofstream out(a);
    out << "TRUSS v1\nn 1\nlevel 1\n  fiber 0 RSRSR\nlabel (0) x\nlabel (1) x\nlabel (2) x\n"
           "label (3) x\nlabel (4) x\n";
  }
  {
    std::ofstream out(b);
    out << "TRUSS v1\nn 1\nlevel 1\n  fiber 0 SRS\nlabel (0) x\nlabel (1) x\nlabel (2) x\n";
  }
  {
    std::ofstream out(bad);
    out << "TRUSS v1\nn 1\nlevel 1\n  fiber 0 SS\n";
  }
  if (run("validate " + a.string()) != 0) return {false, "validate on a valid file is not 0"};
  if (run("validate " + bad.string()) != 2) return {false, "validate on a broken file is not 2"};
  if (run("normalize " + a.string()) != 0) return {false, "normalize exit code is not 0"};
  if (run("decide-iso " + a.string() + " " + a.string()) != 0)
    return {false, "decide-iso on isomorphic inputs is not 0"};
  if (run("decide-iso " + a.string() + " " + b.string()) != 1)
    return {false, "decide-iso on non-isomorphic inputs is not 1"};
  std::ostringstream os;
  os << docs << " corpus documents round trip; CLI exit codes 0/1/2 honored";
  return {true, os.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 scaffold laws", criterion1},
      {"2 bordism algebra", criterion2},
      {"3 classification/totalization", criterion3},
      {"4 compactification", criterion4},
      {"5 normalization confluence", criterion5},
      {"6 decidability", criterion6},
      {"7 translation roundtrips", criterion7},
      {"8 cellularity desk check", criterion8},
      {"9 rigidity & factorization", criterion9},
      {"10 dualization", criterion10},
      {"11 format & CLI", criterion11},
  };
  bool all = true;
  for (auto &[name, fn] : criteria) {
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    all &= out.pass;
    std::cout << "criterion " << name << ": " << (out.pass ? "PASS" : "FAIL") << " - "
              << out.detail << "\n";
  }
  return all ? 0 : 1;
}
