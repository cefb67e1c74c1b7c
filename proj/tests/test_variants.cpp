#include <doctest.h>

#include "helpers.hpp"
#include "tilekit/variants.hpp"

using namespace tilekit;

TEST_CASE("fixture registry is closed and checksummed") {
  for (const auto& name : fixtureNames()) {
    CAPTURE(name);
    auto f = fixture(name);
    CHECK((f.instance.has_value() || f.tiling.has_value()));
    CHECK(fixtureChecksum(name) != 0);
  }
  CHECK_THROWS_AS(fixture("no-such-fixture"), std::invalid_argument);
}

TEST_CASE("frozen fixture checksums") {
  // regenerate with `tilekit variant fixture NAME --json` after any
  // deliberate retranscription
  static const std::pair<const char*, uint64_t> frozen[] = {
      {"periodic-unweighted", 0xaeb0bb3f557bb844ull},
      {"weighted-open", 0x4c6cbf6c62c60704ull},
      {"weighted-periodic", 0xf5bc10b3e3686975ull},
      {"reflection-weighted-L1", 0xf88e6bd9209d3d5aull},
      {"reflection-weighted-L2L3", 0x2e12a5d3004bbeb0ull},
      {"periodic-reflection-weighted", 0x96c054f352bee91dull},
      {"periodic-reflection-L4", 0xc5f92f2d1f882dd4ull},
      {"rotation-fig13", 0x8511c27af4e23a15ull},
      {"golden-fig4-layer1", 0x52458add2860fa01ull},
      {"golden-fig4-layer2", 0x2242bdfe0606d47cull},
      {"golden-fig4-combined", 0x14d65b36d76afe6dull},
      {"golden-fig9", 0xe58aca5f9936ba38ull},
      {"golden-fig10", 0x7d1a4c028d445320ull},
      {"golden-fig13", 0x4b702e5290b2f7ull},
      {"golden-fig14", 0x173bb94d56a94928ull},
      {"golden-fig15", 0x78328c009766d8afull},
      {"golden-fig11-before", 0xd6c57d33a44dc837ull},
      {"golden-fig11-after", 0x1d31f00ca1cd974ull},
  };
  for (const auto& [name, sum] : frozen) {
    CAPTURE(name);
    CHECK(fixtureChecksum(name) == sum);
  }
}

TEST_CASE("periodic-unweighted fixture: layer sizes and the Fig. 4 golden grids") {
  auto f = fixture("periodic-unweighted");
  REQUIRE(f.layers.has_value());
  CHECK(f.layers->layers[0].size() == 7);
  CHECK(f.layers->layers[1].size() == 10);

  // layer 1 alone on the 7x7 torus
  auto g1 = fixture("golden-fig4-layer1");
  TilingInstance l1{f.layers->layers[0], BoundaryCondition::periodic(), {}};
  auto rep1 = validateTiling(l1, *g1.tiling);
  CHECK(rep1.violations.empty());
  CHECK(rep1.totalCost == 0);

  auto g2 = fixture("golden-fig4-layer2");
  TilingInstance l2{f.layers->layers[1], BoundaryCondition::periodic(), {}};
  auto rep2 = validateTiling(l2, *g2.tiling);
  CHECK(rep2.violations.empty());

  // combined arrangement under the product rules
  auto gc = fixture("golden-fig4-combined");
  auto repc = validateTiling(*f.instance, *gc.tiling);
  CHECK(repc.violations.empty());
  CHECK(repc.totalCost == 0);
}

TEST_CASE("Table 1-style boundary rules have no symmetry") {
  // the compiled boundary rules allow N left of C but not C left of N's
  // mirror; checked on the periodic layer-1 fixture instead: H left of C is
  // allowed, C left of H is allowed, but V below H differs from H below V
  auto f = fixture("periodic-unweighted");
  CHECK(checkSymmetry(f.layers->layers[0]) == Symmetry::None);
}

TEST_CASE("weighted-open fixture solves to -4 at N = 5") {
  auto f = fixture("weighted-open");
  auto res = solveGrid(*f.instance, 5, SolveMode::MinCost);
  REQUIRE(res.minCost.has_value());
  CHECK(*res.minCost == -4);
  CHECK(res.exists);  // p(N) = -4 exactly
  // the optimal layer has the four special tiles in their corners
  const auto& t = *res.witnessMin;
  const auto& rules = f.instance->rules;
  CHECK(rules.tiles[t.at(1, 1)] == "NW");
  CHECK(rules.tiles[t.at(1, 5)] == "NE");
  CHECK(rules.tiles[t.at(5, 1)] == "SW");
  CHECK(rules.tiles[t.at(5, 5)] == "SE");
  for (int r = 1; r <= 5; ++r)
    for (int c = 1; c <= 5; ++c)
      if ((r == 1 || r == 5) && (c == 1 || c == 5)) continue;
      else CHECK(rules.tiles[t.at(r, c)] == "White");
}

TEST_CASE("weighted-periodic fixture: oracle minimum on the 3x3 torus is frozen") {
  auto f = fixture("weighted-periodic");
  auto oracle = bruteForceGrid(*f.instance, 3);
  REQUIRE(oracle.minCost.has_value());
  // frozen from the exhaustive 5^9 enumeration; consistent with the allowed
  // bound of +2 (one border crossing)
  CHECK(*oracle.minCost == 2);
  auto dp = solveGrid(*f.instance, 3, SolveMode::MinCost);
  CHECK(dp.minCost == oracle.minCost);
}

TEST_CASE("reflection symmetry classification of the weighted fixtures") {
  CHECK(checkSymmetry(fixture("reflection-weighted-L1").instance->rules) ==
        Symmetry::Reflection);
  CHECK(checkSymmetry(fixture("periodic-reflection-weighted").instance->rules) ==
        Symmetry::Reflection);
}

TEST_CASE("Fig. 9 golden layer-1 costs 76-16N at N = 10") {
  auto f = fixture("reflection-weighted-L1");
  auto g = fixture("golden-fig9");
  auto rep = validateTiling(*f.instance, *g.tiling);
  CHECK(rep.violations.empty());
  CHECK(rep.totalCost == 76 - 16 * 10);
}

TEST_CASE("Fig. 9 + Fig. 10 combine cleanly under the three-layer rules") {
  auto spec = fixture("reflection-weighted-L2L3").layers;
  REQUIRE(spec.has_value());
  auto prod = buildLayeredRuleSet(*spec);
  auto l1 = fixture("golden-fig9").tiling;
  auto l2 = fixture("golden-fig10").tiling;
  // layer 3 golden: rows cycle downward P1,P2,P3 starting so that H rows are
  // P1: row 1 is the top H row -> P1; row r gets (r-1) mod 3
  Tiling combined(10, 10);
  for (int r = 1; r <= 10; ++r)
    for (int c = 1; c <= 10; ++c) {
      TileTuple want{l1->at(r, c), l2->at(r, c), (r - 1) % 3};
      int idx = -1;
      for (std::size_t k = 0; k < prod.tuples.size(); ++k)
        if (prod.tuples[k] == want) idx = static_cast<int>(k);
      REQUIRE(idx >= 0);
      combined.at(r, c) = idx;
    }
  TilingInstance inst{prod.rules, BoundaryCondition::open(), Polynomial({BigInt(76), BigInt(-16)})};
  auto rep = validateTiling(inst, combined);
  CHECK(rep.violations.empty());
  CHECK(rep.totalCost == 76 - 16 * 10);
}

TEST_CASE("row-pair minima reproduce the lemma constants at N = 10") {
  auto rules = fixture("reflection-weighted-L1").instance->rules;
  int vT = rules.indexOf("V"), cT = rules.indexOf("C");

  auto free = rowPairMinimum(rules, vT, cT, RowPairMode::WPrime, RowPairEnds::Free, 10);
  CHECK(free.minimum == -12);

  auto one = rowPairMinimum(rules, vT, cT, RowPairMode::WPrime, RowPairEnds::OneBlocked, 10);
  CHECK(one.minimum == -10);

  auto both = rowPairMinimum(rules, vT, cT, RowPairMode::WPrime, RowPairEnds::BothBlocked, 10);
  CHECK(both.minimum == 0);

  auto corners = rowPairMinimum(rules, vT, cT, RowPairMode::WDoublePrime, RowPairEnds::CornersC, 10);
  CHECK(corners.minimum == 58 - 10 * 10);

  SUBCASE("w'' with free ends is affine with slope -10") {
    std::vector<Weight> values;
    for (int n : {8, 10, 12, 14}) {
      values.push_back(
          rowPairMinimum(rules, vT, cT, RowPairMode::WDoublePrime, RowPairEnds::Free, n).minimum);
    }
    Weight intercept = values[0] + 10 * 8;
    for (std::size_t i = 0; i < values.size(); ++i)
      CHECK(values[i] == intercept - 10 * (8 + 2 * (int)i));
    // the lemma text and its derivation disagree (24 vs 22); record which one
    // the rules actually produce
    CHECK((intercept == 22 || intercept == 24));
    MESSAGE("w'' free-end intercept: ", intercept);
  }

  SUBCASE("optimal free-end row pairs have the lemma's structure") {
    // exactly one Ring/Circ per row, V at both ends, and the marks in the two
    // rows diagonally adjacent
    auto isMark = [&](int t) {
      return rules.tiles[t] == "Ring" || rules.tiles[t] == "Circ";
    };
    for (int rowSel : {0, 1}) {
      int count = 0;
      for (auto& [u, v] : free.rows) count += isMark(rowSel == 0 ? u : v) ? 1 : 0;
      CHECK(count == 1);
    }
    CHECK(free.rows.front().first == vT);
    CHECK(free.rows.front().second == vT);
    CHECK(free.rows.back().first == vT);
    CHECK(free.rows.back().second == vT);
    int posTop = -1, posBottom = -1;
    for (int c = 0; c < 10; ++c) {
      if (isMark(free.rows[c].first)) posTop = c;
      if (isMark(free.rows[c].second)) posBottom = c;
    }
    CHECK(std::abs(posTop - posBottom) == 1);
  }
}

TEST_CASE("Fig. 14 golden costs 6N-2 at N = 9 on the torus") {
  auto f = fixture("periodic-reflection-weighted");
  auto g = fixture("golden-fig14");
  auto rep = validateTiling(*f.instance, *g.tiling);
  CHECK(rep.violations.empty());
  CHECK(rep.totalCost == 6 * 9 - 2);
}

TEST_CASE("Fig. 15 layer-4 golden validates with no forbidden pairs") {
  auto f = fixture("periodic-reflection-L4");
  auto g = fixture("golden-fig15");
  auto rep = validateTiling(*f.instance, *g.tiling);
  CHECK(rep.violations.empty());
  CHECK(rep.totalCost == 0);

  SUBCASE("layer 1/4 compatibility holds sitewise for Figs. 14/15") {
    auto f14 = fixture("golden-fig14");
    auto l1rules = fixture("periodic-reflection-weighted").instance->rules;
    // compatibility table rows follow the layer-1 tile order
    auto compatRow = [&](const std::string& l1name) -> std::string {
      if (l1name == "H" || l1name == "Hrev") return "H-only";
      if (l1name == "Ring") return "ring";
      return "body";
    };
    for (int r = 1; r <= 9; ++r)
      for (int c = 1; c <= 9; ++c) {
        std::string l1n = l1rules.tiles[f14.tiling->at(r, c)];
        std::string l4n = f.instance->rules.tiles[g.tiling->at(r, c)];
        std::string row = compatRow(l1n);
        if (row == "H-only") CHECK(l4n == "H");
        if (row == "body") CHECK((l4n != "H" && l4n != "C"));
      }
  }
}

TEST_CASE("Fig. 11: the reflection extension reproduces the figure") {
  auto before = fixture("golden-fig11-before").tiling;
  auto after = fixture("golden-fig11-after").tiling;
  // an all-zero symmetric instance over the same tile universe lets the
  // transform run; the figure pins the expected cells exactly
  int m = 0;
  for (int cidx : before->cells) m = std::max(m, cidx + 1);
  std::vector<std::string> tiles;
  for (int i = 0; i < m; ++i) tiles.push_back("u" + std::to_string(i));
  TilingInstance inst{RuleSet::allZero(tiles), BoundaryCondition::open(), {}};
  auto out = extendReflection(inst, *before);
  CHECK(out.cells == after->cells);
}

TEST_CASE("extension preserves validity on random symmetric instances") {
  std::mt19937 rng(99);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 50; ++trial) {
    RuleSet r = testing::randomRules(rng, 3, true, 0.35);
    testing::symmetrize(r, false);
    TilingInstance inst{r, BoundaryCondition::open(), {}};
    auto base = solveGrid(inst, 4, SolveMode::Exists);
    if (!base.exists) continue;
    auto big = extendReflection(inst, *base.witness);
    CHECK(big.width == 6);
    auto rep = validateTiling(inst, big);
    CHECK(rep.violations.empty());
    // and once more to 8x8
    auto bigger = extendReflection(inst, big);
    CHECK(validateTiling(inst, bigger).violations.empty());
    ++done;
  }
  CHECK(done == 50);
}

TEST_CASE("rotation fill") {
  SUBCASE("single tile gives the uniform grid") {
    RuleSet r = RuleSet::allZero({"t"});
    auto t = rotationFill(r, std::vector<int>(5, 0));
    for (int cell : t.cells) CHECK(cell == 0);
  }
  SUBCASE("Fig. 13's side sequence reproduces the figure") {
    auto f = fixture("rotation-fig13");
    auto g = fixture("golden-fig13");
    std::vector<int> side;
    for (int c = 1; c <= 6; ++c) side.push_back(g.tiling->at(1, c));
    auto filled = rotationFill(f.instance->rules, side);
    CHECK(filled.cells == g.tiling->cells);
    CHECK(validateTiling(*f.instance, filled).violations.empty());
  }
  SUBCASE("random rotation-symmetric rules with a brute-forced side") {
    std::mt19937 rng(7);
    int done = 0;
    for (int trial = 0; trial < 300 && done < 50; ++trial) {
      RuleSet r = testing::randomRules(rng, 3, true, 0.4);
      testing::symmetrize(r, true);
      // find a valid side of length 5 with matching ends by line DP
      auto line = solveLine(r, 0, 0, BigInt(5), SolveMode::Exists, 100);
      if (!line.exists || !line.witness) continue;
      auto filled = rotationFill(r, *line.witness);
      TilingInstance inst{r, BoundaryCondition::fourCorners(0), {}};
      auto rep = validateTiling(inst, filled);
      CHECK(rep.violations.empty());
      CHECK(rep.boundary.empty());
      ++done;
    }
    CHECK(done >= 30);
  }
}

TEST_CASE("rotation thresholds") {
  SUBCASE("self-loop: every length works") {
    RuleSet r = RuleSet::allZero({"t1", "t2"});
    CHECK(rotationThresholds(r, 0) == std::pair<long long, long long>{2, 1});
  }
  SUBCASE("pure alternation: even sides impossible") {
    RuleSet r = RuleSet::allForbidden({"t1", "t2"});
    r.h(0, 1) = r.h(1, 0) = 0;
    r.v(0, 1) = r.v(1, 0) = 0;
    auto [ne, no] = rotationThresholds(r, 0);
    CHECK(ne == kNoSide);
    CHECK(no == 3);
    // cross-check against brute-force side search
    for (int n = 2; n <= 8; ++n) {
      bool found = false;
      // enumerate sides: walks of n-1 edges from t1 to t1
      std::vector<int> walk{0};
      auto dfs = [&](auto&& self) -> void {
        if ((int)walk.size() == n) {
          if (walk.back() == 0) found = true;
          return;
        }
        for (int nxt = 0; nxt < 2 && !found; ++nxt)
          if (!isForbid(r.h(walk.back(), nxt))) {
            walk.push_back(nxt);
            self(self);
            walk.pop_back();
          }
      };
      dfs(dfs);
      bool predicted = (n % 2 == 0) ? (ne != kNoSide && n >= ne) : (no != kNoSide && n >= no);
      CAPTURE(n);
      CHECK(found == predicted);
    }
  }
  SUBCASE("empty adjacency") {
    RuleSet r = RuleSet::allForbidden({"t1", "t2"});
    auto [ne, no] = rotationThresholds(r, 0);
    CHECK(ne == kNoSide);
    CHECK(no == kNoSide);
  }
}

TEST_CASE("weighted rotation decisions") {
  SUBCASE("open: 2N(N-1)w") {
    RuleSet r = RuleSet::allZero({"a", "b"});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.h(i, j) = r.v(i, j) = (i == j) ? 3 : -1;
    TilingInstance inst{r, BoundaryCondition::open(), Polynomial::constant(-24)};
    auto res = weightedRotationDecide(inst, 4);
    REQUIRE(res.minCost.has_value());
    CHECK(*res.minCost == -24);
    CHECK(res.exists);
    CHECK(validateTiling(inst, *res.witnessMin).totalCost == -24);
  }
  SUBCASE("periodic matches the oracle on 3x3 tori") {
    std::mt19937 rng(55);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 25; ++trial) {
      RuleSet r = testing::randomRules(rng, 3, false, 0.15);
      testing::symmetrize(r, true);
      TilingInstance inst{r, BoundaryCondition::periodic(), Polynomial::constant(100)};
      auto fast = weightedRotationDecide(inst, 3);
      auto slow = bruteForceGrid(inst, 3);
      CAPTURE(trial);
      REQUIRE(fast.minCost.has_value() == slow.minCost.has_value());
      if (slow.minCost) CHECK(*fast.minCost == *slow.minCost);
      ++done;
    }
    CHECK(done == 25);
  }
  SUBCASE("four corners matches the oracle") {
    // three tiles, one zero-cost component {a,b}, positive elsewhere
    RuleSet r = RuleSet::allZero({"t1", "a", "b"});
    auto set = [&](const char* x, const char* y, Weight w) {
      int i = r.indexOf(x), j = r.indexOf(y);
      r.h(i, j) = r.h(j, i) = w;
      r.v(i, j) = r.v(j, i) = w;
    };
    set("t1", "t1", 1);
    set("t1", "a", 0);
    set("t1", "b", 1);
    set("a", "a", 2);
    set("a", "b", 0);
    set("b", "b", 1);
    TilingInstance inst{r, BoundaryCondition::fourCorners(0), Polynomial::constant(0)};
    for (int n = 4; n <= 7; ++n) {
      auto fast = weightedRotationDecide(inst, n);
      // exhaustive enumeration tops out at N=4; the row-DP solver (itself
      // oracle-checked) covers the rest
      auto slow = n == 4 ? bruteForceGrid(inst, n) : solveGrid(inst, n, SolveMode::Exists);
      CAPTURE(n);
      CHECK(fast.exists == slow.exists);
    }
  }
}
