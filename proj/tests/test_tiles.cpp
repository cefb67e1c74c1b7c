#include <doctest.h>

#include "helpers.hpp"
#include "tilekit/tiles.hpp"

using namespace tilekit;

TEST_CASE("single tile on a 1x1 grid has no adjacent pairs") {
  TilingInstance inst;
  inst.rules = RuleSet::allZero({"a"});
  inst.bc = BoundaryCondition::open();
  Tiling t(1, 1, 0);
  auto rep = validateTiling(inst, t);
  CHECK(rep.totalCost == 0);
  CHECK(rep.violations.empty());
  CHECK(rep.boundary.empty());
}

TEST_CASE("periodic 1x1 grid pairs the cell with itself on both axes") {
  TilingInstance inst;
  inst.rules = RuleSet::allZero({"a"});
  inst.rules.h(0, 0) = 2;
  inst.rules.v(0, 0) = 3;
  inst.costBound = Polynomial::constant(100);
  inst.bc = BoundaryCondition::periodic();
  auto rep = validateTiling(inst, Tiling(1, 1, 0));
  CHECK(rep.totalCost == 5);
}

TEST_CASE("border-style rule set validates the standard 5x5 frame") {
  // C,W,E,N,S plus one free interior tile; pair rules follow the usual
  // frame construction with the interior entries left permissive.
  RuleSet r = RuleSet::allForbidden({"C", "W", "E", "N", "S", "i"});
  auto allow = [&](const char* a, const char* b, bool horizontal) {
    int i = r.indexOf(a), j = r.indexOf(b);
    (horizontal ? r.h(i, j) : r.v(i, j)) = 0;
  };
  // horizontal: left tile -> right tile
  allow("C", "N", true);
  allow("C", "S", true);
  allow("W", "E", true);
  allow("N", "C", true);
  allow("N", "N", true);
  allow("S", "C", true);
  allow("S", "S", true);
  allow("W", "i", true);
  allow("i", "E", true);
  allow("i", "i", true);
  // vertical: below tile -> above tile
  allow("C", "W", false);
  allow("C", "E", false);
  allow("W", "C", false);
  allow("W", "W", false);
  allow("E", "C", false);
  allow("E", "E", false);
  allow("S", "N", false);
  allow("S", "i", false);
  allow("i", "N", false);
  allow("i", "i", false);

  TilingInstance inst{r, BoundaryCondition::fourCorners(r.indexOf("C")), {}};
  const int n = 5;
  Tiling t(n, n, r.indexOf("i"));
  for (int c = 2; c < n; ++c) {
    t.at(1, c) = r.indexOf("N");
    t.at(n, c) = r.indexOf("S");
  }
  for (int row = 2; row < n; ++row) {
    t.at(row, 1) = r.indexOf("W");
    t.at(row, n) = r.indexOf("E");
  }
  t.at(1, 1) = t.at(1, n) = t.at(n, 1) = t.at(n, n) = r.indexOf("C");
  auto rep = validateTiling(inst, t);
  CHECK(rep.violations.empty());
  CHECK(rep.boundary.empty());

  SUBCASE("a misplaced corner is reported as a boundary mismatch") {
    t.at(1, 1) = r.indexOf("N");
    auto bad = validateTiling(inst, t);
    CHECK(bad.boundary.size() == 1);
    CHECK(bad.boundary[0].expected == r.indexOf("C"));
  }
}

TEST_CASE("checkSymmetry classifies rule sets") {
  RuleSet one = RuleSet::allZero({"a"});
  CHECK(checkSymmetry(one) == Symmetry::Rotation);

  std::mt19937 rng(7);
  RuleSet r = testing::randomRules(rng, 3, false);
  testing::symmetrize(r, false);
  // make sure h != v so this is reflection only
  r.h(0, 1) = r.h(1, 0) = 2;
  r.v(0, 1) = r.v(1, 0) = 3;
  CHECK(checkSymmetry(r) == Symmetry::Reflection);

  testing::symmetrize(r, true);
  CHECK(checkSymmetry(r) == Symmetry::Rotation);

  r.h(0, 1) = 5;  // break symmetry
  CHECK(checkSymmetry(r) == Symmetry::None);
}

TEST_CASE("validation cost is invariant under the rule set's symmetry") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    RuleSet r = testing::randomRules(rng, 3, false);
    testing::symmetrize(r, trial % 2 == 1);
    TilingInstance inst{r, BoundaryCondition::open(), {}};
    Tiling t = testing::randomTiling(rng, 3, 4);

    auto base = validateTiling(inst, t);

    // horizontal mirror
    Tiling mh = t;
    for (int row = 1; row <= 4; ++row)
      for (int c = 1; c <= 4; ++c) mh.at(row, c) = t.at(row, 5 - c);
    CHECK(validateTiling(inst, mh).totalCost == base.totalCost);

    // vertical mirror
    Tiling mv = t;
    for (int row = 1; row <= 4; ++row)
      for (int c = 1; c <= 4; ++c) mv.at(row, c) = t.at(5 - row, c);
    CHECK(validateTiling(inst, mv).totalCost == base.totalCost);

    if (trial % 2 == 1) {  // rotation symmetry: quarter turn
      Tiling rot = t;
      for (int row = 1; row <= 4; ++row)
        for (int c = 1; c <= 4; ++c) rot.at(row, c) = t.at(c, 5 - row);
      CHECK(validateTiling(inst, rot).totalCost == base.totalCost);
    }
  }
}

TEST_CASE("periodic cost is invariant under cyclic shifts") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    RuleSet r = testing::randomRules(rng, 3, false);
    TilingInstance inst{r, BoundaryCondition::periodic(), Polynomial::constant(1000)};
    Tiling t = testing::randomTiling(rng, 3, 4);
    auto base = validateTiling(inst, t);
    std::uniform_int_distribution<int> d(0, 3);
    int dr = d(rng), dc = d(rng);
    Tiling s(4, 4);
    for (int row = 1; row <= 4; ++row)
      for (int c = 1; c <= 4; ++c)
        s.at(row, c) = t.at((row - 1 + dr) % 4 + 1, (c - 1 + dc) % 4 + 1);
    CHECK(validateTiling(inst, s).totalCost == base.totalCost);
  }
}

TEST_CASE("layered product: two 2-tile layers with no constraints") {
  LayerSpec spec;
  spec.layers.push_back(RuleSet::allZero({"a", "b"}));
  spec.layers.push_back(RuleSet::allZero({"x", "y"}));
  auto prod = buildLayeredRuleSet(spec);
  CHECK(prod.rules.size() == 4);
  CHECK(prod.rules.tiles[0] == "a|x");
}

TEST_CASE("cross-layer pairs drop excluded tuples") {
  LayerSpec spec;
  spec.layers.push_back(RuleSet::allZero({"a", "b"}));
  spec.layers.push_back(RuleSet::allZero({"x", "y"}));
  CrossLayerPairs cp;
  cp.layerA = 0;
  cp.layerB = 1;
  cp.allowed = {1, 1, 1, 0};  // (b,y) excluded
  spec.crossLayerPairs.push_back(cp);
  auto prod = buildLayeredRuleSet(spec);
  CHECK(prod.rules.size() == 3);
  for (const auto& name : prod.rules.tiles) CHECK(name != "b|y");
}

TEST_CASE("layered validation equals the sum of per-layer validations plus conditional terms") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    LayerSpec spec;
    spec.layers.push_back(testing::randomRules(rng, 2, false, 0.0));
    spec.layers.push_back(testing::randomRules(rng, 2, false, 0.0));
    const Weight bonus = trial % 3;  // conditional contribution per pair
    spec.conditionalAdjacency = [bonus](bool, const TileTuple& a, const TileTuple& b) -> Weight {
      return (a[0] == b[1]) ? bonus : 0;
    };
    auto prod = buildLayeredRuleSet(spec);
    TilingInstance pinst{prod.rules, BoundaryCondition::open(), Polynomial::constant(100000)};

    Tiling t = testing::randomTiling(rng, prod.rules.size(), 3);
    Weight total = validateTiling(pinst, t).totalCost;

    Weight expected = 0;
    for (int layer = 0; layer < 2; ++layer) {
      Tiling lt(3, 3);
      for (int i = 0; i < 9; ++i) lt.cells[i] = prod.tuples[t.cells[i]][layer];
      TilingInstance li{spec.layers[layer], BoundaryCondition::open(),
                        Polynomial::constant(100000)};
      expected += validateTiling(li, lt).totalCost;
    }
    // conditional terms, accumulated the same way validateTiling walks pairs
    for (int row = 1; row <= 3; ++row)
      for (int c = 1; c <= 3; ++c) {
        if (c < 3)
          expected += spec.conditionalAdjacency(true, prod.tuples[t.at(row, c)],
                                                prod.tuples[t.at(row, c + 1)]);
        if (row < 3)
          expected += spec.conditionalAdjacency(false, prod.tuples[t.at(row + 1, c)],
                                                prod.tuples[t.at(row, c)]);
      }
    CHECK(total == expected);
  }
}
