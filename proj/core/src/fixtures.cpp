#include <map>
#include <sstream>

#include "tilekit/variants.hpp"

namespace tilekit {

namespace {

// Weight rows as compact strings: integers or F (forbidden), space separated.
RuleSet rulesFromTable(std::vector<std::string> tiles, const std::vector<std::string>& hRows,
                       const std::vector<std::string>& vRows) {
  const std::size_t m = tiles.size();
  RuleSet r;
  r.tiles = std::move(tiles);
  auto parse = [&](const std::vector<std::string>& rows, std::vector<Weight>& out) {
    out.clear();
    for (const auto& rowText : rows) {
      std::istringstream iss(rowText);
      std::string cell;
      std::size_t count = 0;
      while (iss >> cell) {
        if (cell == "F")
          out.push_back(kForbid);
        else
          out.push_back(std::stoll(cell));
        ++count;
      }
      if (count != m) throw std::logic_error("fixture table row has wrong arity");
    }
    if (out.size() != m * m) throw std::logic_error("fixture table has wrong shape");
  };
  parse(hRows, r.hWeight);
  parse(vRows, r.vWeight);
  return r;
}

Tiling tilingFromNames(const RuleSet& rules, const std::vector<std::vector<std::string>>& rows) {
  Tiling t;
  t.height = static_cast<int>(rows.size());
  t.width = static_cast<int>(rows[0].size());
  for (const auto& row : rows) {
    if ((int)row.size() != t.width) throw std::logic_error("ragged golden tiling");
    for (const auto& name : row) t.cells.push_back(rules.indexOf(name));
  }
  return t;
}

// --- PERIODIC tiling, layer 1 (7 tiles) -----------------------------------

RuleSet periodicLayer1() {
  return rulesFromTable({"H", "V", "C", "White", "WhiteU", "Black", "BlackD"},
                        {
                            "0 F 0 F F F F",  // H
                            "F F F 0 F 0 0",  // V
                            "0 F F F F F F",  // C
                            "F 0 F F F 0 0",  // White
                            "F 0 F F F 0 F",  // WhiteU
                            "F 0 F 0 F F F",  // Black
                            "F 0 F F 0 F F",  // BlackD
                        },
                        {
                            "F F F 0 F 0 0",  // H below
                            "F 0 0 F F F F",  // V
                            "F 0 F F F F F",  // C
                            "0 F F F F 0 0",  // White
                            "0 F F F F 0 F",  // WhiteU
                            "0 F F 0 F F F",  // Black
                            "0 F F F 0 F F",  // BlackD
                        });
}

// --- PERIODIC tiling, layer 2 (10 tiles) -----------------------------------

RuleSet periodicLayer2() {
  return rulesFromTable({"N", "S", "E", "W", "NW", "NE", "SW", "SE", "Light", "Dark"},
                        {
                            "0 F F F F 0 F F F F",  // N
                            "F 0 F F F F F 0 F F",  // S
                            "F F F F F F F F F 0",  // E
                            "F F F F F F F F 0 F",  // W
                            "0 F F F F F F F F F",  // NW
                            "F F F F F F F F F 0",  // NE
                            "F 0 F F F F F F F F",  // SW
                            "F F F F F F F F F 0",  // SE
                            "F F 0 F F F F F 0 F",  // Light
                            "F F F 0 0 F 0 F F 0",  // Dark
                        },
                        {
                            "F F F F F F F F F 0",  // N below
                            "F F F F F F F F 0 F",  // S
                            "F F 0 F F 0 F F F F",  // E
                            "F F F 0 0 F F F F F",  // W
                            "F F F F F F F F F 0",  // NW
                            "F F F F F F F F F 0",  // NE
                            "F F F 0 F F F F F F",  // SW
                            "F F 0 F F F F F F F",  // SE
                            "0 F F F F F F F 0 F",  // Light
                            "F 0 F F F F 0 0 F 0",  // Dark
                        });
}

const char* kPeriodicCompat[7] = {
    // columns: N S E W NW NE SW SE Light Dark
    "0 0 0 0 0 0 0 0 0 1",  // H
    "0 0 0 0 0 0 0 0 0 1",  // V
    "0 0 0 0 0 0 0 0 0 1",  // C
    "1 1 1 1 0 1 1 0 1 0",  // White
    "1 1 1 1 0 1 1 0 1 0",  // WhiteU
    "1 1 1 1 0 1 1 0 1 0",  // Black
    "0 0 0 0 1 0 0 1 1 0",  // BlackD
};

LayerSpec periodicUnweightedSpec() {
  LayerSpec spec;
  spec.layers.push_back(periodicLayer1());
  spec.layers.push_back(periodicLayer2());
  CrossLayerPairs cp;
  cp.layerA = 0;
  cp.layerB = 1;
  for (int i = 0; i < 7; ++i) {
    std::istringstream iss(kPeriodicCompat[i]);
    int v;
    while (iss >> v) cp.allowed.push_back(static_cast<uint8_t>(v));
  }
  spec.crossLayerPairs.push_back(cp);
  return spec;
}

// --- WEIGHTED open (Table of five special tiles) ----------------------------

RuleSet weightedOpenRules() {
  return rulesFromTable({"NW", "NE", "SW", "SE", "White"},
                        {
                            "4 4 4 4 -1",
                            "4 4 4 4 2",
                            "4 4 4 4 -1",
                            "4 4 4 4 2",
                            "2 -1 2 -1 0",
                        },
                        {
                            "4 4 4 4 2",
                            "4 4 4 4 2",
                            "4 4 4 4 0",
                            "4 4 4 4 0",
                            "0 0 2 2 0",
                        });
}

// --- WEIGHTED periodic -------------------------------------------------------

RuleSet weightedPeriodicRules() {
  return rulesFromTable({"White", "Black", "H", "V", "C"},
                        {
                            "3 0 3 0 3",
                            "0 3 3 0 3",
                            "3 3 0 3 1",
                            "0 0 3 3 3",
                            "3 3 1 3 3",
                        },
                        {
                            "3 0 0 3 3",
                            "0 3 0 3 3",
                            "0 0 3 3 3",
                            "3 3 3 0 0",
                            "3 3 3 0 3",
                        });
}

// --- WEIGHTED reflection, layer 1 (Table of nine tiles) ----------------------

RuleSet reflectionWeightedL1() {
  return rulesFromTable(
      {"V", "H", "C", "Black", "White", "Dark", "Light", "Ring", "Circ"},
      {
          "30 30 30 30 6 6 30 30 7",     // V
          "30 -11 0 30 30 30 30 30 30",  // H
          "30 0 30 30 30 30 30 30 30",   // C
          "30 30 30 30 0 30 30 1 30",    // Black
          "6 30 30 0 30 30 30 1 1",      // White
          "6 30 30 30 30 30 0 1 1",      // Dark
          "30 30 30 30 30 0 30 1 30",    // Light
          "30 30 30 1 1 1 1 30 30",      // Ring
          "7 30 30 30 1 1 30 30 30",     // Circ
      },
      {
          "-11 30 0 30 30 30 30 30 30",  // V
          "30 30 30 6 6 6 6 30 7",       // H
          "0 30 30 30 30 30 30 30 30",   // C
          "30 6 30 30 30 30 0 1 30",     // Black
          "30 6 30 30 30 0 30 1 1",      // White
          "30 6 30 30 0 30 30 1 1",      // Dark
          "30 6 30 0 30 30 30 1 30",     // Light
          "30 30 30 1 1 1 1 30 30",      // Ring
          "30 7 30 30 1 1 30 30 30",     // Circ
      });
}

// Stripe layers for the reflection-weighted construction: three tiles that
// may only repeat along one axis, with the cycle direction pinned against
// layer-1 near the diagonal markers.
RuleSet stripeLayer(bool vertical) {
  // vertical=true: layer 2 (columns of one tile); vertical=false: layer 3
  RuleSet r = RuleSet::allZero({"P1", "P2", "P3"});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (vertical) {
        r.v(i, j) = i == j ? 0 : 30;
        r.h(i, j) = 0;  // refined by the conditional rules
      } else {
        r.h(i, j) = i == j ? 0 : 30;
        r.v(i, j) = 0;
      }
    }
  // same tiles may not repeat along the cycling axis
  for (int i = 0; i < 3; ++i) {
    if (vertical)
      r.h(i, i) = 30;
    else
      r.v(i, i) = 30;
  }
  return r;
}

LayerSpec reflectionWeightedSpec() {
  LayerSpec spec;
  spec.layers.push_back(reflectionWeightedL1());
  spec.layers.push_back(stripeLayer(true));
  spec.layers.push_back(stripeLayer(false));
  const RuleSet l1 = spec.layers[0];
  const int vT = l1.indexOf("V"), hT = l1.indexOf("H"), cT = l1.indexOf("C");
  const int ring = l1.indexOf("Ring"), circ = l1.indexOf("Circ");
  const int black = l1.indexOf("Black"), white = l1.indexOf("White");
  const int dark = l1.indexOf("Dark"), light = l1.indexOf("Light");

  auto isMark = [=](int t) { return t == ring || t == circ; };
  auto isBorder = [=](int t) { return t == vT || t == hT || t == cT; };
  auto next = [](int p) { return (p + 1) % 3; };

  spec.conditionalAdjacency = [=](bool horizontal, const TileTuple& a,
                                  const TileTuple& b) -> Weight {
    Weight w = 0;
    // site couplings are enforced on both members of the pair
    auto site = [&](const TileTuple& t) -> Weight {
      Weight s = 0;
      if ((t[0] == vT || t[0] == cT) && t[1] != 0) s += 30;  // V/C forces P1 on layer 2
      if (t[0] == hT && t[2] != 0) s += 30;                  // H forces P1 on layer 3
      return s;
    };
    // site terms ride on every incident pair; overcounting a forbidden site
    // only strengthens the rejection and costs nothing on clean tilings
    w += site(a) + site(b);

    if (horizontal) {
      // layer 2 cycling against layer-1 marks
      int l1a = a[0], l1b = b[0], p = a[1], q = b[1];
      if (p != q && !isBorder(l1a) && !isBorder(l1b)) {
        bool oneMark = isMark(l1a) != isMark(l1b);
        if (oneMark) {
          bool ok = false;
          if (isMark(l1a) && (l1b == white || l1b == light) && q == next(p)) ok = true;
          if (isMark(l1b) && (l1a == black || l1a == dark) && q == next(p)) ok = true;
          if (!ok) w += 30;
        }
      }
    } else {
      // layer 3 cycling: `a` is below, `b` above; rows cycle downward
      int l1b = b[0], l1a = a[0], p = b[2], q = a[2];  // q = next(p) going down
      if (p != q && !isBorder(l1a) && !isBorder(l1b)) {
        bool oneMark = isMark(l1a) != isMark(l1b);
        if (oneMark) {
          bool ok = false;
          if (isMark(l1b) && (l1a == white || l1a == light) && q == next(p)) ok = true;
          if (isMark(l1a) && (l1b == black || l1b == dark) && q == next(p)) ok = true;
          if (!ok) w += 30;
        }
      }
    }
    return w;
  };
  return spec;
}

// --- WEIGHTED reflection, periodic: layers 1 and 4 ---------------------------

RuleSet periodicReflectionL1() {
  return rulesFromTable({"H", "Hrev", "Black", "White", "Dark", "Light", "Ring"},
                        {
                            "30 0 30 30 30 30 1",
                            "0 30 30 30 30 30 1",
                            "30 30 30 0 30 30 1",
                            "30 30 0 30 30 30 1",
                            "30 30 30 30 30 0 1",
                            "30 30 30 30 0 30 1",
                            "1 1 1 1 1 1 30",
                        },
                        {
                            "30 30 1 30 1 30 2",
                            "30 30 30 1 30 1 2",
                            "1 30 30 30 30 0 1",
                            "30 1 30 30 0 30 1",
                            "1 30 30 0 30 30 1",
                            "30 1 0 30 30 30 1",
                            "2 2 1 1 1 1 30",
                        });
}

RuleSet periodicReflectionL4() {
  return rulesFromTable(
      {"N", "S", "E", "W", "NW", "NE", "SW", "SE", "White", "H", "V", "C"},
      {
          "0 30 30 30 30 0 30 30 30 30 30 30",    // N
          "30 0 30 30 30 30 30 0 30 30 30 30",    // S
          "30 30 30 30 30 30 30 30 30 30 0 30",   // E
          "30 30 30 30 30 30 30 30 0 30 30 30",   // W
          "0 30 30 30 30 0 30 30 30 30 30 30",    // NW
          "30 30 30 30 30 30 30 30 30 30 0 30",   // NE
          "30 0 30 30 30 30 30 0 30 30 30 30",    // SW
          "30 30 30 30 30 30 30 30 30 30 0 30",   // SE
          "30 30 0 30 30 30 30 30 0 30 30 30",    // White
          "30 30 30 30 30 30 30 30 30 0 30 0",    // H
          "30 30 30 0 0 30 0 30 30 30 30 30",     // V
          "30 30 30 30 30 30 30 30 30 0 30 30",   // C
      },
      {
          "30 30 30 30 30 30 30 30 30 0 30 30",   // N
          "30 30 30 30 30 30 30 30 0 30 30 30",   // S
          "30 30 0 30 30 0 30 30 30 30 30 30",    // E
          "30 30 30 0 0 30 30 30 30 30 30 30",    // W
          "30 30 30 30 30 30 30 30 30 0 30 30",   // NW
          "30 30 30 30 30 30 30 30 30 0 30 30",   // NE
          "30 30 30 0 0 30 30 30 30 30 30 30",    // SW
          "30 30 0 30 30 0 30 30 30 30 30 30",    // SE
          "0 30 30 30 30 30 30 30 0 30 30 30",    // White
          "30 0 30 30 30 30 0 0 30 30 30 30",     // H
          "30 30 30 30 30 30 30 30 30 30 0 0",    // V
          "30 30 30 30 30 30 30 30 30 30 0 30",   // C
      });
}

const char* kPeriodicReflectionCompat[7] = {
    // L4 columns: N S E W NW NE SW SE White H V C
    "0 0 0 0 0 0 0 0 0 1 0 0",  // H
    "0 0 0 0 0 0 0 0 0 1 0 0",  // Hrev
    "1 1 1 1 1 1 1 1 1 0 1 0",  // Black
    "1 1 1 1 1 1 1 1 1 0 1 0",  // White
    "1 1 1 1 1 1 1 1 1 0 1 0",  // Dark
    "1 1 1 1 1 1 1 1 1 0 1 0",  // Light
    "1 1 1 1 1 1 1 1 1 0 1 1",  // Ring
};

// --- golden grids -----------------------------------------------------------

std::vector<std::vector<std::string>> splitGrid(const std::vector<std::string>& rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows) {
    std::istringstream iss(r);
    std::vector<std::string> row;
    std::string cell;
    while (iss >> cell) row.push_back(cell);
    out.push_back(row);
  }
  return out;
}

const std::vector<std::string> kFig4Layer1 = {
    "White BlackD WhiteU V Black White Black",
    "Black White BlackD V White Black White",
    "H H H C H H H",
    "White Black White V BlackD WhiteU Black",
    "Black White Black V White BlackD WhiteU",
    "WhiteU Black White V Black White BlackD",
    "BlackD WhiteU Black V White Black White",
};

const std::vector<std::string> kFig4Layer2 = {
    "Light Light E Dark W Light Light",
    "S S SE Dark SW S S",
    "Dark Dark Dark Dark Dark Dark Dark",
    "N N NE Dark NW N N",
    "Light Light E Dark W Light Light",
    "Light Light E Dark W Light Light",
    "Light Light E Dark W Light Light",
};

const std::vector<std::string> kFig9 = {
    "C H H H H H H H H C",
    "V Dark Light Dark Light Dark Light Dark Circ V",
    "V White Black White Black White Black Ring White V",
    "V Dark Light Dark Light Dark Ring Light Dark V",
    "V White Black White Black Ring White Black White V",
    "V Dark Light Dark Ring Light Dark Light Dark V",
    "V White Black Ring White Black White Black White V",
    "V Dark Ring Light Dark Light Dark Light Dark V",
    "V Circ White Black White Black White Black White V",
    "C H H H H H H H H C",
};

const std::vector<std::string> kFig13 = {
    "X DHol Black White D X",
    "DHol Black White D X DHol",
    "Black White D X DHol Black",
    "White D X DHol Black White",
    "D X DHol Black White D",
    "X DHol Black White D X",
};

const std::vector<std::string> kFig14 = {
    "White Black White Ring Black White Black White Black",
    "Dark Light Ring Dark Light Dark Light Dark Light",
    "H Ring Hrev H Hrev H Hrev H Hrev",
    "Ring Black White Black White Black White Black White",
    "Dark Light Dark Light Dark Light Dark Light Ring",
    "White Black White Black White Black White Ring Black",
    "Dark Light Dark Light Dark Light Ring Dark Light",
    "White Black White Black White Ring Black White Black",
    "Dark Light Dark Light Ring Dark Light Dark Light",
};

const std::vector<std::string> kFig15 = {
    "E V W White White White White White White",
    "SE V SW S S S S S S",
    "H C H H H H H H H",
    "NE V NW N N N N N N",
    "E V W White White White White White White",
    "E V W White White White White White White",
    "E V W White White White White White White",
    "E V W White White White White White White",
    "E V W White White White White White White",
};

// Fig. 11: extending a 6x6 reflection-symmetric tiling to 8x8.
const std::vector<std::string> kFig11Tiles = {
    "HHVrev", "HH",     "HHrev",  "HHV",    "Xrev",   "X",          //
    "V",      "Black",  "White",  "Crev",   "Cross",  "Crossrev",   //
    "Vvarrev", "Circ",  "Circrev", "Light", "Dark",   "HVV",        //
    "Vvar",   "Ringrev", "DHol",  "Drev",   "Square", "VVrev",      //
    "Vrev",   "Ring",   "DHolrev", "D",     "Squarerev", "VV",      //
    "C",      "Hrev",   "Hvar",   "Hvarrev", "H",     "HVVrev",
};

const std::vector<std::string> kFig11Before = {
    "HHVrev HH HHrev HHV Xrev X",
    "V Black White Crev Cross Crossrev",
    "Vvarrev Circ Circrev Light Dark HVV",
    "Vvar Ringrev DHol Drev Square VVrev",
    "Vrev Ring DHolrev D Squarerev VV",
    "C Hrev Hvar Hvarrev H HVVrev",
};

const std::vector<std::string> kFig11After = {
    "HHVrev HH HHrev HH HHrev HHV Xrev X",
    "V Black White Black White Crev Cross Crossrev",
    "Vvarrev Circ Circrev Circ Circrev Light Dark HVV",
    "Vvar Ringrev DHol Ringrev DHol Drev Square VVrev",
    "Vrev Ring DHolrev Ring DHolrev D Squarerev VV",
    "Vvar Ringrev DHol Ringrev DHol Drev Square VVrev",
    "Vrev Ring DHolrev Ring DHolrev D Squarerev VV",
    "C Hrev Hvar Hrev Hvar Hvarrev H HVVrev",
};

TilingInstance instanceOf(RuleSet rules, BoundaryCondition bc, Polynomial p = {}) {
  TilingInstance inst;
  inst.rules = std::move(rules);
  inst.bc = bc;
  inst.costBound = std::move(p);
  return inst;
}

}  // namespace

std::vector<std::string> fixtureNames() {
  return {
      "periodic-unweighted",
      "weighted-open",
      "weighted-periodic",
      "reflection-weighted-L1",
      "reflection-weighted-L2L3",
      "periodic-reflection-weighted",
      "periodic-reflection-L4",
      "rotation-fig13",
      "golden-fig4-layer1",
      "golden-fig4-layer2",
      "golden-fig4-combined",
      "golden-fig9",
      "golden-fig10",
      "golden-fig13",
      "golden-fig14",
      "golden-fig15",
      "golden-fig11-before",
      "golden-fig11-after",
  };
}

FixtureResult fixture(const std::string& id) {
  FixtureResult out;
  if (id == "periodic-unweighted") {
    out.layers = periodicUnweightedSpec();
    out.instance = instanceOf(buildLayeredRuleSet(*out.layers).rules,
                              BoundaryCondition::periodic());
    return out;
  }
  if (id == "weighted-open") {
    out.instance = instanceOf(weightedOpenRules(), BoundaryCondition::open(),
                              Polynomial::constant(-4));
    return out;
  }
  if (id == "weighted-periodic") {
    out.instance = instanceOf(weightedPeriodicRules(), BoundaryCondition::periodic(),
                              Polynomial::constant(2));
    return out;
  }
  if (id == "reflection-weighted-L1") {
    // p(N) = 76 - 16N
    out.instance = instanceOf(reflectionWeightedL1(), BoundaryCondition::open(),
                              Polynomial({BigInt(76), BigInt(-16)}));
    return out;
  }
  if (id == "reflection-weighted-L2L3") {
    out.layers = reflectionWeightedSpec();
    out.instance = instanceOf(buildLayeredRuleSet(*out.layers).rules, BoundaryCondition::open(),
                              Polynomial({BigInt(76), BigInt(-16)}));
    return out;
  }
  if (id == "periodic-reflection-weighted") {
    out.instance = instanceOf(periodicReflectionL1(), BoundaryCondition::periodic(),
                              Polynomial({BigInt(-2), BigInt(6)}));
    return out;
  }
  if (id == "periodic-reflection-L4") {
    out.instance = instanceOf(periodicReflectionL4(), BoundaryCondition::periodic(),
                              Polynomial::constant(0));
    return out;
  }
  if (id == "rotation-fig13") {
    // five tiles cycling along anti-diagonals; adjacency is rotation
    // symmetric: each tile pairs with its cycle neighbours
    RuleSet r = RuleSet::allForbidden({"X", "DHol", "Black", "White", "D"});
    for (int i = 0; i < 5; ++i) {
      int j = (i + 1) % 5;
      r.h(i, j) = r.h(j, i) = 0;
      r.v(i, j) = r.v(j, i) = 0;
    }
    out.instance = instanceOf(r, BoundaryCondition::fourCorners(0));
    return out;
  }
  if (id == "golden-fig4-layer1") {
    out.rulesFixture = "periodic-unweighted";
    out.tiling = tilingFromNames(periodicLayer1(), splitGrid(kFig4Layer1));
    return out;
  }
  if (id == "golden-fig4-layer2") {
    out.rulesFixture = "periodic-unweighted";
    out.tiling = tilingFromNames(periodicLayer2(), splitGrid(kFig4Layer2));
    return out;
  }
  if (id == "golden-fig4-combined") {
    out.rulesFixture = "periodic-unweighted";
    LayerSpec spec = periodicUnweightedSpec();
    auto prod = buildLayeredRuleSet(spec);
    auto g1 = splitGrid(kFig4Layer1), g2 = splitGrid(kFig4Layer2);
    Tiling t;
    t.width = t.height = 7;
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) {
        TileTuple tuple{spec.layers[0].indexOf(g1[r][c]), spec.layers[1].indexOf(g2[r][c])};
        int idx = -1;
        for (std::size_t k = 0; k < prod.tuples.size(); ++k)
          if (prod.tuples[k] == tuple) idx = static_cast<int>(k);
        if (idx < 0) throw std::logic_error("fig4 tuple excluded by the compatibility table");
        t.cells.push_back(idx);
      }
    out.tiling = t;
    return out;
  }
  if (id == "golden-fig9") {
    out.rulesFixture = "reflection-weighted-L1";
    out.tiling = tilingFromNames(reflectionWeightedL1(), splitGrid(kFig9));
    return out;
  }
  if (id == "golden-fig10") {
    out.rulesFixture = "reflection-weighted-L2L3";
    RuleSet l2 = stripeLayer(true);
    Tiling t;
    t.width = t.height = 10;
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 10; ++c) t.cells.push_back(c % 3);
    (void)l2;
    out.tiling = t;
    return out;
  }
  if (id == "golden-fig13") {
    out.rulesFixture = "rotation-fig13";
    auto inst = fixture("rotation-fig13").instance;
    out.tiling = tilingFromNames(inst->rules, splitGrid(kFig13));
    return out;
  }
  if (id == "golden-fig14") {
    out.rulesFixture = "periodic-reflection-weighted";
    out.tiling = tilingFromNames(periodicReflectionL1(), splitGrid(kFig14));
    return out;
  }
  if (id == "golden-fig15") {
    out.rulesFixture = "periodic-reflection-L4";
    out.tiling = tilingFromNames(periodicReflectionL4(), splitGrid(kFig15));
    return out;
  }
  if (id == "golden-fig11-before" || id == "golden-fig11-after") {
    RuleSet perm = RuleSet::allZero(kFig11Tiles);
    out.rulesFixture = "";
    out.tiling = tilingFromNames(
        perm, splitGrid(id == "golden-fig11-before" ? kFig11Before : kFig11After));
    return out;
  }
  throw std::invalid_argument("unknown fixture: " + id);
}

uint64_t fixtureChecksum(const std::string& id) {
  FixtureResult f = fixture(id);
  std::ostringstream canon;
  canon << id << "|";
  if (f.instance) {
    for (const auto& t : f.instance->rules.tiles) canon << t << ",";
    canon << ";";
    for (Weight w : f.instance->rules.hWeight) canon << w << ",";
    canon << ";";
    for (Weight w : f.instance->rules.vWeight) canon << w << ",";
  }
  if (f.tiling) {
    canon << "|" << f.tiling->width << "x" << f.tiling->height << ":";
    for (int c : f.tiling->cells) canon << c << ",";
  }
  uint64_t h = 1469598103934665603ull;
  for (char c : canon.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace tilekit
