#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tilekit {

using BigInt = boost::multiprecision::cpp_int;
using Weight = long long;

// Weight value that marks a hard-forbidden adjacency.  Weighted and
// unweighted rule sets share one representation: an unweighted rule set has
// every entry in {0, kForbid}.
inline constexpr Weight kForbid = 1000000;

inline bool isForbid(Weight w) { return w >= kForbid; }

// Saturating weight addition: a pair involving a forbidden edge stays
// forbidden no matter what else is added.
inline Weight addWeight(Weight a, Weight b) {
  if (isForbid(a) || isForbid(b)) return kForbid;
  return a + b;
}

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer-coefficient polynomial (coeffs[k] multiplies N^k), evaluated in
// arbitrary precision.
struct Polynomial {
  std::vector<BigInt> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> c) : coeffs(std::move(c)) {}
  static Polynomial constant(long long c) { return Polynomial({BigInt(c)}); }

  BigInt eval(const BigInt& n) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
    return acc;
  }
  bool isZero() const {
    for (const auto& c : coeffs)
      if (c != 0) return false;
    return true;
  }
  bool isConstant() const {
    for (std::size_t k = 1; k < coeffs.size(); ++k)
      if (coeffs[k] != 0) return false;
    return true;
  }
};

enum class Symmetry { None, Reflection, Rotation };

// Tiles plus the two m-by-m weight matrices.  hWeight(i,j) is the cost of
// placing tile i immediately left of tile j; vWeight(i,j) the cost of tile i
// immediately below tile j.
struct RuleSet {
  std::vector<std::string> tiles;
  std::vector<Weight> hWeight;  // row-major m*m
  std::vector<Weight> vWeight;

  int size() const { return static_cast<int>(tiles.size()); }

  Weight h(int left, int right) const { return hWeight[left * tiles.size() + right]; }
  Weight v(int below, int above) const { return vWeight[below * tiles.size() + above]; }
  Weight& h(int left, int right) { return hWeight[left * tiles.size() + right]; }
  Weight& v(int below, int above) { return vWeight[below * tiles.size() + above]; }

  int indexOf(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (tiles[i] == name) return i;
    throw std::invalid_argument("unknown tile: " + name);
  }
  std::optional<int> tryIndexOf(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (tiles[i] == name) return i;
    return std::nullopt;
  }

  static RuleSet allForbidden(std::vector<std::string> names) {
    RuleSet r;
    r.tiles = std::move(names);
    r.hWeight.assign(r.tiles.size() * r.tiles.size(), kForbid);
    r.vWeight.assign(r.tiles.size() * r.tiles.size(), kForbid);
    return r;
  }
  static RuleSet allZero(std::vector<std::string> names) {
    RuleSet r;
    r.tiles = std::move(names);
    r.hWeight.assign(r.tiles.size() * r.tiles.size(), 0);
    r.vWeight.assign(r.tiles.size() * r.tiles.size(), 0);
    return r;
  }

  bool unweighted() const {
    for (Weight w : hWeight)
      if (w != 0 && !isForbid(w)) return false;
    for (Weight w : vWeight)
      if (w != 0 && !isForbid(w)) return false;
    return true;
  }
};

Symmetry checkSymmetry(const RuleSet& rules);

enum class Corner { NW, NE, SW, SE };

std::string cornerName(Corner c);
Corner cornerFromName(const std::string& s);

enum class BcKind { FourCorners, OneCorner, TwoCorners, Open, Periodic };

struct BoundaryCondition {
  BcKind kind = BcKind::Open;
  int tile = -1;  // FourCorners / OneCorner / TwoCorners
  Corner corner = Corner::NW;
  std::pair<Corner, Corner> corners{Corner::NW, Corner::SE};

  static BoundaryCondition open() { return {}; }
  static BoundaryCondition periodic() {
    BoundaryCondition b;
    b.kind = BcKind::Periodic;
    return b;
  }
  static BoundaryCondition fourCorners(int t) {
    BoundaryCondition b;
    b.kind = BcKind::FourCorners;
    b.tile = t;
    return b;
  }
  static BoundaryCondition oneCorner(int t, Corner c) {
    BoundaryCondition b;
    b.kind = BcKind::OneCorner;
    b.tile = t;
    b.corner = c;
    return b;
  }
  static BoundaryCondition twoCorners(int t, Corner a, Corner c) {
    BoundaryCondition b;
    b.kind = BcKind::TwoCorners;
    b.tile = t;
    b.corners = {a, c};
    return b;
  }
  bool wraps() const { return kind == BcKind::Periodic; }
};

struct TilingInstance {
  RuleSet rules;
  BoundaryCondition bc;
  Polynomial costBound;  // p(N); identically zero for unweighted instances

  void checkInvariants() const;
};

// Row-major grid of tile indices; row 1 is the top row.
struct Tiling {
  int width = 0;
  int height = 0;
  std::vector<int> cells;

  Tiling() = default;
  Tiling(int w, int h, int fill = 0) : width(w), height(h), cells(w * h, fill) {}

  int& at(int row, int col) { return cells[(row - 1) * width + (col - 1)]; }
  int at(int row, int col) const { return cells[(row - 1) * width + (col - 1)]; }
};

struct Site {
  int row = 0, col = 0;
  bool operator==(const Site&) const = default;
};

struct Violation {
  Site a, b;       // a is the left / below tile of the pair
  bool horizontal = true;
  Weight weight = 0;
};

struct BoundaryMismatch {
  Site site;
  int expected = -1;
  int actual = -1;
};

struct ValidationReport {
  Weight totalCost = 0;  // sum over all adjacent pairs, forbidden ones included
  std::vector<Violation> violations;          // pairs with forbidden weight
  std::vector<BoundaryMismatch> boundary;     // corner pins that do not match
  bool clean() const { return violations.empty() && boundary.empty(); }
};

// Checks a tiling against an instance.  Periodic boundary conditions wrap
// both axes (the cell below row N is row 1; right of column N is column 1).
ValidationReport validateTiling(const TilingInstance& instance, const Tiling& t);

// Corner cells pinned by a boundary condition on an n-by-n grid.
std::vector<std::pair<Site, int>> boundaryPins(const BoundaryCondition& bc, int n);

// ---------------------------------------------------------------------------
// Layered rule sets

using TileTuple = std::vector<int>;  // one tile index per layer

// Optional pairwise same-site compatibility between two layers.
struct CrossLayerPairs {
  int layerA = 0, layerB = 1;
  std::vector<uint8_t> allowed;  // sizeA * sizeB, 1 = tuple combination kept
};

struct LayerSpec {
  std::vector<RuleSet> layers;
  std::vector<CrossLayerPairs> crossLayerPairs;
  // Extra adjacency weight on full tuples, for rules where one layer's
  // constraint depends on another layer's content.  `horizontal` tells which
  // axis; arguments are (left,right) or (below,above) tuples.
  std::function<Weight(bool horizontal, const TileTuple&, const TileTuple&)> conditionalAdjacency;

  bool tupleAllowed(const TileTuple& t) const;
};

// Product rule set over tile tuples; adjacency weight of two tuples is the
// sum of per-layer weights plus the conditional weight, saturating at the
// forbidden sentinel.  Tuples excluded by crossLayerPairs are omitted.
struct LayeredRuleSet {
  RuleSet rules;
  std::vector<TileTuple> tuples;  // tuples[i] decodes product tile i
};

LayeredRuleSet buildLayeredRuleSet(const LayerSpec& spec);

std::string tupleName(const LayerSpec& spec, const TileTuple& t);

}  // namespace tilekit
