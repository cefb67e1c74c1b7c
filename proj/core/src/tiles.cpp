#include "tilekit/tiles.hpp"

namespace tilekit {

Symmetry checkSymmetry(const RuleSet& rules) {
  const int m = rules.size();
  bool reflect = true;
  for (int i = 0; i < m && reflect; ++i)
    for (int j = 0; j < m; ++j)
      if (rules.h(i, j) != rules.h(j, i) || rules.v(i, j) != rules.v(j, i)) {
        reflect = false;
        break;
      }
  if (!reflect) return Symmetry::None;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (rules.h(i, j) != rules.v(i, j)) return Symmetry::Reflection;
  return Symmetry::Rotation;
}

std::string cornerName(Corner c) {
  switch (c) {
    case Corner::NW: return "NW";
    case Corner::NE: return "NE";
    case Corner::SW: return "SW";
    case Corner::SE: return "SE";
  }
  return "NW";
}

Corner cornerFromName(const std::string& s) {
  if (s == "NW") return Corner::NW;
  if (s == "NE") return Corner::NE;
  if (s == "SW") return Corner::SW;
  if (s == "SE") return Corner::SE;
  throw std::invalid_argument("bad corner name: " + s);
}

void TilingInstance::checkInvariants() const {
  if (rules.size() == 0) throw std::invalid_argument("rule set has no tiles");
  const std::size_t m = rules.tiles.size();
  if (rules.hWeight.size() != m * m || rules.vWeight.size() != m * m)
    throw std::invalid_argument("weight matrices must be total on tiles x tiles");
  if (bc.kind == BcKind::FourCorners || bc.kind == BcKind::OneCorner ||
      bc.kind == BcKind::TwoCorners) {
    if (bc.tile < 0 || bc.tile >= rules.size())
      throw std::invalid_argument("boundary tile is not in the rule set");
  }
  if (rules.unweighted() && !costBound.isZero())
    throw std::invalid_argument("unweighted instances must have costBound == 0");
}

namespace {

Site cornerSite(Corner c, int n) {
  switch (c) {
    case Corner::NW: return {1, 1};
    case Corner::NE: return {1, n};
    case Corner::SW: return {n, 1};
    case Corner::SE: return {n, n};
  }
  return {1, 1};
}

}  // namespace

// Corner cells an instance pins, as (site, tile).  Width n = height n grid.
static std::vector<std::pair<Site, int>> pinnedCells(const BoundaryCondition& bc, int n) {
  std::vector<std::pair<Site, int>> pins;
  switch (bc.kind) {
    case BcKind::FourCorners:
      for (Corner c : {Corner::NW, Corner::NE, Corner::SW, Corner::SE}) {
        pins.push_back({cornerSite(c, n), bc.tile});
      }
      break;
    case BcKind::OneCorner:
      pins.push_back({cornerSite(bc.corner, n), bc.tile});
      break;
    case BcKind::TwoCorners:
      pins.push_back({cornerSite(bc.corners.first, n), bc.tile});
      pins.push_back({cornerSite(bc.corners.second, n), bc.tile});
      break;
    default:
      break;
  }
  // A 1x1 grid collapses all corners onto one cell; keep distinct sites only.
  std::vector<std::pair<Site, int>> uniq;
  for (auto& p : pins) {
    bool seen = false;
    for (auto& q : uniq)
      if (q.first == p.first) seen = true;
    if (!seen) uniq.push_back(p);
  }
  return uniq;
}

std::vector<std::pair<Site, int>> boundaryPins(const BoundaryCondition& bc, int n);
std::vector<std::pair<Site, int>> boundaryPins(const BoundaryCondition& bc, int n) {
  return pinnedCells(bc, n);
}

ValidationReport validateTiling(const TilingInstance& instance, const Tiling& t) {
  const RuleSet& rules = instance.rules;
  if (t.width <= 0 || t.height <= 0) throw std::invalid_argument("empty tiling");
  for (int c : t.cells)
    if (c < 0 || c >= rules.size()) throw std::invalid_argument("unknown tile index in tiling");

  ValidationReport rep;
  const bool wrap = instance.bc.wraps();

  auto addPair = [&](Site a, Site b, bool horizontal, Weight w) {
    rep.totalCost = rep.totalCost + w;
    if (isForbid(w)) rep.violations.push_back({a, b, horizontal, w});
  };

  for (int r = 1; r <= t.height; ++r) {
    for (int c = 1; c <= t.width; ++c) {
      // Right neighbour.
      if (c < t.width) {
        addPair({r, c}, {r, c + 1}, true, rules.h(t.at(r, c), t.at(r, c + 1)));
      } else if (wrap) {
        addPair({r, c}, {r, 1}, true, rules.h(t.at(r, c), t.at(r, 1)));
      }
      // Downward neighbour: tile below is the vWeight row index.
      if (r < t.height) {
        addPair({r + 1, c}, {r, c}, false, rules.v(t.at(r + 1, c), t.at(r, c)));
      } else if (wrap) {
        addPair({1, c}, {r, c}, false, rules.v(t.at(1, c), t.at(r, c)));
      }
    }
  }

  if (t.width == t.height) {
    for (auto& [site, tile] : pinnedCells(instance.bc, t.width)) {
      if (t.at(site.row, site.col) != tile)
        rep.boundary.push_back({site, tile, t.at(site.row, site.col)});
    }
  } else if (instance.bc.kind != BcKind::Open && instance.bc.kind != BcKind::Periodic) {
    // Line tilings (height 1): the designated tile must sit at both ends.
    if (t.height == 1) {
      if (t.at(1, 1) != instance.bc.tile)
        rep.boundary.push_back({{1, 1}, instance.bc.tile, t.at(1, 1)});
      if (t.at(1, t.width) != instance.bc.tile)
        rep.boundary.push_back({{1, t.width}, instance.bc.tile, t.at(1, t.width)});
    }
  }
  return rep;
}

bool LayerSpec::tupleAllowed(const TileTuple& t) const {
  for (const auto& cp : crossLayerPairs) {
    const int sb = layers[cp.layerB].size();
    if (!cp.allowed[t[cp.layerA] * sb + t[cp.layerB]]) return false;
  }
  return true;
}

std::string tupleName(const LayerSpec& spec, const TileTuple& t) {
  std::string name;
  for (std::size_t l = 0; l < t.size(); ++l) {
    if (l) name += "|";
    name += spec.layers[l].tiles[t[l]];
  }
  return name;
}

LayeredRuleSet buildLayeredRuleSet(const LayerSpec& spec) {
  if (spec.layers.empty()) throw std::invalid_argument("layered rule set needs at least one layer");
  for (const auto& l : spec.layers)
    if (l.size() == 0) throw std::invalid_argument("empty layer");
  for (const auto& cp : spec.crossLayerPairs) {
    if (cp.layerA < 0 || cp.layerB < 0 || cp.layerA >= (int)spec.layers.size() ||
        cp.layerB >= (int)spec.layers.size())
      throw std::invalid_argument("cross-layer pair references a missing layer");
    if (cp.allowed.size() !=
        (std::size_t)spec.layers[cp.layerA].size() * spec.layers[cp.layerB].size())
      throw std::invalid_argument("cross-layer matrix has wrong shape");
  }

  LayeredRuleSet out;
  // Enumerate allowed tuples in mixed-radix order (last layer fastest).
  TileTuple cur(spec.layers.size(), 0);
  const int L = static_cast<int>(spec.layers.size());
  while (true) {
    if (spec.tupleAllowed(cur)) out.tuples.push_back(cur);
    int k = L - 1;
    while (k >= 0) {
      if (++cur[k] < spec.layers[k].size()) break;
      cur[k] = 0;
      --k;
    }
    if (k < 0) break;
  }

  const int M = static_cast<int>(out.tuples.size());
  out.rules.tiles.reserve(M);
  for (const auto& t : out.tuples) out.rules.tiles.push_back(tupleName(spec, t));
  out.rules.hWeight.assign((std::size_t)M * M, 0);
  out.rules.vWeight.assign((std::size_t)M * M, 0);

  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      Weight h = 0, v = 0;
      for (int l = 0; l < L; ++l) {
        h = addWeight(h, spec.layers[l].h(out.tuples[i][l], out.tuples[j][l]));
        v = addWeight(v, spec.layers[l].v(out.tuples[i][l], out.tuples[j][l]));
      }
      if (spec.conditionalAdjacency) {
        h = addWeight(h, spec.conditionalAdjacency(true, out.tuples[i], out.tuples[j]));
        v = addWeight(v, spec.conditionalAdjacency(false, out.tuples[i], out.tuples[j]));
      }
      out.rules.h(i, j) = h;
      out.rules.v(i, j) = v;
    }
  return out;
}

}  // namespace tilekit
