#pragma once

#include <optional>

#include "tilekit/grid_solver.hpp"
#include "tilekit/line_solver.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

// ---------------------------------------------------------------------------
// Fixtures: rule-set tables and golden tilings

struct FixtureResult {
  std::optional<TilingInstance> instance;
  std::optional<LayerSpec> layers;   // multi-layer fixtures also expose the spec
  std::optional<Tiling> tiling;      // golden grids
  std::string rulesFixture;          // for goldens: the fixture id their rules come from
};

std::vector<std::string> fixtureNames();
FixtureResult fixture(const std::string& id);

// Checksum of the fixture's canonical serialization (FNV-1a/64); any
// retranscription must reproduce the frozen values.
uint64_t fixtureChecksum(const std::string& id);

// ---------------------------------------------------------------------------
// Pair-of-rows analyses

enum class RowPairMode { WPrime, WDoublePrime };
enum class RowPairEnds { Free, OneBlocked, BothBlocked, CornersC };

struct RowPairResult {
  Weight minimum = 0;
  // argmin assignment: per column the (row b, row b+1) tiles
  std::vector<std::pair<int, int>> rows;
};

// Minimum of w'(R_b, R_{b+1}) (or the doubled-edge w'' form) over all
// assignments of two width-n rows, on the vertical-pair node graph with node
// cost 2*wV and edge costs summed per row.  In the w'' form the FIRST row of
// the pair is the doubled one.  End constraints follow the lemma variants:
// blocked ends exclude the designated vTile, CornersC forces (cTile, vTile).
RowPairResult rowPairMinimum(const RuleSet& rules, int vTile, int cTile, RowPairMode mode,
                             RowPairEnds ends, int n);

// ---------------------------------------------------------------------------
// Symmetry constructions

// Extends a valid N x N tiling of a reflection-symmetric instance to
// (N+2) x (N+2) by duplicating the second/third columns and the two rows
// above the bottom row.
Tiling extendReflection(const TilingInstance& instance, const Tiling& t);

// Fills an N x N grid from a single side tiling using constant anti-diagonal
// stripes (rotation symmetry).  For bordered grids the side must start and
// end with the same tile; `torus` uses period N instead of N-1.
Tiling rotationFill(const RuleSet& rules, const std::vector<int>& side, bool torus = false);

constexpr long long kNoSide = -1;  // stands in for "infinity"

// Minimal even and odd side lengths admitting a valid side through bcTile,
// from shortest closed walks in the (undirected) tile graph.
std::pair<long long, long long> rotationThresholds(const RuleSet& rules, int bcTile);

// Decision procedures for WEIGHTED tiling with rotation symmetry.
//  - Open: minimal cost 2N(N-1)w with a checkerboard witness.
//  - Periodic: 2N times the best length-N cycle of the 1-D problem.
//  - FourCorners: valid k-square enumeration with zero-cost-path parity
//    compatibility; requires a constant cost bound and desk-scale caps.
SolveResult weightedRotationDecide(const TilingInstance& instance, int n);

}  // namespace tilekit
