#include "tilekit/variants.hpp"

#include <algorithm>
#include <queue>

namespace tilekit {

RowPairResult rowPairMinimum(const RuleSet& rules, int vTile, int cTile, RowPairMode mode,
                             RowPairEnds ends, int n) {
  if (n < 2) throw std::invalid_argument("rowPairMinimum: n >= 2");
  const int m = rules.size();
  TileGraph g;
  g.m = m * m;
  g.edge.assign((std::size_t)g.m * g.m, 0);
  g.nodeCost.assign(g.m, 0);
  // node (u,v): u in row b (the doubled row for w''), v in row b+1
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) g.nodeCost[u * m + v] = 2 * rules.v(u, v);
  for (int u1 = 0; u1 < m; ++u1)
    for (int v1 = 0; v1 < m; ++v1)
      for (int u2 = 0; u2 < m; ++u2)
        for (int v2 = 0; v2 < m; ++v2) {
          Weight e = mode == RowPairMode::WPrime
                         ? rules.h(u1, u2) + rules.h(v1, v2)
                         : 2 * rules.h(u1, u2) + rules.h(v1, v2);
          g.edge[(std::size_t)(u1 * m + v1) * g.m + (u2 * m + v2)] = e;
        }

  std::vector<uint8_t> anyNode(g.m, 1);
  std::vector<uint8_t> noV(g.m, 1), cornerC(g.m, 0);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) {
      if (u == vTile || v == vTile) noV[u * m + v] = 0;
      if (u == cTile && v == vTile) cornerC[u * m + v] = 1;
    }

  std::vector<uint8_t> startOk = anyNode, endOk = anyNode;
  switch (ends) {
    case RowPairEnds::Free: break;
    case RowPairEnds::OneBlocked: startOk = noV; break;
    case RowPairEnds::BothBlocked: startOk = endOk = noV; break;
    case RowPairEnds::CornersC: startOk = endOk = cornerC; break;
  }

  auto dp = lineDP(g, startOk, endOk, n);
  if (!dp.exists) throw std::logic_error("rowPairMinimum: no admissible pair of rows");
  RowPairResult out;
  out.minimum = *dp.minCost;
  for (int node : dp.witness) out.rows.push_back({node / m, node % m});
  return out;
}

Tiling extendReflection(const TilingInstance& instance, const Tiling& t) {
  if (checkSymmetry(instance.rules) == Symmetry::None)
    throw std::invalid_argument("extendReflection: rules lack reflection symmetry");
  if (t.width != t.height || t.width < 4)
    throw std::invalid_argument("extendReflection: need a valid N x N tiling with N >= 4");
  auto rep = validateTiling(instance, t);
  if (!rep.clean()) throw std::invalid_argument("extendReflection: input tiling is not valid");

  const int n = t.width;
  // duplicate columns 2,3 after column 3, then rows N-2,N-1 after row N-1
  Tiling wide(n + 2, n);
  for (int r = 1; r <= n; ++r) {
    std::vector<int> row;
    for (int c = 1; c <= n; ++c) row.push_back(t.at(r, c));
    std::vector<int> ext;
    ext.push_back(row[0]);
    ext.push_back(row[1]);
    ext.push_back(row[2]);
    ext.push_back(row[1]);
    ext.push_back(row[2]);
    for (int c = 4; c <= n; ++c) ext.push_back(row[c - 1]);
    for (int c = 1; c <= n + 2; ++c) wide.at(r, c) = ext[c - 1];
  }
  Tiling out(n + 2, n + 2);
  auto copyRow = [&](int dst, int src) {
    for (int c = 1; c <= n + 2; ++c) out.at(dst, c) = wide.at(src, c);
  };
  for (int r = 1; r <= n - 1; ++r) copyRow(r, r);
  copyRow(n, n - 2);
  copyRow(n + 1, n - 1);
  copyRow(n + 2, n);
  return out;
}

Tiling rotationFill(const RuleSet& rules, const std::vector<int>& side, bool torus) {
  if (checkSymmetry(rules) != Symmetry::Rotation)
    throw std::invalid_argument("rotationFill: rules lack rotation symmetry");
  const int n = static_cast<int>(side.size());
  if (n < 1) throw std::invalid_argument("rotationFill: empty side");
  const int period = torus ? n : n - 1;
  if (!torus) {
    if (n >= 2 && side.front() != side.back())
      throw std::invalid_argument("rotationFill: side must start and end with the same tile");
    for (int k = 0; k + 1 < n; ++k)
      if (isForbid(rules.h(side[k], side[k + 1])))
        throw std::invalid_argument("rotationFill: side is not a valid line tiling");
  } else {
    for (int k = 0; k < n; ++k)
      if (isForbid(rules.h(side[k], side[(k + 1) % n])))
        throw std::invalid_argument("rotationFill: side is not a valid cycle");
  }
  Tiling t(n, n);
  if (n == 1) {
    t.at(1, 1) = side[0];
    return t;
  }
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) t.at(r, c) = side[((r - 1) + (c - 1)) % period];
  return t;
}

std::pair<long long, long long> rotationThresholds(const RuleSet& rules, int bcTile) {
  if (checkSymmetry(rules) != Symmetry::Rotation)
    throw std::invalid_argument("rotationThresholds: rules lack rotation symmetry");
  const int m = rules.size();
  if (!isForbid(rules.h(bcTile, bcTile))) return {2, 1};

  bool any = false;
  for (int j = 0; j < m; ++j)
    if (!isForbid(rules.h(bcTile, j))) any = true;
  if (!any) return {kNoSide, kNoSide};

  // Shortest closed walks from bcTile by parity (the graph is undirected by
  // symmetry).  A side of length N is a bcTile -> bcTile walk of N-1 edges.
  std::vector<std::array<long long, 2>> dist(m, {-1, -1});
  std::queue<std::pair<int, int>> q;
  dist[bcTile][0] = 0;
  q.push({bcTile, 0});
  while (!q.empty()) {
    auto [u, p] = q.front();
    q.pop();
    for (int v = 0; v < m; ++v) {
      if (isForbid(rules.h(u, v))) continue;
      int np = 1 - p;
      if (dist[v][np] < 0) {
        dist[v][np] = dist[u][p] + 1;
        q.push({v, np});
      }
    }
  }
  long long evenWalk = -1, oddWalk = -1;
  for (int v = 0; v < m; ++v) {
    if (isForbid(rules.h(v, bcTile))) continue;
    if (dist[v][1] >= 0) {
      long long walk = dist[v][1] + 1;  // even length
      if (evenWalk < 0 || walk < evenWalk) evenWalk = walk;
    }
    if (dist[v][0] >= 0) {
      long long walk = dist[v][0] + 1;  // odd length
      if (oddWalk < 0 || walk < oddWalk) oddWalk = walk;
    }
  }
  long long nEven = oddWalk > 0 ? oddWalk + 1 : kNoSide;  // odd edge count -> even N
  long long nOdd = evenWalk > 0 ? evenWalk + 1 : kNoSide;
  return {nEven, nOdd};
}

namespace {

// Valid corner squares for the four-corners rotation procedure.
struct CornerSquare {
  int k = 0;
  Weight cost = 0;
  int component = -1;  // zero-cost component of the border tiles
  int borderSide = 0;  // bipartition side of the reference border tile
  int refTile = -1;    // border tile adjacent to the grid corner on the border
  Tiling cells;
};

struct ZeroGraph {
  int m;
  std::vector<int> comp;      // -1: isolated under zero edges
  std::vector<int> side;      // bipartition side, valid when bipartite[comp]
  std::vector<uint8_t> bipartite;

  explicit ZeroGraph(const RuleSet& rules) : m(rules.size()) {
    comp.assign(m, -1);
    side.assign(m, 0);
    int nc = 0;
    for (int s = 0; s < m; ++s) {
      if (comp[s] >= 0) continue;
      // BFS over zero-cost edges
      std::queue<int> q;
      comp[s] = nc;
      side[s] = 0;
      q.push(s);
      bool isBip = true;
      bool any = false;
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < m; ++v) {
          if (rules.h(u, v) != 0) continue;
          any = true;
          if (comp[v] < 0) {
            comp[v] = nc;
            side[v] = 1 - side[u];
            q.push(v);
          } else if (side[v] == side[u]) {
            isBip = false;
          }
        }
      }
      if (!any) comp[s] = -1;  // no zero edges at all
      if (comp[s] >= 0) {
        bipartite.resize(nc + 1);
        bipartite[nc] = isBip ? 1 : 0;
        ++nc;
      }
    }
  }
};

// Enumerate all k x k corner tilings with cost <= bound whose k-border is
// zero-cost, for the given corner (0=NW,1=NE,2=SW,3=SE).  Backtracking with
// cost pruning (all weights nonnegative in this regime).
void enumerateSquares(const TilingInstance& inst, int k, int corner, Weight bound,
                      const ZeroGraph& zg, std::vector<CornerSquare>& out) {
  const int m = inst.rules.size();
  Tiling t(k, k);
  // grid-corner cell within the square
  int cr = (corner == 0 || corner == 1) ? 1 : k;
  int cc = (corner == 0 || corner == 2) ? 1 : k;
  // border cells: the column and row facing the grid interior
  int br = (corner == 0 || corner == 1) ? k : 1;
  int bc = (corner == 0 || corner == 2) ? k : 1;

  auto borderZero = [&]() {
    // the k-border: row br and column bc within the square
    for (int c = 1; c < k; ++c)
      if (inst.rules.h(t.at(br, c), t.at(br, c + 1)) != 0) return false;
    for (int r = 1; r < k; ++r)
      if (inst.rules.v(t.at(r + 1, bc), t.at(r, bc)) != 0) return false;
    return true;
  };

  auto place = [&](auto&& self, int idx, Weight cost) -> void {
    if (idx == k * k) {
      if (!borderZero()) return;
      CornerSquare sq;
      sq.k = k;
      sq.cost = cost;
      sq.refTile = t.at(br, bc);
      sq.component = zg.comp[sq.refTile];
      sq.borderSide = zg.side[sq.refTile];
      sq.cells = t;
      out.push_back(sq);
      return;
    }
    const int r = idx / k + 1, c = idx % k + 1;
    for (int tile = 0; tile < m; ++tile) {
      if (r == cr && c == cc && tile != inst.bc.tile) continue;
      Weight add = 0;
      if (c > 1) add = addWeight(add, inst.rules.h(t.at(r, c - 1), tile));
      if (r > 1) add = addWeight(add, inst.rules.v(tile, t.at(r - 1, c)));
      if (isForbid(add) || cost + add > bound) continue;
      t.at(r, c) = tile;
      self(self, idx + 1, cost + add);
    }
  };
  place(place, 0, 0);
}

}  // namespace

SolveResult weightedRotationDecide(const TilingInstance& instance, int n) {
  instance.checkInvariants();
  if (checkSymmetry(instance.rules) != Symmetry::Rotation)
    throw std::invalid_argument("weightedRotationDecide: rules lack rotation symmetry");
  const int m = instance.rules.size();
  const BigInt bound = instance.costBound.eval(n);
  SolveResult res;

  if (instance.bc.kind == BcKind::Open) {
    Weight w = kForbid;
    int bi = 0, bj = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (instance.rules.h(i, j) < w) {
          w = instance.rules.h(i, j);
          bi = i;
          bj = j;
        }
    if (isForbid(w)) return res;
    Weight total = 2ll * n * (n - 1) * w;
    res.minCost = total;
    res.exists = BigInt(total) <= bound;
    Tiling t(n, n);
    for (int r = 1; r <= n; ++r)
      for (int c = 1; c <= n; ++c) t.at(r, c) = (r + c) % 2 == 0 ? bi : bj;
    res.witnessMin = t;
    if (res.exists) res.witness = t;
    return res;
  }

  if (instance.bc.kind == BcKind::Periodic) {
    // best length-N cycle of the one-dimensional weighted problem
    std::optional<BigInt> best;
    std::vector<int> bestSide;
    for (int t0 = 0; t0 < m; ++t0) {
      // cycle of n edges through t0 = line of n+1 cells from t0 to t0
      auto line = solveLine(instance.rules, t0, t0, BigInt(n + 1), SolveMode::MinCost);
      if (!line.exists) continue;
      if (!best || *line.minCost < *best) {
        best = line.minCost;
        if (line.witness) {
          bestSide = *line.witness;
          bestSide.pop_back();  // drop the repeated endpoint
        }
      }
    }
    if (!best) return res;
    BigInt total = 2 * BigInt(n) * *best;
    res.minCost = total.convert_to<Weight>();
    res.exists = total <= bound;
    if (!bestSide.empty()) {
      Tiling t = rotationFill(instance.rules, bestSide, /*torus=*/true);
      res.witnessMin = t;
      if (res.exists) res.witness = t;
    }
    return res;
  }

  if (instance.bc.kind != BcKind::FourCorners)
    throw std::invalid_argument("weightedRotationDecide: unsupported boundary kind");
  if (!instance.costBound.isConstant())
    throw std::invalid_argument(
        "weightedRotationDecide: four-corners mode supports constant cost bounds only");

  // Four corners.  With a negative pair available, checkerboard-with-corners
  // settles the instance directly; a positive minimum bounds the cost from
  // below.  The square procedure handles the remaining zero-minimum case.
  Weight w = kForbid;
  int bi = 0, bj = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (instance.rules.h(i, j) < w) {
        w = instance.rules.h(i, j);
        bi = i;
        bj = j;
      }
  if (isForbid(w)) return res;
  if (w != 0) {
    if (w > 0 && BigInt(2ll * n * (n - 1) * w) > bound) return res;  // cost floor too high
    // explicit checkerboard with pinned corners
    Tiling t(n, n);
    for (int r = 1; r <= n; ++r)
      for (int c = 1; c <= n; ++c) t.at(r, c) = (r + c) % 2 == 0 ? bi : bj;
    for (auto& [site, tile] : boundaryPins(instance.bc, n)) t.at(site.row, site.col) = tile;
    auto rep = validateTiling(instance, t);
    if (rep.violations.empty() && BigInt(rep.totalCost) <= bound) {
      res.exists = true;
      res.minCost = rep.totalCost;  // an upper bound certificate
      res.witness = t;
      return res;
    }
    // inconclusive at this size: defer to the exhaustive oracle
    return bruteForceGrid(instance, n);
  }

  Weight c = bound.convert_to<Weight>();
  if (c < 0) return res;
  if (m > 6 || c > 6) throw ResourceError("weightedRotationDecide: beyond the desk-scale caps");

  ZeroGraph zg(instance.rules);

  // Valid squares per corner, k from max(2,c) to max(2,2c); cost pruned at c.
  const int kLo = std::max(2, (int)c);
  const int kHi = std::max(2, (int)(2 * c));
  if (2 * kHi > n) {
    // squares would overlap: the desk-scale fallback is the oracle
    return bruteForceGrid(instance, n);
  }
  std::vector<std::vector<CornerSquare>> squares(4);
  for (int corner = 0; corner < 4; ++corner)
    for (int k = kLo; k <= kHi; ++k)
      enumerateSquares(instance, k, corner, c, zg, squares[corner]);

  // Pairwise compatibility by zero-path parity.  The reference border tiles
  // sit at grid positions (k,k), (k,N-k+1), (N-k+1,k), (N-k+1,N-k+1); on any
  // grid path the tile side alternates with cell parity, so two references
  // are joinable iff their sides differ exactly when their cell-parity
  // distance is odd.  That distance is (N+1) mod 2 for corners sharing a grid
  // side and 0 for diagonal corners, independent of the square sizes.
  auto compatible = [&](const CornerSquare& a, const CornerSquare& b, bool diagonal) {
    if (a.component != b.component || a.component < 0) return false;
    if (!zg.bipartite[a.component]) return true;
    int need = diagonal ? 0 : (n + 1) % 2;
    int have = a.borderSide == b.borderSide ? 0 : 1;
    return need == have;
  };

  std::optional<Weight> best;
  for (const auto& nw : squares[0])
    for (const auto& ne : squares[1])
      for (const auto& sw : squares[2])
        for (const auto& se : squares[3]) {
          Weight total = nw.cost + ne.cost + sw.cost + se.cost;
          if (total > c) continue;
          if (!compatible(nw, ne, false)) continue;
          if (!compatible(nw, sw, false)) continue;
          if (!compatible(nw, se, true)) continue;
          if (!compatible(ne, sw, true)) continue;
          if (!compatible(ne, se, false)) continue;
          if (!compatible(sw, se, false)) continue;
          if (!best || total < *best) best = total;
        }
  if (best) {
    res.exists = BigInt(*best) <= bound;
    res.minCost = best;
  }
  return res;
}

}  // namespace tilekit
