#include "tilekit/tm_compiler.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tilekit {

namespace {

constexpr const char* kBorderNames[5] = {"C", "W", "E", "N", "S"};
enum Border { bC = 0, bW = 1, bE = 2, bN = 3, bS = 4 };

std::string layerTileName(const TMSpec& m, const LayerTile& t) {
  switch (t.kind) {
    case LayerTile::Border: return kBorderNames[t.border];
    case LayerTile::Plain: return "[" + m.alphabet[t.sym] + "]";
    case LayerTile::Head:
      return "[" + m.alphabet[t.sym] + "," + m.states[t.state] + "," + (t.fromRight ? "r" : "l") +
             "]";
    case LayerTile::Action:
      return "[" + m.alphabet[t.sym] + "," + m.states[t.state] + "," + (t.movedRight ? "R" : "L") +
             "]";
  }
  return "?";
}

std::vector<LayerTile> makeLayerTiles(const TMSpec& m) {
  std::vector<LayerTile> tiles;
  for (int b = 0; b < 5; ++b) {
    LayerTile t;
    t.kind = LayerTile::Border;
    t.border = b;
    tiles.push_back(t);
  }
  const int A = static_cast<int>(m.alphabet.size());
  const int Q = static_cast<int>(m.states.size());
  for (int a = 0; a < A; ++a) {
    LayerTile t;
    t.kind = LayerTile::Plain;
    t.sym = a;
    tiles.push_back(t);
  }
  for (int a = 0; a < A; ++a)
    for (int q = 0; q < Q; ++q)
      for (bool r : {true, false}) {
        LayerTile t;
        t.kind = LayerTile::Head;
        t.sym = a;
        t.state = q;
        t.fromRight = r;
        tiles.push_back(t);
      }
  for (int a = 0; a < A; ++a)
    for (int q = 0; q < Q; ++q)
      for (bool R : {true, false}) {
        LayerTile t;
        t.kind = LayerTile::Action;
        t.sym = a;
        t.state = q;
        t.movedRight = R;
        tiles.push_back(t);
      }
  return tiles;
}

struct MachineRules {
  const TMSpec& m;
  int q0, blank;
  // delta membership: (a,q) -> (b,q',R?) exists
  std::set<std::tuple<int, int, int, int, bool>> moves;

  explicit MachineRules(const TMSpec& spec) : m(spec) {
    q0 = spec.stateIndex(spec.start);
    blank = spec.symIndex(spec.blank);
    for (const auto& r : spec.delta)
      moves.insert({spec.symIndex(r.a), spec.stateIndex(r.q), spec.symIndex(r.b),
                    spec.stateIndex(r.q2), r.moveRight});
  }
  bool hasMove(int a, int q, int b, int q2, bool right) const {
    return moves.count({a, q, b, q2, right}) > 0;
  }
};

// Horizontal adjacency (left, right) shared by both layers except for the
// W -> plain-tile condition, which the caller supplies.
bool hAllowedLayer(const MachineRules& mr, const LayerTile& L, const LayerTile& R,
                   const std::function<bool(int)>& wPlainOk) {
  using K = LayerTile;
  if (L.kind == K::Border && R.kind == K::Border) {
    // C->N, C->S, W->E, N->C, N->N, S->C, S->S
    static const bool allowed[5][5] = {
        //          C      W      E      N      S
        /*C*/ {false, false, false, true, true},
        /*W*/ {false, false, true, false, false},
        /*E*/ {false, false, false, false, false},
        /*N*/ {true, false, false, true, false},
        /*S*/ {true, false, false, false, true},
    };
    return allowed[L.border][R.border];
  }
  if (L.kind == K::Border) {
    if (L.border != bW) return false;
    switch (R.kind) {
      case K::Plain: return wPlainOk(R.sym);
      case K::Head: return R.fromRight ? true : R.state == mr.q0;
      case K::Action: return R.movedRight;
      default: return false;
    }
  }
  if (R.kind == K::Border) {
    if (R.border != bE) return false;
    switch (L.kind) {
      case K::Plain: return true;
      case K::Head: return !L.fromRight;  // a lone head tile came from the left
      case K::Action: return !L.movedRight;
      default: return false;
    }
  }
  // interior-interior
  switch (L.kind) {
    case K::Plain:
      if (R.kind == K::Plain) return true;
      if (R.kind == K::Head) return R.fromRight;
      return R.movedRight;  // Action
    case K::Head:
      if (L.fromRight)  // must pair with the L-action it mirrors
        return R.kind == K::Action && !R.movedRight && L.state == R.state;
      return R.kind == K::Plain;  // head-from-left acts like a plain tile to its right
    case K::Action:
      if (L.movedRight)  // must pair with the head it dropped to the right
        return R.kind == K::Head && !R.fromRight && L.state == R.state;
      return R.kind == K::Plain;
    default: return false;
  }
}

// Vertical adjacency for an upward-running machine: (below, above) where
// `above` is one step later.  Table rules; the boundary rows are handled by
// the caller.
bool vAllowedUpward(const MachineRules& mr, const LayerTile& B, const LayerTile& T) {
  using K = LayerTile;
  auto actsPlain = [](const LayerTile& t) { return t.kind == K::Plain || t.kind == K::Action; };
  if (actsPlain(B)) {
    if (T.kind == K::Plain || (T.kind == K::Head && T.fromRight)) return B.sym == T.sym;
    if (T.kind == K::Head && !T.fromRight) return B.sym == T.sym && T.state != mr.q0;
    return false;  // no action tile directly above a passive tile
  }
  if (B.kind == K::Head) {
    if (T.kind != K::Action) return false;
    return mr.hasMove(B.sym, B.state, T.sym, T.state, T.movedRight);
  }
  return false;
}

bool vAllowedBorders(const LayerTile& B, const LayerTile& T) {
  using K = LayerTile;
  if (B.kind != K::Border || T.kind != K::Border) return false;
  static const bool allowed[5][5] = {
      //          C      W      E      N      S
      /*C*/ {false, true, true, false, false},
      /*W*/ {true, true, false, false, false},
      /*E*/ {true, false, true, false, false},
      /*N*/ {false, false, false, false, false},
      /*S*/ {false, false, false, true, false},
  };
  return allowed[B.border][T.border];
}

}  // namespace

CompiledTiles compileTM(const TMSpec& counter, const TMSpec& verifier) {
  counter.validate();
  verifier.validate();
  if (!counter.deterministic)
    throw std::invalid_argument("compileTM: the counter machine must be deterministic");

  // The verifier needs a working symbol outside the counter's alphabet to
  // overwrite the leftmost input cell.
  bool hasFresh = false;
  for (const auto& s : verifier.alphabet)
    if (std::find(counter.alphabet.begin(), counter.alphabet.end(), s) == counter.alphabet.end())
      hasFresh = true;
  if (!hasFresh)
    throw std::invalid_argument(
        "compileTM: verifier alphabet needs a primed copy outside the counter alphabet");

  CompiledTiles out;
  out.counter = counter;
  out.verifier = verifier;
  out.layer1Tiles = makeLayerTiles(counter);
  out.layer2Tiles = makeLayerTiles(verifier);
  MachineRules mr1(counter), mr2(verifier);

  std::set<std::string> counterAlpha(counter.alphabet.begin(), counter.alphabet.end());

  auto buildLayer = [&](const TMSpec& m, const MachineRules& mr,
                        const std::vector<LayerTile>& tiles, bool downward,
                        bool isVerifier) -> RuleSet {
    std::vector<std::string> names;
    for (const auto& t : tiles) names.push_back(layerTileName(m, t));
    RuleSet rules = RuleSet::allForbidden(names);
    const int M = static_cast<int>(tiles.size());

    auto wPlainOk = [&](int sym) {
      if (!isVerifier) return sym != mr.blank;  // counter: anything but blank
      return counterAlpha.count(m.alphabet[sym]) == 0;  // verifier: primed symbols only
    };

    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) {
        const LayerTile &A = tiles[i], &B = tiles[j];
        if (hAllowedLayer(mr, A, B, wPlainOk)) rules.h(i, j) = 0;

        // vertical (below = A, above = B)
        bool ok = false;
        if (A.kind == LayerTile::Border && B.kind == LayerTile::Border) {
          ok = vAllowedBorders(A, B);
        } else if (A.kind == LayerTile::Border && A.border == bS &&
                   B.kind != LayerTile::Border) {
          // bottom row: interior above S
          if (!isVerifier) {
            ok = true;  // counter layer: no restriction at the bottom
          } else {
            // verifier input row: plain or a fresh head in the start state;
            // the symbol-copy condition is enforced across layers
            ok = (B.kind == LayerTile::Plain) ||
                 (B.kind == LayerTile::Head && !B.fromRight && B.state == mr.q0);
          }
        } else if (B.kind == LayerTile::Border && B.border == bN &&
                   A.kind != LayerTile::Border) {
          // top row: interior below N
          if (!isVerifier) {
            // counter initial configuration (it runs downward from the top)
            ok = (A.kind == LayerTile::Plain && A.sym == mr.blank) ||
                 (A.kind == LayerTile::Head && !A.fromRight && A.sym == mr.blank &&
                  A.state == mr.q0);
          } else {
            int qA = m.stateIndex(m.accept);
            ok = (A.kind == LayerTile::Plain) || (A.kind == LayerTile::Action) ||
                 (A.kind == LayerTile::Head && A.state == qA);
          }
        } else if (A.kind != LayerTile::Border && B.kind != LayerTile::Border) {
          ok = downward ? vAllowedUpward(mr, B, A) : vAllowedUpward(mr, A, B);
        }
        if (ok) rules.v(i, j) = 0;
      }
    return rules;
  };

  out.spec.layers.push_back(buildLayer(counter, mr1, out.layer1Tiles, /*downward=*/true,
                                       /*isVerifier=*/false));
  out.spec.layers.push_back(buildLayer(verifier, mr2, out.layer2Tiles, /*downward=*/false,
                                       /*isVerifier=*/true));

  // Border tiles exist on both layers and must coincide; interiors combine
  // freely (the weight matrices already encode the per-layer constraints).
  CrossLayerPairs cp;
  cp.layerA = 0;
  cp.layerB = 1;
  const int m1 = static_cast<int>(out.layer1Tiles.size());
  const int m2 = static_cast<int>(out.layer2Tiles.size());
  cp.allowed.assign((std::size_t)m1 * m2, 0);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) {
      const LayerTile &a = out.layer1Tiles[i], &b = out.layer2Tiles[j];
      bool ok;
      if (a.kind == LayerTile::Border || b.kind == LayerTile::Border)
        ok = a.kind == LayerTile::Border && b.kind == LayerTile::Border && a.border == b.border;
      else
        ok = true;
      cp.allowed[i * m2 + j] = ok ? 1 : 0;
    }
  out.spec.crossLayerPairs.push_back(cp);

  // Output copy: above the bottom border the verifier's symbols must equal
  // the counter's final-row symbols (matched by name across the alphabets).
  auto l1 = out.layer1Tiles;
  auto l2 = out.layer2Tiles;
  std::vector<std::string> alpha1 = counter.alphabet, alpha2 = verifier.alphabet;
  out.spec.conditionalAdjacency = [l1, l2, alpha1, alpha2](bool horizontal,
                                                           const TileTuple& below,
                                                           const TileTuple& above) -> Weight {
    if (horizontal) return 0;
    const LayerTile& b1 = l1[below[0]];
    if (b1.kind != LayerTile::Border || b1.border != bS) return 0;
    const LayerTile& a1 = l1[above[0]];
    const LayerTile& a2 = l2[above[1]];
    if (a1.kind == LayerTile::Border || a2.kind == LayerTile::Border) return 0;
    return alpha1[a1.sym] == alpha2[a2.sym] ? 0 : kForbid;
  };

  out.product = buildLayeredRuleSet(out.spec);
  out.instance.rules = out.product.rules;
  // the C|C tuple
  int cTile = -1;
  for (std::size_t t = 0; t < out.product.tuples.size(); ++t) {
    const LayerTile& a = out.layer1Tiles[out.product.tuples[t][0]];
    if (a.kind == LayerTile::Border && a.border == bC) cTile = static_cast<int>(t);
  }
  out.instance.bc = BoundaryCondition::fourCorners(cTile);
  out.instance.costBound = {};
  return out;
}

// ---------------------------------------------------------------------------
// Counter machine

CounterMachine CounterMachine::standard() {
  CounterMachine cm;
  TMSpec& tm = cm.machine;
  tm.alphabet = {"#", "O", "I", "0", "1", "0d", "1d", "E", "Ed"};
  tm.blank = "#";
  tm.states = {"q0", "Gi", "G", "U", "D0", "D1", "qA"};
  tm.start = "q0";
  tm.accept = "qA";
  tm.deterministic = true;
  auto rule = [&](const char* q, const char* a, const char* b, const char* q2, char mv) {
    tm.delta.push_back({q, a, b, q2, mv == 'R'});
  };
  rule("q0", "#", "I", "Gi", 'R');
  rule("Gi", "#", "E", "U", 'L');
  rule("U", "O", "I", "D0", 'R');
  rule("U", "I", "O", "D1", 'R');
  rule("U", "0d", "0", "U", 'L');
  rule("U", "1d", "1", "U", 'L');
  rule("D0", "0", "0d", "D0", 'R');
  rule("D0", "1", "1d", "D0", 'R');
  rule("D0", "E", "Ed", "U", 'L');
  rule("D0", "Ed", "E", "U", 'L');
  rule("D1", "0", "1d", "D0", 'R');
  rule("D1", "1", "0d", "D1", 'R');
  rule("D1", "E", "1d", "G", 'R');
  rule("G", "#", "Ed", "U", 'L');
  tm.validate();
  // frozen from the measurement sweep in the tests
  cm.c1 = 1.0;
  cm.c2 = 1.4;
  cm.n0 = 42;
  return cm;
}

std::vector<std::string> CounterMachine::f(long long steps) const {
  auto run = runTM(machine, std::vector<std::string>{}, steps);
  if (run.stuck) throw std::logic_error("counter machine stalled");
  return tapeSymbols(machine, run.config);
}

namespace {

int bitlen(const BigInt& v) {
  int n = 0;
  BigInt x = v;
  while (x > 0) {
    x >>= 1;
    ++n;
  }
  return n;
}

}  // namespace

BigInt CounterMachine::sweepStart(const BigInt& v) {
  // T(1) = 2; each sweep u -> u+1 costs 2*bitlen(u), plus 2 when u+1 is a
  // power of two (the marker moves one cell right).
  if (v < 1) throw std::invalid_argument("sweepStart: v >= 1");
  BigInt t = 2;
  // sum of 2*bitlen(u) for u in [1, v-1], by bit-length blocks
  const int mv = bitlen(v - 1);
  for (int m = 1; m <= mv; ++m) {
    BigInt lo = BigInt(1) << (m - 1);
    BigInt hi = (BigInt(1) << m) - 1;
    if (hi > v - 1) hi = v - 1;
    if (lo > hi) continue;
    t += 2 * m * (hi - lo + 1);
  }
  // growth sweeps: u+1 = 2^k <= v
  for (BigInt p = 2; p <= v; p <<= 1) t += 2;
  return t;
}

std::optional<BigInt> CounterMachine::invert(const std::vector<std::string>& x) const {
  if (x.empty()) return std::nullopt;
  if (x == f(1)) return BigInt(1);

  // read a coarse value from the bit cells, then try nearby sweeps
  BigInt val = 0;
  int bit = 0;
  for (const auto& s : x) {
    int b = -1;
    if (s == "O" || s == "0" || s == "0d") b = 0;
    if (s == "I" || s == "1" || s == "1d") b = 1;
    if (b < 0) break;  // marker or junk: bits end here
    if (b) val += BigInt(1) << bit;
    ++bit;
  }
  std::vector<BigInt> candidates;
  for (BigInt c = val - 2; c <= val + 2; ++c) candidates.push_back(c);
  // mid-carry snapshots zero a whole prefix of ones: reconstruct the
  // pre-increment value from the carried-run length
  {
    int run = 0;
    for (const auto& s : x) {
      if ((run == 0 && s == "O") || (run > 0 && s == "0d"))
        ++run;
      else
        break;
    }
    if (run > 0) candidates.push_back(val + (BigInt(1) << run) - 1);
  }
  for (const BigInt& cand : candidates) {
    if (cand < 1) continue;
    // snapshot: bits of cand (cell-1 flavoured), marker E for odd cand
    TMConfig c;
    c.state = machine.stateIndex("U");
    c.head = 0;
    BigInt rest = cand;
    int cell = 0;
    while (rest > 0) {
      int b = (int)(rest & 1);
      rest >>= 1;
      const char* sym = cell == 0 ? (b ? "I" : "O") : (b ? "1" : "0");
      c.tape.push_back(machine.symIndex(sym));
      ++cell;
    }
    c.tape.push_back(machine.symIndex((cand & 1) == 1 ? "E" : "Ed"));

    BigInt k = sweepStart(cand);
    long long sweepLen = 2 * bitlen(cand) + 4;  // generous upper bound
    TMConfig cur = c;
    for (long long off = 0; off <= sweepLen; ++off) {
      if (tapeSymbols(machine, cur) == x) return k + off;
      auto nxt = stepTM(machine, cur);
      if (!nxt) break;
      cur = *nxt;
    }
  }
  return std::nullopt;
}

TMSpec slowCounter() {
  TMSpec base = CounterMachine::standard().machine;
  TMSpec tm;
  tm.alphabet = base.alphabet;
  tm.alphabet.push_back("P");
  tm.blank = base.blank;
  tm.states = base.states;
  tm.start = base.start;
  tm.accept = base.accept;
  tm.deterministic = true;
  for (const auto& r : base.delta) {
    std::string mid = "m_" + r.q2 + (r.moveRight ? "_R" : "_L");
    if (std::find(tm.states.begin(), tm.states.end(), mid) == tm.states.end())
      tm.states.push_back(mid);
    tm.delta.push_back({r.q, r.a, r.b, mid, r.moveRight});
  }
  // pad hops
  for (const auto& r : base.delta) {
    std::string mid = "m_" + r.q2 + (r.moveRight ? "_R" : "_L");
    for (const char* pad : {"#", "P"}) {
      bool dup = false;
      for (const auto& d : tm.delta)
        if (d.q == mid && d.a == pad) dup = true;
      if (!dup) tm.delta.push_back({mid, pad, "P", r.q2, r.moveRight});
    }
  }
  tm.validate();
  return tm;
}

std::vector<std::string> spaceSymbols(const std::vector<std::string>& symbols) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    out.push_back(symbols[i]);
    if (i + 1 < symbols.size()) out.push_back("P");
  }
  return out;
}

BigInt reduceToN(const std::vector<std::string>& x, Residue residue) {
  if (residue == Residue::Any) {
    CounterMachine cm = CounterMachine::standard();
    auto k = cm.invert(x);
    if (!k) throw std::invalid_argument("reduceToN: x is not in the image of the counter");
    return *k + 3;
  }
  // odd N: the half-speed counter reaches x at even step 2K, so N = 2K+3
  CounterMachine cm = CounterMachine::standard();
  std::vector<std::string> unspaced;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i % 2 == 0) {
      unspaced.push_back(x[i]);
    } else if (x[i] != "P") {
      throw std::invalid_argument("reduceToN: x is not in the slow counter's image");
    }
  }
  auto k = cm.invert(unspaced);
  if (!k) throw std::invalid_argument("reduceToN: x is not in the slow counter's image");
  BigInt n = 2 * *k + 3;
  // confirm by forward simulation
  long long steps = (n - 3).convert_to<long long>();
  TMSpec slow = slowCounter();
  auto run = runTM(slow, std::vector<std::string>{}, steps);
  if (tapeSymbols(slow, run.config) != x)
    throw std::invalid_argument("reduceToN: x is not in the slow counter's image");
  return n;
}

// ---------------------------------------------------------------------------
// Prime interval

bool isPrimeTrialDivision(const BigInt& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  if (n > BigInt("4503599627370496"))  // 2^52
    throw ResourceError("isPrimeTrialDivision: number too large for trial division");
  unsigned long long v = n.convert_to<unsigned long long>();
  for (unsigned long long d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

PrimeReduction primeReduce(const BigInt& x, unsigned long long seed) {
  if (x < 2) throw std::invalid_argument("primeReduce: x >= 2 required");
  if (bitlen(x) > 17) throw ResourceError("primeReduce: x too large for desk-scale search");
  PrimeReduction out;
  out.shift = 2 * bitlen(x);
  out.n0x = x << out.shift;

  // width = ceil(N0^(2/3)): smallest w with w^3 >= N0^2
  BigInt target = out.n0x * out.n0x;
  BigInt lo = 1, hi = out.n0x;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (mid * mid * mid >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  BigInt width = lo;

  std::mt19937_64 rng(seed);
  unsigned long long w = width.convert_to<unsigned long long>();
  for (int tries = 0; tries < 64; ++tries) {
    BigInt cand = out.n0x + BigInt(rng() % (w + 1));
    if (isPrimeTrialDivision(cand)) {
      out.n = cand;
      break;
    }
  }
  if (out.n == 0) {
    for (BigInt cand = out.n0x; cand <= out.n0x + width; ++cand)
      if (isPrimeTrialDivision(cand)) {
        out.n = cand;
        break;
      }
  }
  if (out.n == 0) throw std::logic_error("primeReduce: no prime in the interval");
  if ((out.n >> out.shift) != x) throw std::logic_error("primeReduce: top-bit invariant broken");
  return out;
}

}  // namespace tilekit
