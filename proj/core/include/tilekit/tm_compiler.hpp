#pragma once

#include <optional>

#include "tilekit/tiles.hpp"
#include "tilekit/tm.hpp"

namespace tilekit {

// One tile of a machine layer: the five border tiles or one of the three
// interior varieties over (symbol, state, direction).
struct LayerTile {
  enum Kind { Border, Plain, Head, Action } kind = Plain;  // varieties 1,2,3
  int border = -1;  // 0:C 1:W 2:E 3:N 4:S
  int sym = -1;     // alphabet index
  int state = -1;   // machine state (Head/Action)
  bool fromRight = false;  // Head: head arrived from the right ('r')
  bool movedRight = false; // Action: the committed move went right ('R')
};

// The two-layer tile system that simulates a counter machine running down
// layer 1 and a verifier running up layer 2, with the shared border tiles
// C,W,E,N,S and the output-copy coupling at the bottom row.
struct CompiledTiles {
  LayerSpec spec;
  LayeredRuleSet product;
  TilingInstance instance;  // four-corner boundary on the product rule set
  std::vector<LayerTile> layer1Tiles;  // aligned with spec.layers[0]
  std::vector<LayerTile> layer2Tiles;
  TMSpec counter, verifier;

  const LayerTile& tileAt(int productTile, int layer) const {
    return layer == 0 ? layer1Tiles[product.tuples[productTile][0]]
                      : layer2Tiles[product.tuples[productTile][1]];
  }
};

// Builds the tile system for the pair (counter, verifier).  The verifier must
// carry at least one working symbol outside the counter's alphabet (the
// primed-copy convention for the leftmost cell), otherwise the compilation
// fails.
CompiledTiles compileTM(const TMSpec& counter, const TMSpec& verifier);

// ---------------------------------------------------------------------------
// The binary counter machine

// A deterministic sweep counter: each step rewrites the scanned cell, so the
// tape contents after K steps determine K; the tape length stays logarithmic
// in K.
struct CounterMachine {
  TMSpec machine;
  // measured constants with 2^(c1 n) <= K <= 2^(c2 n) for n = |f(K)|, K >= n0
  double c1 = 0, c2 = 0;
  long long n0 = 0;

  static CounterMachine standard();

  // f(K): tape contents after K steps from blank tape.
  std::vector<std::string> f(long long steps) const;

  // Steps needed to reach the start-of-sweep snapshot for counter value v.
  static BigInt sweepStart(const BigInt& v);

  // Inverse of f: the unique K >= 1 with f(K) = x, or nothing.
  std::optional<BigInt> invert(const std::vector<std::string>& x) const;
};

enum class Residue { Any, OddN };

// The reduction x -> N with f(N-3) = x.  With Residue::OddN a half-speed
// counter is used, so the returned N is odd (and x must be in the slow
// machine's image, i.e. the pad-spaced form).
BigInt reduceToN(const std::vector<std::string>& x, Residue residue = Residue::Any);

// The half-speed counter: one real step per two machine steps, symbols padded
// apart so that f_slow(2K) is the spaced form of f(K).
TMSpec slowCounter();
std::vector<std::string> spaceSymbols(const std::vector<std::string>& symbols);

// ---------------------------------------------------------------------------
// Prime-interval reduction

struct PrimeReduction {
  BigInt n;        // the prime
  BigInt n0x;      // N0(x) = x * 2^(2*bitlen(x))
  int shift = 0;   // 2*bitlen(x)
};

// Finds a prime in [N0(x), N0(x) + ceil(N0(x)^(2/3))] by seeded random
// sampling with a deterministic exhaustive fallback; floor(N / 2^shift) == x.
PrimeReduction primeReduce(const BigInt& x, unsigned long long seed = 12345);

// Deterministic trial-division primality (oracle-grade at desk scale).
bool isPrimeTrialDivision(const BigInt& n);

}  // namespace tilekit
