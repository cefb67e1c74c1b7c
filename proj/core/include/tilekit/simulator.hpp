#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilekit/clock.hpp"
#include "tilekit/tm.hpp"

namespace tilekit {

// Full six-track state: clock tracks 1-2, shared work tape, the two machine
// head tracks, and the witness bits.  Interior cells are 1-based tape cells
// 1..N-2; the ends carry only the bracket markers.
struct SimState {
  int n = 0;
  std::vector<T1> t1;
  std::vector<T2> t2;
  std::vector<int> t3;  // indices into the shared symbol table
  std::vector<int> t4;  // kHeadBlankL/R or state (+Q for the primed copy)
  std::vector<int> t5;
  std::vector<uint8_t> t6;

  static constexpr int kBlankL = -1;
  static constexpr int kBlankR = -2;

  bool operator==(const SimState&) const = default;
};

struct SimReport {
  long long steps = 0;
  long long counterSteps = 0;
  long long verifierSteps = 0;
  long long rightSweepsR1 = 0;
  long long rightSweepsR2 = 0;
  bool accepted = false;
  std::optional<long long> illegalStep;   // first step whose state shows an
  std::optional<std::string> illegalWhat; // illegal pattern, if any
  SimState finalState;
  std::vector<std::string> symbols;  // shared track-3 symbol table
  std::vector<SimState> trace;       // filled when requested
  // per-step counter/verifier execution counts within each right sweep
  std::vector<long long> counterStepsPerSweep;
  std::vector<long long> verifierStepsPerSweep;
};

struct SimOptions {
  bool keepTrace = false;
  bool stopAtIllegal = true;
  bool checkBackward = true;  // verify backward uniqueness at every step
  std::vector<std::string> acceptStates;  // defaults to {verifier.accept}
  std::optional<SimState> initialOverride;
};

// Runs the forward evolution of the combined construction from the
// initialization state until the clock stops.  Both machines must be
// deterministic and locally reversible (distinct transition images, single
// entry direction per state); the verifier reads pair symbols
// "<work>|<bit>" zipped from tracks 3 and 6.  A transition ambiguity is a
// hard error.
SimReport simulateConstruction(int n, const TMSpec& counter, const TMSpec& verifier,
                               const std::vector<uint8_t>& witness, const SimOptions& opts = {});

// ASCII frame of all six tracks.
std::string simFrame(const SimReport& rep, const SimState& s, const TMSpec& counter,
                     const TMSpec& verifier);

// Reversible fixture machines: a zig-zag "bouncer" that grows its arena one
// cell per round trip.  The verifier variant works over zipped symbols laid
// down by `base` and reaches its accepting state at the left end on a
// schedule of trips.
TMSpec bouncerCounter();
TMSpec bouncerVerifier(const TMSpec& counter);

}  // namespace tilekit
