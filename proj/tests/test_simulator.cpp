#include <doctest.h>

#include "tilekit/simulator.hpp"

using namespace tilekit;

TEST_CASE("the bouncer fixtures are reversible in normal form") {
  auto c = bouncerCounter();
  auto rep = checkReversibleNormalForm(c);
  CHECK(rep.ok);
  auto v = bouncerVerifier(c);
  CHECK(checkReversibleNormalForm(v).ok);
}

TEST_CASE("the bouncer keeps its head within the square-root envelope") {
  auto c = bouncerCounter();
  auto run = runTM(c, std::vector<std::string>{}, 200, /*keepTrace=*/true);
  REQUIRE_FALSE(run.stuck);
  for (std::size_t k = 0; k < run.trace.size(); ++k) {
    // head position <= about sqrt(4k)+2
    CHECK(run.trace[k].head <= (int)(2 * std::sqrt((double)k + 1) + 2));
  }
}

TEST_CASE("counting phase executes exactly N-2 counter steps") {
  auto counter = bouncerCounter();
  auto verifier = bouncerVerifier(counter);
  for (int n : {4, 5, 6, 8}) {
    CAPTURE(n);
    SimOptions opts;
    opts.acceptStates = {"LP"};
    auto rep = simulateConstruction(n, counter, verifier, {}, opts);
    CHECK_FALSE(rep.illegalStep.has_value());
    CHECK(rep.steps == 4ll * (n - 2) * (n - 2) - 1);
    CHECK(rep.counterSteps == n - 2);
    CHECK(rep.verifierSteps == n - 3);
    CHECK(rep.rightSweepsR1 == n - 2);
    // one step per sweep: entries after the initialization sweep are 1
    for (std::size_t k = 1; k < rep.counterStepsPerSweep.size(); ++k)
      CHECK(rep.counterStepsPerSweep[k] == 1);
  }
}

TEST_CASE("track 3 after the counting phase equals the oracle tape") {
  auto counter = bouncerCounter();
  auto verifier = bouncerVerifier(counter);
  for (int n : {5, 6, 8}) {
    CAPTURE(n);
    SimOptions opts;
    opts.keepTrace = true;
    auto rep = simulateConstruction(n, counter, verifier, {}, opts);
    // first state whose minute hand entered the computation phase
    const SimState* snap = nullptr;
    for (const auto& s : rep.trace) {
      for (T2 b : s.t2)
        if (b == T2::OneB) {
          snap = &s;
          break;
        }
      if (snap) break;
    }
    REQUIRE(snap != nullptr);
    auto oracle = runTM(counter, std::vector<std::string>{}, n - 2);
    auto tape = tapeSymbols(counter, oracle.config);
    for (int i = 0; i < n - 2; ++i) {
      std::string expect = i < (int)tape.size() ? tape[i] : counter.blank;
      CHECK(rep.symbols[snap->t3[i]] == expect);
    }
    // the counter's head track must mirror the oracle's head position
    int head = -1;
    for (int i = 0; i < n - 2; ++i)
      if (snap->t4[i] >= 0) head = i;
    CHECK(head == oracle.config.head);
  }
}

TEST_CASE("the verdict follows the verifier's left-end schedule") {
  auto counter = bouncerCounter();
  auto verifier = bouncerVerifier(counter);
  for (int n = 4; n <= 9; ++n) {
    SimOptions opts;
    opts.acceptStates = {"LP"};
    auto rep = simulateConstruction(n, counter, verifier, {}, opts);
    // the bouncer parks at cell 1 after t(t+1) steps
    long long k = n - 3;
    bool expect = false;
    for (long long t = 1; t * (t + 1) <= k; ++t)
      if (t * (t + 1) == k) expect = true;
    CAPTURE(n);
    CHECK(rep.accepted == expect);
  }
}

TEST_CASE("a corrupted initial track-4 cell trips an illegal pattern in the R0 sweep") {
  auto counter = bouncerCounter();
  auto verifier = bouncerVerifier(counter);
  const int n = 8;
  SimOptions opts;
  // build the clean initial state, then corrupt one track-4 cell
  auto clean = simulateConstruction(n, counter, verifier, {}, [] {
    SimOptions o;
    o.keepTrace = true;
    return o;
  }());
  SimState bad = clean.trace.front();
  bad.t4[3] = counter.stateIndex("LP");
  opts.initialOverride = bad;
  opts.checkBackward = false;  // corrupted states need not invert cleanly
  auto rep = simulateConstruction(n, counter, verifier, {}, opts);
  REQUIRE(rep.illegalStep.has_value());
  CHECK(*rep.illegalStep <= 2 * n);
  CHECK(rep.illegalWhat->find("track") != std::string::npos);
}

TEST_CASE("witness bits ride track 6 unchanged until the verifier rewrites them") {
  auto counter = bouncerCounter();
  auto verifier = bouncerVerifier(counter);
  const int n = 6;
  SimOptions opts;
  opts.keepTrace = true;
  std::vector<uint8_t> witness{1, 0, 1, 1};
  auto rep = simulateConstruction(n, counter, verifier, witness, opts);
  // during the counting phase the bits never change
  for (const auto& s : rep.trace) {
    bool counting = true;
    for (T2 b : s.t2)
      if (b == T2::OneB || b == T2::Two) counting = false;
    if (!counting) break;
    for (int i = 0; i < n - 2; ++i) CHECK(s.t6[i] == witness[i]);
  }
}
