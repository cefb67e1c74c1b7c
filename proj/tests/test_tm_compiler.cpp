#include <doctest.h>

#include <cmath>

#include "tilekit/grid_solver.hpp"
#include "tilekit/tm_compiler.hpp"

using namespace tilekit;

namespace {

// A slow stamper: lays down "a b b b ..." at one new cell per three steps by
// bouncing off the frontier.  Tape length after K steps: 2 + (K-2)/3.
TMSpec slowStamp() {
  TMSpec tm;
  tm.alphabet = {"#", "a", "b"};
  tm.states = {"q0", "F", "B", "qA"};
  tm.start = "q0";
  tm.accept = "qA";
  tm.deterministic = true;
  tm.delta = {
      {"q0", "#", "a", "F", true},
      {"F", "#", "b", "B", false},
      {"F", "b", "b", "F", true},
      {"B", "a", "a", "F", true},
      {"B", "b", "b", "F", true},
  };
  return tm;
}

// Echo verifier: primes the two leftmost cells, zips to the first blank and
// walks back, entering the accept state while stepping onto cell 1; the run
// accepts after exactly 2L steps on an L-cell input.
TMSpec echoVerifier() {
  TMSpec tm;
  tm.alphabet = {"#", "a", "b", "a'"};
  tm.states = {"q0", "p2", "scan", "back", "qA"};
  tm.start = "q0";
  tm.accept = "qA";
  tm.deterministic = true;
  tm.delta = {
      {"q0", "a", "a'", "p2", true},
      {"p2", "b", "a'", "scan", true},
      {"scan", "b", "b", "scan", true},
      {"scan", "#", "#", "back", false},
      {"back", "b", "b", "back", false},
      {"back", "a'", "a'", "qA", false},
  };
  return tm;
}

// Peek verifier with an idle loop: scans right and accepts on the first
// blank; a nondeterministic two-step shuffle can stretch the run, so the
// accepting step counts are L+1, L+3, L+5, ...
TMSpec peekVerifier() {
  TMSpec tm;
  tm.alphabet = {"#", "a", "b", "a'"};
  tm.states = {"q0", "scan", "idle", "qA"};
  tm.start = "q0";
  tm.accept = "qA";
  tm.deterministic = false;
  tm.delta = {
      {"q0", "a", "a'", "scan", true},
      {"scan", "b", "b", "scan", true},
      {"scan", "b", "b", "idle", false},
      {"idle", "a'", "a'", "scan", true},
      {"idle", "b", "b", "scan", true},
      {"scan", "#", "#", "qA", false},
  };
  return tm;
}

long long stampLen(long long k) { return k <= 1 ? k : 2 + (k - 2) / 3; }

}  // namespace

TEST_CASE("a transitionless machine halts immediately in its start state") {
  TMSpec tm;
  tm.alphabet = {"#"};
  tm.states = {"q0", "qA"};
  auto run = runTM(tm, "", 10);
  CHECK(run.stuck);
  CHECK(run.stepsExecuted == 0);
  CHECK(tm.states[run.config.state] == "q0");
}

TEST_CASE("a two-state machine that writes and accepts does so within 3 steps") {
  TMSpec tm;
  tm.alphabet = {"#", "1"};
  tm.states = {"q0", "qA"};
  tm.delta = {{"q0", "#", "1", "qA", true}};
  tm.deterministic = false;
  CHECK(runTMAccepts(tm, {}, 1, AcceptanceLayout::Anywhere));
  auto run = runTM(tm, "", 3);
  CHECK(run.accepted);
  CHECK(run.stepsExecuted == 1);
}

TEST_CASE("counter machine: every step changes the tape and f is injective") {
  CounterMachine cm = CounterMachine::standard();
  auto run = runTM(cm.machine, std::vector<std::string>{}, 4000, /*keepTrace=*/true);
  REQUIRE_FALSE(run.stuck);
  std::vector<std::vector<std::string>> tapes;
  for (const auto& cfg : run.trace) tapes.push_back(tapeSymbols(cm.machine, cfg));
  for (std::size_t i = 1; i < tapes.size(); ++i) CHECK(tapes[i] != tapes[i - 1]);
  // global injectivity over the sampled range
  auto sorted = tapes;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("counter machine: sweep-start bookkeeping matches the simulator") {
  CounterMachine cm = CounterMachine::standard();
  // start-of-sweep snapshots carry the plain bits of v with the parity marker
  auto run = runTM(cm.machine, std::vector<std::string>{}, 3000, true);
  for (BigInt v = 1; v <= 40; ++v) {
    BigInt t = CounterMachine::sweepStart(v);
    auto tape = tapeSymbols(cm.machine, run.trace[t.convert_to<std::size_t>()]);
    // decode the bits back
    BigInt val = 0;
    int bit = 0;
    for (const auto& s : tape) {
      if (s == "I" || s == "1")
        val += BigInt(1) << bit;
      else if (s != "O" && s != "0")
        break;
      ++bit;
    }
    CHECK(val == v);
  }
}

TEST_CASE("counter roundtrip: invert(f(K)) == K") {
  CounterMachine cm = CounterMachine::standard();
  for (long long k : {1, 2, 3, 5, 9, 17, 64, 101, 230, 517, 1024, 2047, 3000}) {
    auto x = cm.f(k);
    auto back = cm.invert(x);
    REQUIRE(back.has_value());
    CHECK(*back == BigInt(k));
  }
  SUBCASE("dense range") {
    for (long long k = 2; k <= 400; ++k) {
      auto back = cm.invert(cm.f(k));
      REQUIRE(back.has_value());
      CHECK(*back == BigInt(k));
    }
  }
  SUBCASE("junk is rejected") {
    CHECK_FALSE(cm.invert({"1", "1", "1"}).has_value());
    CHECK_FALSE(cm.invert({"E"}).has_value());
  }
}

TEST_CASE("reduceToN and the length constants") {
  CounterMachine cm = CounterMachine::standard();
  SUBCASE("roundtrip: reduceToN(f(K)) = K + 3") {
    for (long long k = 2; k <= 120; ++k) CHECK(reduceToN(cm.f(k)) == BigInt(k + 3));
  }
  SUBCASE("odd-N variant") {
    TMSpec slow = slowCounter();
    for (long long k : {5, 12, 33, 80}) {
      auto run = runTM(slow, std::vector<std::string>{}, 2 * k);
      auto x = tapeSymbols(slow, run.config);
      BigInt n = reduceToN(x, Residue::OddN);
      CHECK(n % 2 == 1);
      CHECK(n == BigInt(2 * k + 3));
    }
  }
  SUBCASE("2^(c1 n) <= K <= 2^(c2 n) for the frozen constants") {
    auto run = runTM(cm.machine, std::vector<std::string>{}, 10000, /*keepTrace=*/true);
    for (long long k = cm.n0; k <= 10000; ++k) {
      double n = static_cast<double>(tapeSymbols(cm.machine, run.trace[k]).size());
      CAPTURE(k);
      CHECK(std::pow(2.0, cm.c1 * n) <= static_cast<double>(k) + 1e-9);
      CHECK(static_cast<double>(k) <= std::pow(2.0, cm.c2 * n) + 1e-9);
    }
  }
}

TEST_CASE("prime reduction") {
  SUBCASE("x = 5: N0 = 320 and a prime below 367") {
    auto red = primeReduce(BigInt(5));
    CHECK(red.n0x == 320);
    CHECK(red.n >= 320);
    CHECK(red.n < 367);
    CHECK(isPrimeTrialDivision(red.n));
    CHECK((red.n >> red.shift) == 5);
  }
  SUBCASE("x = 2: a prime in [32, 43]") {
    auto red = primeReduce(BigInt(2));
    CHECK(red.n0x == 32);
    CHECK(red.n >= 32);
    CHECK(red.n <= 43);
    CHECK(isPrimeTrialDivision(red.n));
  }
  SUBCASE("top bits recover x for all x in [2, 200]") {
    for (int x = 2; x <= 200; ++x) {
      auto red = primeReduce(BigInt(x));
      CHECK(isPrimeTrialDivision(red.n));
      CHECK((red.n >> red.shift) == x);
    }
  }
}

TEST_CASE("compiled tile counts follow the three-varieties formula") {
  // |Sigma|=3, |Q|=2 per machine: 3*(1+4*2) = 27 interior tiles per layer.
  TMSpec a;
  a.alphabet = {"#", "0", "1"};
  a.states = {"q0", "qA"};
  a.delta = {{"q0", "#", "1", "qA", true}};
  TMSpec b = a;
  b.alphabet = {"#", "0'", "1'"};  // fresh symbols so compilation is accepted
  b.delta = {{"q0", "#", "1'", "qA", true}};
  b.deterministic = false;
  auto compiled = compileTM(a, b);
  CHECK(compiled.layer1Tiles.size() == 5 + 27);
  CHECK(compiled.layer2Tiles.size() == 5 + 27);
  CHECK(compiled.product.rules.size() == 5 + 27 * 27);
}

TEST_CASE("compileTM rejects a verifier without fresh symbols") {
  TMSpec a = slowStamp();
  TMSpec b = slowStamp();
  b.deterministic = false;
  CHECK_THROWS_AS(compileTM(a, b), std::invalid_argument);
}

TEST_CASE("slow stamper timing") {
  TMSpec counter = slowStamp();
  for (long long k = 1; k <= 40; ++k) {
    auto run = runTM(counter, std::vector<std::string>{}, k);
    REQUIRE_FALSE(run.stuck);
    CHECK((long long)tapeSymbols(counter, run.config).size() == stampLen(k));
  }
}

TEST_CASE("compiled instance: grid tiling exists iff the verifier accepts") {
  TMSpec counter = slowStamp();
  TMSpec verifier = echoVerifier();
  auto compiled = compileTM(counter, verifier);

  SolverLimits limits;
  limits.maxRows = 64;  // force the backtracking route; row spaces are huge

  bool sawAccept = false, sawReject = false;
  for (int n = 5; n <= 10; ++n) {
    long long steps = n - 3;
    auto input = tapeSymbols(counter, runTM(counter, std::vector<std::string>{}, steps).config);
    bool tmAccepts = runTMAccepts(verifier, input, steps, AcceptanceLayout::Anywhere);
    // this fixture always accepts at the left end, so the layouts agree
    CHECK(tmAccepts == runTMAccepts(verifier, input, steps, AcceptanceLayout::AtLeftEnd));
    CHECK(tmAccepts == (steps == 2 * stampLen(steps)));
    (tmAccepts ? sawAccept : sawReject) = true;
    auto grid = solveGrid(compiled.instance, n, SolveMode::Exists, limits);
    CAPTURE(n);
    CHECK(grid.exists == tmAccepts);
    if (grid.exists) {
      REQUIRE(grid.witness.has_value());
      auto rep = validateTiling(compiled.instance, *grid.witness);
      CHECK(rep.violations.empty());
      CHECK(rep.boundary.empty());

      // the border must be the unique frame arrangement
      const auto& t = *grid.witness;
      auto kindAt = [&](int row, int col) {
        const LayerTile& lt = compiled.tileAt(t.at(row, col), 0);
        return lt.kind == LayerTile::Border ? lt.border : -1;
      };
      for (int c = 2; c < n; ++c) {
        CHECK(kindAt(1, c) == 3);   // N
        CHECK(kindAt(n, c) == 4);   // S
      }
      for (int r = 2; r < n; ++r) {
        CHECK(kindAt(r, 1) == 1);   // W
        CHECK(kindAt(r, n) == 2);   // E
      }
      CHECK(kindAt(1, 1) == 0);
      CHECK(kindAt(1, n) == 0);
      CHECK(kindAt(n, 1) == 0);
      CHECK(kindAt(n, n) == 0);
    }
  }
  CHECK(sawAccept);
  CHECK(sawReject);
}

TEST_CASE("witness layer-2 rows replay the verifier's computation") {
  TMSpec counter = slowStamp();
  TMSpec verifier = echoVerifier();
  auto compiled = compileTM(counter, verifier);
  SolverLimits limits;
  limits.maxRows = 64;

  for (int n : {7, 9}) {  // accepting sizes for this fixture pair
    long long steps = n - 3;
    auto input = tapeSymbols(counter, runTM(counter, std::vector<std::string>{}, steps).config);
    REQUIRE(runTMAccepts(verifier, input, steps, AcceptanceLayout::Anywhere));
    auto grid = solveGrid(compiled.instance, n, SolveMode::Exists, limits);
    REQUIRE(grid.exists);
    const auto& t = *grid.witness;

    // decode layer-2 per row (bottom interior row first)
    struct RowCfg {
      std::vector<std::string> syms;
      int head = -1;
      std::string state;
    };
    std::vector<RowCfg> rows;
    for (int row = n - 1; row >= 2; --row) {
      RowCfg rc;
      for (int c = 2; c < n; ++c) {
        const LayerTile& lt = compiled.tileAt(t.at(row, c), 1);
        REQUIRE(lt.kind != LayerTile::Border);
        rc.syms.push_back(verifier.alphabet[lt.sym]);
        if (lt.kind == LayerTile::Head) {
          rc.head = c - 2;
          rc.state = verifier.states[lt.state];
        }
      }
      rows.push_back(rc);
    }
    // row j reproduces the configuration after j steps of some accepting branch
    REQUIRE(rows.size() == (std::size_t)n - 2);
    CHECK(rows.front().head == 0);
    CHECK(rows.front().state == verifier.start);
    for (std::size_t j = 0; j + 1 < rows.size(); ++j) {
      // the step from row j to row j+1 must be one legal verifier move
      REQUIRE(rows[j].head >= 0);
      bool legal = false;
      for (const auto& rule : verifier.delta) {
        if (rule.q != rows[j].state || rule.a != rows[j].syms[rows[j].head]) continue;
        auto next = rows[j].syms;
        next[rows[j].head] = rule.b;
        int nh = rows[j].head + (rule.moveRight ? 1 : -1);
        if (nh == rows[j + 1].head && rule.q2 == rows[j + 1].state && next == rows[j + 1].syms)
          legal = true;
      }
      CAPTURE(j);
      CHECK(legal);
    }
    CHECK(rows.back().state == verifier.accept);
    // input row carries the counter output
    for (std::size_t c = 0; c < input.size(); ++c) {
      if (c == 0) continue;  // cell 1 may hold the primed head symbol
      CHECK(rows.front().syms[c] == input[c]);
    }
  }
}
