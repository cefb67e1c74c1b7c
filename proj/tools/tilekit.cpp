#include <chrono>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tilekit/eigen_solver.hpp"
#include "tilekit/rules_io.hpp"
#include "tilekit/simulator.hpp"
#include "tilekit/tm_compiler.hpp"
#include "tilekit/variants.hpp"

using namespace tilekit;
using nlohmann::json;

namespace {

struct Global {
  bool jsonOut = false;
  unsigned long long seed = 12345;
};

int exitYes(bool yes) { return yes ? 0 : 1; }

void printTiling(const RuleSet& rules, const Tiling& t) {
  std::size_t w = 0;
  for (const auto& name : rules.tiles) w = std::max(w, name.size());
  for (int r = 1; r <= t.height; ++r) {
    for (int c = 1; c <= t.width; ++c) {
      std::string name = rules.tiles[t.at(r, c)];
      std::cout << name << std::string(w - name.size() + 1, ' ');
    }
    std::cout << "\n";
  }
}

json tilingJson(const RuleSet& rules, const Tiling& t) {
  json rows = json::array();
  for (int r = 1; r <= t.height; ++r) {
    json row = json::array();
    for (int c = 1; c <= t.width; ++c) row.push_back(rules.tiles[t.at(r, c)]);
    rows.push_back(row);
  }
  return rows;
}

int runSolve(const Global& g, const std::string& rulesPath, const std::string& nText,
             const std::string& mode, bool oracle, const std::string& witnessOut,
             const std::string& validatePath) {
  TilingInstance inst = loadInstance(rulesPath);
  if (!validatePath.empty()) {
    Tiling t = loadWitness(validatePath, inst.rules);
    auto rep = validateTiling(inst, t);
    bool ok = rep.violations.empty() && rep.boundary.empty() &&
              BigInt(rep.totalCost) <= inst.costBound.eval(t.width);
    if (g.jsonOut) {
      json out{{"totalCost", rep.totalCost},
               {"violations", rep.violations.size()},
               {"boundaryMismatches", rep.boundary.size()},
               {"withinBound", ok}};
      std::cout << out.dump() << "\n";
    } else {
      std::cout << "cost " << rep.totalCost << ", " << rep.violations.size() << " violations, "
                << rep.boundary.size() << " boundary mismatches\n";
    }
    return exitYes(ok);
  }

  int n = std::stoi(nText);
  SolveMode m = mode == "count" ? SolveMode::Count
                                : (mode == "mincost" ? SolveMode::MinCost : SolveMode::Exists);
  SolveResult res = oracle ? bruteForceGrid(inst, n) : solveGrid(inst, n, m);
  const Tiling* witness = res.witnessMin ? &*res.witnessMin : (res.witness ? &*res.witness : nullptr);
  if (!witnessOut.empty() && witness) saveWitness(*witness, inst.rules, witnessOut);

  if (g.jsonOut) {
    json out{{"n", n}, {"mode", mode}, {"exists", res.exists}};
    if (m == SolveMode::Count || oracle) out["count"] = res.count.str();
    if (res.minCost) out["minCost"] = *res.minCost;
    if (witness) out["witness"] = tilingJson(inst.rules, *witness);
    std::cout << out.dump() << "\n";
  } else {
    if (m == SolveMode::Count) std::cout << "count " << res.count.str() << "\n";
    if (m == SolveMode::MinCost) {
      if (res.minCost)
        std::cout << "minCost " << *res.minCost << "\n";
      else
        std::cout << "infeasible\n";
    }
    if (m == SolveMode::Exists) std::cout << (res.exists ? "exists" : "no tiling") << "\n";
    if (witness) printTiling(inst.rules, *witness);
  }
  if (m == SolveMode::MinCost) return exitYes(res.minCost.has_value());
  if (m == SolveMode::Count) return exitYes(res.count > 0);
  return exitYes(res.exists);
}

int runLine(const Global& g, const std::string& rulesPath, const std::string& nText,
            const std::string& mode, const std::string& ends) {
  TilingInstance inst = loadInstance(rulesPath);
  int t0 = 0, t1 = 0;
  if (!ends.empty()) {
    auto comma = ends.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--ends expects t0,t1");
    t0 = inst.rules.indexOf(ends.substr(0, comma));
    t1 = inst.rules.indexOf(ends.substr(comma + 1));
  } else if (inst.bc.tile >= 0) {
    t0 = t1 = inst.bc.tile;
  }
  BigInt n(nText);
  SolveMode m = mode == "mincost" ? SolveMode::MinCost : SolveMode::Exists;
  auto res = solveLine(inst.rules, t0, t1, n, m);
  if (g.jsonOut) {
    json out{{"n", nText}, {"exists", res.exists}};
    if (res.minCost) out["minCost"] = res.minCost->str();
    if (res.witness) {
      json w = json::array();
      for (int tIdx : *res.witness) w.push_back(inst.rules.tiles[tIdx]);
      out["witness"] = w;
    }
    std::cout << out.dump() << "\n";
  } else {
    if (m == SolveMode::MinCost && res.minCost)
      std::cout << "minCost " << res.minCost->str() << "\n";
    std::cout << (res.exists ? "tiling exists" : "no tiling") << "\n";
  }
  return exitYes(res.exists);
}

int runTmRun(const Global& g, const std::string& tmPath, const std::string& input,
             long long steps, bool nondet) {
  TMSpec tm = loadTM(tmPath);
  if (nondet || !tm.deterministic) {
    std::vector<std::string> in;
    for (char c : input)
      if (c != ' ') in.push_back(std::string(1, c));
    bool acc = runTMAccepts(tm, in, steps);
    if (g.jsonOut)
      std::cout << json{{"accepts", acc}}.dump() << "\n";
    else
      std::cout << (acc ? "accepts" : "rejects") << "\n";
    return exitYes(acc);
  }
  auto run = runTM(tm, input, steps);
  auto tape = tapeSymbols(tm, run.config);
  if (g.jsonOut) {
    json out{{"steps", run.stepsExecuted},
             {"stuck", run.stuck},
             {"accepted", run.accepted},
             {"state", tm.states[run.config.state]},
             {"head", run.config.head + 1},
             {"tape", tape}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "after " << run.stepsExecuted << " steps, state "
              << tm.states[run.config.state] << ", head at cell " << run.config.head + 1
              << "\ntape:";
    for (const auto& s : tape) std::cout << " " << s;
    std::cout << "\n";
  }
  return exitYes(run.accepted);
}

int runTmCompile(const Global& g, const std::string& counterPath, const std::string& verifierPath,
                 const std::string& outPath) {
  TMSpec counter = counterPath.empty() ? CounterMachine::standard().machine : loadTM(counterPath);
  TMSpec verifier = loadTM(verifierPath);
  auto compiled = compileTM(counter, verifier);
  if (!outPath.empty()) saveInstance(compiled.instance, outPath);
  if (g.jsonOut) {
    json out{{"tiles", compiled.instance.rules.size()},
             {"layer1Tiles", compiled.layer1Tiles.size()},
             {"layer2Tiles", compiled.layer2Tiles.size()}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "compiled " << compiled.instance.rules.size() << " tiles ("
              << compiled.layer1Tiles.size() << " + " << compiled.layer2Tiles.size()
              << " layer tiles)\n";
  }
  return 0;
}

int runTmReduce(const Global& g, const std::string& xText, bool odd) {
  std::vector<std::string> x;
  std::string cur;
  for (char c : xText + " ") {
    if (c == ' ' || c == ',') {
      if (!cur.empty()) x.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  BigInt n = reduceToN(x, odd ? Residue::OddN : Residue::Any);
  if (g.jsonOut)
    std::cout << json{{"n", n.str()}}.dump() << "\n";
  else
    std::cout << n.str() << "\n";
  return 0;
}

int runTmPrime(const Global& g, const std::string& xText) {
  PrimeReduction red = primeReduce(BigInt(xText), g.seed);
  if (g.jsonOut) {
    json out{{"n", red.n.str()}, {"n0", red.n0x.str()}, {"shift", red.shift}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << red.n.str() << " (interval base " << red.n0x.str() << ", top bits shift "
              << red.shift << ")\n";
  }
  return 0;
}

int runFixture(const Global& g, const std::string& name, const std::string& outPath,
               bool checksum, bool list) {
  if (list) {
    for (const auto& id : fixtureNames()) std::cout << id << "\n";
    return 0;
  }
  auto f = fixture(name);
  if (checksum) {
    std::cout << std::hex << "0x" << fixtureChecksum(name) << std::dec << "\n";
    return 0;
  }
  if (f.instance && !outPath.empty()) saveInstance(*f.instance, outPath);
  if (g.jsonOut) {
    json out{{"name", name}, {"checksum", fixtureChecksum(name)}};
    if (f.instance) out["instance"] = json::parse(instanceToJson(*f.instance));
    if (f.tiling && !f.rulesFixture.empty())
      out["tiling"] = tilingJson(fixture(f.rulesFixture).instance->rules, *f.tiling);
    std::cout << out.dump() << "\n";
  } else {
    if (f.instance)
      std::cout << name << ": " << f.instance->rules.size() << " tiles\n";
    if (f.tiling) {
      if (!f.rulesFixture.empty()) {
        printTiling(fixture(f.rulesFixture).instance->rules, *f.tiling);
      } else {
        std::cout << name << ": " << f.tiling->width << "x" << f.tiling->height << " grid\n";
      }
    }
  }
  return 0;
}

int runRowPair(const Global& g, const std::string& fixtureName, int n, const std::string& mode,
               const std::string& ends) {
  auto f = fixture(fixtureName);
  const RuleSet& rules = f.instance->rules;
  int vT = rules.indexOf("V"), cT = rules.indexOf("C");
  RowPairMode m = mode == "wdprime" ? RowPairMode::WDoublePrime : RowPairMode::WPrime;
  RowPairEnds e = RowPairEnds::Free;
  if (ends == "oneblocked") e = RowPairEnds::OneBlocked;
  if (ends == "bothblocked") e = RowPairEnds::BothBlocked;
  if (ends == "corners") e = RowPairEnds::CornersC;
  auto res = rowPairMinimum(rules, vT, cT, m, e, n);
  if (g.jsonOut) {
    json rows = json::array();
    for (auto& [u, v] : res.rows) rows.push_back({rules.tiles[u], rules.tiles[v]});
    std::cout << json{{"minimum", res.minimum}, {"rows", rows}}.dump() << "\n";
  } else {
    std::cout << "minimum " << res.minimum << "\n";
    for (int which : {0, 1}) {
      for (auto& [u, v] : res.rows) std::cout << rules.tiles[which == 0 ? u : v] << " ";
      std::cout << "\n";
    }
  }
  return 0;
}

int runClockSequence(const Global& g, int n) {
  auto seq = clockSequence(n);
  if (g.jsonOut) {
    json out = json::array();
    for (const auto& s : seq) out.push_back(chainName(s));
    std::cout << json{{"n", n}, {"length", seq.size()}, {"states", out}}.dump() << "\n";
  } else {
    for (const auto& s : seq) std::cout << chainName(s) << "\n";
  }
  return 0;
}

int runClockSpectrum(const Global& g, int n, const std::string& sector, bool boundary, int k) {
  Sector sec = Sector::BracketedAll;
  if (sector == "wellformed") sec = Sector::BracketedWellFormed;
  if (sector == "path") sec = Sector::LegalPath;
  if (boundary) sec = Sector::FullChain;
  auto h = buildHamiltonian(n, sec, boundary);
  EigenOptions opts;
  opts.seed = g.seed;
  auto eig = lowestEigenpairs(h, k, opts);
  if (g.jsonOut) {
    json out{{"n", n}, {"dim", h.dim}, {"values", eig.values}, {"residuals", eig.residuals}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "dim " << h.dim << "\n";
    for (std::size_t i = 0; i < eig.values.size(); ++i)
      std::cout << "lambda_" << i << " = " << std::setprecision(15) << eig.values[i]
                << " (residual " << eig.residuals[i] << ")\n";
  }
  return 0;
}

int runClockTrace(const Global& g, int n, const std::string& tmPath,
                  const std::string& verifierPath, const std::string& witnessBits) {
  TMSpec counter = tmPath.empty() ? bouncerCounter() : loadTM(tmPath);
  TMSpec verifier = verifierPath.empty() ? bouncerVerifier(counter) : loadTM(verifierPath);
  std::vector<uint8_t> witness;
  for (char c : witnessBits) witness.push_back(c == '1' ? 1 : 0);
  SimOptions opts;
  opts.keepTrace = true;
  opts.acceptStates = {"LP"};
  auto rep = simulateConstruction(n, counter, verifier, witness, opts);
  if (g.jsonOut) {
    json out{{"n", n},
             {"steps", rep.steps},
             {"counterSteps", rep.counterSteps},
             {"verifierSteps", rep.verifierSteps},
             {"accepted", rep.accepted}};
    if (rep.illegalStep) out["illegalStep"] = *rep.illegalStep;
    std::cout << out.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < rep.trace.size(); ++i) {
      std::cout << "step " << i << "\n"
                << simFrame(rep, rep.trace[i], counter, verifier) << "\n";
    }
    std::cout << "steps " << rep.steps << ", counter " << rep.counterSteps << ", verifier "
              << rep.verifierSteps << (rep.accepted ? ", accepted" : ", rejected") << "\n";
    if (rep.illegalStep)
      std::cout << "illegal pattern at step " << *rep.illegalStep << ": " << *rep.illegalWhat
                << "\n";
  }
  return exitYes(rep.accepted);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tilekit: translationally-invariant tiling and clock-chain toolkit"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--json", g.jsonOut, "machine-readable output");
  app.add_option("--seed", g.seed, "seed for randomized search");

  // solve
  auto* solve = app.add_subcommand("solve", "exact 2-D solver");
  std::string sRules, sN = "0", sMode = "exists", sWitness, sValidate;
  bool sOracle = false;
  solve->add_option("--rules", sRules)->required();
  solve->add_option("--n", sN);
  solve->add_option("--mode", sMode)->check(CLI::IsMember({"exists", "count", "mincost"}));
  solve->add_flag("--oracle", sOracle, "use the exhaustive oracle");
  solve->add_option("--witness", sWitness, "write the witness tiling to a file");
  solve->add_option("--validate", sValidate, "validate a witness file instead of solving");

  // line
  auto* line = app.add_subcommand("line", "polylog-time 1-D solver");
  std::string lRules, lN, lMode = "exists", lEnds;
  line->add_option("--rules", lRules)->required();
  line->add_option("--n", lN)->required();
  line->add_option("--mode", lMode)->check(CLI::IsMember({"exists", "mincost"}));
  line->add_option("--ends", lEnds, "endpoint tiles t0,t1");

  // tm
  auto* tm = app.add_subcommand("tm", "Turing machine operations");
  tm->require_subcommand(1);
  auto* tmRun = tm->add_subcommand("run", "simulate a machine");
  std::string trPath, trInput;
  long long trSteps = 0;
  bool trNondet = false;
  tmRun->add_option("--tm", trPath)->required();
  tmRun->add_option("--input", trInput);
  tmRun->add_option("--steps", trSteps)->required();
  tmRun->add_flag("--nondet", trNondet);
  auto* tmCompile = tm->add_subcommand("compile", "compile a machine pair to tiling rules");
  std::string tcCounter, tcVerifier, tcOut;
  tmCompile->add_option("--counter", tcCounter, "counter machine (default: built-in)");
  tmCompile->add_option("--verifier", tcVerifier)->required();
  tmCompile->add_option("--out", tcOut);
  auto* tmReduce = tm->add_subcommand("reduce", "invert the counter output to N");
  std::string trdX;
  bool trdOdd = false;
  tmReduce->add_option("--x", trdX)->required();
  tmReduce->add_flag("--odd", trdOdd, "odd N via the half-speed counter");
  auto* tmPrime = tm->add_subcommand("prime", "prime with given top bits");
  std::string tpX;
  tmPrime->add_option("--x", tpX)->required();

  // variant
  auto* variant = app.add_subcommand("variant", "fixture rule sets and analyses");
  variant->require_subcommand(1);
  auto* vFixture = variant->add_subcommand("fixture", "emit a fixture");
  std::string vfName, vfOut;
  bool vfChecksum = false, vfList = false;
  vFixture->add_option("name", vfName);
  vFixture->add_option("--out", vfOut);
  vFixture->add_flag("--checksum", vfChecksum);
  vFixture->add_flag("--list", vfList);
  auto* vRowpair = variant->add_subcommand("rowpair", "pair-of-rows minima");
  std::string vrFixture = "reflection-weighted-L1", vrMode = "wprime", vrEnds = "free";
  int vrN = 10;
  vRowpair->add_option("--fixture", vrFixture);
  vRowpair->add_option("--n", vrN);
  vRowpair->add_option("--mode", vrMode)->check(CLI::IsMember({"wprime", "wdprime"}));
  vRowpair->add_option("--ends", vrEnds)
      ->check(CLI::IsMember({"free", "oneblocked", "bothblocked", "corners"}));

  // clock
  auto* clock = app.add_subcommand("clock", "1-D clock chain");
  clock->require_subcommand(1);
  auto* cSeq = clock->add_subcommand("sequence", "the clock state sequence");
  int csN = 6;
  cSeq->add_option("--n", csN)->required();
  auto* cSpec = clock->add_subcommand("spectrum", "lowest eigenpairs");
  int cpN = 4, cpK = 2;
  std::string cpSector = "bracketed";
  bool cpBoundary = false;
  cSpec->add_option("--n", cpN)->required();
  cSpec->add_option("--sector", cpSector)->check(CLI::IsMember({"bracketed", "wellformed", "path"}));
  cSpec->add_flag("--boundary", cpBoundary, "full chain with the boundary term");
  cSpec->add_option("--k", cpK);
  auto* cTrace = clock->add_subcommand("trace", "six-track construction trace");
  int ctN = 6;
  std::string ctTm, ctVerifier, ctWitness;
  cTrace->add_option("--n", ctN)->required();
  cTrace->add_option("--tm", ctTm, "counter machine (default: built-in bouncer)");
  cTrace->add_option("--verifier", ctVerifier);
  cTrace->add_option("--witness", ctWitness, "witness bits, e.g. 1011");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return runSolve(g, sRules, sN, sMode, sOracle, sWitness, sValidate);
    if (*line) return runLine(g, lRules, lN, lMode, lEnds);
    if (*tmRun) return runTmRun(g, trPath, trInput, trSteps, trNondet);
    if (*tmCompile) return runTmCompile(g, tcCounter, tcVerifier, tcOut);
    if (*tmReduce) return runTmReduce(g, trdX, trdOdd);
    if (*tmPrime) return runTmPrime(g, tpX);
    if (*vFixture) return runFixture(g, vfName, vfOut, vfChecksum, vfList);
    if (*vRowpair) return runRowPair(g, vrFixture, vrN, vrMode, vrEnds);
    if (*cSeq) return runClockSequence(g, csN);
    if (*cSpec) return runClockSpectrum(g, cpN, cpSector, cpBoundary, cpK);
    if (*cTrace) return runClockTrace(g, ctN, ctTm, ctVerifier, ctWitness);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
