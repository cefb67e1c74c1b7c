#pragma once

#include <string>

#include "tilekit/tiles.hpp"
#include "tilekit/tm.hpp"

namespace tilekit {

// Rule-set documents look like
//   {"tiles":["a","b"],
//    "horizontal":[[0,"F"],[1,0]],
//    "vertical":[[0,0],["F",0]],
//    "boundary":{"kind":"fourCorners","tile":"a"},
//    "costBound":[0]}
// "F" in a weight cell denotes the forbidden sentinel.  The schema is
// validated on load; errors carry a JSON-pointer-style field path.
TilingInstance loadInstance(const std::string& path);
TilingInstance parseInstance(const std::string& jsonText, const std::string& what = "<string>");
std::string instanceToJson(const TilingInstance& inst);
void saveInstance(const TilingInstance& inst, const std::string& path);

// TM documents:
//   {"alphabet":["#","1"],"blank":"#","states":["q0","qA"],"start":"q0",
//    "accept":"qA","delta":[{"q":"q0","a":"#","b":"1","q2":"qA","move":"R"}],
//    "deterministic":true}
TMSpec loadTM(const std::string& path);
TMSpec parseTM(const std::string& jsonText, const std::string& what = "<string>");
std::string tmToJson(const TMSpec& tm);
void saveTM(const TMSpec& tm, const std::string& path);

// Witness documents: {"n":5,"cells":[["a","b",...],...]} with tile names.
Tiling loadWitness(const std::string& path, const RuleSet& rules);
std::string witnessToJson(const Tiling& t, const RuleSet& rules);
void saveWitness(const Tiling& t, const RuleSet& rules, const std::string& path);

}  // namespace tilekit
