#include "tilekit/rules_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tilekit {

using nlohmann::json;

namespace {

[[noreturn]] void fieldError(const std::string& what, const std::string& path,
                             const std::string& msg) {
  throw std::invalid_argument(what + ": field " + path + ": " + msg);
}

json parseFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

json parseText(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

Weight weightCell(const json& cell, const std::string& what, const std::string& path) {
  if (cell.is_string()) {
    if (cell.get<std::string>() == "F") return kForbid;
    fieldError(what, path, "weight cells are integers or \"F\"");
  }
  if (!cell.is_number_integer()) fieldError(what, path, "weight cells are integers or \"F\"");
  return cell.get<long long>();
}

std::vector<Weight> weightMatrix(const json& mat, std::size_t m, const std::string& what,
                                 const std::string& path) {
  if (!mat.is_array() || mat.size() != m)
    fieldError(what, path, "expected an array of " + std::to_string(m) + " rows");
  std::vector<Weight> out;
  out.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const json& row = mat[i];
    if (!row.is_array() || row.size() != m)
      fieldError(what, path + "/" + std::to_string(i),
                 "expected " + std::to_string(m) + " columns");
    for (std::size_t j = 0; j < m; ++j)
      out.push_back(
          weightCell(row[j], what, path + "/" + std::to_string(i) + "/" + std::to_string(j)));
  }
  return out;
}

json weightMatrixJson(const std::vector<Weight>& w, std::size_t m) {
  json mat = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      Weight v = w[i * m + j];
      if (isForbid(v))
        row.push_back("F");
      else
        row.push_back(v);
    }
    mat.push_back(row);
  }
  return mat;
}

}  // namespace

TilingInstance parseInstance(const std::string& text, const std::string& what) {
  return [&] {
    json doc = parseText(text, what);
    TilingInstance inst;
    if (!doc.is_object()) fieldError(what, "/", "expected an object");
    if (!doc.contains("tiles") || !doc["tiles"].is_array() || doc["tiles"].empty())
      fieldError(what, "/tiles", "expected a non-empty array of tile names");
    for (const auto& t : doc["tiles"]) {
      if (!t.is_string()) fieldError(what, "/tiles", "tile names are strings");
      inst.rules.tiles.push_back(t.get<std::string>());
    }
    const std::size_t m = inst.rules.tiles.size();
    if (!doc.contains("horizontal")) fieldError(what, "/horizontal", "missing");
    if (!doc.contains("vertical")) fieldError(what, "/vertical", "missing");
    inst.rules.hWeight = weightMatrix(doc["horizontal"], m, what, "/horizontal");
    inst.rules.vWeight = weightMatrix(doc["vertical"], m, what, "/vertical");

    inst.bc = BoundaryCondition::open();
    if (doc.contains("boundary")) {
      const json& b = doc["boundary"];
      if (!b.is_object() || !b.contains("kind")) fieldError(what, "/boundary", "expected {kind}");
      std::string kind = b["kind"].get<std::string>();
      auto tileIdx = [&]() {
        if (!b.contains("tile")) fieldError(what, "/boundary/tile", "missing");
        auto idx = inst.rules.tryIndexOf(b["tile"].get<std::string>());
        if (!idx) fieldError(what, "/boundary/tile", "not in tiles");
        return *idx;
      };
      if (kind == "open") {
        inst.bc = BoundaryCondition::open();
      } else if (kind == "periodic") {
        inst.bc = BoundaryCondition::periodic();
      } else if (kind == "fourCorners") {
        inst.bc = BoundaryCondition::fourCorners(tileIdx());
      } else if (kind == "oneCorner") {
        if (!b.contains("corner")) fieldError(what, "/boundary/corner", "missing");
        inst.bc =
            BoundaryCondition::oneCorner(tileIdx(), cornerFromName(b["corner"].get<std::string>()));
      } else if (kind == "twoCorners") {
        if (!b.contains("corners") || !b["corners"].is_array() || b["corners"].size() != 2)
          fieldError(what, "/boundary/corners", "expected two corner names");
        inst.bc = BoundaryCondition::twoCorners(
            tileIdx(), cornerFromName(b["corners"][0].get<std::string>()),
            cornerFromName(b["corners"][1].get<std::string>()));
      } else {
        fieldError(what, "/boundary/kind", "unknown kind " + kind);
      }
    }

    if (doc.contains("costBound")) {
      const json& cb = doc["costBound"];
      if (!cb.is_array()) fieldError(what, "/costBound", "expected an array of coefficients");
      for (const auto& c : cb) {
        if (c.is_number_integer())
          inst.costBound.coeffs.push_back(BigInt(c.get<long long>()));
        else if (c.is_string())
          inst.costBound.coeffs.push_back(BigInt(c.get<std::string>()));
        else
          fieldError(what, "/costBound", "coefficients are integers or decimal strings");
      }
    }
    inst.checkInvariants();
    return inst;
  }();
}

TilingInstance loadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseInstance(ss.str(), path);
}

std::string instanceToJson(const TilingInstance& inst) {
  json doc;
  doc["tiles"] = inst.rules.tiles;
  const std::size_t m = inst.rules.tiles.size();
  doc["horizontal"] = weightMatrixJson(inst.rules.hWeight, m);
  doc["vertical"] = weightMatrixJson(inst.rules.vWeight, m);
  json b;
  switch (inst.bc.kind) {
    case BcKind::Open: b["kind"] = "open"; break;
    case BcKind::Periodic: b["kind"] = "periodic"; break;
    case BcKind::FourCorners:
      b["kind"] = "fourCorners";
      b["tile"] = inst.rules.tiles[inst.bc.tile];
      break;
    case BcKind::OneCorner:
      b["kind"] = "oneCorner";
      b["tile"] = inst.rules.tiles[inst.bc.tile];
      b["corner"] = cornerName(inst.bc.corner);
      break;
    case BcKind::TwoCorners:
      b["kind"] = "twoCorners";
      b["tile"] = inst.rules.tiles[inst.bc.tile];
      b["corners"] = {cornerName(inst.bc.corners.first), cornerName(inst.bc.corners.second)};
      break;
  }
  doc["boundary"] = b;
  json cb = json::array();
  for (const auto& c : inst.costBound.coeffs) cb.push_back(c.str());
  doc["costBound"] = cb;
  return doc.dump(2);
}

void saveInstance(const TilingInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << instanceToJson(inst) << "\n";
}

TMSpec parseTM(const std::string& text, const std::string& what) {
  json doc = parseText(text, what);
  TMSpec tm;
  if (!doc.contains("alphabet") || !doc["alphabet"].is_array())
    fieldError(what, "/alphabet", "expected an array");
  for (const auto& a : doc["alphabet"]) tm.alphabet.push_back(a.get<std::string>());
  tm.blank = doc.value("blank", std::string("#"));
  if (!doc.contains("states") || !doc["states"].is_array())
    fieldError(what, "/states", "expected an array");
  for (const auto& s : doc["states"]) tm.states.push_back(s.get<std::string>());
  tm.start = doc.value("start", std::string("q0"));
  tm.accept = doc.value("accept", std::string("qA"));
  tm.deterministic = doc.value("deterministic", true);
  if (!doc.contains("delta") || !doc["delta"].is_array())
    fieldError(what, "/delta", "expected an array");
  int i = 0;
  for (const auto& d : doc["delta"]) {
    std::string path = "/delta/" + std::to_string(i++);
    for (const char* key : {"q", "a", "b", "q2", "move"})
      if (!d.contains(key)) fieldError(what, path, std::string("missing ") + key);
    std::string move = d["move"].get<std::string>();
    if (move != "L" && move != "R") fieldError(what, path + "/move", "must be L or R");
    tm.delta.push_back({d["q"].get<std::string>(), d["a"].get<std::string>(),
                        d["b"].get<std::string>(), d["q2"].get<std::string>(), move == "R"});
  }
  try {
    tm.validate();
  } catch (const std::exception& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
  return tm;
}

TMSpec loadTM(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseTM(ss.str(), path);
}

std::string tmToJson(const TMSpec& tm) {
  json doc;
  doc["alphabet"] = tm.alphabet;
  doc["blank"] = tm.blank;
  doc["states"] = tm.states;
  doc["start"] = tm.start;
  doc["accept"] = tm.accept;
  doc["deterministic"] = tm.deterministic;
  json delta = json::array();
  for (const auto& r : tm.delta)
    delta.push_back({{"q", r.q},
                     {"a", r.a},
                     {"b", r.b},
                     {"q2", r.q2},
                     {"move", r.moveRight ? "R" : "L"}});
  doc["delta"] = delta;
  return doc.dump(2);
}

void saveTM(const TMSpec& tm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << tmToJson(tm) << "\n";
}

Tiling loadWitness(const std::string& path, const RuleSet& rules) {
  json doc = parseFile(path);
  if (!doc.contains("cells") || !doc["cells"].is_array())
    fieldError(path, "/cells", "expected an array of rows");
  Tiling t;
  t.height = static_cast<int>(doc["cells"].size());
  for (const auto& row : doc["cells"]) {
    if (!row.is_array()) fieldError(path, "/cells", "rows are arrays");
    if (t.width == 0) t.width = static_cast<int>(row.size());
    if ((int)row.size() != t.width) fieldError(path, "/cells", "ragged rows");
    for (const auto& cell : row) {
      auto idx = rules.tryIndexOf(cell.get<std::string>());
      if (!idx) fieldError(path, "/cells", "unknown tile " + cell.get<std::string>());
      t.cells.push_back(*idx);
    }
  }
  return t;
}

std::string witnessToJson(const Tiling& t, const RuleSet& rules) {
  json doc;
  doc["n"] = t.width;
  json rows = json::array();
  for (int r = 1; r <= t.height; ++r) {
    json row = json::array();
    for (int c = 1; c <= t.width; ++c) row.push_back(rules.tiles[t.at(r, c)]);
    rows.push_back(row);
  }
  doc["cells"] = rows;
  return doc.dump();
}

void saveWitness(const Tiling& t, const RuleSet& rules, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << witnessToJson(t, rules) << "\n";
}

}  // namespace tilekit
