#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hda/pcset.hpp"

namespace hda {

using json = nlohmann::ordered_json;

namespace {

json id_of(const Hda& x, int c) {
  if (c < 0) return nullptr;
  if (!x.cells[c].name.empty()) return x.cells[c].name;
  return c;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidHda, "document: " + msg); }

std::string key_of(const json& j) {
  if (j.is_string()) return "s:" + j.get<std::string>();
  if (j.is_number_integer()) return "i:" + std::to_string(j.get<long long>());
  bad("cell ids must be strings or integers");
}

Mask flags(const json& cell, const char* field, int n) {
  if (!cell.contains(field)) return 0;
  const json& f = cell[field];
  if (!f.is_array() || static_cast<int>(f.size()) != n) bad(std::string(field) + " must match labels");
  Mask m = 0;
  for (int i = 0; i < n; ++i) {
    bool on = f[i].is_boolean() ? f[i].get<bool>() : (f[i].is_number() ? f[i].get<int>() != 0 : false);
    if (!f[i].is_boolean() && !f[i].is_number()) bad(std::string(field) + " entries must be booleans");
    if (on) m |= bit(i);
  }
  return m;
}

}  // namespace

std::string to_json(const Hda& x) {
  std::ostringstream out;
  json alpha = json::array();
  for (char l : x.alphabet.empty() ? infer_alphabet(x) : x.alphabet) alpha.push_back(std::string(1, l));
  out << "{\n";
  out << "  \"kind\": " << json(x.kind == Kind::Plain ? "hda" : "ihda").dump() << ",\n";
  out << "  \"alphabet\": " << alpha.dump() << ",\n";
  out << "  \"cells\": [";
  for (int c = 0; c < x.size(); ++c) {
    const Cell& cell = x.cells[c];
    json j;
    j["id"] = id_of(x, c);
    json labels = json::array(), s = json::array(), t = json::array(), d0 = json::array(), d1 = json::array();
    for (int i = 0; i < cell.dim(); ++i) {
      labels.push_back(std::string(1, cell.iev.labels[i]));
      s.push_back(bool(cell.iev.src >> i & 1));
      t.push_back(bool(cell.iev.tgt >> i & 1));
      d0.push_back(id_of(x, cell.d0[i]));
      d1.push_back(id_of(x, cell.d1[i]));
    }
    j["labels"] = labels;
    j["sflags"] = s;
    j["tflags"] = t;
    j["d0"] = d0;
    j["d1"] = d1;
    out << (c ? ",\n    " : "\n    ") << j.dump();
  }
  out << (x.cells.empty() ? "],\n" : "\n  ],\n");
  json st = json::array(), ac = json::array();
  for (int c : x.start) st.push_back(id_of(x, c));
  for (int c : x.accept) ac.push_back(id_of(x, c));
  out << "  \"start\": " << st.dump() << ",\n";
  out << "  \"accept\": " << ac.dump() << "\n";
  out << "}\n";
  return out.str();
}

Hda from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Syntax, std::string("JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  Hda x;
  std::string kind = doc.value("kind", "hda");
  if (kind == "hda") x.kind = Kind::Plain;
  else if (kind == "ihda") x.kind = Kind::Interfaces;
  else bad("unknown kind '" + kind + "'");
  if (doc.contains("alphabet")) {
    for (const auto& a : doc["alphabet"]) {
      if (!a.is_string() || a.get<std::string>().size() != 1) bad("alphabet entries must be single letters");
      x.alphabet += a.get<std::string>();
    }
    std::sort(x.alphabet.begin(), x.alphabet.end());
  }
  if (!doc.contains("cells") || !doc["cells"].is_array()) bad("missing cells array");
  std::map<std::string, int> ids;
  const json& cells = doc["cells"];
  for (size_t c = 0; c < cells.size(); ++c) {
    const json& cell = cells[c];
    if (!cell.contains("id")) bad("cell without id");
    std::string key = key_of(cell["id"]);
    if (!ids.emplace(key, static_cast<int>(c)).second) bad("duplicate cell id " + cell["id"].dump());
    std::string labels;
    for (const auto& l : cell.value("labels", json::array())) {
      if (!l.is_string() || l.get<std::string>().size() != 1) bad("labels must be single letters");
      labels += l.get<std::string>();
    }
    int n = static_cast<int>(labels.size());
    if (n > kMaxEvents) bad("cell dimension too large");
    Ilo u{labels, flags(cell, "sflags", n), flags(cell, "tflags", n)};
    std::string name = cell["id"].is_string() ? cell["id"].get<std::string>() : std::string();
    x.add_cell(u, name);
  }
  auto resolve = [&](const json& j) -> int {
    if (j.is_null()) return -1;
    auto it = ids.find(key_of(j));
    if (it == ids.end()) bad("unknown cell id " + j.dump());
    return it->second;
  };
  for (size_t c = 0; c < cells.size(); ++c) {
    Cell& cell = x.cells[c];
    for (const char* field : {"d0", "d1"}) {
      auto& dst = field[1] == '0' ? cell.d0 : cell.d1;
      if (!cells[c].contains(field)) {
        if (cell.dim()) bad(std::string("cell ") + cells[c]["id"].dump() + " lacks " + field);
        continue;
      }
      const json& f = cells[c][field];
      if (!f.is_array() || static_cast<int>(f.size()) != cell.dim()) bad(std::string(field) + " must match labels");
      for (int i = 0; i < cell.dim(); ++i) dst[i] = resolve(f[i]);
    }
  }
  for (const auto& s : doc.value("start", json::array())) x.start.push_back(resolve(s));
  for (const auto& a : doc.value("accept", json::array())) x.accept.push_back(resolve(a));
  x.normalize_marks();
  return x;
}

Hda load_hda(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidHda, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void save_hda(const Hda& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidHda, "cannot write " + path);
  out << to_json(x);
}

}  // namespace hda
