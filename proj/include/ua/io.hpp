#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ua/genlab.hpp"
#include "ua/report.hpp"

namespace ua {

using Json = nlohmann::ordered_json;

struct AlgebraDocument {
  Algebra alg;
  std::map<std::string, Partition> labels;
  std::optional<GenConfig> generator;  // present when written by `generate`

  bool operator==(const AlgebraDocument& o) const;
};

namespace detail {

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
}

inline int get_int(const Json& j, const std::string& field) {
  require_input(j.is_number_integer(), "field " + field + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> get_ints(const Json& j, const std::string& field) {
  require_input(j.is_array(), "field " + field + ": expected a list of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline FMatrix get_matrix(const Json& j, const std::string& field) {
  require_input(j.is_array(), "field " + field + ": expected a list of rows");
  FMatrix M;
  for (std::size_t i = 0; i < j.size(); ++i) M.push_back(get_ints(j[i], field + "[" + std::to_string(i) + "]"));
  return M;
}

// Compact one-line rendering for integer lists inside an otherwise indented document.
inline std::string compact(const Json& j) { return j.dump(); }

}  // namespace detail

inline Json partition_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& b : p.blocks()) out.push_back(b);
  return out;
}

inline Partition parse_partition(const Json& j, int n, const std::string& field) {
  require_input(j.is_array(), "field " + field + ": expected a list of blocks");
  std::vector<std::vector<int>> blocks;
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto b = detail::get_ints(j[i], field + "[" + std::to_string(i) + "]");
    for (int x : b) {
      require_input(x >= 0 && x < n, "field " + field + ": element out of range: " + std::to_string(x));
      require_input(!seen[x], "field " + field + ": element listed twice: " + std::to_string(x));
      seen[x] = 1;
    }
    blocks.push_back(std::move(b));
  }
  return Partition::from_blocks(n, blocks);
}

inline Json config_json(const GenConfig& c) {
  Json j;
  j["p"] = c.p;
  j["k"] = c.k;
  if (!c.modulus.empty()) j["modulus"] = c.modulus;
  j["dims"] = c.dims;
  Json sub = Json::array();
  for (const auto& per : c.extra) {
    Json l = Json::array();
    for (const auto& W : per) l.push_back(W);
    sub.push_back(l);
  }
  j["subspaces"] = sub;
  auto maps = [&](const std::vector<FMatrix>& v) {
    Json o = Json::object();
    for (std::size_t l = 1; l < v.size(); ++l)
      if (!v[l].empty()) o[std::to_string(l)] = v[l];
    return o;
  };
  if (!maps(c.g).empty()) j["g"] = maps(c.g);
  if (!maps(c.h).empty()) j["h"] = maps(c.h);
  if (!c.one.empty()) j["one"] = c.one;
  j["op_cap"] = c.op_cap;
  return j;
}

inline GenConfig parse_config_json(const Json& j) {
  require_input(j.is_object(), "config: expected an object");
  GenConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"p", "k", "modulus", "dims", "subspaces", "g", "h", "one", "op_cap"};
    require_input(known.count(it.key()) > 0, "config: unknown field " + it.key());
  }
  require_input(j.contains("p") && j.contains("dims"), "config: fields p and dims are required");
  c.p = detail::get_int(j["p"], "p");
  if (j.contains("k")) c.k = detail::get_int(j["k"], "k");
  if (j.contains("modulus")) c.modulus = detail::get_ints(j["modulus"], "modulus");
  c.dims = detail::get_ints(j["dims"], "dims");
  if (j.contains("subspaces")) {
    const auto& s = j["subspaces"];
    require_input(s.is_array(), "field subspaces: expected a list per class");
    for (std::size_t l = 0; l < s.size(); ++l) {
      require_input(s[l].is_array(), "field subspaces[" + std::to_string(l) + "]: expected a list");
      std::vector<FMatrix> per;
      for (std::size_t i = 0; i < s[l].size(); ++i)
        per.push_back(detail::get_matrix(s[l][i], "subspaces[" + std::to_string(l) + "][" + std::to_string(i) + "]"));
      c.extra.push_back(per);
    }
  }
  auto maps = [&](const char* key, std::vector<FMatrix>& out) {
    if (!j.contains(key)) return;
    require_input(j[key].is_object(), std::string("field ") + key + ": expected an object keyed by class");
    out.resize(c.dims.size());
    for (auto it = j[key].begin(); it != j[key].end(); ++it) {
      int l = -1;
      try {
        l = std::stoi(it.key());
      } catch (const std::exception&) {
      }
      require_input(l >= 1 && l < static_cast<int>(c.dims.size()), std::string("field ") + key + ": bad class " + it.key());
      out[l] = detail::get_matrix(it.value(), std::string(key) + "." + it.key());
    }
  };
  maps("g", c.g);
  maps("h", c.h);
  if (j.contains("one")) c.one = detail::get_ints(j["one"], "one");
  if (j.contains("op_cap")) c.op_cap = static_cast<std::size_t>(detail::get_int(j["op_cap"], "op_cap"));
  return c;
}

inline bool AlgebraDocument::operator==(const AlgebraDocument& o) const {
  if (!(alg == o.alg) || labels != o.labels || generator.has_value() != o.generator.has_value()) return false;
  return !generator || config_json(*generator) == config_json(*o.generator);
}

inline GenConfig parse_config(const std::string& text) { return parse_config_json(detail::parse_json(text)); }

inline std::string serialize_config(const GenConfig& c) { return config_json(c).dump(2) + "\n"; }

inline AlgebraDocument parse_algebra(const std::string& text) {
  Json j = detail::parse_json(text);
  require_input(j.is_object(), "algebra document: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"size", "operations", "labels", "generator"};
    require_input(known.count(it.key()) > 0, "algebra document: unknown field " + it.key());
  }
  require_input(j.contains("size"), "algebra document: missing field size");
  require_input(j.contains("operations"), "algebra document: missing field operations");
  const int n = detail::get_int(j["size"], "size");
  require_input(n > 0, "field size: must be positive");
  AlgebraDocument doc;
  doc.alg = Algebra(n);
  const auto& ops = j["operations"];
  require_input(ops.is_array(), "field operations: expected a list");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string f = "operations[" + std::to_string(i) + "]";
    const auto& o = ops[i];
    require_input(o.is_object() && o.contains("name") && o.contains("arity") && o.contains("table"),
                  "field " + f + ": expected {name, arity, table}");
    require_input(o["name"].is_string(), "field " + f + ".name: expected a string");
    Operation op{o["name"].get<std::string>(), detail::get_int(o["arity"], f + ".arity"),
                 detail::get_ints(o["table"], f + ".table")};
    require_input(op.arity >= 0 && op.arity <= 8, "field " + f + ".arity: out of range");
    require_input(doc.alg.op_index(op.name) < 0, "field " + f + ".name: duplicate operation " + op.name);
    const std::size_t want = ipow(n, op.arity);
    require_input(op.table.size() == want, "field " + f + ".table: table length mismatch, expected " +
                                               std::to_string(want) + ", got " + std::to_string(op.table.size()));
    for (std::size_t t = 0; t < op.table.size(); ++t)
      require_input(op.table[t] >= 0 && op.table[t] < n,
                    "field " + f + ".table[" + std::to_string(t) + "]: element out of range: " + std::to_string(op.table[t]));
    doc.alg.add_operation(std::move(op));
  }
  if (j.contains("labels")) {
    require_input(j["labels"].is_object(), "field labels: expected an object");
    for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it)
      doc.labels.emplace(it.key(), parse_partition(it.value(), n, "labels." + it.key()));
  }
  if (j.contains("generator")) doc.generator = parse_config_json(j["generator"]);
  return doc;
}

// Indented document with every integer list kept on one line.
inline std::string serialize_algebra(const AlgebraDocument& doc) {
  std::ostringstream os;
  os << "{\n  \"size\": " << doc.alg.size() << ",\n  \"operations\": [";
  for (int i = 0; i < doc.alg.num_ops(); ++i) {
    const auto& o = doc.alg.op(i);
    os << (i ? "," : "") << "\n    {\"name\": " << Json(o.name).dump() << ", \"arity\": " << o.arity
       << ", \"table\": " << detail::compact(Json(o.table)) << "}";
  }
  os << (doc.alg.num_ops() ? "\n  ]" : "]");
  if (!doc.labels.empty()) {
    os << ",\n  \"labels\": {";
    bool first = true;
    for (const auto& [name, p] : doc.labels) {
      os << (first ? "" : ",") << "\n    " << Json(name).dump() << ": " << detail::compact(partition_json(p));
      first = false;
    }
    os << "\n  }";
  }
  if (doc.generator) os << ",\n  \"generator\": " << detail::compact(config_json(*doc.generator));
  os << "\n}\n";
  return os.str();
}

inline AlgebraDocument document_of(const Generated& G) {
  AlgebraDocument doc;
  doc.alg = G.alg;
  doc.labels.emplace("mu", G.mu);
  doc.labels.emplace("alpha", G.alpha);
  doc.generator = G.config;
  return doc;
}

struct ReportDocument {
  std::vector<std::string> command;
  Report report;
  std::optional<double> timing_ms;  // left out unless asked for, so output stays byte-stable
};

// One header line, then one line per item.
inline std::string serialize_report(const ReportDocument& doc) {
  Json head;
  head["command"] = doc.command;
  head["items"] = doc.report.items.size();
  if (doc.timing_ms) head["timing_ms"] = *doc.timing_ms;
  std::string out = head.dump() + "\n";
  for (const auto& it : doc.report.items) {
    Json j;
    j["id"] = it.id;
    j["statement"] = it.statement;
    j["anchor"] = it.anchor;
    j["verdict"] = to_string(it.verdict);
    j["witness"] = it.witness;
    out += j.dump() + "\n";
  }
  return out;
}

inline ReportDocument parse_report(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  ReportDocument doc;
  require_input(static_cast<bool>(std::getline(is, line)), "report: missing header");
  Json head = detail::parse_json(line);
  doc.command = head.at("command").get<std::vector<std::string>>();
  if (head.contains("timing_ms")) doc.timing_ms = head["timing_ms"].get<double>();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Json j = detail::parse_json(line);
    const std::string v = j.at("verdict").get<std::string>();
    require_input(v == "pass" || v == "fail" || v == "skip", "report: bad verdict " + v);
    doc.report.items.push_back({j.at("id").get<std::string>(), j.at("statement").get<std::string>(),
                                j.at("anchor").get<std::string>(),
                                v == "pass" ? Verdict::pass : (v == "fail" ? Verdict::fail : Verdict::skip),
                                j.at("witness").get<std::string>()});
  }
  require_input(doc.report.items.size() == head.at("items").get<std::size_t>(), "report: item count mismatch");
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require_input(in.good(), "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require_input(out.good(), "cannot write " + path);
  out << text;
}

}  // namespace ua
