// Copyright 2026 The windowsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "windowsum/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace windowsum::io {

using nlohmann::json;

json MatrixToJson(const IntMatrix& m) { return m.ToRows(); }

IntMatrix MatrixFromJson(const json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw FormatError("matrix row must be an array");
    auto& row = rows.emplace_back();
    for (const auto& v : r) {
      if (!v.is_number_integer()) throw FormatError("matrix cells must be integers");
      row.push_back(v.get<std::int64_t>());
    }
  }
  try {
    return IntMatrix::FromRows(rows);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json InstanceToJson(const ReconstructionInstance& inst) {
  json j;
  j["window"] = {inst.shape().height, inst.shape().width};
  j["S"] = MatrixToJson(inst.sums());
  j["U"] = MatrixToJson(inst.upper());
  if (inst.lower()) j["L"] = MatrixToJson(*inst.lower());
  return j;
}

ReconstructionInstance InstanceFromJson(const json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  for (const char* key : {"window", "S", "U"}) {
    if (!j.contains(key)) throw FormatError(std::string("instance is missing \"") + key + "\"");
  }
  const json& w = j.at("window");
  if (!w.is_array() || w.size() != 2 || !w[0].is_number_unsigned() ||
      !w[1].is_number_unsigned()) {
    throw FormatError("\"window\" must be [height, width]");
  }
  std::optional<IntMatrix> lower;
  if (j.contains("L")) lower = MatrixFromJson(j.at("L"));
  try {
    return ReconstructionInstance(WindowShape(w[0].get<std::size_t>(), w[1].get<std::size_t>()),
                                  MatrixFromJson(j.at("S")), MatrixFromJson(j.at("U")),
                                  std::move(lower));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  } catch (const std::overflow_error& e) {
    throw FormatError(e.what());
  }
}

IntMatrix SolutionFromJson(const json& j) {
  if (j.is_object()) {
    if (!j.contains("A")) throw FormatError("solution object has no \"A\"");
    return MatrixFromJson(j.at("A"));
  }
  return MatrixFromJson(j);
}

coloring::Graph GraphFromJson(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw FormatError("graph must be {\"n\": count, \"edges\": [[u, v], ...]}");
  }
  if (!j.at("n").is_number_unsigned()) throw FormatError("\"n\" must be a count");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned()) {
      throw FormatError("edge must be a pair of vertex indices");
    }
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  try {
    return coloring::Graph(j.at("n").get<std::size_t>(), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

coloring::Graph GraphFromDimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tag == "p") {
      std::string kind;
      long long vertices = -1, count = -1;
      if (n || !(ls >> kind >> vertices >> count) || (kind != "edge" && kind != "col") ||
          vertices < 0 || count < 0) {
        throw FormatError(where + "expected a single 'p edge <n> <m>' header");
      }
      n = static_cast<std::size_t>(vertices);
    } else if (tag == "e") {
      long long u = 0, v = 0;
      if (!n || !(ls >> u >> v) || u < 1 || v < 1) {
        throw FormatError(where + "expected 'e <u> <v>' with 1-based vertices after the header");
      }
      edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
    } else {
      throw FormatError(where + "unknown line type '" + tag + "'");
    }
  }
  if (!n) throw FormatError("missing 'p edge' header");
  try {
    return coloring::Graph(*n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

coloring::Graph ParseGraph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return GraphFromJson(ParseJson(text, "graph"));
  }
  return GraphFromDimacs(text);
}

json GraphToJson(const coloring::Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

json RecordToJson(const coloring::ReductionRecord& record) {
  json slots = json::array();
  for (const auto& t : record.vertex_vars) {
    slots.push_back({gadget::ToString(t[0]), gadget::ToString(t[1]), gadget::ToString(t[2])});
  }
  return {{"graph", GraphToJson(record.graph)},
          {"vertex_slots", slots},
          {"program", record.program.ToJson()}};
}

coloring::ReductionRecord RecordFromJson(const json& j) {
  try {
    coloring::Graph g = GraphFromJson(j.at("graph"));
    std::vector<std::array<gadget::VarRef, 3>> slots;
    for (const auto& t : j.at("vertex_slots")) {
      if (!t.is_array() || t.size() != 3) throw FormatError("vertex slot triple expected");
      slots.push_back({gadget::ParseVarRef(t[0].get<std::string>()),
                       gadget::ParseVarRef(t[1].get<std::string>()),
                       gadget::ParseVarRef(t[2].get<std::string>())});
    }
    return coloring::RebuildRecord(std::move(g), std::move(slots),
                                   gadget::GadgetProgram::FromJson(j.at("program")));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad reduction record: ") + e.what());
  }
}

namespace {

void PrettyInto(const json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + json(key).dump() + ": ";
      PrettyInto(value, indent + 2, out);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) {
      return e.is_structured();
    });
    if (flat) {
      out += j.dump();
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ",\n";
      out += inner;
      PrettyInto(j[k], indent + 2, out);
    }
    out += "\n" + pad + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string Pretty(const json& j) {
  std::string out;
  PrettyInto(j, 0, out);
  out += "\n";
  return out;
}

std::string ReadFile(const std::string& path) {
  std::istream* in = nullptr;
  std::ifstream file;
  if (path == "-") {
    in = &std::cin;
  } else {
    file.open(path, std::ios::binary);
    if (!file) throw FormatError("cannot open " + path);
    in = &file;
  }
  std::ostringstream buf;
  buf << in->rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << content;
}

json ParseJson(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

}  // namespace windowsum::io
