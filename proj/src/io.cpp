#include "tgds/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tgds/error.hpp"

namespace tgds {

namespace {

// Shortest round-tripping decimal form.
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

std::vector<std::vector<double>> numeric_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    try {
      for (const auto& c : split(line, ',')) row.push_back(std::stod(c));
    } catch (const std::logic_error&) {
      if (rows.empty()) continue;  // header
      throw Error(ErrorCode::kInvalidArgument, "malformed CSV row: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

std::string tree_to_csv(const PlaneTree& tree) {
  std::string s;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (v) s += ',';
    s += std::to_string(tree.num_children(v) - 1);
  }
  return s + '\n';
}

PlaneTree tree_from_csv(const std::string& text) {
  std::vector<Count> k;
  std::string flat = text;
  for (auto& c : flat) {
    if (c == '\n' || c == '\r') c = ',';
  }
  try {
    for (const auto& cell : split(flat, ',')) {
      if (!cell.empty()) k.push_back(std::stoll(cell) + 1);
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument, "tree CSV must hold integers");
  }
  return PlaneTree::from_child_counts(k);
}

std::string tree_to_json(const PlaneTree& tree) {
  nlohmann::json j;
  std::vector<Vertex> parent(static_cast<std::size_t>(tree.size()));
  for (Vertex v = 0; v < tree.size(); ++v) parent[v] = tree.parent(v);
  j["parent"] = parent;
  return j.dump();
}

PlaneTree tree_from_json(const std::string& text) {
  try {
    const auto parent = nlohmann::json::parse(text).at("parent").get<std::vector<Vertex>>();
    return PlaneTree::from_parent_array(parent);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("tree JSON: ") + e.what());
  }
}

std::string reduced_tree_to_json(const ReducedTree& rt) {
  nlohmann::ordered_json j;
  std::vector<Vertex> parent(static_cast<std::size_t>(rt.shape.size()));
  for (Vertex v = 0; v < rt.shape.size(); ++v) parent[v] = rt.shape.parent(v);
  j["parent"] = parent;
  j["edge_length"] = rt.edge_length;
  j["label_node"] = rt.marked_node;
  j["flagged"] = rt.flagged;
  return j.dump();
}

std::string grid_path_to_csv(const GridPath& p) {
  std::string s = "x,value\n";
  for (std::size_t k = 0; k <= p.m; ++k) {
    s += num(static_cast<double>(k) / static_cast<double>(p.m)) + ',' + num(p.values[k]) + '\n';
  }
  return s;
}

std::string grid_jumps_to_json(const GridPath& p) {
  nlohmann::ordered_json j;
  j["m"] = p.m;
  j["jumps"] = nlohmann::ordered_json::array();
  for (const auto& jump : p.jumps) {
    j["jumps"].push_back({{"index", jump.index}, {"size", jump.size}, {"rank", jump.rank},
                          {"location", jump.location}});
  }
  return j.dump();
}

GridPath grid_path_from_csv(const std::string& csv, const std::string& jumps_json) {
  const auto rows = numeric_rows(csv);
  if (rows.size() < 2) throw Error(ErrorCode::kInvalidArgument, "grid path needs at least two rows");
  GridPath p;
  p.m = rows.size() - 1;
  for (const auto& r : rows) {
    if (r.size() < 2) throw Error(ErrorCode::kInvalidArgument, "grid path rows need two columns");
    p.values.push_back(r[1]);
  }
  if (!jumps_json.empty()) {
    try {
      const auto parsed = nlohmann::json::parse(jumps_json);
      for (const auto& j : parsed.at("jumps")) {
        p.jumps.push_back({j.at("index").get<std::size_t>(), j.at("size").get<double>(),
                           j.at("rank").get<int>(), j.at("location").get<double>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, std::string("jump JSON: ") + e.what());
    }
  }
  return p;
}

std::string edge_marks_to_csv(const std::vector<double>& marks) {
  std::string s = "child,value\n";
  for (std::size_t e = 0; e < marks.size(); ++e) s += std::to_string(e + 1) + ',' + num(marks[e]) + '\n';
  return s;
}

std::vector<double> edge_marks_from_csv(const std::string& text) {
  std::vector<double> out;
  for (const auto& r : numeric_rows(text)) {
    if (r.size() < 2) throw Error(ErrorCode::kInvalidArgument, "edge mark rows need two columns");
    const auto child = static_cast<std::size_t>(r[0]);
    if (child < 1) throw Error(ErrorCode::kInvalidArgument, "child index must be positive");
    if (out.size() < child) out.resize(child, 0.0);
    out[child - 1] = r[1];
  }
  return out;
}

std::string merge_log_to_csv(const MergeLog& log) {
  std::string s = "weight,size_a,size_b\n";
  for (const auto& e : log.events) {
    s += num(e.weight) + ',' + std::to_string(e.smaller) + ',' + std::to_string(e.larger) + '\n';
  }
  return s;
}

std::string frag_trajectory_csv(const MergeLog& log, const std::vector<double>& us, std::size_t k) {
  std::string s = "u";
  for (std::size_t i = 1; i <= k; ++i) s += ",F" + std::to_string(i);
  s += '\n';
  for (double u : us) {
    const auto masses = frag_process_query(log, u);
    s += num(u);
    for (std::size_t i = 0; i < k; ++i) {
      s += ',' + num(i < masses.size() ? masses[i] / static_cast<double>(log.size) : 0.0);
    }
    s += '\n';
  }
  return s;
}

std::string lamination_to_csv(const Lamination& lam) {
  std::string s = "a,b\n";
  for (const auto& c : lam.chords) s += num(c.a) + ',' + num(c.b) + '\n';
  return s;
}

std::string events_to_csv(const LamEventList& events) {
  std::string s = "time,a,b\n";
  for (const auto& e : events.events) s += num(e.time) + ',' + num(e.chord.a) + ',' + num(e.chord.b) + '\n';
  return s;
}

LamEventList events_from_csv(const std::string& text) {
  LamEventList out;
  for (const auto& r : numeric_rows(text)) {
    if (r.size() < 3) throw Error(ErrorCode::kInvalidArgument, "event rows need three columns");
    out.events.push_back({r[0], Chord::make(r[1], r[2])});
  }
  return out;
}

std::string values_to_csv(const std::vector<double>& xs) {
  std::string s = "value\n";
  for (double x : xs) s += num(x) + '\n';
  return s;
}

std::vector<double> values_from_csv(const std::string& text) {
  std::vector<double> out;
  for (const auto& r : numeric_rows(text)) {
    if (!r.empty()) out.push_back(r[0]);
  }
  return out;
}

}  // namespace tgds
