#pragma once

#include <string>
#include <vector>

#include "tgds/excursion.hpp"
#include "tgds/fragmentation.hpp"
#include "tgds/lamination.hpp"
#include "tgds/plane_tree.hpp"
#include "tgds/reduced_tree.hpp"

namespace tgds {

// Throws IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Canonical tree form: one line of comma-separated increments k_u - 1 in lex order.
std::string tree_to_csv(const PlaneTree& tree);
PlaneTree tree_from_csv(const std::string& text);
// {"parent": [...]} with -1 at the root.
std::string tree_to_json(const PlaneTree& tree);
PlaneTree tree_from_json(const std::string& text);

std::string reduced_tree_to_json(const ReducedTree& rt);

// "x,value" rows plus a JSON sidecar describing the jumps.
std::string grid_path_to_csv(const GridPath& p);
std::string grid_jumps_to_json(const GridPath& p);
GridPath grid_path_from_csv(const std::string& csv, const std::string& jumps_json = "");

// "child,value" rows.
std::string edge_marks_to_csv(const std::vector<double>& marks);
std::vector<double> edge_marks_from_csv(const std::string& text);

std::string merge_log_to_csv(const MergeLog& log);
// One row per u: u, then the top-k masses divided by V.
std::string frag_trajectory_csv(const MergeLog& log, const std::vector<double>& us, std::size_t k);

std::string lamination_to_csv(const Lamination& lam);
std::string events_to_csv(const LamEventList& events);
LamEventList events_from_csv(const std::string& text);

std::string values_to_csv(const std::vector<double>& xs);
std::vector<double> values_from_csv(const std::string& text);

}  // namespace tgds
