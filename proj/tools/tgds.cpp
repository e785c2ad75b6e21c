#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tgds/error.hpp"
#include "tgds/excursion.hpp"
#include "tgds/fragmentation.hpp"
#include "tgds/harness.hpp"
#include "tgds/io.hpp"
#include "tgds/lamination.hpp"
#include "tgds/sampler.hpp"

using namespace tgds;

namespace {

constexpr int kValidationExit = 2;
constexpr int kStatisticalExit = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TGDS_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

DegreeSequence load_ds(const std::string& path) {
  const auto text = read_file(path);
  if (std::filesystem::path(path).extension() == ".csv") return degree_sequence_from_csv(text);
  return degree_sequence_from_json(text);
}

PlaneTree load_tree(const std::string& path) {
  const auto text = read_file(path);
  if (std::filesystem::path(path).extension() == ".json") return tree_from_json(text);
  return tree_from_csv(text);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else write_file(out, text);
}

std::string path_line(const std::vector<Count>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trees with a given degree sequence: sampling, encodings, fragmentation, laminations"};
  app.require_subcommand(1);
  std::uint64_t seed = default_seed();
  std::string out;

  auto* validate = app.add_subcommand("validate", "check a degree sequence and print its statistics");
  std::string ds_path;
  validate->add_option("--ds", ds_path, "degree sequence (JSON or CSV)")->required();

  auto* sample = app.add_subcommand("sample", "draw a uniform tree with the given degree sequence");
  sample->add_option("--ds", ds_path)->required();
  sample->add_option("--seed", seed, "master seed (default: $TGDS_SEED or 0)");
  sample->add_option("--out", out, "output file (.csv increments or .json parents)");

  auto* enumerate = app.add_subcommand("enumerate", "list every tree with the degree sequence (V <= 14)");
  enumerate->add_option("--ds", ds_path)->required();
  enumerate->add_option("--out", out);

  auto* encode = app.add_subcommand("encode", "print an encoding path of a tree");
  std::string tree_path, what = "lex";
  Count hubs = -1;
  encode->add_option("--tree", tree_path)->required();
  encode->add_option("--what", what, "lex | rev | prim | height | contour | modified")
      ->check(CLI::IsMember({"lex", "rev", "prim", "height", "contour", "modified"}));
  encode->add_option("--seed", seed, "seed for the Prim weights");
  encode->add_option("--hubs", hubs, "hub count for the modified path (default policy if omitted)");
  encode->add_option("--out", out);

  auto* frag = app.add_subcommand("frag", "fragmentation trajectory of a tree under uniform edge weights");
  std::size_t top = 5, steps = 20;
  std::string merge_out;
  frag->add_option("--tree", tree_path)->required();
  frag->add_option("--seed", seed);
  frag->add_option("--top", top, "number of ranked masses per row");
  frag->add_option("--steps", steps, "number of u values in [0,1]");
  frag->add_option("--merge-log", merge_out, "also write the merge log CSV here");
  frag->add_option("--out", out);

  auto* lam = app.add_subcommand("lam", "lamination of a tree under exponential clocks");
  std::string svg_out;
  double lam_t = -1.0;
  lam->add_option("--tree", tree_path)->required();
  lam->add_option("--seed", seed);
  lam->add_option("--time", lam_t, "keep chords born up to this time (default: all)");
  lam->add_option("--svg", svg_out, "write an SVG drawing");
  lam->add_option("--out", out, "event CSV (time,a,b)");

  auto* icrt = app.add_subcommand("icrt", "continuum excursion X^exc and H^exc on a grid");
  double sigma = 1.0;
  std::vector<double> betas;
  std::size_t m = 1 << 14;
  std::string jumps_out;
  icrt->add_option("--sigma", sigma);
  icrt->add_option("--betas", betas)->delimiter(',');
  icrt->add_option("--m", m, "grid resolution");
  icrt->add_option("--seed", seed);
  icrt->add_option("--jumps", jumps_out, "jump sidecar JSON");
  icrt->add_option("--svg", svg_out, "SVG of a Poisson lamination of H^exc up to time 5");
  icrt->add_option("--out", out, "CSV x,X^exc,H^exc");

  auto* compare = app.add_subcommand("compare", "run a discrete vs continuum experiment from a JSON config");
  std::string config_path;
  compare->add_option("--config", config_path)->required();
  compare->add_option("--out-dir", out, "overrides out_dir in the config");

  auto* report = app.add_subcommand("report", "finite-n hypothesis table for a family of degree sequences");
  std::vector<std::string> family;
  report->add_option("--ds", family, "degree sequence files, increasing V")->required();
  report->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto ds = load_ds(ds_path);
      const auto st = stats(ds);
      nlohmann::ordered_json j{{"V", st.num_vertices}, {"E", st.num_edges}, {"sigma2", st.sigma2},
                               {"max_degree", st.max_degree}, {"b_n", variance_scale(ds)}};
      std::cout << j.dump(2) << "\n";
    } else if (*sample) {
      const auto tree = sample_tree(load_ds(ds_path), Seed{seed, 0});
      const bool json = std::filesystem::path(out).extension() == ".json";
      emit(out, json ? tree_to_json(tree) + "\n" : tree_to_csv(tree));
    } else if (*enumerate) {
      const auto trees = enumerate_trees(load_ds(ds_path));
      std::string text;
      for (const auto& t : trees) text += tree_to_csv(t);
      emit(out, text);
      std::cerr << trees.size() << " trees\n";
    } else if (*encode) {
      const auto tree = load_tree(tree_path);
      std::vector<Count> path;
      if (what == "lex") path = to_lukasiewicz(tree);
      else if (what == "rev") path = reverse_lukasiewicz(tree);
      else if (what == "prim") path = prim_path(tree, attach_weights(tree, Seed{seed, 1})).path;
      else if (what == "height") path = height_process(tree);
      else if (what == "contour") path = contour(tree);
      else {
        const auto ds = tree.degree_sequence();
        const Count h = hubs >= 0 ? hubs : default_hub_count(ds, variance_scale(ds));
        path = modified_lukasiewicz(tree, ds, h).g;
      }
      emit(out, path_line(path));
    } else if (*frag) {
      const auto tree = load_tree(tree_path);
      const auto weights = attach_weights(tree, Seed{seed, 1});
      const auto log = build_merge_log(tree, weights);
      std::vector<double> us;
      for (std::size_t i = 0; i <= steps; ++i) us.push_back(static_cast<double>(i) / static_cast<double>(steps));
      if (!merge_out.empty()) write_file(merge_out, merge_log_to_csv(log));
      emit(out, frag_trajectory_csv(log, us, top));
    } else if (*lam) {
      const auto tree = load_tree(tree_path);
      const auto events = dynamic_lamination(tree, exp_clocks(tree, Seed{seed, 2}));
      const double horizon = lam_t < 0.0 ? std::numeric_limits<double>::infinity() : lam_t;
      if (!svg_out.empty()) svg_export(events.at(horizon), svg_out);
      LamEventList kept;
      for (const auto& e : events.events) {
        if (e.time <= horizon) kept.events.push_back(e);
      }
      emit(out, events_to_csv(kept));
    } else if (*icrt) {
      const auto theta = theta_check(sigma, betas);
      const auto K = static_cast<long>(truncation_level(theta, m));
      const auto x = vervaat(ei_bridge(theta, K, m, Seed{seed, 4})).excursion;
      const auto h = h_exc(x).h;
      std::ostringstream os;
      os.precision(17);
      os << "x,xexc,hexc\n";
      for (std::size_t k = 0; k <= m; ++k) {
        os << static_cast<double>(k) / static_cast<double>(m) << ',' << x.values[k] << ',' << h.values[k] << '\n';
      }
      emit(out, os.str());
      if (!jumps_out.empty()) write_file(jumps_out, grid_jumps_to_json(x) + "\n");
      if (!svg_out.empty()) svg_export(poisson_lamination(h, 5.0, Seed{seed, 5}).at(5.0), svg_out);
    } else if (*compare) {
      auto cfg = config_from_json(read_file(config_path));
      if (!out.empty()) cfg.out_dir = out;
      const auto rep = run_experiment(cfg);
      std::cout << rep.json;
      return rep.passed ? 0 : kStatisticalExit;
    } else if (*report) {
      std::vector<std::pair<DegreeSequence, double>> fam;
      for (const auto& p : family) {
        auto ds = load_ds(p);
        const double b = variance_scale(ds);
        fam.emplace_back(std::move(ds), b);
      }
      const auto rep = hypothesis_report(fam);
      nlohmann::ordered_json j;
      for (const auto& r : rep.rows) {
        j["rows"].push_back({{"V", r.num_vertices}, {"b_n", r.b_n}, {"hub_ratios", r.hub_ratios},
                             {"variance_ratio", r.variance_ratio}, {"size_ratio", r.size_ratio},
                             {"sigma2_estimate", r.sigma2_estimate}});
      }
      j["size_trend"] = to_string(rep.size_trend);
      for (auto t : rep.hub_trends) j["hub_trends"].push_back(to_string(t));
      j["variance_trend"] = to_string(rep.variance_trend);
      j["sigma2_trend"] = to_string(rep.sigma2_trend);
      j["last_sigma2_estimate"] = rep.last_sigma2_estimate;
      j["last_beta_sum"] = rep.last_beta_sum;
      emit(out, j.dump(2) + "\n");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  }
  return 0;
}
