#include "tgds/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tgds/error.hpp"
#include "tgds/excursion.hpp"
#include "tgds/fragmentation.hpp"
#include "tgds/io.hpp"
#include "tgds/lamination.hpp"
#include "tgds/sampler.hpp"

namespace tgds {

double variance_scale(const DegreeSequence& ds) {
  double v = 0.0;
  for (const auto& [i, n] : ds.counts()) {
    const double d = static_cast<double>(i - 1);
    v += d * d * static_cast<double>(n);
  }
  return std::sqrt(v);
}

BuiltSequence build_degree_sequence(const std::string& kind, Count n, const ThetaParams& theta) {
  if (n < 10) throw Error(ErrorCode::kInvalidArgument, "builders need n >= 10");
  std::map<Count, Count> counts;
  std::ostringstream note;
  if (kind == "binary") {
    const Count k = (n - 1) / 2;
    counts = {{0, k + 1}, {2, k}};
    if (n % 2 == 0) counts[1] = 1;  // one unary vertex keeps V = n
    note << "binary: N_0 = k+1, N_2 = k with k = floor((n-1)/2) = " << k << (n % 2 == 0 ? ", N_1 = 1" : "");
  } else if (kind == "geometric-tail") {
    Count extra = 0;
    for (Count i = 1;; ++i) {
      const Count ni = n >> (i + 1);
      if (ni < 1) break;
      counts[i] = ni;
      extra += (i - 1) * ni;
    }
    counts[0] = 1 + extra;
    note << "geometric-tail: N_i = floor(n 2^-(i+1)) for i >= 1, N_0 set by the tree constraint";
  } else if (kind == "hubs+binary") {
    if (!(theta.sigma > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "hubs+binary needs sigma > 0 for the binary bulk");
    }
    const double b = std::sqrt(static_cast<double>(n)) / theta.sigma;
    Count hub_total = 0;
    std::vector<Count> hubs;
    for (double beta : theta.betas) {
      if (beta <= 0.0) continue;
      hubs.push_back(static_cast<Count>(std::ceil(beta * b)));
      hub_total += hubs.back();
    }
    if (1 + hub_total > n) {
      throw Error(ErrorCode::kInfeasible,
                  "hubs need " + std::to_string(hub_total) + " children but n = " + std::to_string(n));
    }
    const Count k = (n - 1 - hub_total) / 2;
    Count leaves = 1 + k;
    for (Count h : hubs) {
      ++counts[h];
      leaves += h - 1;
    }
    counts[2] += k;
    counts[0] += leaves;
    note << "hubs+binary: b = sqrt(n)/sigma = " << b << ", hub degrees ceil(beta_i b), "
         << k << " binary vertices, N_0 set by the tree constraint";
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown builder kind: " + kind);
  }
  std::erase_if(counts, [](const auto& kv) { return kv.second == 0; });
  BuiltSequence out{DegreeSequence::validate(counts), 0.0, note.str()};
  out.b_n = variance_scale(out.ds);
  return out;
}

std::vector<double> lukasiewicz_midpoint_samples(const DegreeSequence& ds, double b_n,
                                                 std::size_t count, Seed seed) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto tree = sample_tree(ds, seed.derive(k));
    const auto w = to_lukasiewicz(tree);
    out.push_back(static_cast<double>(w[w.size() / 2]) / b_n);
  }
  return out;
}

namespace {

GridPath sample_excursion(const ThetaParams& theta, std::size_t m, Seed seed) {
  const auto K = static_cast<long>(truncation_level(theta, m));
  return vervaat(ei_bridge(theta, K, m, seed)).excursion;
}

}  // namespace

std::vector<double> excursion_midpoint_samples(const ThetaParams& theta, std::size_t m,
                                               std::size_t count, Seed seed) {
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(sample_excursion(theta, m, seed.derive(k)).values[m / 2]);
  return out;
}

std::vector<double> height_samples(const DegreeSequence& ds, double b_n, double sigma2,
                                   std::size_t count, Seed seed) {
  std::vector<double> out;
  const double V = static_cast<double>(ds.num_vertices());
  for (std::size_t k = 0; k < count; ++k) {
    const Seed s = seed.derive(k);
    const auto tree = sample_tree(ds, s.derive(0));
    const Vertex v = uniform_vertices(tree, 1, s.derive(1)).vertices[0];
    out.push_back(sigma2 / 2.0 * b_n / V * static_cast<double>(tree.depth(v)));
  }
  return out;
}

std::vector<double> hexc_samples(const ThetaParams& theta, std::size_t m, std::size_t count, Seed seed) {
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) {
    const Seed s = seed.derive(k);
    const auto h = h_exc(sample_excursion(theta, m, s.derive(0))).h;
    Rng rng(s.derive(1));
    out.push_back(h.at(rng.uniform()));
  }
  return out;
}

std::vector<double> frag_top_samples(const DegreeSequence& ds, double a_n, double t,
                                     std::size_t count, Seed seed) {
  std::vector<double> out;
  const double V = static_cast<double>(ds.num_vertices());
  const double threshold = 1.0 - t * a_n / V;
  for (std::size_t k = 0; k < count; ++k) {
    const Seed s = seed.derive(k);
    const auto tree = sample_tree(ds, s.derive(0));
    const auto w = attach_weights(tree, s.derive(1));
    out.push_back(forest_components(tree, w, threshold).front() / V);
  }
  return out;
}

std::vector<double> continuum_frag_top_samples(const ThetaParams& theta, std::size_t m, double t,
                                               std::size_t count, Seed seed) {
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(frag_from_excursion(sample_excursion(theta, m, seed.derive(k)), t).front());
  }
  return out;
}

double lamination_coupling_distance(const PlaneTree& tree, Seed seed, double a_n, double horizon,
                                    double tol) {
  const auto clocks = exp_clocks(tree, seed);
  const auto chords = chords_from_tree(tree);
  std::vector<std::size_t> order(chords.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return clocks.gamma[a] < clocks.gamma[b]; });
  const double zeta = static_cast<double>(tree.size());
  LamEventList dynamic, integer;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double t_dyn = clocks.gamma[order[k]] * zeta / a_n;
    const double t_int = static_cast<double>(k + 1) / a_n;
    if (t_dyn > horizon && t_int > horizon) break;
    dynamic.events.push_back({t_dyn, chords[order[k]]});
    integer.events.push_back({t_int, chords[order[k]]});
  }
  return process_distance(dynamic, integer, horizon, tol);
}

MassCheck masses_check(const DegreeSequence& ds, double b_n, double t, std::size_t count, Seed seed) {
  MassCheck mc;
  for (std::size_t k = 0; k < count; ++k) {
    const Seed s = seed.derive(k);
    const auto tree = sample_tree(ds, s.derive(0));
    std::vector<Vertex> order(static_cast<std::size_t>(tree.size() - 1));
    std::iota(order.begin(), order.end(), 1);
    Rng rng(s.derive(1));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const double steps = std::floor(t * b_n);
    const double zeta = static_cast<double>(tree.size());
    const auto faces = face_masses(lamination_at(tree, order, steps));
    auto comps = integer_frag(tree, order, steps);
    for (auto& c : comps) c /= zeta;
    const double removed = std::min(steps, zeta - 1.0);
    const double bound = 2.0 * (removed + 1.0) / zeta;
    const double l1 = l1_distance(faces, comps) / bound;
    const double sup = sup_distance(faces, comps) / bound;
    mc.worst_l1 = std::max(mc.worst_l1, l1);
    mc.worst_sup = std::max(mc.worst_sup, sup);
    mc.ok = mc.ok && l1 <= 1.0 + 1e-12 && sup <= 1.0 + 1e-12;
    ++mc.instances;
  }
  return mc;
}

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("kind", c.kind);
    get("builder", c.builder);
    get("n", c.n);
    get("ds_path", c.ds_path);
    get("sigma", c.sigma);
    get("betas", c.betas);
    get("a_n_rule", c.a_n_rule);
    get("m", c.m);
    get("samples", c.samples);
    get("t", c.t);
    get("seeds", c.seeds);
    get("alpha", c.alpha);
    get("horizon", c.horizon);
    get("tol", c.tol);
    get("sizes", c.sizes);
    get("out_dir", c.out_dir);
    get("cache_dir", c.cache_dir);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config: ") + e.what());
  }
  if (!c.ds_path.empty() && !std::filesystem::exists(c.ds_path)) {
    throw Error(ErrorCode::kIoError, "degree sequence file not found: " + c.ds_path);
  }
  return c;
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = c.kind;
  j["builder"] = c.builder;
  j["n"] = c.n;
  j["ds_path"] = c.ds_path;
  j["sigma"] = c.sigma;
  j["betas"] = c.betas;
  j["a_n_rule"] = c.a_n_rule;
  j["m"] = c.m;
  j["samples"] = c.samples;
  j["t"] = c.t;
  j["seeds"] = c.seeds;
  j["alpha"] = c.alpha;
  j["horizon"] = c.horizon;
  j["tol"] = c.tol;
  j["sizes"] = c.sizes;
  j["out_dir"] = c.out_dir;
  j["cache_dir"] = c.cache_dir;
  return j;
}

std::string hex(std::uint64_t x) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

// Continuum samples depend only on (theta, m, K, seed, count, what); they are
// cached under that key when a cache directory is configured.
template <class Make>
std::vector<double> cached(const std::string& dir, const std::string& key, Make make) {
  if (dir.empty()) return make();
  std::filesystem::create_directories(dir);
  const auto path = (std::filesystem::path(dir) / (hex(fnv1a(key)) + ".csv")).string();
  if (std::filesystem::exists(path)) return values_from_csv(read_file(path));
  auto xs = make();
  write_file(path, "# " + key + "\n" + values_to_csv(xs));
  return xs;
}

struct Source {
  DegreeSequence ds;
  double b_n;
  std::string construction;
};

Source load_source(const ExperimentConfig& c, const ThetaParams& theta, Count n) {
  if (!c.ds_path.empty()) {
    const auto text = read_file(c.ds_path);
    const bool csv = std::filesystem::path(c.ds_path).extension() == ".csv";
    auto ds = csv ? degree_sequence_from_csv(text) : degree_sequence_from_json(text);
    const double b = variance_scale(ds);
    return {std::move(ds), b, "file " + c.ds_path};
  }
  auto built = build_degree_sequence(c.builder, n, theta);
  return {std::move(built.ds), built.b_n, built.construction};
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) { return fnv1a(config_json(cfg).dump()); }

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.samples == 0) throw Error(ErrorCode::kTooFewSamples, "samples must be at least 1");
  if (cfg.seeds.empty()) throw Error(ErrorCode::kTooFewSamples, "at least one seed is required");
  const ThetaParams theta = theta_check(cfg.sigma, cfg.betas);
  const std::size_t K = truncation_level(theta, cfg.m);

  nlohmann::ordered_json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["config_hash"] = hex(config_hash(cfg));
  report["tolerances"] = {{"alpha", cfg.alpha}, {"tol", cfg.tol}, {"theta", kThetaTolerance},
                          {"flat", 1e-12}, {"beta_truncation_K", K}};
  std::map<std::string, std::string> files;
  bool passed = true;

  const std::string theta_key = [&] {
    std::ostringstream os;
    os.precision(17);
    os << "sigma=" << theta.sigma << ";betas=";
    for (double b : theta.betas) os << b << ',';
    os << ";m=" << cfg.m << ";K=" << K << ";count=" << cfg.samples;
    return os.str();
  }();

  if (cfg.kind == "lukasiewicz" || cfg.kind == "heights" || cfg.kind == "fragmentation") {
    const Source src = load_source(cfg, theta, cfg.n);
    const double V = static_cast<double>(src.ds.num_vertices());
    const double a_n = cfg.a_n_rule == "sqrt_zeta" ? std::sqrt(V) : src.b_n;
    report["source"] = {{"construction", src.construction}, {"V", src.ds.num_vertices()},
                        {"b_n", src.b_n}, {"a_n", a_n}};
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (std::uint64_t seed : cfg.seeds) {
      std::vector<double> disc, cont;
      const Seed ds_seed{seed, 1}, ct_seed{seed, 2};
      const std::string key = cfg.kind + ";" + theta_key + ";t=" + std::to_string(cfg.t) +
                              ";seed=" + std::to_string(seed);
      if (cfg.kind == "lukasiewicz") {
        disc = lukasiewicz_midpoint_samples(src.ds, src.b_n, cfg.samples, ds_seed);
        cont = cached(cfg.cache_dir, key, [&] { return excursion_midpoint_samples(theta, cfg.m, cfg.samples, ct_seed); });
      } else if (cfg.kind == "heights") {
        disc = height_samples(src.ds, src.b_n, theta.sigma * theta.sigma, cfg.samples, ds_seed);
        cont = cached(cfg.cache_dir, key, [&] { return hexc_samples(theta, cfg.m, cfg.samples, ct_seed); });
      } else {
        disc = frag_top_samples(src.ds, a_n, cfg.t, cfg.samples, ds_seed);
        cont = cached(cfg.cache_dir, key, [&] { return continuum_frag_top_samples(theta, cfg.m, cfg.t, cfg.samples, ct_seed); });
      }
      const auto ks = ks_two_sample(disc, cont);
      const bool ok = ks.p_value > cfg.alpha;
      passed = passed && ok;
      runs.push_back({{"seed", seed}, {"D", ks.statistic}, {"p", ks.p_value}, {"n1", ks.n1},
                      {"n2", ks.n2}, {"mean_discrete", mean(disc)}, {"mean_continuum", mean(cont)},
                      {"pass", ok}});
      files["discrete_seed" + std::to_string(seed) + ".csv"] = values_to_csv(disc);
      files["continuum_seed" + std::to_string(seed) + ".csv"] = values_to_csv(cont);
    }
    report["runs"] = runs;
  } else if (cfg.kind == "masses") {
    const Source src = load_source(cfg, theta, cfg.n);
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (std::uint64_t seed : cfg.seeds) {
      const auto mc = masses_check(src.ds, src.b_n, cfg.t, cfg.samples, Seed{seed, 1});
      passed = passed && mc.ok;
      runs.push_back({{"seed", seed}, {"instances", mc.instances}, {"worst_l1_over_bound", mc.worst_l1},
                      {"worst_sup_over_bound", mc.worst_sup}, {"pass", mc.ok}});
    }
    report["bound"] = "2(floor(t b_n)+1)/zeta";
    report["runs"] = runs;
  } else if (cfg.kind == "lamination") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::vector<double> medians;
    for (Count n : cfg.sizes) {
      const Source src = load_source(cfg, theta, n);
      std::vector<double> dist;
      for (std::size_t r = 0; r < cfg.samples; ++r) {
        const Seed s = Seed{cfg.seeds.front(), 3}.derive(static_cast<std::uint64_t>(n)).derive(r);
        const auto tree = sample_tree(src.ds, s.derive(0));
        const double a_n = std::sqrt(static_cast<double>(tree.size()));
        dist.push_back(lamination_coupling_distance(tree, s.derive(1), a_n, cfg.horizon, cfg.tol));
      }
      medians.push_back(median(dist));
      rows.push_back({{"zeta", src.ds.num_vertices()}, {"median", medians.back()}, {"mean", mean(dist)}});
    }
    for (std::size_t i = 1; i < medians.size(); ++i) passed = passed && medians[i] < medians[i - 1];
    report["rows"] = rows;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown experiment kind: " + cfg.kind);
  }
  report["passed"] = passed;

  ExperimentReport out{report.dump(2) + "\n", passed};
  if (!cfg.out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    files["report.json"] = out.json;
    std::vector<fs::path> written;
    try {
      for (const auto& [name, text] : files) {
        const fs::path path = fs::path(cfg.out_dir) / name;
        write_file(path.string(), text);
        written.push_back(path);
      }
    } catch (...) {
      for (const auto& p : written) fs::remove(p);
      throw;
    }
  }
  return out;
}

}  // namespace tgds
