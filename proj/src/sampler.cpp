#include "tgds/sampler.hpp"

#include <algorithm>
#include <limits>

#include "tgds/error.hpp"

namespace tgds {

std::size_t cycle_lemma_shift(const std::vector<Count>& increments) {
  Count level = 0;
  Count best = std::numeric_limits<Count>::max();
  std::size_t at = 0;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    level += increments[i];
    if (level < best) {
      best = level;
      at = i + 1;
    }
  }
  return at;
}

PlaneTree sample_tree(const DegreeSequence& ds, Seed seed) {
  auto k = child_sequence(ds);
  Rng rng(seed);
  for (std::size_t i = k.size(); i > 1; --i) std::swap(k[i - 1], k[rng.below(i)]);
  std::vector<Count> inc(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) inc[i] = k[i] - 1;
  const std::size_t shift = cycle_lemma_shift(inc) % k.size();
  std::rotate(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(shift), k.end());
  return PlaneTree::from_child_counts(k);
}

std::vector<PlaneTree> enumerate_trees(const DegreeSequence& ds) {
  if (ds.num_vertices() > kMaxEnumerationSize) {
    throw Error(ErrorCode::kTooLarge, "enumeration limited to V <= 14");
  }
  auto word = child_sequence(ds);
  std::sort(word.begin(), word.end());
  std::vector<PlaneTree> out;
  do {
    Count level = 0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      level += word[i] - 1;
      if (level < 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(PlaneTree::from_child_counts(word));
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

Count count_trees(const DegreeSequence& ds) {
  if (ds.num_vertices() > 20) throw Error(ErrorCode::kTooLarge, "count limited to V <= 20");
  // Multinomial built up as a product of binomials to stay within 64 bits.
  unsigned long long total = 1;
  Count placed = 0;
  for (const auto& [i, n] : ds.counts()) {
    for (Count j = 1; j <= n; ++j) {
      total = total * static_cast<unsigned long long>(placed + j) / static_cast<unsigned long long>(j);
    }
    placed += n;
  }
  return static_cast<Count>(total / static_cast<unsigned long long>(ds.num_vertices()));
}

namespace {

template <class Draw>
std::vector<double> distinct_marks(std::size_t count, Seed seed, Draw draw) {
  Rng rng(seed);
  std::vector<double> v(count);
  for (auto& x : v) x = draw(rng);
  for (;;) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    bool clash = false;
    for (std::size_t i = 1; i < count; ++i) {
      if (v[idx[i]] == v[idx[i - 1]]) {
        v[idx[i]] = draw(rng);
        clash = true;
      }
    }
    if (!clash) return v;
  }
}

}  // namespace

EdgeWeights attach_weights(const PlaneTree& tree, Seed seed) {
  const auto edges = static_cast<std::size_t>(tree.size() - 1);
  return {distinct_marks(edges, seed, [](Rng& r) { return r.uniform(); })};
}

ExpClocks exp_clocks(const PlaneTree& tree, Seed seed) {
  const auto edges = static_cast<std::size_t>(tree.size() - 1);
  return {distinct_marks(edges, seed, [](Rng& r) { return r.exponential(); })};
}

VertexSample uniform_vertices(const PlaneTree& tree, Count q, Seed seed) {
  if (q < 1) throw Error(ErrorCode::kInvalidArgument, "q must be at least 1");
  Rng rng(seed);
  VertexSample s;
  s.uniforms.resize(static_cast<std::size_t>(q));
  for (auto& u : s.uniforms) u = rng.uniform();
  std::sort(s.uniforms.begin(), s.uniforms.end());
  for (double u : s.uniforms) {
    auto v = static_cast<Vertex>(static_cast<double>(tree.size()) * u);
    s.vertices.push_back(std::min(v, tree.size() - 1));
  }
  return s;
}

}  // namespace tgds
