#include "tgds/lamination.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "tgds/error.hpp"
#include "tgds/io.hpp"

namespace tgds {

bool crosses(const Chord& p, const Chord& q) {
  return (p.a < q.a && q.a < p.b && p.b < q.b) || (q.a < p.a && p.a < q.b && q.b < p.b);
}

Lamination LamEventList::at(double t) const {
  Lamination lam;
  for (const auto& e : events) {
    if (e.time > t) break;
    lam.chords.push_back(e.chord);
  }
  return lam;
}

std::vector<Chord> chords_from_tree(const PlaneTree& tree) {
  const double twice = 2.0 * static_cast<double>(tree.size());
  std::vector<Chord> out;
  out.reserve(static_cast<std::size_t>(tree.size() - 1));
  for (Vertex v = 1; v < tree.size(); ++v) {
    out.push_back({static_cast<double>(first_visit(tree, v)) / twice,
                   static_cast<double>(last_visit(tree, v)) / twice});
  }
  return out;
}

Lamination lamination_at(const PlaneTree& tree, const std::vector<Vertex>& edge_order, double t) {
  const auto edges = static_cast<std::size_t>(tree.size() - 1);
  if (edge_order.size() != edges) throw Error(ErrorCode::kInvalidArgument, "edge order must list every edge");
  const auto kept = static_cast<std::size_t>(std::min(std::floor(std::max(t, 0.0)), double(edges)));
  const double twice = 2.0 * static_cast<double>(tree.size());
  Lamination lam;
  for (std::size_t k = 0; k < kept; ++k) {
    const Vertex v = edge_order[k];
    lam.chords.push_back({static_cast<double>(first_visit(tree, v)) / twice,
                          static_cast<double>(last_visit(tree, v)) / twice});
  }
  return lam;
}

LamEventList dynamic_lamination(const PlaneTree& tree, const ExpClocks& clocks) {
  if (clocks.gamma.size() + 1 != static_cast<std::size_t>(tree.size())) {
    throw Error(ErrorCode::kInvalidArgument, "expected one clock per edge");
  }
  const auto chords = chords_from_tree(tree);
  LamEventList out;
  for (std::size_t e = 0; e < chords.size(); ++e) out.events.push_back({clocks.gamma[e], chords[e]});
  std::sort(out.events.begin(), out.events.end(),
            [](const LamEvent& x, const LamEvent& y) { return x.time < y.time; });
  return out;
}

ReducedLamination reduced_lamination(const ReducedTree& rt, const std::vector<double>& arcs, Seed seed) {
  ReducedLamination out;
  if (rt.flagged) return out;
  const std::size_t q = rt.num_labels();
  if (arcs.size() != q + 1) throw Error(ErrorCode::kInvalidArgument, "need q+1 arc positions");
  if (q >= 63) throw Error(ErrorCode::kTooLarge, "at most 62 labels");
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    if (!(arcs[i - 1] < arcs[i]) || arcs[i] >= 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "arc positions must increase within [0,1)");
    }
  }
  auto mid = [&](std::size_t i) { return 0.5 * (arcs[i] + (i + 1 <= q ? arcs[i + 1] : 1.0)); };
  const auto splits = rt.edge_splits();
  Rng rng(seed);
  for (std::size_t e = 0; e < splits.size(); ++e) {
    const std::uint64_t w = splits[e];
    const int lo = std::countr_zero(w);
    const int hi = 63 - std::countl_zero(w);
    if (std::popcount(w) != hi - lo + 1) {
      throw Error(ErrorCode::kInvalidArgument, "label block below an edge is not contiguous");
    }
    const Chord c = Chord::make(mid(static_cast<std::size_t>(lo - 1)), mid(static_cast<std::size_t>(hi)));
    out.lamination.chords.push_back(c);
    out.events.events.push_back({rng.exponential(rt.edge_length[e]), c});
  }
  std::sort(out.events.events.begin(), out.events.events.end(),
            [](const LamEvent& x, const LamEvent& y) { return x.time < y.time; });
  return out;
}

LamEventList poisson_lamination(const GridPath& f, double horizon, Seed seed, PoissonOptions opt) {
  LamEventList out;
  if (!(horizon > 0.0)) return out;
  const std::size_t m = f.m;
  const double md = static_cast<double>(m);
  const double top = *std::max_element(f.values.begin(), f.values.end());
  if (!(top > 0.0)) return out;
  const double cap = opt.cap > 0.0 ? opt.cap : md;
  const RangeMin rmq(f.values);
  Rng rng(seed);
  std::poisson_distribution<long long> count(cap * top * horizon);
  const long long n = count(rng.engine());
  for (long long k = 0; k < n; ++k) {
    const double x = rng.uniform();
    const double y = rng.uniform() * top;
    const double s = rng.uniform() * horizon;
    const auto i = static_cast<std::size_t>(std::round(x * md));
    if (!(f.values[i] >= y) || y <= 0.0) continue;
    // Last index <= i and first index >= i where f drops below y.
    std::size_t lo = 0, hi = i;
    while (lo < hi) {
      const std::size_t midp = (lo + hi + 1) / 2;
      if (rmq.min(midp, i) < y) lo = midp; else hi = midp - 1;
    }
    const std::size_t left = lo;
    lo = i;
    hi = m;
    while (lo < hi) {
      const std::size_t midp = (lo + hi) / 2;
      if (rmq.min(i, midp) < y) hi = midp; else lo = midp + 1;
    }
    const std::size_t right = lo;
    const double fl0 = f.values[left], fl1 = f.values[left + 1];
    const double g = (static_cast<double>(left) + (y - fl0) / (fl1 - fl0)) / md;
    const double fr0 = f.values[right - 1], fr1 = f.values[right];
    const double d = (static_cast<double>(right - 1) + (fr0 - y) / (fr0 - fr1)) / md;
    const double rate = std::min(1.0 / (d - g), cap);
    if (rng.uniform() * cap < rate) out.events.push_back({s, Chord::make(g, d)});
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const LamEvent& a, const LamEvent& b) { return a.time < b.time; });
  return out;
}

RankedMasses face_masses(const Lamination& lam) {
  std::vector<Chord> chords;
  for (const auto& c : lam.chords) {
    if (!c.degenerate()) chords.push_back(Chord::make(c.a, c.b));
  }
  std::sort(chords.begin(), chords.end(), [](const Chord& x, const Chord& y) {
    return x.a != y.a ? x.a < y.a : x.b > y.b;
  });
  chords.erase(std::unique(chords.begin(), chords.end()), chords.end());

  std::vector<double> inner(chords.size());
  for (std::size_t i = 0; i < chords.size(); ++i) inner[i] = chords[i].b - chords[i].a;
  double outer = 1.0;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    const Chord& c = chords[i];
    while (!stack.empty() && chords[stack.back()].b <= c.a) stack.pop_back();
    if (!stack.empty()) {
      const Chord& top = chords[stack.back()];
      if (c.b > top.b) {
        std::ostringstream os;
        os << "(" << top.a << "," << top.b << ") and (" << c.a << "," << c.b << ")";
        throw Error(ErrorCode::kCrossingChords, os.str());
      }
      inner[stack.back()] -= c.b - c.a;
    } else {
      outer -= c.b - c.a;
    }
    stack.push_back(i);
  }
  inner.push_back(outer);
  for (auto& x : inner) x = std::max(x, 0.0);
  std::sort(inner.begin(), inner.end(), std::greater<>());
  return inner;
}

namespace {

struct Point {
  double x, y;
};

Point on_circle(double turns) {
  const double a = 2.0 * std::numbers::pi * turns;
  return {std::cos(a), -std::sin(a)};
}

double segment_distance(Point p, Point s, Point e) {
  const double dx = e.x - s.x, dy = e.y - s.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - s.x) * dx + (p.y - s.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - s.x - t * dx, p.y - s.y - t * dy);
}

std::vector<Point> sample_chord(const Chord& c, double tol) {
  const Point s = on_circle(c.a), e = on_circle(c.b);
  const double len = std::hypot(e.x - s.x, e.y - s.y);
  const auto n = static_cast<std::size_t>(std::ceil(len / (tol / 2.0)));
  std::vector<Point> pts;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
    pts.push_back({s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
  }
  return pts;
}

double to_circle(Point p) { return std::max(0.0, 1.0 - std::hypot(p.x, p.y)); }

// Largest distance from a point of chord c to circle + chords.
class DirectedDistance {
 public:
  DirectedDistance(const Chord& c, double tol) {
    if (!c.degenerate()) pts_ = sample_chord(c, tol);
    best_.reserve(pts_.size());
    for (auto p : pts_) best_.push_back(to_circle(p));
  }
  void add(const Chord& c) {
    if (c.degenerate() || pts_.empty()) return;
    const Point s = on_circle(c.a), e = on_circle(c.b);
    for (std::size_t k = 0; k < pts_.size(); ++k) best_[k] = std::min(best_[k], segment_distance(pts_[k], s, e));
  }
  double value() const { return best_.empty() ? 0.0 : *std::max_element(best_.begin(), best_.end()); }

 private:
  std::vector<Point> pts_;
  std::vector<double> best_;
};

double directed(const Lamination& from, const Lamination& to, double tol) {
  double worst = 0.0;
  for (const auto& c : from.chords) {
    DirectedDistance d(c, tol);
    for (const auto& other : to.chords) d.add(other);
    worst = std::max(worst, d.value());
  }
  return worst;
}

// sup over chords p <= i of event list `from` against the first j chords of `to`;
// entry [i][j] for i in 0..k, j in 0..l.
std::vector<std::vector<double>> prefix_directed(const std::vector<LamEvent>& from,
                                                 const std::vector<LamEvent>& to, double tol) {
  const std::size_t k = from.size(), l = to.size();
  std::vector<std::vector<double>> out(k + 1, std::vector<double>(l + 1, 0.0));
  for (std::size_t p = 0; p < k; ++p) {
    DirectedDistance d(from[p].chord, tol);
    out[p + 1][0] = d.value();
    for (std::size_t j = 0; j < l; ++j) {
      d.add(to[j].chord);
      out[p + 1][j + 1] = d.value();
    }
  }
  for (std::size_t p = 1; p <= k; ++p) {
    for (std::size_t j = 0; j <= l; ++j) out[p][j] = std::max(out[p][j], out[p - 1][j]);
  }
  return out;
}

std::vector<LamEvent> before(const LamEventList& p, double horizon) {
  std::vector<LamEvent> out;
  for (const auto& e : p.events) {
    if (e.time <= horizon) out.push_back(e);
  }
  return out;
}

double gap_to_interval(double s, double lo, double hi) {
  if (s < lo) return lo - s;
  if (s > hi) return s - hi;
  return 0.0;
}

}  // namespace

double hausdorff(const Lamination& l1, const Lamination& l2, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  return std::max(directed(l1, l2, tol), directed(l2, l1, tol));
}

double process_distance(const LamEventList& p1, const LamEventList& p2, double horizon, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  const auto a = before(p1, horizon);
  const auto b = before(p2, horizon);
  const std::size_t k = a.size(), l = b.size();
  const auto d1 = prefix_directed(a, b, tol);  // [i][j]
  const auto d2 = prefix_directed(b, a, tol);  // [j][i]
  auto mismatch = [&](std::size_t i, std::size_t j) { return std::max(d1[i][j], d2[j][i]); };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto time_a = [&](std::size_t i) { return i == 0 ? 0.0 : a[i - 1].time; };
  auto time_b = [&](std::size_t j) { return j == 0 ? 0.0 : b[j - 1].time; };
  auto until_a = [&](std::size_t i) { return i < k ? a[i].time : kInf; };
  auto until_b = [&](std::size_t j) { return j < l ? b[j].time : kInf; };

  std::vector<std::vector<double>> cost(k + 1, std::vector<double>(l + 1, kInf));
  cost[0][0] = 0.0;
  double best = kInf;
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j <= l; ++j) {
      const double here = cost[i][j];
      if (here == kInf) continue;
      const double push = std::max(i < k ? horizon - a[i].time : 0.0, j < l ? horizon - b[j].time : 0.0);
      best = std::min(best, std::max(here, push));
      auto relax = [&](std::size_t ni, std::size_t nj, double step) {
        cost[ni][nj] = std::min(cost[ni][nj], std::max({here, step, mismatch(ni, nj)}));
      };
      if (i < k && j < l) relax(i + 1, j + 1, std::abs(a[i].time - b[j].time));
      if (i < k) relax(i + 1, j, gap_to_interval(a[i].time, time_b(j), until_b(j)));
      if (j < l) relax(i, j + 1, gap_to_interval(b[j].time, time_a(i), until_a(i)));
    }
  }
  return best;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

std::string svg_string(const Lamination& lam, SvgOptions opt) {
  const double c = opt.size / 2.0;
  const double r = c - 10.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\"" << opt.size
     << "\" viewBox=\"0 0 " << opt.size << ' ' << opt.size << "\">\n";
  os << "<circle cx=\"" << fmt(c) << "\" cy=\"" << fmt(c) << "\" r=\"" << fmt(r)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& ch : lam.chords) {
    // SVG y grows downwards, so exp(-2 pi i x) is drawn at (cos, +sin).
    const double a = 2.0 * std::numbers::pi * ch.a, b = 2.0 * std::numbers::pi * ch.b;
    if (ch.degenerate()) {
      if (opt.ticks) {
        os << "<circle cx=\"" << fmt(c + r * std::cos(a)) << "\" cy=\"" << fmt(c + r * std::sin(a))
           << "\" r=\"1.5\" fill=\"black\"/>\n";
      }
      continue;
    }
    os << "<line x1=\"" << fmt(c + r * std::cos(a)) << "\" y1=\"" << fmt(c + r * std::sin(a)) << "\" x2=\""
       << fmt(c + r * std::cos(b)) << "\" y2=\"" << fmt(c + r * std::sin(b))
       << "\" stroke=\"steelblue\" stroke-width=\"0.8\"/>\n";
    if (opt.ticks) {
      for (double t : {a, b}) {
        os << "<line x1=\"" << fmt(c + r * std::cos(t)) << "\" y1=\"" << fmt(c + r * std::sin(t))
           << "\" x2=\"" << fmt(c + (r + 5) * std::cos(t)) << "\" y2=\"" << fmt(c + (r + 5) * std::sin(t))
           << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_string(const PlaneTree& tree, SvgOptions opt) {
  const double pad = 10.0;
  const double span = opt.size - 2 * pad;
  Count max_depth = 1;
  for (Vertex v = 0; v < tree.size(); ++v) max_depth = std::max(max_depth, tree.depth(v));
  const double width = std::max<double>(1.0, 2.0 * static_cast<double>(tree.size()) - 2.0);
  auto x = [&](Vertex v) {
    return pad + span * static_cast<double>(first_visit(tree, v) + last_visit(tree, v)) / (2.0 * width);
  };
  auto y = [&](Vertex v) { return pad + span * static_cast<double>(tree.depth(v)) / static_cast<double>(max_depth); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\"" << opt.size
     << "\" viewBox=\"0 0 " << opt.size << ' ' << opt.size << "\">\n";
  for (Vertex v = 1; v < tree.size(); ++v) {
    const Vertex p = tree.parent(v);
    os << "<line x1=\"" << fmt(x(p)) << "\" y1=\"" << fmt(y(p)) << "\" x2=\"" << fmt(x(v)) << "\" y2=\""
       << fmt(y(v)) << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
  }
  for (Vertex v = 0; v < tree.size(); ++v) {
    os << "<circle cx=\"" << fmt(x(v)) << "\" cy=\"" << fmt(y(v)) << "\" r=\"2\" fill=\""
       << (v == 0 ? "firebrick" : "black") << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void svg_export(const Lamination& lam, const std::string& path, SvgOptions opt) {
  write_file(path, svg_string(lam, opt));
}

void svg_export(const PlaneTree& tree, const std::string& path, SvgOptions opt) {
  write_file(path, svg_string(tree, opt));
}

}  // namespace tgds
