#pragma once

#include <string>
#include <vector>

#include "tgds/excursion.hpp"
#include "tgds/fragmentation.hpp"
#include "tgds/plane_tree.hpp"
#include "tgds/reduced_tree.hpp"
#include "tgds/rng.hpp"

namespace tgds {

// Endpoints in clockwise turns; the point at angle x is exp(-2 pi i x).
struct Chord {
  double a = 0.0;
  double b = 0.0;

  static Chord make(double x, double y) { return x <= y ? Chord{x, y} : Chord{y, x}; }
  bool degenerate() const { return a == b; }
  bool operator==(const Chord&) const = default;
};

// a < c < b < d or the mirror case.
bool crosses(const Chord& p, const Chord& q);

struct Lamination {
  std::vector<Chord> chords;  // the circle is implicit
};

struct LamEvent {
  double time = 0.0;
  Chord chord;
};

struct LamEventList {
  std::vector<LamEvent> events;  // increasing time

  // Chords of the events up to time t.
  Lamination at(double t) const;
};

// Chord of the edge above each vertex v > 0, at index v-1.
std::vector<Chord> chords_from_tree(const PlaneTree& tree);

// Chords of the first floor(t) ^ (size-1) edges of edge_order.
Lamination lamination_at(const PlaneTree& tree, const std::vector<Vertex>& edge_order, double t);

LamEventList dynamic_lamination(const PlaneTree& tree, const ExpClocks& clocks);

struct ReducedLamination {
  Lamination lamination;
  LamEventList events;
};

// arcs = a_0..a_q (turns, increasing, a_0 = 0). Each edge of rt becomes the
// chord between the midpoints of the two arcs bounding its label block, born
// at an Exp(length) time. A flagged rt gives the circle only.
ReducedLamination reduced_lamination(const ReducedTree& rt, const std::vector<double>& arcs, Seed seed);

struct PoissonOptions {
  double cap = 0.0;  // intensity cap; 0 means the grid resolution m
};

LamEventList poisson_lamination(const GridPath& f, double horizon, Seed seed, PoissonOptions opt = {});

// Ranked face masses; degenerate chords ignored. Throws CrossingChords.
RankedMasses face_masses(const Lamination& lam);

double hausdorff(const Lamination& l1, const Lamination& l2, double tol);

// Best monotone alignment of the events up to the horizon (see README).
double process_distance(const LamEventList& p1, const LamEventList& p2, double horizon, double tol);

struct SvgOptions {
  int size = 400;
  bool ticks = false;
};

std::string svg_string(const Lamination& lam, SvgOptions opt = {});
std::string svg_string(const PlaneTree& tree, SvgOptions opt = {});
// Throws IoError.
void svg_export(const Lamination& lam, const std::string& path, SvgOptions opt = {});
void svg_export(const PlaneTree& tree, const std::string& path, SvgOptions opt = {});

}  // namespace tgds
