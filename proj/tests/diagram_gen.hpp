#pragma once

// Hand-rolled generators for diagram property tests.

#include <algorithm>
#include <numeric>
#include <random>

#include "pmotif/diagram.hpp"
#include "pmotif/error.hpp"

namespace gen {

using namespace pmotif;

// T2(1,0) u T2(0,1), one crossing, horizontal strand on top.
inline TorusDiagram one_crossing() {
  TorusDiagram d;
  d.add_crossing(0);
  d.connect(half_edge(0, 0), half_edge(0, 2), {1, 0});
  d.connect(half_edge(0, 1), half_edge(0, 3), {0, 1});
  return d;
}

// Two-crossing weave of the (1,1) and (1,-1) curves.
inline TorusDiagram weave() {
  return straight_line_diagram({{{1, 1}, 0.0, 0.1}, {{1, -1}, 0.3, 0.0}},
                               [](int, int, int k) { return k % 2 == 0; });
}

inline Vec2 random_primitive(std::mt19937& rng, Int bound) {
  std::uniform_int_distribution<Int> pick(-bound, bound);
  while (true) {
    Vec2 v{pick(rng), pick(rng)};
    if (std::gcd(v[0], v[1]) == 1) return v;
  }
}

inline Int cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }

// Random straight-line arrangement with at most `max_crossings` crossings and
// random over/under choices.
inline TorusDiagram random_line_diagram(std::mt19937& rng, int max_crossings) {
  std::uniform_real_distribution<double> offset(0.0, 1.0);
  std::uniform_int_distribution<int> lines_count(2, 4);
  while (true) {
    int k = lines_count(rng);
    std::vector<StraightLine> lines;
    for (int i = 0; i < k; ++i) lines.push_back({random_primitive(rng, 2), offset(rng), offset(rng)});
    Int total = 0;
    bool crossed = false;
    for (int i = 0; i < k; ++i) {
      bool meets = false;
      for (int j = 0; j < k; ++j) {
        Int c = std::abs(cross(lines[static_cast<size_t>(i)].direction, lines[static_cast<size_t>(j)].direction));
        if (j > i) total += c;
        if (c) meets = crossed = true;
      }
      if (!meets && k > 1) total = 1000;
    }
    if (!crossed || total > max_crossings) continue;
    std::vector<int> coin(64);
    for (int& c : coin) c = static_cast<int>(rng() % 2);
    try {
      return straight_line_diagram(lines, [coin](int a, int b, int n) {
        return coin[static_cast<size_t>((a * 7 + b * 3 + n) % 64)] == 1;
      });
    } catch (const Error&) {
      // near-degenerate offsets; draw again
    }
  }
}

// Same diagram under random crossing labels, slot rotations and lift choices.
inline TorusDiagram relabel(const TorusDiagram& d, std::mt19937& rng) {
  const int v = d.crossing_count();
  std::vector<int> perm(static_cast<size_t>(v));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> rot(static_cast<size_t>(v));
  std::vector<Vec2> shift(static_cast<size_t>(v));
  std::uniform_int_distribution<Int> s(-3, 3);
  for (int c = 0; c < v; ++c) {
    rot[static_cast<size_t>(c)] = static_cast<int>(rng() % 4);
    shift[static_cast<size_t>(c)] = {s(rng), s(rng)};
  }
  std::vector<int> inverse(static_cast<size_t>(v));
  for (int c = 0; c < v; ++c) inverse[static_cast<size_t>(perm[static_cast<size_t>(c)])] = c;
  TorusDiagram out;
  for (int n = 0; n < v; ++n) {
    int c = inverse[static_cast<size_t>(n)];
    out.add_crossing((d.over(c) + rot[static_cast<size_t>(c)]) % 2);
  }
  auto moved = [&](int h) {
    int c = crossing_of(h);
    return half_edge(perm[static_cast<size_t>(c)], slot_of(h) + rot[static_cast<size_t>(c)]);
  };
  for (int h = 0; h < d.half_edge_count(); ++h) {
    int m = d.mate(h);
    if (m < h) continue;
    Vec2 a = shift[static_cast<size_t>(crossing_of(h))];
    Vec2 b = shift[static_cast<size_t>(crossing_of(m))];
    Vec2 x = d.disp(h);
    out.connect(moved(h), moved(m), {x[0] + a[0] - b[0], x[1] + a[1] - b[1]});
  }
  std::vector<Vec2> loops = d.loops();
  std::shuffle(loops.begin(), loops.end(), rng);
  for (Vec2 l : loops) out.add_loop(rng() % 2 ? l : Vec2{-l[0], -l[1]});
  return out;
}

// Random walk of moves that keeps at most `cap` crossings. The move kind is
// drawn first so that the plentiful R2 insertions do not drown out the rest.
inline TorusDiagram random_walk(TorusDiagram d, std::mt19937& rng, int steps, int cap,
                                std::vector<Move>* trail = nullptr) {
  for (int i = 0; i < steps; ++i) {
    auto options = enumerate_moves(d, cap);
    if (options.empty()) break;
    std::vector<MoveKind> kinds;
    for (auto& o : options)
      if (std::find(kinds.begin(), kinds.end(), o.move.kind) == kinds.end()) kinds.push_back(o.move.kind);
    MoveKind kind = kinds[rng() % kinds.size()];
    std::vector<const MoveResult*> same;
    for (auto& o : options)
      if (o.move.kind == kind) same.push_back(&o);
    const MoveResult& pick = *same[rng() % same.size()];
    if (trail) trail->push_back(pick.move);
    d = pick.diagram;
  }
  return d;
}

}  // namespace gen
