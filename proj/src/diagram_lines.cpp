#include <algorithm>
#include <cmath>
#include <numeric>

#include "pmotif/diagram.hpp"
#include "pmotif/error.hpp"

namespace pmotif {

namespace {

struct Point {
  double x, y;
};

struct Hit {
  double t;       // parameter along the line in [0,1)
  int crossing;
  Vec2 offset;    // integer translate from the crossing's stored lift
};

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

}  // namespace

TorusDiagram straight_line_diagram(const std::vector<StraightLine>& lines, const OverRule& over) {
  const int count = static_cast<int>(lines.size());
  for (const auto& l : lines)
    if (std::gcd(l.direction[0], l.direction[1]) != 1)
      throw Error(ErrorKind::InvalidParams, "line directions must be primitive");
  auto dir = [&](int i) {
    return Point{static_cast<double>(lines[static_cast<size_t>(i)].direction[0]),
                 static_cast<double>(lines[static_cast<size_t>(i)].direction[1])};
  };

  bool all_parallel = true;
  for (int i = 1; i < count; ++i)
    if (cross(dir(0), dir(i)) != 0) all_parallel = false;
  TorusDiagram d;
  if (all_parallel) {
    for (const auto& l : lines) d.add_loop(l.direction);
    return d;
  }

  std::vector<std::vector<Hit>> hits(static_cast<size_t>(count));
  struct Corner {
    int a, b;
    double ta;
  };
  std::vector<Corner> corners;
  constexpr double eps = 1e-9;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      Point vi = dir(i), vj = dir(j);
      double det = cross(vi, Point{-vj.x, -vj.y});
      if (det == 0) continue;
      const auto& li = lines[static_cast<size_t>(i)];
      const auto& lj = lines[static_cast<size_t>(j)];
      Int reach = std::abs(li.direction[0]) + std::abs(li.direction[1]) + std::abs(lj.direction[0]) +
                  std::abs(lj.direction[1]) + 2;
      std::vector<std::pair<double, double>> found;
      for (Int kx = -reach; kx <= reach; ++kx)
        for (Int ky = -reach; ky <= reach; ++ky) {
          Point w{lj.x0 - li.x0 + static_cast<double>(kx), lj.y0 - li.y0 + static_cast<double>(ky)};
          double t = cross(w, Point{-vj.x, -vj.y}) / det;
          double s = cross(vi, w) / det;
          if (t < -eps || t >= 1 - eps || s < -eps || s >= 1 - eps) continue;
          t = std::max(t, 0.0);
          s = std::max(s, 0.0);
          bool dup = std::any_of(found.begin(), found.end(), [&](auto& f) {
            return std::abs(f.first - t) < 1e-7 && std::abs(f.second - s) < 1e-7;
          });
          if (!dup) found.emplace_back(t, s);
        }
      std::sort(found.begin(), found.end());
      for (auto [t, s] : found) {
        Point p{li.x0 + t * vi.x, li.y0 + t * vi.y};
        Point q{lj.x0 + s * vj.x, lj.y0 + s * vj.y};
        int c = static_cast<int>(corners.size());
        corners.push_back({i, j, t});
        hits[static_cast<size_t>(i)].push_back({t, c, {0, 0}});
        hits[static_cast<size_t>(j)].push_back(
            {s, c, {static_cast<Int>(std::llround(q.x - p.x)), static_cast<Int>(std::llround(q.y - p.y))}});
      }
    }

  // Slot layout: line a leaves through 0 and enters through 2; line b uses
  // 1/3 in counter-clockwise position.
  std::vector<int> ordinal(corners.size(), 0);
  for (size_t c = 0; c < corners.size(); ++c) {
    int k = 0;
    for (size_t e = 0; e < c; ++e)
      if (corners[e].a == corners[c].a && corners[e].b == corners[c].b) ++k;
    ordinal[c] = k;
  }
  for (size_t c = 0; c < corners.size(); ++c) {
    const Corner& k = corners[c];
    bool a_on_top = over ? over(k.a, k.b, ordinal[c]) : true;
    d.add_crossing(a_on_top ? 0 : 1);
  }
  auto slots = [&](int line, int c) -> std::pair<int, int> {  // (in, out)
    const Corner& k = corners[static_cast<size_t>(c)];
    if (line == k.a) return {2, 0};
    bool ccw = cross(dir(k.a), dir(k.b)) > 0;
    return ccw ? std::pair{3, 1} : std::pair{1, 3};
  };
  for (int i = 0; i < count; ++i) {
    auto& hs = hits[static_cast<size_t>(i)];
    if (hs.empty()) throw Error(ErrorKind::InvalidParams, "a line meets no other line");
    std::sort(hs.begin(), hs.end(), [](const Hit& x, const Hit& y) { return x.t < y.t; });
    for (size_t n = 0; n < hs.size(); ++n) {
      const Hit& from = hs[n];
      const Hit& to = hs[(n + 1) % hs.size()];
      Vec2 jump{to.offset[0] - from.offset[0], to.offset[1] - from.offset[1]};
      if (n + 1 == hs.size()) {
        jump[0] += lines[static_cast<size_t>(i)].direction[0];
        jump[1] += lines[static_cast<size_t>(i)].direction[1];
      }
      d.connect(half_edge(from.crossing, slots(i, from.crossing).second),
                half_edge(to.crossing, slots(i, to.crossing).first), jump);
    }
  }
  require_valid(d);
  return d;
}

}  // namespace pmotif
