#include <algorithm>
#include <numeric>

#include "pmotif/diagram.hpp"
#include "pmotif/error.hpp"

namespace pmotif {

namespace {

Vec2 add(Vec2 a, Vec2 b) { return {checked_add(a[0], b[0]), checked_add(a[1], b[1])}; }
Vec2 sub(Vec2 a, Vec2 b) { return {checked_sub(a[0], b[0]), checked_sub(a[1], b[1])}; }
Vec2 neg(Vec2 a) { return {checked_neg(a[0]), checked_neg(a[1])}; }

Vec2 normalized(Vec2 v) {
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) return neg(v);
  return v;
}

[[noreturn]] void not_applicable(const Move& m, const std::string& why) {
  throw Error(ErrorKind::InvalidMove, format_move(m) + ": " + why);
}

void require_half_edge(const TorusDiagram& d, const Move& m, int h) {
  if (h < 0 || h >= d.half_edge_count()) not_applicable(m, "half-edge out of range");
}

int next_in_face(const TorusDiagram& d, int h) {
  int m = d.mate(h);
  return half_edge(crossing_of(m), slot_of(m) - 1);
}

std::vector<int> face_of(const TorusDiagram& d, int h0) {
  std::vector<int> f{h0};
  for (int h = next_in_face(d, h0); h != h0; h = next_in_face(d, h)) f.push_back(h);
  return f;
}

TorusDiagram copy_with_extra(const TorusDiagram& d, int extra, int over_parity) {
  TorusDiagram out;
  for (int c = 0; c < d.crossing_count(); ++c) out.add_crossing(d.over(c));
  for (int i = 0; i < extra; ++i) out.add_crossing(over_parity);
  for (int h = 0; h < d.half_edge_count(); ++h)
    if (h < d.mate(h)) out.connect(h, d.mate(h), d.disp(h));
  for (const Vec2& l : d.loops()) out.add_loop(l);
  return out;
}

// Deletes the marked crossings, splicing each strand straight through them.
// Strands that only ran through deleted crossings become free loops.
TorusDiagram remove_crossings(const TorusDiagram& d, const std::vector<char>& gone) {
  const int v = d.crossing_count();
  std::vector<int> renumber(static_cast<size_t>(v), -1);
  TorusDiagram out;
  for (int c = 0; c < v; ++c)
    if (!gone[static_cast<size_t>(c)]) renumber[static_cast<size_t>(c)] = out.add_crossing(d.over(c));
  auto kept = [&](int h) { return !gone[static_cast<size_t>(crossing_of(h))]; };
  auto moved = [&](int h) { return half_edge(renumber[static_cast<size_t>(crossing_of(h))], slot_of(h)); };

  // passage index: 2*c + (slot parity)
  std::vector<char> walked(static_cast<size_t>(2 * v), 0);
  for (int h = 0; h < d.half_edge_count(); ++h) {
    if (!kept(h)) continue;
    Vec2 acc = d.disp(h);
    int cur = d.mate(h);
    while (!kept(cur)) {
      walked[static_cast<size_t>(2 * crossing_of(cur) + slot_of(cur) % 2)] = 1;
      int through = half_edge(crossing_of(cur), slot_of(cur) + 2);
      acc = add(acc, d.disp(through));
      cur = d.mate(through);
    }
    if (h == cur) throw Error(ErrorKind::InvalidMove, "splice would pair a slot with itself");
    if (h < cur) out.connect(moved(h), moved(cur), acc);
  }
  for (const Vec2& l : d.loops()) out.add_loop(l);
  for (int c = 0; c < v; ++c) {
    if (!gone[static_cast<size_t>(c)]) continue;
    for (int parity = 0; parity < 2; ++parity) {
      if (walked[static_cast<size_t>(2 * c + parity)]) continue;
      Vec2 acc{0, 0};
      int start = half_edge(c, parity);
      int h = start;
      do {
        walked[static_cast<size_t>(2 * crossing_of(h) + slot_of(h) % 2)] = 1;
        acc = add(acc, d.disp(h));
        int m = d.mate(h);
        h = half_edge(crossing_of(m), slot_of(m) + 2);
      } while (h != start);
      out.add_loop(normalized(acc));
    }
  }
  return out;
}

TorusDiagram r1_insert(const TorusDiagram& d, const Move& mv) {
  require_half_edge(d, mv, mv.a);
  const int h = mv.a;
  const int m = d.mate(h);
  const Vec2 shift = d.disp(h);
  TorusDiagram out = copy_with_extra(d, 1, (mv.variant >> 1) & 1);
  const int x = d.crossing_count();
  const bool left = (mv.variant & 1) != 0;
  out.connect(h, half_edge(x, 0), shift);
  out.connect(half_edge(x, 2), half_edge(x, left ? 3 : 1), {0, 0});
  out.connect(half_edge(x, left ? 1 : 3), m, {0, 0});
  return out;
}

TorusDiagram r1_delete(const TorusDiagram& d, const Move& mv) {
  require_half_edge(d, mv, mv.a);
  const int h = mv.a;
  const int m = d.mate(h);
  if (crossing_of(h) != crossing_of(m) || (slot_of(h) - slot_of(m) + 4) % 2 != 1)
    not_applicable(mv, "not a kink");
  std::vector<char> gone(static_cast<size_t>(d.crossing_count()), 0);
  gone[static_cast<size_t>(crossing_of(h))] = 1;
  return remove_crossings(d, gone);
}

// Pushes a finger of the edge at h1 across the edge at h2. Both half-edges
// must bound the same face (on their left).
TorusDiagram r2_insert(const TorusDiagram& d, const Move& mv) {
  require_half_edge(d, mv, mv.a);
  require_half_edge(d, mv, mv.b);
  const int h1 = mv.a;
  const int h2 = mv.b;
  if (h1 == h2 || h2 == d.mate(h1)) not_applicable(mv, "needs two distinct edge sides");
  auto face = face_of(d, h1);
  Vec2 reach{0, 0};
  bool found = false;
  for (int h : face) {
    if (h == h2) {
      found = true;
      break;
    }
    reach = add(reach, d.disp(h));
  }
  if (!found) not_applicable(mv, "edges do not share a face");
  const int m1 = d.mate(h1);
  const int m2 = d.mate(h2);
  const Vec2 d1 = d.disp(h1);
  const Vec2 d2 = d.disp(h2);
  TorusDiagram out = copy_with_extra(d, 2, mv.variant & 1);
  const int y = d.crossing_count();
  const int z = y + 1;
  out.connect(h1, half_edge(y, 3), {0, 0});
  out.connect(half_edge(y, 1), half_edge(z, 1), {0, 0});
  out.connect(half_edge(z, 3), m1, d1);
  out.connect(h2, half_edge(z, 0), neg(reach));
  out.connect(half_edge(z, 2), half_edge(y, 0), {0, 0});
  out.connect(half_edge(y, 2), m2, add(reach, d2));
  return out;
}

TorusDiagram r2_delete(const TorusDiagram& d, const Move& mv) {
  require_half_edge(d, mv, mv.a);
  const int h = mv.a;
  auto face = face_of(d, h);
  if (face.size() != 2) not_applicable(mv, "not a bigon");
  const int g = face[1];
  const int x = crossing_of(h);
  const int y = crossing_of(g);
  if (x == y) not_applicable(mv, "bigon with a single corner");
  const int hm = d.mate(h);
  const int gm = d.mate(g);
  bool h_top = d.over(x) == slot_of(h) % 2 && d.over(y) == slot_of(hm) % 2;
  bool g_top = d.over(y) == slot_of(g) % 2 && d.over(x) == slot_of(gm) % 2;
  if (!h_top && !g_top) not_applicable(mv, "bigon strands clasp");
  std::vector<char> gone(static_cast<size_t>(d.crossing_count()), 0);
  gone[static_cast<size_t>(x)] = gone[static_cast<size_t>(y)] = 1;
  return remove_crossings(d, gone);
}

TorusDiagram r3(const TorusDiagram& d, const Move& mv) {
  require_half_edge(d, mv, mv.a);
  auto face = face_of(d, mv.a);
  if (face.size() != 3) not_applicable(mv, "not a triangle");
  std::array<int, 3> corner{};
  for (int i = 0; i < 3; ++i) corner[static_cast<size_t>(i)] = crossing_of(face[static_cast<size_t>(i)]);
  if (corner[0] == corner[1] || corner[1] == corner[2] || corner[0] == corner[2])
    not_applicable(mv, "triangle corners must be distinct");
  bool has_top = false;
  for (int h : face) {
    int m = d.mate(h);
    if (d.over(crossing_of(h)) == slot_of(h) % 2 && d.over(crossing_of(m)) == slot_of(m) % 2) has_top = true;
  }
  if (!has_top) not_applicable(mv, "no strand passes over the triangle");

  // Regauge so the triangle sits in one lift.
  std::vector<Vec2> offset(static_cast<size_t>(d.crossing_count()), Vec2{0, 0});
  offset[static_cast<size_t>(corner[1])] = d.disp(face[0]);
  offset[static_cast<size_t>(corner[2])] = add(d.disp(face[0]), d.disp(face[1]));
  auto gauged = [&](int h) {
    return sub(add(d.disp(h), offset[static_cast<size_t>(crossing_of(h))]),
               offset[static_cast<size_t>(crossing_of(d.mate(h)))]);
  };

  // Each triangle edge swaps inner and outer slots at both of its ends.
  std::vector<int> relocate(static_cast<size_t>(d.half_edge_count()));
  std::iota(relocate.begin(), relocate.end(), 0);
  std::vector<char> inner(static_cast<size_t>(d.half_edge_count()), 0);
  for (int h : face) {
    int m = d.mate(h);
    inner[static_cast<size_t>(h)] = inner[static_cast<size_t>(m)] = 1;
    relocate[static_cast<size_t>(half_edge(crossing_of(m), slot_of(m) + 2))] = h;
    relocate[static_cast<size_t>(half_edge(crossing_of(h), slot_of(h) + 2))] = m;
  }
  TorusDiagram out;
  for (int c = 0; c < d.crossing_count(); ++c) out.add_crossing(d.over(c));
  for (int h = 0; h < d.half_edge_count(); ++h) {
    int m = d.mate(h);
    if (m < h || inner[static_cast<size_t>(h)]) continue;
    out.connect(relocate[static_cast<size_t>(h)], relocate[static_cast<size_t>(m)], gauged(h));
  }
  for (int h : face) {
    int m = d.mate(h);
    out.connect(half_edge(crossing_of(h), slot_of(h) + 2), half_edge(crossing_of(m), slot_of(m) + 2), {0, 0});
  }
  for (const Vec2& l : d.loops()) out.add_loop(l);
  return out;
}

}  // namespace

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::R1Insert: return "R1+";
    case MoveKind::R1Delete: return "R1-";
    case MoveKind::R2Insert: return "R2+";
    case MoveKind::R2Delete: return "R2-";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

std::string format_move(const Move& m) {
  std::string s = to_string(m.kind) + "(" + std::to_string(m.a);
  if (m.kind == MoveKind::R2Insert) s += "," + std::to_string(m.b);
  if (m.kind == MoveKind::R1Insert || m.kind == MoveKind::R2Insert) s += ";" + std::to_string(m.variant);
  return s + ")";
}

TorusDiagram apply_move(const TorusDiagram& d, const Move& m) {
  require_valid(d);
  TorusDiagram out;
  switch (m.kind) {
    case MoveKind::R1Insert: out = r1_insert(d, m); break;
    case MoveKind::R1Delete: out = r1_delete(d, m); break;
    case MoveKind::R2Insert: out = r2_insert(d, m); break;
    case MoveKind::R2Delete: out = r2_delete(d, m); break;
    case MoveKind::R3: out = r3(d, m); break;
  }
  auto bad = validate(out);
  if (!bad.empty()) not_applicable(m, "result is not cellular (" + bad.front() + ")");
  return out;
}

std::vector<MoveResult> enumerate_moves(const TorusDiagram& d, int max_crossings) {
  require_valid(d);
  std::vector<Move> candidates;
  const int v = d.crossing_count();
  const int n = d.half_edge_count();
  if (v + 1 <= max_crossings)
    for (int h = 0; h < n; ++h)
      for (int variant = 0; variant < 4; ++variant) candidates.push_back({MoveKind::R1Insert, h, -1, variant});
  for (int h = 0; h < n; ++h) {
    int m = d.mate(h);
    if (h < m && crossing_of(h) == crossing_of(m) && (slot_of(h) + slot_of(m)) % 2 == 1)
      candidates.push_back({MoveKind::R1Delete, h, -1, 0});
  }
  for (const auto& face : faces(d)) {
    if (face.size() == 2) candidates.push_back({MoveKind::R2Delete, face[0], -1, 0});
    if (face.size() == 3) candidates.push_back({MoveKind::R3, face[0], -1, 0});
    if (v + 2 > max_crossings) continue;
    for (int h1 : face)
      for (int h2 : face) {
        if (h1 == h2 || h2 == d.mate(h1)) continue;
        for (int variant = 0; variant < 2; ++variant) candidates.push_back({MoveKind::R2Insert, h1, h2, variant});
      }
  }
  std::vector<MoveResult> out;
  for (const Move& mv : candidates) {
    try {
      out.push_back({mv, apply_move(d, mv)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidMove) throw;
    }
  }
  return out;
}

}  // namespace pmotif
