#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "pmotif/diagram.hpp"
#include "pmotif/elementary.hpp"
#include "pmotif/error.hpp"

namespace pmotif {

namespace {

Vec2 add(Vec2 a, Vec2 b) { return {checked_add(a[0], b[0]), checked_add(a[1], b[1])}; }
Vec2 sub(Vec2 a, Vec2 b) { return {checked_sub(a[0], b[0]), checked_sub(a[1], b[1])}; }

Vec2 normalized(Vec2 v) {
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) return {checked_neg(v[0]), checked_neg(v[1])};
  return v;
}

Vec2 act(const Matrix& a, Vec2 v) {
  return {checked_add(checked_mul(a(0, 0), v[0]), checked_mul(a(0, 1), v[1])),
          checked_add(checked_mul(a(1, 0), v[0]), checked_mul(a(1, 1), v[1]))};
}

// Traversal from one starting half-edge. Crossings are numbered in BFS order,
// slots are rotated so the entry slot is local 0, and every crossing's lift is
// fixed by the BFS tree, so tree edges carry displacement zero.
struct Traversal {
  std::vector<int> order;     // crossings in label order
  std::vector<int> label;     // crossing -> label
  std::vector<int> rotation;  // crossing -> slot sitting at local 0
  std::vector<Vec2> lift;     // crossing -> position of its lift
};

Traversal traverse(const TorusDiagram& d, int start) {
  const int v = d.crossing_count();
  Traversal t;
  t.label.assign(static_cast<size_t>(v), -1);
  t.rotation.assign(static_cast<size_t>(v), 0);
  t.lift.assign(static_cast<size_t>(v), Vec2{0, 0});
  int c0 = crossing_of(start);
  t.label[static_cast<size_t>(c0)] = 0;
  t.rotation[static_cast<size_t>(c0)] = slot_of(start);
  t.order.push_back(c0);
  for (size_t i = 0; i < t.order.size(); ++i) {
    int c = t.order[i];
    for (int ls = 0; ls < 4; ++ls) {
      int h = half_edge(c, t.rotation[static_cast<size_t>(c)] + ls);
      int m = d.mate(h);
      int o = crossing_of(m);
      if (t.label[static_cast<size_t>(o)] >= 0) continue;
      t.label[static_cast<size_t>(o)] = static_cast<int>(t.order.size());
      t.rotation[static_cast<size_t>(o)] = slot_of(m);
      t.lift[static_cast<size_t>(o)] = add(t.lift[static_cast<size_t>(c)], d.disp(h));
      t.order.push_back(o);
    }
  }
  return t;
}

// The structural part of the code and, separately, the gauged displacement
// vectors in emission order.
void emit(const TorusDiagram& d, const Traversal& t, std::vector<Int>& code, std::vector<Vec2>& vectors) {
  code.push_back(d.crossing_count());
  for (int c : t.order) {
    int rot = t.rotation[static_cast<size_t>(c)];
    code.push_back(((d.over(c) + rot) % 2 + 2) % 2);
    for (int ls = 0; ls < 4; ++ls) {
      int h = half_edge(c, rot + ls);
      int m = d.mate(h);
      int o = crossing_of(m);
      code.push_back(t.label[static_cast<size_t>(o)]);
      code.push_back(((slot_of(m) - t.rotation[static_cast<size_t>(o)]) % 4 + 4) % 4);
      vectors.push_back(sub(add(t.lift[static_cast<size_t>(c)], d.disp(h)), t.lift[static_cast<size_t>(o)]));
    }
  }
}

std::vector<Int> assemble(std::vector<Int> code, const std::vector<Vec2>& vectors, std::vector<Vec2> loops) {
  for (const Vec2& v : vectors) {
    code.push_back(v[0]);
    code.push_back(v[1]);
  }
  std::sort(loops.begin(), loops.end());
  code.push_back(static_cast<Int>(loops.size()));
  for (const Vec2& l : loops) {
    code.push_back(l[0]);
    code.push_back(l[1]);
  }
  return code;
}

std::vector<Vec2> normalized_loops(const TorusDiagram& d, const Matrix& frame) {
  std::vector<Vec2> out;
  for (const Vec2& l : d.loops()) out.push_back(normalized(act(frame, l)));
  return out;
}

// SL(2,Z) frame sending the first nonzero vector to (g,0) and reducing the
// first vector off that axis by a shear.
Matrix normal_frame(const std::vector<Vec2>& vectors) {
  auto first = std::find_if(vectors.begin(), vectors.end(), [](const Vec2& v) { return v != Vec2{0, 0}; });
  if (first == vectors.end()) return Matrix::identity(2);
  Matrix frame = sl_reducer({(*first)[0], (*first)[1]});
  for (const Vec2& v : vectors) {
    Vec2 w = act(frame, v);
    if (w[1] == 0) continue;
    Int t = w[1] > 0 ? -floor_div(w[0], w[1]) : floor_div(w[0], -w[1]);
    return Matrix{{1, t}, {0, 1}} * frame;
  }
  return frame;
}

std::string show(Vec2 v) { return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")"; }

template <typename T, typename F>
std::string show_list(const std::vector<T>& xs, F f) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + f(xs[i]);
  return s + "}";
}

Matrix inverse_sl2(const Matrix& a) { return Matrix{{a(1, 1), -a(0, 1)}, {-a(1, 0), a(0, 0)}}; }

}  // namespace

std::vector<Int> canonical_code(const TorusDiagram& d) {
  const Matrix id = Matrix::identity(2);
  if (d.crossing_count() == 0) return assemble({0}, {}, normalized_loops(d, id));
  std::vector<Int> best;
  for (int start = 0; start < d.half_edge_count(); ++start) {
    Traversal t = traverse(d, start);
    std::vector<Int> code;
    std::vector<Vec2> vectors;
    emit(d, t, code, vectors);
    auto full = assemble(std::move(code), vectors, normalized_loops(d, id));
    if (best.empty() || full < best) best = std::move(full);
  }
  return best;
}

std::vector<Int> twist_canonical_code(const TorusDiagram& d, Matrix* to_normal) {
  if (d.crossing_count() == 0) {
    std::vector<Vec2> loops(d.loops().begin(), d.loops().end());
    Matrix frame = normal_frame(loops);
    if (to_normal) *to_normal = frame;
    return assemble({0}, {}, normalized_loops(d, frame));
  }
  std::vector<Int> best;
  Matrix best_frame = Matrix::identity(2);
  for (int start = 0; start < d.half_edge_count(); ++start) {
    Traversal t = traverse(d, start);
    std::vector<Int> code;
    std::vector<Vec2> vectors;
    emit(d, t, code, vectors);
    Matrix frame = normal_frame(vectors);
    for (Vec2& v : vectors) v = act(frame, v);
    auto full = assemble(std::move(code), vectors, normalized_loops(d, frame));
    if (best.empty() || full < best) {
      best = std::move(full);
      best_frame = frame;
    }
  }
  if (to_normal) *to_normal = best_frame;
  return best;
}

std::uint64_t canonical_hash(const TorusDiagram& d) {
  // FNV-1a over the little-endian bytes of the code.
  std::uint64_t h = 1469598103934665603ULL;
  for (Int x : canonical_code(d)) {
    auto u = static_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string format_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::Yes: return "Yes";
    case SearchVerdict::No: return "No";
    case SearchVerdict::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------- invariants

namespace {

struct LinkingEntry {
  Vec2 a, b;
  Int value;
  auto operator<=>(const LinkingEntry&) const = default;
};

std::vector<LinkingEntry> linking_data(const TorusDiagram& d) {
  auto comps = trace_components(d);
  auto m = linking_matrix(d);
  std::vector<LinkingEntry> out;
  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = i + 1; j < comps.size(); ++j) {
      Vec2 a = normalized(comps[i].homology);
      Vec2 b = normalized(comps[j].homology);
      Int value = m[i][j];
      if (a == Vec2{0, 0} || b == Vec2{0, 0}) value = value < 0 ? -value : value;
      if (b < a) std::swap(a, b);
      out.push_back({a, b, value});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> abs_linking(const TorusDiagram& d) {
  auto m = linking_matrix(d);
  std::vector<Int> out;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j) out.push_back(m[i][j] < 0 ? -m[i][j] : m[i][j]);
  std::sort(out.begin(), out.end());
  return out;
}

// SL(2,Z)-invariant summary of a class multiset: divisibilities and pairwise
// |det|.
std::pair<std::vector<Int>, std::vector<Int>> class_shape(const std::vector<Vec2>& classes) {
  std::vector<Int> content, dets;
  for (const Vec2& v : classes) content.push_back(std::gcd(v[0], v[1]));
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = i + 1; j < classes.size(); ++j) {
      Int det = checked_sub(checked_mul(classes[i][0], classes[j][1]), checked_mul(classes[i][1], classes[j][0]));
      dets.push_back(det < 0 ? -det : det);
    }
  std::sort(content.begin(), content.end());
  std::sort(dets.begin(), dets.end());
  return {content, dets};
}

std::string show_ints(const std::vector<Int>& xs) {
  return show_list(xs, [](Int x) { return std::to_string(x); });
}

}  // namespace

std::optional<InvariantGap> separating_invariant(const TorusDiagram& d0, const TorusDiagram& d1, bool allow_twists) {
  int k0 = components(d0), k1 = components(d1);
  if (k0 != k1) return InvariantGap{"components", std::to_string(k0) + " vs " + std::to_string(k1)};
  auto h0 = homology_multiset(d0), h1 = homology_multiset(d1);
  if (!allow_twists) {
    if (h0 != h1)
      return InvariantGap{"homology multiset", show_list(h0, show) + " vs " + show_list(h1, show)};
    auto l0 = linking_data(d0), l1 = linking_data(d1);
    if (l0 != l1) {
      auto fmt = [](const LinkingEntry& e) { return show(e.a) + "." + show(e.b) + "=" + std::to_string(e.value); };
      return InvariantGap{"linking data", show_list(l0, fmt) + " vs " + show_list(l1, fmt)};
    }
    return std::nullopt;
  }
  auto s0 = class_shape(h0), s1 = class_shape(h1);
  if (s0.first != s1.first)
    return InvariantGap{"homology multiset up to SL(2,Z): class divisibility",
                        show_ints(s0.first) + " vs " + show_ints(s1.first)};
  if (s0.second != s1.second)
    return InvariantGap{"homology multiset up to SL(2,Z): pairwise intersection",
                        show_ints(s0.second) + " vs " + show_ints(s1.second)};
  auto a0 = abs_linking(d0), a1 = abs_linking(d1);
  if (a0 != a1) return InvariantGap{"linking data (absolute)", show_ints(a0) + " vs " + show_ints(a1)};
  return std::nullopt;
}

bool replay(const TorusDiagram& d0, const TorusDiagram& d1, const EquivalenceCertificate& cert) {
  TorusDiagram e0 = d0, e1 = d1;
  for (const Move& m : cert.moves0) e0 = apply_move(e0, m);
  for (const Move& m : cert.moves1) e1 = apply_move(e1, m);
  return canonical_code(dehn_twist_diagram(e0, cert.twist)) == canonical_code(e1);
}

// ---------------------------------------------------------------- search

namespace {

struct Node {
  TorusDiagram diagram;
  int parent;
  Move move;
  int depth;
};

struct Side {
  std::vector<Node> nodes;
  std::map<std::vector<Int>, int> seen;
  std::vector<int> frontier;
  int depth = 0;
};

std::vector<Move> path_to(const Side& s, int node) {
  std::vector<Move> out;
  for (int i = node; s.nodes[static_cast<size_t>(i)].parent >= 0; i = s.nodes[static_cast<size_t>(i)].parent)
    out.push_back(s.nodes[static_cast<size_t>(i)].move);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

SearchResult equivalence_search(const TorusDiagram& d0, const TorusDiagram& d1, bool allow_twists,
                                const SearchBudget& budget) {
  require_valid(d0);
  require_valid(d1);
  SearchResult result;
  if (auto gap = separating_invariant(d0, d1, allow_twists)) {
    result.verdict = SearchVerdict::No;
    result.invariant = gap->name;
    result.detail = gap->detail;
    return result;
  }
  const int cap = budget.max_crossings >= 0
                      ? budget.max_crossings
                      : std::max(d0.crossing_count(), d1.crossing_count()) + budget.extra_crossings;
  auto key = [&](const TorusDiagram& d) { return allow_twists ? twist_canonical_code(d) : canonical_code(d); };

  std::array<Side, 2> sides;
  const std::array<const TorusDiagram*, 2> roots{&d0, &d1};
  for (int s = 0; s < 2; ++s) {
    sides[static_cast<size_t>(s)].nodes.push_back({*roots[static_cast<size_t>(s)], -1, {}, 0});
    sides[static_cast<size_t>(s)].frontier = {0};
  }
  auto finish = [&](int node0, int node1) {
    EquivalenceCertificate cert;
    cert.moves0 = path_to(sides[0], node0);
    cert.moves1 = path_to(sides[1], node1);
    if (allow_twists) {
      Matrix n0, n1;
      twist_canonical_code(sides[0].nodes[static_cast<size_t>(node0)].diagram, &n0);
      twist_canonical_code(sides[1].nodes[static_cast<size_t>(node1)].diagram, &n1);
      cert.twist = inverse_sl2(n1) * n0;
    }
    result.verdict = SearchVerdict::Yes;
    result.certificate = cert;
    result.states = sides[0].nodes.size() + sides[1].nodes.size();
    return result;
  };

  auto k0 = key(d0);
  auto k1 = key(d1);
  if (k0 == k1) return finish(0, 0);
  sides[0].seen[k0] = 0;
  sides[1].seen[k1] = 0;

  bool truncated = false;
  while (sides[0].depth + sides[1].depth < budget.max_depth) {
    if (sides[0].frontier.empty() && sides[1].frontier.empty()) break;
    int s = sides[0].frontier.empty()                                   ? 1
            : sides[1].frontier.empty()                                 ? 0
            : sides[0].frontier.size() <= sides[1].frontier.size() ? 0
                                                                        : 1;
    Side& here = sides[static_cast<size_t>(s)];
    Side& there = sides[static_cast<size_t>(1 - s)];
    std::vector<int> next;
    for (int idx : here.frontier) {
      const TorusDiagram parent = here.nodes[static_cast<size_t>(idx)].diagram;
      for (auto& step : enumerate_moves(parent, cap)) {
        auto k = key(step.diagram);
        if (here.seen.count(k)) continue;
        int id = static_cast<int>(here.nodes.size());
        here.nodes.push_back({std::move(step.diagram), idx, step.move, here.depth + 1});
        here.seen.emplace(k, id);
        if (auto hit = there.seen.find(k); hit != there.seen.end())
          return s == 0 ? finish(id, hit->second) : finish(hit->second, id);
        next.push_back(id);
        if (sides[0].nodes.size() + sides[1].nodes.size() >= budget.max_states) {
          truncated = true;
          break;
        }
      }
      if (truncated) break;
    }
    if (truncated) break;
    here.frontier = std::move(next);
    ++here.depth;
  }
  result.verdict = SearchVerdict::Unknown;
  result.states = sides[0].nodes.size() + sides[1].nodes.size();
  std::ostringstream os;
  os << "budget exhausted: depth " << sides[0].depth << "+" << sides[1].depth << " of " << budget.max_depth
     << ", crossings <= " << cap << ", " << result.states << " states" << (truncated ? " (state cap hit)" : "");
  result.detail = os.str();
  return result;
}

}  // namespace pmotif
