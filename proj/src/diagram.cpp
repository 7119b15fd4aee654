#include "pmotif/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "pmotif/error.hpp"

namespace pmotif {

namespace {

Vec2 add(Vec2 a, Vec2 b) { return {checked_add(a[0], b[0]), checked_add(a[1], b[1])}; }
Vec2 neg(Vec2 a) { return {checked_neg(a[0]), checked_neg(a[1])}; }

Vec2 normalized(Vec2 v) {
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) return neg(v);
  return v;
}

bool primitive_or_zero(Vec2 v) {
  Int g = std::gcd(v[0], v[1]);
  return g == 0 || g == 1;
}

std::string show(Vec2 v) { return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")"; }

IntVec as_vec(Vec2 v) { return {v[0], v[1]}; }
Vec2 as_vec2(const IntVec& v) { return {v.at(0), v.at(1)}; }

}  // namespace

int TorusDiagram::add_crossing(int over_parity) {
  int c = crossing_count();
  over_.push_back(over_parity);
  for (int s = 0; s < 4; ++s) {
    mate_.push_back(-1);
    disp_.push_back({0, 0});
  }
  return c;
}

void TorusDiagram::connect(int h_from, int h_to, Vec2 d) {
  if (h_from < 0 || h_to < 0 || h_from >= half_edge_count() || h_to >= half_edge_count())
    throw Error(ErrorKind::InvalidDiagram, "half-edge out of range");
  if (h_from == h_to) throw Error(ErrorKind::InvalidDiagram, "a slot cannot be paired with itself");
  mate_[static_cast<size_t>(h_from)] = h_to;
  mate_[static_cast<size_t>(h_to)] = h_from;
  disp_[static_cast<size_t>(h_from)] = d;
  disp_[static_cast<size_t>(h_to)] = neg(d);
}

void TorusDiagram::set_over(int c, int parity) { over_.at(static_cast<size_t>(c)) = parity; }

std::vector<std::vector<int>> faces(const TorusDiagram& d) {
  const int n = d.half_edge_count();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> out;
  for (int h0 = 0; h0 < n; ++h0) {
    if (seen[static_cast<size_t>(h0)]) continue;
    std::vector<int> face;
    int h = h0;
    while (!seen[static_cast<size_t>(h)]) {
      seen[static_cast<size_t>(h)] = 1;
      face.push_back(h);
      int m = d.mate(h);
      h = half_edge(crossing_of(m), slot_of(m) - 1);
    }
    out.push_back(std::move(face));
  }
  return out;
}

std::vector<std::string> validate(const TorusDiagram& d) {
  std::vector<std::string> bad;
  const int v = d.crossing_count();
  const int n = d.half_edge_count();
  for (int c = 0; c < v; ++c)
    if (d.over(c) != 0 && d.over(c) != 1)
      bad.push_back("crossing " + std::to_string(c) + " has no valid over strand");
  bool paired = true;
  for (int h = 0; h < n; ++h) {
    int m = d.mate(h);
    std::string where = "slot [" + std::to_string(crossing_of(h)) + "," + std::to_string(slot_of(h)) + "]";
    if (m < 0 || m >= n) {
      bad.push_back(where + " is unpaired");
      paired = false;
    } else if (m == h || d.mate(m) != h) {
      bad.push_back(where + " is paired inconsistently");
      paired = false;
    } else if (d.disp(m) != neg(d.disp(h))) {
      bad.push_back(where + " has a displacement that disagrees with its mate");
    }
  }

  const auto& loops = d.loops();
  for (const Vec2& l : loops)
    if (!primitive_or_zero(l)) bad.push_back("free loop " + show(l) + " is not primitive");
  if (v > 0) {
    for (const Vec2& l : loops)
      if (l != Vec2{0, 0}) bad.push_back("essential free loop " + show(l) + " would miss the crossings' faces");
  } else {
    std::optional<Vec2> dir;
    for (const Vec2& l : loops) {
      if (l == Vec2{0, 0}) continue;
      if (!dir) dir = normalized(l);
      else if (normalized(l) != *dir) bad.push_back("free loops " + show(*dir) + " and " + show(l) + " must intersect");
    }
  }
  if (!paired || v == 0) return bad;

  // Connectivity of the underlying graph.
  std::vector<int> pot_seen(static_cast<size_t>(v), 0);
  std::vector<Vec2> pot(static_cast<size_t>(v), Vec2{0, 0});
  std::vector<int> queue{0};
  pot_seen[0] = 1;
  for (size_t i = 0; i < queue.size(); ++i) {
    int c = queue[i];
    for (int s = 0; s < 4; ++s) {
      int h = half_edge(c, s);
      int o = crossing_of(d.mate(h));
      if (pot_seen[static_cast<size_t>(o)]) continue;
      pot_seen[static_cast<size_t>(o)] = 1;
      pot[static_cast<size_t>(o)] = add(pot[static_cast<size_t>(c)], d.disp(h));
      queue.push_back(o);
    }
  }
  if (static_cast<int>(queue.size()) != v) {
    bad.push_back("diagram graph is disconnected");
    return bad;
  }

  auto fs = faces(d);
  const int euler = v - 2 * v + static_cast<int>(fs.size());
  if (euler != 0) bad.push_back("V - E + F = " + std::to_string(euler) + ", expected 0");
  for (size_t i = 0; i < fs.size(); ++i) {
    Vec2 sum{0, 0};
    for (int h : fs[i]) sum = add(sum, d.disp(h));
    if (sum != Vec2{0, 0}) bad.push_back("face " + std::to_string(i) + " has displacement sum " + show(sum));
  }
  if (!bad.empty()) return bad;

  // Cycle classes must generate all of Z^2, otherwise the map is not a
  // cellular embedding into this torus.
  std::vector<IntVec> cycles;
  for (int h = 0; h < n; ++h) {
    int m = d.mate(h);
    if (m < h) continue;
    Vec2 z = add(add(pot[static_cast<size_t>(crossing_of(h))], d.disp(h)), neg(pot[static_cast<size_t>(crossing_of(m))]));
    if (z != Vec2{0, 0}) cycles.push_back(as_vec(z));
  }
  bool spans = false;
  if (cycles.size() >= 2) {
    EchelonResult e = column_echelon(Matrix::from_columns(cycles));
    spans = e.rank == 2 && e.echelon(0, 0) * e.echelon(1, 1) == 1;
  }
  if (!spans) bad.push_back("cycle classes do not generate the torus homology");
  return bad;
}

bool is_valid(const TorusDiagram& d) { return validate(d).empty(); }

void require_valid(const TorusDiagram& d) {
  auto bad = validate(d);
  if (bad.empty()) return;
  std::string msg = "invalid diagram: " + bad.front();
  if (bad.size() > 1) msg += " (+" + std::to_string(bad.size() - 1) + " more)";
  throw Error(ErrorKind::InvalidDiagram, msg);
}

std::vector<Component> trace_components(const TorusDiagram& d) {
  const int n = d.half_edge_count();
  std::vector<char> used(static_cast<size_t>(n), 0);
  std::vector<Component> out;
  for (int h0 = 0; h0 < n; ++h0) {
    if (used[static_cast<size_t>(h0)]) continue;
    Component comp;
    int h = h0;
    while (!used[static_cast<size_t>(h)]) {
      int m = d.mate(h);
      used[static_cast<size_t>(h)] = used[static_cast<size_t>(m)] = 1;
      comp.half_edges.push_back(h);
      comp.homology = add(comp.homology, d.disp(h));
      h = half_edge(crossing_of(m), slot_of(m) + 2);
    }
    out.push_back(std::move(comp));
  }
  for (const Vec2& l : d.loops()) out.push_back(Component{{}, l});
  return out;
}

int components(const TorusDiagram& d) {
  require_valid(d);
  return static_cast<int>(trace_components(d).size());
}

std::vector<Vec2> homology_multiset(const TorusDiagram& d) {
  require_valid(d);
  std::vector<Vec2> out;
  for (const Component& c : trace_components(d)) out.push_back(normalized(c.homology));
  std::sort(out.begin(), out.end());
  return out;
}

int crossing_sign(const TorusDiagram& d, int c, const std::vector<int>& strand_direction) {
  int p = d.over(c);
  int over_out = strand_direction[static_cast<size_t>(half_edge(c, p))] > 0 ? p : p + 2;
  int under_out = strand_direction[static_cast<size_t>(half_edge(c, p + 1))] > 0 ? p + 1 : p + 3;
  return (under_out - over_out + 4) % 4 == 1 ? 1 : -1;
}

std::vector<std::vector<Int>> linking_matrix(const TorusDiagram& d) {
  require_valid(d);
  auto comps = trace_components(d);
  const size_t k = comps.size();
  std::vector<int> dir(static_cast<size_t>(d.half_edge_count()), 0);
  std::vector<int> owner(static_cast<size_t>(d.half_edge_count()), -1);
  for (size_t i = 0; i < k; ++i) {
    int sign = normalized(comps[i].homology) == comps[i].homology ? 1 : -1;
    for (int h : comps[i].half_edges) {
      dir[static_cast<size_t>(h)] = sign;
      dir[static_cast<size_t>(d.mate(h))] = -sign;
      owner[static_cast<size_t>(h)] = owner[static_cast<size_t>(d.mate(h))] = static_cast<int>(i);
    }
  }
  std::vector<std::vector<Int>> m(k, std::vector<Int>(k, 0));
  for (int c = 0; c < d.crossing_count(); ++c) {
    int a = owner[static_cast<size_t>(half_edge(c, 0))];
    int b = owner[static_cast<size_t>(half_edge(c, 1))];
    if (a == b) continue;
    int s = crossing_sign(d, c, dir);
    m[static_cast<size_t>(a)][static_cast<size_t>(b)] += s;
    m[static_cast<size_t>(b)][static_cast<size_t>(a)] += s;
  }
  return m;
}

TorusDiagram translate(const TorusDiagram& d, Vec2) {
  require_valid(d);
  return d;
}

TorusDiagram dehn_twist_diagram(const TorusDiagram& d, const Matrix& twist) {
  if (twist.rows() != 2 || twist.cols() != 2) throw Error(ErrorKind::AmbientMismatch, "torus twists are 2x2");
  if (determinant(twist) != 1) throw Error(ErrorKind::NotAdmissible, "twist must have determinant 1");
  require_valid(d);
  TorusDiagram out;
  for (int c = 0; c < d.crossing_count(); ++c) out.add_crossing(d.over(c));
  for (int h = 0; h < d.half_edge_count(); ++h)
    if (h < d.mate(h)) out.connect(h, d.mate(h), as_vec2(twist * as_vec(d.disp(h))));
  for (const Vec2& l : d.loops()) out.add_loop(as_vec2(twist * as_vec(l)));
  return out;
}

TorusDiagram lift_diagram(const TorusDiagram& d, const Lattice& cover) {
  if (cover.dim() != 2) throw Error(ErrorKind::AmbientMismatch, "diagram covers need a rank-2 lattice");
  require_valid(d);
  const auto reps = cosets(cover);
  const int n = static_cast<int>(reps.size());
  std::map<IntVec, int> slot_of_coset;
  for (int i = 0; i < n; ++i) slot_of_coset[reps[static_cast<size_t>(i)]] = i;

  TorusDiagram out;
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int i = 0; i < n; ++i) out.add_crossing(d.over(c));
  for (int h = 0; h < d.half_edge_count(); ++h) {
    int m = d.mate(h);
    if (m < h) continue;
    for (int i = 0; i < n; ++i) {
      IntVec target = reps[static_cast<size_t>(i)];
      target[0] = checked_add(target[0], d.disp(h)[0]);
      target[1] = checked_add(target[1], d.disp(h)[1]);
      IntVec r = reduce(cover, target);
      int j = slot_of_coset.at(r);
      IntVec jump{checked_sub(target[0], r[0]), checked_sub(target[1], r[1])};
      out.connect(half_edge(crossing_of(h) * n + i, slot_of(h)), half_edge(crossing_of(m) * n + j, slot_of(m)),
                  as_vec2(coordinates(cover, jump)));
    }
  }
  for (const Vec2& l : d.loops()) {
    if (l == Vec2{0, 0}) {
      for (int i = 0; i < n; ++i) out.add_loop(l);
      continue;
    }
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      if (seen[static_cast<size_t>(i)]) continue;
      Int steps = 0;
      IntVec r = reps[static_cast<size_t>(i)];
      do {
        seen[static_cast<size_t>(slot_of_coset.at(r))] = 1;
        r = reduce(cover, {checked_add(r[0], l[0]), checked_add(r[1], l[1])});
        ++steps;
      } while (r != reps[static_cast<size_t>(i)]);
      out.add_loop(normalized(as_vec2(coordinates(cover, {checked_mul(steps, l[0]), checked_mul(steps, l[1])}))));
    }
  }
  return out;
}

// ---------------------------------------------------------------- text forms

std::string diagram_to_json(const TorusDiagram& d, int indent) {
  using nlohmann::ordered_json;
  std::vector<ordered_json> crossings, edges, loops;
  for (int c = 0; c < d.crossing_count(); ++c) crossings.push_back({{"over", {d.over(c), d.over(c) + 2}}});
  for (int h = 0; h < d.half_edge_count(); ++h) {
    int m = d.mate(h);
    if (m < h) continue;
    edges.push_back({{"from", {crossing_of(h), slot_of(h)}},
                     {"to", {crossing_of(m), slot_of(m)}},
                     {"disp", {d.disp(h)[0], d.disp(h)[1]}}});
  }
  for (const Vec2& l : d.loops()) loops.push_back({l[0], l[1]});
  if (indent < 0) {
    ordered_json j;
    j["crossings"] = crossings;
    j["edges"] = edges;
    j["loops"] = loops;
    return j.dump();
  }
  // One element per line keeps fixtures diffable.
  auto block = [](const char* key, const std::vector<ordered_json>& xs, bool last) {
    std::string s = std::string("  \"") + key + "\": [";
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? ",\n    " : "\n    ") + xs[i].dump();
    s += xs.empty() ? "]" : "\n  ]";
    return s + (last ? "\n" : ",\n");
  };
  return "{\n" + block("crossings", crossings, false) + block("edges", edges, false) + block("loops", loops, true) + "}";
}

TorusDiagram diagram_from_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("diagram JSON: ") + e.what());
  }
  try {
    TorusDiagram d;
    if (!j.is_object()) throw Error(ErrorKind::Parse, "diagram must be a JSON object");
    for (const auto& c : j.value("crossings", json::array())) {
      auto pair = c.at("over").get<std::vector<int>>();
      if (pair.size() != 2 || pair[0] < 0 || pair[0] > 3 || (pair[1] - pair[0] + 4) % 4 != 2)
        throw Error(ErrorKind::Parse, "\"over\" must name two opposite slots");
      d.add_crossing(std::min(pair[0], pair[1]) % 2);
    }
    for (const auto& e : j.value("edges", json::array())) {
      auto from = e.at("from").get<std::vector<int>>();
      auto to = e.at("to").get<std::vector<int>>();
      auto disp = e.at("disp").get<std::vector<Int>>();
      if (from.size() != 2 || to.size() != 2 || disp.size() != 2)
        throw Error(ErrorKind::Parse, "edge fields are pairs");
      for (int s : {from[1], to[1]})
        if (s < 0 || s > 3) throw Error(ErrorKind::Parse, "slot out of range");
      for (int c : {from[0], to[0]})
        if (c < 0 || c >= d.crossing_count()) throw Error(ErrorKind::Parse, "crossing out of range");
      d.connect(half_edge(from[0], from[1]), half_edge(to[0], to[1]), {disp[0], disp[1]});
    }
    for (const auto& l : j.value("loops", json::array())) {
      auto v = l.get<std::vector<Int>>();
      if (v.size() != 2) throw Error(ErrorKind::Parse, "loops are pairs");
      d.add_loop({v[0], v[1]});
    }
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("diagram JSON: ") + e.what());
  }
}

TorusDiagram read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return diagram_from_json(ss.str());
}

std::string diagram_to_dot(const TorusDiagram& d) {
  std::ostringstream os;
  os << "graph torus_diagram {\n";
  for (int c = 0; c < d.crossing_count(); ++c)
    os << "  c" << c << " [label=\"" << c << (d.over(c) ? " (13 over)" : " (02 over)") << "\"];\n";
  for (int h = 0; h < d.half_edge_count(); ++h) {
    int m = d.mate(h);
    if (m < h) continue;
    os << "  c" << crossing_of(h) << " -- c" << crossing_of(m) << " [taillabel=\"" << slot_of(h)
       << "\", headlabel=\"" << slot_of(m) << "\", label=\"" << show(d.disp(h)) << "\"];\n";
  }
  for (size_t i = 0; i < d.loops().size(); ++i)
    os << "  loop" << i << " [shape=circle, label=\"" << show(d.loops()[i]) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pmotif
