// Regenerates the diagram fixtures under fixtures/ (deterministic).
//
// The motif chain: (e) is the alternating two-crossing weave of the (1,1)
// and (1,-1) curves; (d) is a Dehn twist of (e); (c) a double cover of (d);
// (b) a Dehn twist of (c); (a) a double cover of (b). Each stored file other
// than (e) and (a) is additionally disturbed by one Reidemeister move so the
// relations have to be found by search rather than read off.

#include <fstream>
#include <iostream>

#include "pmotif/diagram.hpp"

using namespace pmotif;

namespace {

void write(const std::string& dir, const std::string& name, const TorusDiagram& d) {
  std::ofstream out(dir + "/" + name);
  out << diagram_to_json(d, 1) << "\n";
}

TorusDiagram disturb(const TorusDiagram& d, MoveKind kind) {
  for (const auto& step : enumerate_moves(d, d.crossing_count() + 2))
    if (step.move.kind == kind) return step.diagram;
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  const Matrix shear{{1, 0}, {1, 1}};
  const Matrix shear_back{{1, 1}, {0, 1}};
  const Lattice wide = Lattice::from_basis(Matrix{{2, 0}, {0, 1}});
  const Lattice tall = Lattice::from_basis(Matrix{{1, 0}, {0, 2}});

  TorusDiagram e = straight_line_diagram({{{1, 1}, 0.0, 0.1}, {{1, -1}, 0.3, 0.0}},
                                         [](int, int, int k) { return k % 2 == 0; });
  TorusDiagram d = dehn_twist_diagram(e, shear);
  TorusDiagram c = lift_diagram(d, wide);
  TorusDiagram b = dehn_twist_diagram(c, shear_back);
  TorusDiagram a = lift_diagram(b, tall);

  write(dir, "chain_e.json", e);
  write(dir, "chain_d.json", disturb(d, MoveKind::R1Insert));
  write(dir, "chain_c.json", disturb(c, MoveKind::R2Insert));
  write(dir, "chain_b.json", disturb(b, MoveKind::R2Insert));
  write(dir, "chain_a.json", a);

  TorusDiagram one;
  one.add_crossing(0);
  one.connect(half_edge(0, 0), half_edge(0, 2), {1, 0});
  one.connect(half_edge(0, 1), half_edge(0, 3), {0, 1});
  write(dir, "one_crossing.json", one);
  write(dir, "three_lines.json",
        straight_line_diagram({{{1, 0}, 0.0, 0.1}, {{0, 1}, 0.2, 0.0}, {{1, 1}, 0.0, 0.5}}));
  write(dir, "layered_weave.json", straight_line_diagram({{{1, 1}, 0.0, 0.1}, {{1, -1}, 0.3, 0.0}}));
  TorusDiagram loop;
  loop.add_loop({1, 0});
  write(dir, "loop_1_0.json", loop);
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
