#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmotif/lattice.hpp"
#include "pmotif/matrix.hpp"

namespace pmotif {

using Vec2 = std::array<Int, 2>;

// A link diagram on the flat torus, stored as a 4-valent combinatorial map.
//
// Half-edge h = 4*c + s sits at slot s of crossing c; slots run
// counter-clockwise, and a strand enters at s and leaves at s+2. Each
// half-edge is paired with its mate at the other end of its edge, and
// carries the displacement from its crossing's lift to the mate crossing's
// lift. over(c) is the parity of the slots of the upper strand.
// Crossing-free components live in `loops` (primitive or zero classes).
class TorusDiagram {
 public:
  TorusDiagram() = default;

  int crossing_count() const noexcept { return static_cast<int>(over_.size()); }
  int half_edge_count() const noexcept { return 4 * crossing_count(); }

  int mate(int h) const { return mate_.at(static_cast<size_t>(h)); }
  const Vec2& disp(int h) const { return disp_.at(static_cast<size_t>(h)); }
  int over(int c) const { return over_.at(static_cast<size_t>(c)); }
  const std::vector<Vec2>& loops() const noexcept { return loops_; }

  // Builders. Slots left unpaired are reported by validate().
  int add_crossing(int over_parity);
  void connect(int h_from, int h_to, Vec2 d);
  void add_loop(Vec2 v) { loops_.push_back(v); }
  void set_over(int c, int parity);

  friend bool operator==(const TorusDiagram&, const TorusDiagram&) = default;

 private:
  std::vector<int> mate_;
  std::vector<Vec2> disp_;
  std::vector<int> over_;
  std::vector<Vec2> loops_;
};

inline int crossing_of(int h) { return h / 4; }
inline int slot_of(int h) { return h % 4; }
inline int half_edge(int c, int s) { return 4 * c + ((s % 4) + 4) % 4; }

// Diagram of closed straight lines on the unit torus. Lines of direction
// (p,q) (primitive) pass through (x0,y0); offsets must avoid triple points.
// `over(a, b, k)` decides whether line a passes over line b at their k-th
// crossing counted along a; by default the lower index is on top. A set of
// pairwise parallel lines becomes free loops.
struct StraightLine {
  Vec2 direction{1, 0};
  double x0 = 0.0;
  double y0 = 0.0;
};
using OverRule = std::function<bool(int line_a, int line_b, int k)>;
TorusDiagram straight_line_diagram(const std::vector<StraightLine>& lines, const OverRule& over = {});

/// Empty vector when the diagram is valid; otherwise one message per problem.
std::vector<std::string> validate(const TorusDiagram& d);
bool is_valid(const TorusDiagram& d);
/// Throws Error{InvalidDiagram} listing the violations.
void require_valid(const TorusDiagram& d);

/// Faces as cycles of half-edges, each with its face on the left.
std::vector<std::vector<int>> faces(const TorusDiagram& d);

struct Component {
  std::vector<int> half_edges;  // outgoing half-edges along the strand, empty for free loops
  Vec2 homology{0, 0};          // raw, in traversal direction
};
std::vector<Component> trace_components(const TorusDiagram& d);

int components(const TorusDiagram& d);
/// Sign-normalized component classes, sorted.
std::vector<Vec2> homology_multiset(const TorusDiagram& d);

/// Signed crossing counts between components, each component oriented so its
/// class is sign-normalized (null-homologous components keep traversal order).
/// Diagonal entries are zero.
std::vector<std::vector<Int>> linking_matrix(const TorusDiagram& d);

/// +1 or -1 with the usual right-hand convention.
int crossing_sign(const TorusDiagram& d, int c, const std::vector<int>& strand_direction);

TorusDiagram translate(const TorusDiagram& d, Vec2 shift);
TorusDiagram dehn_twist_diagram(const TorusDiagram& d, const Matrix& twist);
TorusDiagram lift_diagram(const TorusDiagram& d, const Lattice& cover);

// Reidemeister moves. Half-edge arguments refer to the diagram the move is
// applied to.
enum class MoveKind { R1Insert, R1Delete, R2Insert, R2Delete, R3 };
std::string to_string(MoveKind kind);

struct Move {
  MoveKind kind = MoveKind::R1Insert;
  int a = 0;        // primary half-edge
  int b = -1;       // second half-edge (R2 insert only)
  int variant = 0;  // R1 insert: bit0 side, bit1 over; R2 insert: which strand is over
  friend bool operator==(const Move&, const Move&) = default;
};
std::string format_move(const Move& m);

/// Throws Error{InvalidMove} when the move does not apply or would leave the
/// diagram outside the valid (cellular) class.
TorusDiagram apply_move(const TorusDiagram& d, const Move& m);

struct MoveResult {
  Move move;
  TorusDiagram diagram;
};
std::vector<MoveResult> enumerate_moves(const TorusDiagram& d, int max_crossings);

/// Exact canonical code, invariant under crossing relabeling, slot rotation
/// and the choice of crossing lifts.
std::vector<Int> canonical_code(const TorusDiagram& d);
std::uint64_t canonical_hash(const TorusDiagram& d);
std::string format_hash(std::uint64_t h);

/// Code that is additionally invariant under SL(2,Z). `to_normal` receives a
/// matrix taking `d` into the frame the code was computed in.
std::vector<Int> twist_canonical_code(const TorusDiagram& d, Matrix* to_normal = nullptr);

enum class SearchVerdict { Yes, No, Unknown };
std::string to_string(SearchVerdict v);

struct SearchBudget {
  int extra_crossings = 4;  // maxCrossings = max input crossings + extra
  int max_crossings = -1;   // explicit override when >= 0
  int max_depth = 12;
  std::size_t max_states = 200000;
};

struct EquivalenceCertificate {
  std::vector<Move> moves0;  // applied to the first diagram
  std::vector<Move> moves1;  // applied to the second diagram
  Matrix twist = Matrix::identity(2);  // applied to the first diagram after its moves
};

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::Unknown;
  std::optional<EquivalenceCertificate> certificate;
  std::string invariant;  // names the separating invariant on No
  std::string detail;     // values on No, budget summary on Unknown
  std::size_t states = 0;
};

SearchResult equivalence_search(const TorusDiagram& d0, const TorusDiagram& d1,
                                bool allow_twists, const SearchBudget& budget = {});

/// Replays a Yes certificate and checks that both ends meet.
bool replay(const TorusDiagram& d0, const TorusDiagram& d1, const EquivalenceCertificate& cert);

/// Invariant-only comparison; returns the name and values of the first
/// differing invariant, or nullopt.
struct InvariantGap {
  std::string name;
  std::string detail;
};
std::optional<InvariantGap> separating_invariant(const TorusDiagram& d0, const TorusDiagram& d1,
                                                 bool allow_twists);

std::string diagram_to_json(const TorusDiagram& d, int indent = -1);
TorusDiagram diagram_from_json(std::string_view text);
TorusDiagram read_diagram_file(const std::string& path);
std::string diagram_to_dot(const TorusDiagram& d);

}  // namespace pmotif
