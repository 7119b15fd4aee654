#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pmotif/descriptor.hpp"
#include "pmotif/error.hpp"

using namespace pmotif;

namespace {

MotifDescriptor D(std::string_view s) { return parse_descriptor(s); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

std::vector<Lattice> lattices_up_to(int dim, Int n) {
  std::vector<Lattice> out;
  for (Int i = 1; i <= n; ++i)
    for (auto& l : enumerate_sublattices(dim, i)) out.push_back(l);
  return out;
}

double total_volume(const MotifDescriptor& d) {
  double v = 0;
  for (const auto& p : d.body)
    if (p.volume()) v += *p.volume();
  return v;
}

// Small random descriptors over a fixed vocabulary, so that equal and
// rotated copies occur often.
struct DescriptorGen {
  std::mt19937 rng;
  explicit DescriptorGen(unsigned seed) : rng(seed) {}

  Int pick(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

  Piece layer_piece() {
    switch (pick(0, 3)) {
      case 0: return Piece::elementary(canonicalize(Family::T2, {pick(0, 2), pick(1, 2)}));
      case 1: return Piece::hyperbolic(pick(0, 1) ? "W" : "B", pick(0, 1) ? std::optional<double>(3.66) : std::nullopt);
      case 2: return Piece::seifert_piece(parse_seifert(pick(0, 1) ? "M(0,3;)" : "M(0,2;1/2)"));
      default: return Piece::satellite(canonicalize(Family::T2, {pick(1, 2), 0}), canonicalize(Family::T1, {1, pick(1, 3)}));
    }
  }

  MotifDescriptor operator()() {
    MotifDescriptor d;
    switch (pick(0, 2)) {
      case 0:
        d.ambient = Ambient::SolidTorus;
        if (pick(0, 1)) d.body.push_back(Piece::elementary(canonicalize(Family::T0, {pick(2, 3), 1})));
        else d.body.push_back(Piece::hyperbolic("K", 2.5));
        break;
      case 1:
        d.ambient = Ambient::ThickenedTorus;
        for (Int i = pick(1, 3); i > 0; --i) d.body.push_back(layer_piece());
        break;
      default:
        d.ambient = Ambient::ThreeTorus;
        for (Int i = pick(2, 3); i > 0; --i) d.body.push_back(layer_piece());
        break;
    }
    for (Int i = pick(0, 2); i > 0; --i) d.local_links.push_back(pick(0, 1) ? "trefoil" : "fig8");
    d.knotted_hole_balls = pick(0, 1);
    return d;
  }

  // An equivalent copy: local links shuffled, 3-torus body rotated.
  MotifDescriptor variant(MotifDescriptor d) {
    std::shuffle(d.local_links.begin(), d.local_links.end(), rng);
    if (d.ambient == Ambient::ThreeTorus && !d.body.empty())
      std::rotate(d.body.begin(), d.body.begin() + pick(0, static_cast<Int>(d.body.size()) - 1), d.body.end());
    return d;
  }
};

}  // namespace

TEST_CASE("seifert normal forms") {
  CHECK(format_seifert(parse_seifert("M(0,1;1/2,1/3)")) == "M(0,1;1/2,1/3)");
  CHECK(format_seifert(parse_seifert("M(0,2;3/1)")) == "M(0,2;)");
  SeifertSymbol shifted = parse_seifert("M(0,1;7/2)");
  CHECK(format_seifert(shifted) == "M(0,1;1/2)");
  CHECK(shifted.shifted);
  CHECK(format_seifert(parse_seifert("M(0,1;1/3,-1/2)")) == "M(0,1;1/2,1/3)");
  CHECK(parse_seifert("M(0,1;1/2,1/2)").exceptional == SeifertExceptional::TwistedIBundle);
  CHECK(parse_seifert("M(-1,1;)").exceptional == SeifertExceptional::TwistedIBundle);
  CHECK(parse_seifert("M(0,2;)").exceptional == SeifertExceptional::ThickenedTorus);
  CHECK(parse_seifert("M(0,1;2/5)").exceptional == SeifertExceptional::SolidTorus);
  CHECK(parse_seifert("M(0,3;)").exceptional == SeifertExceptional::None);
  CHECK(kind_of([] { parse_seifert("M(0,1;1/0)"); }) == ErrorKind::InvalidParams);
}

TEST_CASE("jsj admissibility") {
  Admissibility trefoil = is_jsj_admissible(parse_seifert("M(0,1;1/2,1/3)"), Ambient::SolidTorus);
  CHECK(trefoil.admissible);
  CHECK_FALSE(trefoil.exception);
  CHECK_FALSE(is_jsj_admissible(parse_seifert("M(0,2;)"), Ambient::ThickenedTorus).admissible);
  Admissibility st = is_jsj_admissible(parse_seifert("M(0,2;)"), Ambient::SolidTorus);
  CHECK(st.admissible);
  CHECK(st.exception);
  CHECK(is_jsj_admissible(parse_seifert("M(1,1;)"), Ambient::ThreeTorus).admissible);
  CHECK_FALSE(is_jsj_admissible(parse_seifert("M(1,1;)"), Ambient::ThickenedTorus).admissible);
  CHECK_FALSE(is_jsj_admissible(parse_seifert("M(0,1;1/2)"), Ambient::SolidTorus).admissible);
  CHECK(is_jsj_admissible(parse_seifert("M(0,2;1/2)"), Ambient::ThickenedTorus).admissible);
  CHECK(is_jsj_admissible(parse_seifert("M(0,3;)"), Ambient::ThickenedTorus).admissible);
  // 1/5 and 2/5 share a denominator, so no representative pair is unimodular.
  CHECK_FALSE(is_jsj_admissible(parse_seifert("M(0,1;1/5,2/5)"), Ambient::ThreeTorus).admissible);
}

TEST_CASE("property: seifert normalization is idempotent and shift invariant") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<Int> a(-20, 20), b(1, 9), k(0, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    SeifertSymbol s;
    s.genus = k(rng) - 1;
    s.boundary = k(rng);
    for (Int i = k(rng); i > 0; --i) s.slopes.push_back({a(rng), b(rng) * (k(rng) == 0 ? -1 : 1)});
    SeifertSymbol n = normalize_seifert(s);
    REQUIRE(normalize_seifert(n) == n);
    REQUIRE(parse_seifert(format_seifert(n)) == n);
    for (const Slope& sl : n.slopes) REQUIRE((0 < sl.alpha && sl.alpha < sl.beta));
    SeifertSymbol moved = s;
    for (Slope& sl : moved.slopes) sl.alpha += 3 * sl.beta;
    REQUIRE(normalize_seifert(moved) == n);
  }
}

TEST_CASE("descriptor parsing and printing") {
  std::string text = "split{ body: layered[T2(1,0), hyp(W, vol=3.6639)], local: [trefoil, trefoil], khb: 0 }";
  MotifDescriptor d = D(text);
  CHECK(d.ambient == Ambient::ThickenedTorus);
  CHECK(d.body.size() == 2);
  CHECK(format_descriptor(d) == text);
  CHECK(format_descriptor(D("T2(3,5)")) == "T2(3,5)");
  std::string t3 = "split{ ambient: ThreeTorus, body: layered[T2(1,0), sfs(M(0,1;1/2,1/3), cover=[[2,0],[1,1]])], "
                   "local: [], khb: 2 }";
  CHECK(format_descriptor(D(t3)) == t3);
  CHECK(format_descriptor(D("split{ ambient: SolidTorus, body: empty, local: [a], khb: 0 }")) ==
        "split{ ambient: SolidTorus, body: empty, local: [a], khb: 0 }");
  CHECK(kind_of([] { D("split{ body: layered[T0(2,1), T0(3,1)] }"); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { D("split{ body: layered[T2(1,0), T0(3,1)] }"); }) == ErrorKind::AmbientMismatch);
  CHECK(kind_of([] { D("split{ body: layered[hyp(W, vol=-1)] }"); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { D("split{ body: layered[hyp(W, vol=2)"); }) == ErrorKind::Parse);
}

TEST_CASE("descriptor equivalence examples") {
  MotifDescriptor abc = D("split{ ambient: ThreeTorus, body: layered[hyp(A), hyp(B), hyp(C)], local: [], khb: 0 }");
  MotifDescriptor bca = D("split{ ambient: ThreeTorus, body: layered[hyp(B), hyp(C), hyp(A)], local: [], khb: 0 }");
  MotifDescriptor acb = D("split{ ambient: ThreeTorus, body: layered[hyp(A), hyp(C), hyp(B)], local: [], khb: 0 }");
  CHECK(descriptor_equivalent(abc, bca));
  CHECK_FALSE(descriptor_equivalent(abc, acb));
  CHECK_FALSE(descriptor_equivalent(D("split{ body: layered[hyp(A), hyp(B)] }"), D("split{ body: layered[hyp(B), hyp(A)] }")));
  CHECK(descriptor_equivalent(D("split{ body: layered[T2(1,0)], local: [k, t] }"),
                              D("split{ body: layered[T2(-1,0)], local: [t, k] }")));
  CHECK(kind_of([&] { descriptor_equivalent(abc, D("T2(1,0)")); }) == ErrorKind::AmbientMismatch);
}

TEST_CASE("degree bounds") {
  DegreeBound vol = cover_degree_bound(D("split{ body: layered[hyp(W, vol=7.327)] }"));
  CHECK(vol.kind == DegreeBound::Kind::Finite);
  CHECK(vol.value == 3);
  CHECK(7.327 == doctest::Approx(2 * kOctahedronVolume).epsilon(1e-3));
  CHECK(kMinCuspedVolume == doctest::Approx(2.0299).epsilon(1e-4));
  CHECK(cover_degree_bound(D("split{ body: empty, local: [trefoil, trefoil] }")).value == 2);
  DegreeBound layered = cover_degree_bound(D("split{ body: layered[T2(1,0), T2(0,1)] }"));
  CHECK(layered.kind == DegreeBound::Kind::Finite);
  CHECK(layered.value == 1);
  CHECK(cover_degree_bound(D("T2(3,5)")).kind == DegreeBound::Kind::Unbounded);
  CHECK(cover_degree_bound(D("split{ body: layered[hyp(W)] }")).kind == DegreeBound::Kind::Unknown);
  CHECK(cover_degree_bound(D("split{ body: layered[sat(T2(2,0), T1(1,3))] }")).value == 6);
  CHECK(cover_degree_bound(D("split{ body: layered[hyp(W, vol=2.02)] }")).value == 1);
  CHECK(cover_degree_bound(D("split{ body: layered[T2(2,0)], khb: 4 }")).value == 4);
}

TEST_CASE("lift and minimal examples") {
  MotifDescriptor split = D("split{ body: layered[T2(1,0)], local: [a, b] }");
  CHECK(descriptor_equivalent(lift_descriptor(split, Lattice(2)), split));
  MotifDescriptor lifted = lift_descriptor(split, hnf(Matrix::diagonal({3, 1})));
  CHECK(lifted.local_links.size() == 6);
  MotifDescriptor hyp = D("split{ body: layered[hyp(W, vol=2.03)] }");
  CHECK(*lift_descriptor(hyp, hnf(Matrix::diagonal({2, 1}))).body[0].volume() == doctest::Approx(4.06));
  MotifDescriptor t3 = D("split{ ambient: ThreeTorus, body: layered[T2(1,0), hyp(W)], local: [], khb: 0 }");
  MotifDescriptor t3l = lift_descriptor(t3, hnf(Matrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 3}}));
  CHECK(t3l.body.size() == 4);
  CHECK(*t3l.body[0].link == parse_elementary("T2(3,0)"));

  DescriptorMotif bare = minimal_motif_descriptor(D("T2(6,4)"));
  CHECK(bare.status == DescriptorMotif::Status::Exact);
  CHECK(format_descriptor(*bare.motif) == "T2(1,0)");
  CHECK(minimal_motif_descriptor(D("split{ body: layered[T2(1,0)], local: [trefoil] }")).status ==
        DescriptorMotif::Status::NotUnique);
  DescriptorMotif bound = minimal_motif_descriptor(D("split{ body: layered[hyp(W, vol=7.327)] }"));
  CHECK(bound.status == DescriptorMotif::Status::BoundOnly);
  CHECK(bound.bound == 3);
}

TEST_CASE("property: descriptor equivalence is an equivalence relation") {
  DescriptorGen gen(21);
  int triples = 0, positive = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    MotifDescriptor a = gen();
    MotifDescriptor b = gen.pick(0, 1) ? gen.variant(a) : gen();
    MotifDescriptor c = gen.pick(0, 1) ? gen.variant(b) : gen();
    REQUIRE(descriptor_equivalent(a, a));
    if (a.ambient != b.ambient || b.ambient != c.ambient) continue;
    bool ab = descriptor_equivalent(a, b), bc = descriptor_equivalent(b, c);
    REQUIRE(ab == descriptor_equivalent(b, a));
    if (ab && bc) {
      REQUIRE(descriptor_equivalent(a, c));
      ++positive;
    }
    ++triples;
  }
  CHECK(triples >= 1000);
  CHECK(positive > 100);
}

TEST_CASE("property: lifts compose, keep equivalence, and scale bounds") {
  DescriptorGen gen(5);
  for (int trial = 0; trial < 150; ++trial) {
    MotifDescriptor d = gen();
    MotifDescriptor v = gen.variant(d);
    const int dim = cover_dim(d.ambient);
    auto lattices = lattices_up_to(dim, dim == 3 ? 2 : 4);
    DegreeBound base = cover_degree_bound(d);
    for (const auto& l1 : lattices) {
      MotifDescriptor up = lift_descriptor(d, l1);
      REQUIRE(descriptor_equivalent(up, lift_descriptor(v, l1)));
      REQUIRE(parse_descriptor(format_descriptor(up)).body.size() == up.body.size());
      DegreeBound lifted = cover_degree_bound(up);
      if (base.kind == DegreeBound::Kind::Finite && lifted.kind == DegreeBound::Kind::Finite) {
        // The volume rule floors vol / 2v_tet, and floor is only
        // subadditive, so compare against the unfloored real bound.
        double real_bound = 1e300;
        for (const auto& [rule, value] : base.rules)
          real_bound = std::min(real_bound, rule == "volume" ? std::max(1.0, total_volume(d) / kMinCuspedVolume)
                                                             : static_cast<double>(value));
        REQUIRE_MESSAGE(lifted.value <= static_cast<Int>(index(l1) * real_bound + 1e-9),
                        format_descriptor(d) << " under " << format_lattice(l1));
      }
      for (const auto& l2 : lattices) {
        if (!contains(l1, l2) || index(l2) > 4) continue;
        MotifDescriptor twice = lift_descriptor(up, relative_basis(l1, l2));
        REQUIRE(descriptor_equivalent(twice, lift_descriptor(d, l2)));
      }
    }
  }
}

TEST_CASE("property: printed descriptors re-parse to equal values") {
  DescriptorGen gen(9);
  for (int trial = 0; trial < 500; ++trial) {
    MotifDescriptor d = gen();
    std::string text = format_descriptor(d);
    MotifDescriptor back = parse_descriptor(text);
    REQUIRE(descriptor_equivalent(back, d));
    REQUIRE(format_descriptor(back) == text);
  }
}
