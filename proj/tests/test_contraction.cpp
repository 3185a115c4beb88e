#include <map>
#include <set>
#include <string>
#include <vector>

#include "branetiles/contraction.hpp"
#include "branetiles/labeling.hpp"
#include "branetiles/rewrite.hpp"
#include "branetiles/tiling.hpp"
#include "doctest.h"
#include "example_tilings.hpp"

using namespace branetiles;

namespace {

std::map<std::string, std::string> label_map(const Tiling& t, const Labeling& lab) {
  std::map<std::string, std::string> m;
  for (size_t a = 0; a < t.arrows.size(); ++a)
    m[t.arrows[a].id] = monomial_to_string(lab.arrow_label[a], lab.vars);
  return m;
}

}  // namespace

TEST_CASE("contracting a single interior arrow merges its endpoints") {
  Tiling t = examples::parse(examples::kSample1a);
  ContractionMap cm = contract(t, t.contracted);
  CHECK(cm.contracted == std::vector<int>{5});
  CHECK(cm.vertex_class == std::vector<int>{0, 1, 1});  // d joins 2
  CHECK(cm.arrow_image[5] == -1);
  CHECK(print_tiling(cm.target) == std::string(R"(tiling sample1a-contracted
vertex 1 at 0 -1
vertex 2 at 0 0
arrow v 2 1 0 2
arrow r 2 1 -1 1
arrow g1 1 2 -1 -1
arrow g2 1 2 0 0
arrow h1 2 2 1 -1
arrow l 1 1 1 -1
face + v g1 h1
face - h1 r g2
face + r l g2
face - v l g1
)"));
  CHECK(validate_tiling(cm.target).ok);
}

TEST_CASE("contracting two arrows merges two vertex pairs") {
  Tiling t = examples::parse(examples::kSample2a);
  ContractionMap cm = contract(t, t.contracted);
  CHECK(cm.vertex_class == std::vector<int>{0, 1, 1, 0});  // d1 joins 2, d2 joins 1
  CHECK(print_tiling(cm.target) == std::string(R"(tiling sample2a-contracted
vertex 1 at 0 1
vertex 2 at 0 0
arrow l 1 2 -1 1
arrow r 1 2 1 1
arrow bd 2 1 0 -2
arrow au 2 1 0 0
face + bd r au l
face - r bd l au
)"));
  CHECK(validate_tiling(cm.target).ok);
}

TEST_CASE("contraction with an empty set is the identity") {
  Tiling t = examples::parse(examples::kConifold);
  ContractionMap cm = contract(t, {});
  CHECK(print_tiling(cm.target) ==
        std::string(examples::kConifold).replace(7, 8, "conifold-contracted"));
  CHECK(cm.vertex_class == std::vector<int>{0, 1});
}

TEST_CASE("psi drops contracted arrows and preserves cycle homology") {
  Tiling t = examples::parse(examples::kSample1a);
  ContractionMap cm = contract(t, t.contracted);
  // g2 then h2, a path from vertex 1 into the merged vertex
  PathWord p = examples::path(t, {"h2", "g2"});
  PathWord ip = psi_path(cm, p);
  CHECK(ip.arrows.size() == 1);
  CHECK(cm.target.arrows[static_cast<size_t>(ip.arrows[0])].id == "g2");
  CHECK(path_tail(cm.target, ip) == 0);
  CHECK(path_head(cm.target, ip) == 1);
  // unit cycles map to closed cycles with trivial homology
  for (int v = 0; v < 3; ++v) {
    PathWord u = unit_cycle_at(t, v);
    PathWord iu = psi_path(cm, u);
    CHECK(path_composable(cm.target, iu));
    CHECK(path_homology(cm.target, iu) == Vec2{0, 0});
    CHECK(path_tail(cm.target, iu) == cm.vertex_class[static_cast<size_t>(v)]);
  }
  // a fully contracted path becomes the empty path at the merged vertex
  PathWord h2only = examples::path(t, {"h2"});
  PathWord e = psi_path(cm, h2only);
  CHECK(e.arrows.empty());
  CHECK(e.base == 1);
}

TEST_CASE("contraction rejects directed cycles and inconsistent displacements") {
  Tiling c = examples::parse(examples::kConifold);
  CHECK_THROWS_WITH_AS(contract(c, {0, 2}),  // a1 and b1 form a directed cycle
                       "invalid contraction: collapses a directed cycle to a vertex", input_error);
  // two parallel contracted arrows with different displacements cannot be re-gauged
  Tiling p = parse_tiling(R"(tiling parallel
vertex 1 at 0 0
vertex 2 at 0 0
arrow p 1 2 0 0
arrow q 1 2 1 0
contract p q
)");
  CHECK_THROWS_WITH_AS(
      contract(p, p.contracted),
      "invalid contraction: re-gauge infeasible (contracted set carries a homologically "
      "nontrivial cycle)",
      input_error);
  // with equal displacements, the same pair contracts fine
  Tiling ok = parse_tiling(R"(tiling parallel
vertex 1 at 0 0
vertex 2 at 0 0
arrow p 1 2 0 0
arrow q 1 2 0 0
contract p q
)");
  ContractionMap cm = contract(ok, ok.contracted);
  CHECK(cm.target.vertex_ids == std::vector<std::string>{"1"});
  CHECK(cm.target.arrows.empty());
}

TEST_CASE("two-cycle removal unwinds the doubled faces of a contraction") {
  Tiling t = examples::parse(examples::kSample3a);
  ContractionMap cm = contract(t, t.contracted);
  CHECK(cm.target.vertex_ids == std::vector<std::string>{"1", "2"});
  CHECK(cm.target.arrows.size() == 8);
  CHECK(cm.target.faces.size() == 6);
  TwoCycleRemoval rm = remove_two_cycles(cm.target);
  CHECK(rm.removed_pairs == 2);
  CHECK(rm.checks_ok);
  CHECK(print_tiling(rm.result) == std::string(R"(tiling sample3a-contracted
vertex 1 at 0 1
vertex 2 at 0 0
arrow r 2 1 1 -1
arrow l 2 1 -1 -1
arrow u 1 2 0 2
arrow g 1 2 0 0
face - r g l u
face + r u l g
)"));
  CHECK(validate_tiling(rm.result).ok);
}

TEST_CASE("two-cycle removal merges the two outer faces of a single pair") {
  Tiling t = examples::parse(examples::kSample4a);
  ContractionMap cm = contract(t, t.contracted);
  TwoCycleRemoval rm = remove_two_cycles(cm.target);
  CHECK(rm.removed_pairs == 1);
  CHECK(rm.checks_ok);
  CHECK(rm.result.arrows.size() == 8);
  CHECK(rm.result.faces.size() == 4);
  CHECK(print_tiling(rm.result).find("face - a11 a6 a9 a10") != std::string::npos);
  CHECK(validate_tiling(rm.result).ok);
}

TEST_CASE("two-cycle removal requires each arrow to sit on a second face") {
  Tiling t = parse_tiling(R"(tiling bare
vertex 1
vertex 2
arrow a 1 2 0 0
arrow b 2 1 0 0
face + a b
)");
  CHECK_THROWS_WITH_AS(remove_two_cycles(t), "arrow 'a' lies on no second face", input_error);
  Tiling rep = parse_tiling(R"(tiling rep
vertex 1
arrow a 1 1 0 0
face + a a
)");
  CHECK_THROWS_WITH_AS(remove_two_cycles(rep),
                       "cannot remove a length-two face that repeats an arrow", input_error);
}

TEST_CASE("first adequacy condition: sufficient structural check") {
  Tiling conifold = examples::parse(examples::kConifold);
  CHECK(check_condition1_sufficient(conifold, {}) == Cond1::holds);
  Tiling s2 = examples::parse(examples::kSample2a);
  CHECK(check_condition1_sufficient(s2, s2.contracted) == Cond1::holds);
  // a loop anywhere makes the structural criterion inapplicable
  Tiling s1 = examples::parse(examples::kSample1a);
  CHECK(check_condition1_sufficient(s1, s1.contracted) == Cond1::not_applicable);
  // no loops, but neither endpoint of the contracted arrow is a simple through-vertex
  Tiling s4 = examples::parse(examples::kSample4a);
  CHECK(check_condition1_sufficient(s4, s4.contracted) == Cond1::not_applicable);
}

TEST_CASE("homology lattice of directed cycles") {
  auto lattice = [](const char* text) {
    auto l = homology_lattice(examples::parse(text));
    REQUIRE(l.has_value());
    return *l;
  };
  CHECK(lattice(examples::kConifold) == std::array<Vec2, 2>{Vec2{1, 0}, Vec2{0, 1}});
  CHECK(lattice(examples::kC3) == std::array<Vec2, 2>{Vec2{1, 0}, Vec2{0, 1}});
  // the even-checkerboard examples span the index-two sublattice
  CHECK(lattice(examples::kSample1a) == std::array<Vec2, 2>{Vec2{1, 1}, Vec2{0, 2}});
  CHECK(lattice(examples::kSample2a) == std::array<Vec2, 2>{Vec2{1, 1}, Vec2{0, 2}});
  CHECK(lattice(examples::kSample3a) == std::array<Vec2, 2>{Vec2{1, 1}, Vec2{0, 2}});
  // and the five-vertex example an index-four one
  CHECK(lattice(examples::kSample4a) == std::array<Vec2, 2>{Vec2{1, 1}, Vec2{0, 4}});
}

TEST_CASE("second adequacy condition verifies on the good contractions") {
  for (const char* text : {examples::kConifold, examples::kC3, examples::kSample1a,
                           examples::kSample2a, examples::kSample3a, examples::kSample4a}) {
    Tiling t = examples::parse(text);
    InducedLabeling ind = induced_labeling(t);
    Cond2Report rep = check_condition2(ind.cmap, ind.on_target, 16);
    CHECK(rep.verdict == Cond2::verified);
    CHECK(rep.len_bound == 16);
    REQUIRE(rep.vertex_witnesses.size() == ind.cmap.target.vertex_ids.size());
    for (const auto& dirs : rep.vertex_witnesses) CHECK_FALSE(dirs.empty());
  }
}

TEST_CASE("second adequacy condition fails with an explicit certificate") {
  Tiling t = examples::parse(examples::kSample3bad);
  InducedLabeling ind = induced_labeling(t);
  Cond2Report rep = check_condition2(ind.cmap, ind.on_target, 16);
  CHECK(rep.verdict == Cond2::failed);
  CHECK(rep.lattice == std::array<Vec2, 2>{Vec2{1, 1}, Vec2{0, 2}});
  REQUIRE(rep.failed_direction.has_value());
  CHECK(*rep.failed_direction == Vec2{0, -2});
  CHECK(rep.failed_stripped_image == "z");
  CHECK(rep.failed_search_len == 5);
}

TEST_CASE("pullback labels survivors and sends contracted arrows to the unit") {
  Tiling t = examples::parse(examples::kSample1a);
  InducedLabeling ind = induced_labeling(t);
  CHECK(label_map(t, ind.on_source) == std::map<std::string, std::string>{{"v", "x"},
                                                                          {"g2", "x"},
                                                                          {"r", "y"},
                                                                          {"g1", "y"},
                                                                          {"h1", "z"},
                                                                          {"l", "z"},
                                                                          {"h2", "1"}});
  CHECK(monomial_to_string(ind.on_source.sigma, ind.on_source.vars) == "x*y*z");
}

TEST_CASE("pushforward carries explicit labels to the target") {
  Tiling t = examples::parse(examples::kSample3bad);
  InducedLabeling ind = induced_labeling(t);
  CHECK(ind.on_source.vars == std::vector<std::string>{"x", "y", "z"});
  CHECK(label_map(ind.cmap.target, ind.on_target) ==
        std::map<std::string, std::string>{{"r", "x"},
                                           {"l", "y"},
                                           {"g", "z"},
                                           {"h1", "y"},
                                           {"h2", "x"},
                                           {"e1", "x*z"},
                                           {"e2", "y*z"}});
}

TEST_CASE("pushforward rejects a non-unit label on a contracted arrow") {
  Tiling t = examples::parse(examples::kSample3a);  // contracts b
  ContractionMap cm = contract(t, t.contracted);
  // hand-build labels with b mapped to a variable
  Labeling lab;
  lab.vars = {"w"};
  lab.arrow_label.assign(t.arrows.size(), Exps{1});
  lab.sigma = {3};
  CHECK_THROWS_WITH_AS(pushforward_labeling(cm, lab), "contracted arrow 'b' must be labeled 1",
                       input_error);
}
