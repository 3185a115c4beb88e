#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "branetiles/tiling.hpp"
#include "doctest.h"
#include "example_tilings.hpp"

using namespace branetiles;

namespace {

std::set<std::string> violated(const Tiling& t) {
  std::set<std::string> names;
  for (const auto& v : validate_tiling(t).violations) names.insert(v.invariant);
  return names;
}

}  // namespace

TEST_CASE("parse reads vertices, arrows, faces, offsets, labels") {
  Tiling t = examples::parse(examples::kConifold);
  CHECK(t.name == "conifold");
  CHECK(t.vertex_ids == std::vector<std::string>{"1", "2"});
  CHECK_FALSE(t.grid.has_value());
  REQUIRE(t.arrows.size() == 4);
  CHECK(t.arrows[0].id == "a1");
  CHECK(t.arrows[0].tail == 0);
  CHECK(t.arrows[0].head == 1);
  CHECK(t.arrows[1].off == Vec2{1, 1});
  CHECK(t.arrows[2].off == Vec2{0, -1});
  REQUIRE(t.faces.size() == 2);
  CHECK(t.faces[0].sign == +1);
  CHECK(t.faces[1].sign == -1);
  CHECK(t.faces[0].boundary == std::vector<int>{0, 2, 1, 3});
  CHECK(t.contracted.empty());
  CHECK(t.has_labels());
  CHECK(t.arrow_index("b2") == 3);
  CHECK(t.arrow_index("zz") == -1);

  Tiling s = examples::parse(examples::kSample1a);
  REQUIRE(s.grid.has_value());
  CHECK((*s.grid)[0] == Vec2{0, -1});
  CHECK(s.contracted == std::vector<int>{5});  // h2
}

TEST_CASE("print is canonical and parse inverts it") {
  Tiling t = examples::parse(examples::kConifold);
  CHECK(print_tiling(t) == std::string(examples::kConifold));
  for (const char* text : examples::all()) {
    std::string printed = print_tiling(examples::parse(text));
    CHECK(print_tiling(parse_tiling(printed)) == printed);
  }
}

TEST_CASE("parse rejects malformed input with line and column") {
  auto expect_error = [](const std::string& text, const std::string& fragment, int line) {
    try {
      parse_tiling(text);
      FAIL_CHECK("expected input_error for: " << fragment);
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      CHECK(e.line == line);
    }
  };
  expect_error("vertex 1\n", "missing tiling line", 0);
  expect_error("tiling t\ntiling t\n", "duplicate tiling line", 2);
  expect_error("tiling t\nvertex 1\nvertex 1\n", "duplicate vertex id '1'", 3);
  expect_error("tiling t\nvertex 1\narrow a 1 1 0 0\narrow a 1 1 0 0\n", "duplicate arrow id 'a'",
               4);
  expect_error("tiling t\nvertex 1\narrow a 1 2 0 0\n", "unknown vertex '2'", 3);
  expect_error("tiling t\nvertex 1\narrow a 1 1 0 q\n", "expected integer, got 'q'", 3);
  expect_error("tiling t\nvertex 1\narrow a 1 1 0 0\nface * a\n", "face sign must be", 4);
  expect_error("tiling t\nvertex 1\narrow a 1 1 0 0\nface + b\n", "unknown arrow 'b'", 4);
  expect_error("tiling t\nvertex 1\narrow a 1 1 0 0\ncontract\n", "contract takes", 4);
  expect_error("tiling t\nvertex 1 at 0 0\nvertex 2\narrow a 1 2 0 0\n",
               "grid coordinates must be given for all vertices or none", 0);
  expect_error("tiling t\nvertex 1\narrow a 1 1 0 0 label x\narrow b 1 1 0 0\n",
               "labels must be given for all arrows or none", 0);
}

TEST_CASE("validation accepts all bundled examples") {
  for (const char* text : examples::all()) {
    Tiling t = examples::parse(text);
    ValidationReport rep = validate_tiling(t);
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("validation names each violated invariant") {
  // Dropping one face breaks the face count and leaves arrows covered once.
  {
    Tiling t = examples::parse(examples::kConifold);
    t.faces.pop_back();
    auto viols = violated(t);
    CHECK(viols.count("euler-count"));
    CHECK(viols.count("face-cover"));
  }
  // Flipping a face sign leaves counts intact but breaks the sign cover.
  {
    Tiling t = examples::parse(examples::kConifold);
    t.faces[1].sign = +1;
    auto viols = violated(t);
    CHECK(viols.count("face-cover"));
    CHECK_FALSE(viols.count("euler-count"));
  }
  // A non-composable boundary breaks geometric closure.
  {
    Tiling t = examples::parse(examples::kConifold);
    t.faces[0].boundary = {0, 1, 2, 3};  // a1 then a2: both leave vertex 1
    CHECK(violated(t).count("face-closure"));
  }
  // A wrong offset breaks the zero-sum condition on both incident faces.
  {
    Tiling t = examples::parse(examples::kConifold);
    t.arrows[2].off = {0, 0};  // b1 was (0,-1)
    CHECK(violated(t).count("offset-sum"));
  }
}

TEST_CASE("path composition, endpoints, homology") {
  Tiling t = examples::parse(examples::kConifold);
  PathWord p = examples::path(t, {"b1", "a1"});  // a1 then b1
  CHECK(path_composable(t, p));
  CHECK(path_tail(t, p) == 0);
  CHECK(path_head(t, p) == 0);
  CHECK(path_homology(t, p) == Vec2{0, -1});

  PathWord f = examples::path(t, {"b2", "a2", "b1", "a1"});  // the positive face
  CHECK(path_homology(t, f) == Vec2{0, 0});
  CHECK(path_tail(t, f) == 0);
  CHECK(path_head(t, f) == 0);

  // homology additivity on a concrete pair
  PathWord q = examples::path(t, {"b2", "a2"});
  Vec2 sum = add(path_homology(t, p), path_homology(t, q));
  PathWord pq = p;
  pq.arrows.insert(pq.arrows.end(), q.arrows.begin(), q.arrows.end());
  CHECK(path_homology(t, pq) == sum);
}

TEST_CASE("empty paths carry a base vertex") {
  Tiling t = examples::parse(examples::kConifold);
  PathWord e;
  e.base = 1;
  CHECK(path_composable(t, e));
  CHECK(path_tail(t, e) == 1);
  CHECK(path_head(t, e) == 1);
  CHECK(path_homology(t, e) == Vec2{0, 0});
  CHECK(path_to_string(t, e) == "e_2");  // vertex id, not index
}

TEST_CASE("path strings use product order") {
  Tiling t = examples::parse(examples::kConifold);
  PathWord p;
  p.arrows = {0, 2, 1};  // a1 then b1 then a2, diagrammatically
  p.base = -1;
  CHECK(path_to_string(t, p) == "a2 b1 a1");
  PathWord back = path_from_product_tokens(t, {"a2", "b1", "a1"});
  CHECK(back.arrows == p.arrows);
}

TEST_CASE("path_from_product_tokens validates arrows and composability") {
  Tiling t = examples::parse(examples::kConifold);
  CHECK_THROWS_WITH_AS(path_from_product_tokens(t, {"zz"}), "unknown arrow 'zz'", input_error);
  CHECK_THROWS_WITH_AS(path_from_product_tokens(t, {"a2", "a1"}),
                       "path does not compose (product order expected)", input_error);
  CHECK_THROWS_AS(path_from_product_tokens(t, {}), input_error);
}

TEST_CASE("unit cycles start at their vertex and close up") {
  for (const char* text : examples::all()) {
    Tiling t = examples::parse(text);
    for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v) {
      PathWord u = unit_cycle_at(t, v);
      CHECK(path_composable(t, u));
      CHECK(path_tail(t, u) == v);
      CHECK(path_head(t, u) == v);
      CHECK(path_homology(t, u) == Vec2{0, 0});
      CHECK_FALSE(u.arrows.empty());
    }
  }
}

TEST_CASE("unit cycle picks the lexicographically least rotation") {
  Tiling t = examples::parse(examples::kConifold);
  PathWord u1 = unit_cycle_at(t, 0);
  CHECK(u1.arrows == std::vector<int>{0, 2, 1, 3});  // a1 b1 a2 b2 diagrammatically
  PathWord u2 = unit_cycle_at(t, 1);
  CHECK(u2.arrows == std::vector<int>{2, 0, 3, 1});  // b1 a1 b2 a2, from the negative face
}
