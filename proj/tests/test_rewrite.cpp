#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "branetiles/labeling.hpp"
#include "branetiles/contraction.hpp"
#include "branetiles/rewrite.hpp"
#include "branetiles/tiling.hpp"
#include "doctest.h"
#include "example_tilings.hpp"

using namespace branetiles;

TEST_CASE("one relation per arrow, ordered by arrow id, endpoint-consistent") {
  for (const char* text : examples::all()) {
    Tiling t = examples::parse(text);
    auto rels = superpotential_relations(t);
    REQUIRE(rels.size() == t.arrows.size());
    for (size_t i = 0; i < rels.size(); ++i) {
      const Relation& r = rels[i];
      // ordered by arrow id
      if (i + 1 < rels.size())
        CHECK(t.arrows[static_cast<size_t>(r.witness)].id <
              t.arrows[static_cast<size_t>(rels[i + 1].witness)].id);
      // both sides run from the witness's head back to its tail
      const Arrow& a = t.arrows[static_cast<size_t>(r.witness)];
      for (const PathWord* side : {&r.left, &r.right}) {
        CHECK(path_composable(t, *side));
        CHECK(path_tail(t, *side) == a.head);
        CHECK(path_head(t, *side) == a.tail);
        // closing up with the witness gives a homologically trivial cycle
        CHECK(add(path_homology(t, *side), a.off) == Vec2{0, 0});
      }
      CHECK(r.left.arrows != r.right.arrows);
    }
  }
}

TEST_CASE("conifold and three-loop relations are the rotated face complements") {
  Tiling c = examples::parse(examples::kConifold);
  auto rels = superpotential_relations(c);
  auto sides = [&](const char* witness) {
    for (const Relation& r : rels)
      if (c.arrows[static_cast<size_t>(r.witness)].id == witness)
        return std::set<std::string>{path_to_string(c, r.left), path_to_string(c, r.right)};
    return std::set<std::string>{};
  };
  CHECK(sides("a1") == std::set<std::string>{"b2 a2 b1", "b1 a2 b2"});
  CHECK(sides("b1") == std::set<std::string>{"a1 b2 a2", "a2 b2 a1"});

  Tiling k = examples::parse(examples::kC3);
  auto krels = superpotential_relations(k);
  std::set<std::string> xs{path_to_string(k, krels[0].left), path_to_string(k, krels[0].right)};
  CHECK(xs == std::set<std::string>{"z y", "y z"});  // loops commute past x
}

TEST_CASE("paths_equivalent decides the conifold witness pair") {
  Tiling t = examples::parse(examples::kConifold);
  auto rels = superpotential_relations(t);
  PathWord p = examples::path(t, {"b2", "a2", "b1"});
  PathWord q = examples::path(t, {"b1", "a2", "b2"});
  CHECK(paths_equivalent(t, rels, p, q, 1'000'000) == Equiv::equivalent);
  // single arrows with different offsets are distinct
  CHECK(paths_equivalent(t, rels, examples::path(t, {"a1"}), examples::path(t, {"a2"}),
                         1'000'000) == Equiv::inequivalent);
  // an empty path never equals a nonempty cycle
  PathWord e;
  e.base = 0;
  PathWord u = unit_cycle_at(t, 0);
  CHECK(paths_equivalent(t, rels, e, u, 1'000'000) == Equiv::inequivalent);
  CHECK(paths_equivalent(t, rels, e, e, 1'000'000) == Equiv::equivalent);
}

TEST_CASE("loops in the three-loop tiling commute") {
  Tiling t = examples::parse(examples::kC3);
  auto rels = superpotential_relations(t);
  CHECK(paths_equivalent(t, rels, examples::path(t, {"x", "y"}), examples::path(t, {"y", "x"}),
                         1'000'000) == Equiv::equivalent);
  CHECK(paths_equivalent(t, rels, examples::path(t, {"x", "y", "z"}),
                         examples::path(t, {"z", "y", "x"}), 1'000'000) == Equiv::equivalent);
  CHECK(paths_equivalent(t, rels, examples::path(t, {"x", "x"}), examples::path(t, {"x", "y"}),
                         1'000'000) == Equiv::inequivalent);
}

TEST_CASE("budget exhaustion is a distinct verdict") {
  Tiling t = examples::parse(examples::kC3);
  auto rels = superpotential_relations(t);
  PathWord p = examples::path(t, {"x", "y", "z"});
  PathWord q = examples::path(t, {"z", "y", "x"});
  CHECK(paths_equivalent(t, rels, p, q, 1) == Equiv::budget_exceeded);
}

TEST_CASE("equivalence_class enumerates the full class") {
  Tiling t = examples::parse(examples::kConifold);
  auto rels = superpotential_relations(t);
  PathWord u;
  u.arrows = {0, 2, 1, 3};  // a1 b1 a2 b2 diagrammatically
  EquivClass cls = equivalence_class(t, rels, u, 1'000'000);
  CHECK(cls.exhausted);
  std::vector<std::vector<int>> expect = {{0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}};
  CHECK(cls.words == expect);
}

TEST_CASE("rewrite_neighbors applies one relation at one position") {
  Tiling t = examples::parse(examples::kConifold);
  auto rels = superpotential_relations(t);
  auto ns = rewrite_neighbors({0, 2, 1, 3}, rels);
  std::set<std::vector<int>> got(ns.begin(), ns.end());
  CHECK(got == std::set<std::vector<int>>{{0, 3, 1, 2}, {1, 2, 0, 3}});
}

TEST_CASE("cancellativity search clears the cancellative examples") {
  for (const char* text : {examples::kConifold, examples::kC3}) {
    Tiling t = examples::parse(text);
    auto rels = superpotential_relations(t);
    CancelResult res = cancellativity_search(t, rels, 6, 1'000'000);
    CHECK_FALSE(res.counterexample.has_value());
    CHECK(res.indeterminate_pairs == 0);
    CHECK(res.max_len == 6);
  }
}

TEST_CASE("cancellativity counterexamples are found and deterministic") {
  struct Expect {
    const char* text;
    const char* p;
    const char* q;
    const char* arrow;
  };
  // All four witnesses cancel on the right.
  const Expect cases[] = {
      {examples::kSample1a, "g1 l l v", "g2 l l r", "h2"},
      {examples::kSample2a, "l bd ad r", "r bd ad l", "bu"},
      {examples::kSample3a, "e1 e2", "e2 e1", "u"},
      {examples::kSample4a, "a8 a5 a1 a7", "a2 a1 a5 a1 a5 a4", "a3"},
  };
  for (const Expect& c : cases) {
    CAPTURE(c.arrow);
    Tiling t = examples::parse(c.text);
    auto rels = superpotential_relations(t);
    Labeling lab = induced_labeling(t).on_source;
    CancelResult res = cancellativity_search(t, rels, 10, 1'000'000, &lab);
    REQUIRE(res.counterexample.has_value());
    const Counterexample& ce = *res.counterexample;
    CHECK(path_to_string(t, ce.p) == c.p);
    CHECK(path_to_string(t, ce.q) == c.q);
    CHECK(t.arrows[static_cast<size_t>(ce.arrow)].id == c.arrow);
    CHECK(ce.side == 'r');
    // the pair itself is inequivalent, but extending by the arrow closes the gap;
    // right cancellation means the arrow acts first, i.e. it is prepended in
    // diagrammatic order
    CHECK(paths_equivalent(t, rels, ce.p, ce.q, 1'000'000) == Equiv::inequivalent);
    PathWord pa = ce.p, qa = ce.q;
    pa.arrows.insert(pa.arrows.begin(), ce.arrow);
    qa.arrows.insert(qa.arrows.begin(), ce.arrow);
    pa.base = qa.base = -1;
    CHECK(paths_equivalent(t, rels, pa, qa, 1'000'000) == Equiv::equivalent);
  }
}

TEST_CASE("cancellativity search works without an image grouping") {
  Tiling t = examples::parse(examples::kSample3a);
  auto rels = superpotential_relations(t);
  CancelResult res = cancellativity_search(t, rels, 6, 1'000'000, nullptr);
  REQUIRE(res.counterexample.has_value());
  CHECK(res.counterexample->side == 'r');
}
