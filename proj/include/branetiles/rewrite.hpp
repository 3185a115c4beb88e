#pragma once
// Superpotential relations and the path-equivalence engine.
//
// Every arrow a lies on one positive and one negative face. Rotating each
// boundary so that a comes first leaves two completions d, d′ of a to a unit
// cycle; a's relation is d ≡ d′. Two paths are equivalent when one rewrites
// into the other by replacing a factor d by d′ (either direction, anywhere in
// the word). Rewrites need not preserve length — faces of different sizes give
// relations between words of different lengths.

#include <cstdint>
#include <optional>

#include "tiling.hpp"

namespace branetiles {

struct Relation {
  int witness;           // arrow index
  PathWord left, right;  // d (from the positive face) and d′ (from the negative face)
};

// One relation per arrow, ordered by arrow id.
std::vector<Relation> superpotential_relations(const Tiling& t);

enum class Equiv { equivalent, inequivalent, budget_exceeded };

// Breadth-first search over the rewrite graph from p, with a visited-word
// budget. Endpoint/homology prechecks decide cheap negatives immediately.
Equiv paths_equivalent(const Tiling& t, const std::vector<Relation>& rels, const PathWord& p,
                       const PathWord& q, std::int64_t budget = 1'000'000);

// All one-step rewrites of a word (deterministic order: position, relation,
// direction). Exposed for the engine, the class enumerator, and property tests.
std::vector<std::vector<int>> rewrite_neighbors(const std::vector<int>& word,
                                                const std::vector<Relation>& rels);

// Full equivalence class of p. exhausted=false means the budget ran out and
// `words` is only a lower approximation.
struct EquivClass {
  std::vector<std::vector<int>> words;
  bool exhausted = true;
};
EquivClass equivalence_class(const Tiling& t, const std::vector<Relation>& rels, const PathWord& p,
                             std::int64_t budget = 1'000'000);

struct Counterexample {
  PathWord p, q;
  int arrow;  // the cancelled arrow a
  char side;  // 'r': p·a ≡ q·a, 'l': a·p ≡ a·q
};

struct CancelResult {
  std::optional<Counterexample> counterexample;
  int max_len = 0;
  std::int64_t indeterminate_pairs = 0;  // inner decisions that hit the budget
};

// Searches pairs (p,q), both of length <= max_len, with equal endpoints and
// homology, for a cancellation failure: p·a ≡ q·a (or a·p ≡ a·q) while p ≢ q.
// Deterministic: pairs are visited by length, then lexicographically by arrow
// ids; extension arrows by id; right side before left. The first failure is
// returned. `lab` (optional) must be a labeling with uniform unit-cycle image;
// it is used only to group candidate words by their monomial image.
struct Labeling;
CancelResult cancellativity_search(const Tiling& t, const std::vector<Relation>& rels, int max_len,
                                   std::int64_t budget = 1'000'000, const Labeling* lab = nullptr);

}  // namespace branetiles
