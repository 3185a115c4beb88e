#pragma once
// Contraction of a tiling along a set of arrows: vertex merging, re-gauging of
// offsets, the induced labeling, two-cycle removal, and the two adequacy
// conditions that a contraction must satisfy for the toric rings of source and
// target to agree.

#include "labeling.hpp"
#include "rewrite.hpp"
#include "tiling.hpp"

namespace branetiles {

struct ContractionMap {
  Tiling source;
  std::vector<int> contracted;      // arrow indices in the source (sorted)
  std::vector<int> vertex_class;    // source vertex -> target vertex index
  std::vector<Vec2> vertex_shift;   // re-gauge translation applied per source vertex
  std::vector<int> arrow_image;     // source arrow -> target arrow (-1 when contracted)
  Tiling target;
};

// Errors: "invalid contraction: collapses a cycle to a vertex" when the
// contracted set contains a directed cycle; "invalid contraction: re-gauge
// infeasible" when a contracted (undirected) cycle is homologically nontrivial.
// An empty arrow set yields the identity contraction.
ContractionMap contract(const Tiling& t, const std::vector<int>& arrow_set);

// Image of a path: contracted arrows drop out, the rest map across.
PathWord psi_path(const ContractionMap& cm, const PathWord& p);

struct TwoCycleRemoval {
  Tiling result;
  int removed_pairs = 0;
  // For every removed pair we check in the pre-removal algebra that each
  // deleted arrow is equivalent to the path that replaces it.
  bool checks_ok = true;
};
TwoCycleRemoval remove_two_cycles(const Tiling& t, std::int64_t budget = 1'000'000);

// Sufficient criterion for the first adequacy condition: no loops in the
// source and every contracted arrow has an endpoint of in- and out-degree one.
// An empty contracted set holds vacuously.
enum class Cond1 { holds, not_applicable };
Cond1 check_condition1_sufficient(const Tiling& t, const std::vector<int>& arrow_set);

// Basis (Hermite-form rows) of the sublattice of deck translations spanned by
// directed-cycle homologies; nullopt when the rank is below 2.
std::optional<std::array<Vec2, 2>> homology_lattice(const Tiling& t);

enum class Cond2 { verified, failed, inconclusive };

struct Cond2Report {
  Cond2 verdict = Cond2::inconclusive;
  int len_bound = 0;
  std::array<Vec2, 2> lattice{Vec2{0, 0}, Vec2{0, 0}};
  // Per target vertex: homology classes of sigma-free witness cycles found
  // based there (offset units).
  std::vector<std::vector<Vec2>> vertex_witnesses;
  // Failure certificate: a lattice direction with no sigma-free witness cycle
  // of any length (exhausted up to the stated bound, which is provably enough).
  std::optional<Vec2> failed_direction;
  std::string failed_stripped_image;
  int failed_search_len = 0;
};

// The second adequacy condition: every deck translation in the cycle-homology
// lattice must be realized by a cycle whose image is not divisible by sigma
// (witness cycles live in the source, where contracted arrows carry image 1).
// `lab_target` is the labeling on the contraction target.
Cond2Report check_condition2(const ContractionMap& cm, const Labeling& lab_target, int len_bound);

// τ on the source induced from the target labeling: contracted arrows map to 1.
Labeling pullback_labeling(const ContractionMap& cm, const Labeling& lab_target);
// Explicit source labels pushed onto the target (contracted arrows must be
// labeled 1).
Labeling pushforward_labeling(const ContractionMap& cm, const Labeling& lab_source);

// The labeling a tiling file denotes, together with the contraction it runs
// through: explicit labels win; otherwise the grid labeling of the contraction
// target, pulled back. Without contracted arrows the contraction is trivial.
struct InducedLabeling {
  ContractionMap cmap;
  Labeling on_source;
  Labeling on_target;
};
InducedLabeling induced_labeling(const Tiling& t);

}  // namespace branetiles
