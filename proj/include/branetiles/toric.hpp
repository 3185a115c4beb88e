#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branetiles/labeling.hpp"
#include "branetiles/rewrite.hpp"
#include "branetiles/tiling.hpp"

namespace branetiles {

// All monomials realized as images of cycles at one vertex, up to an image
// degree bound. Contracted (unit-labeled) arrows contribute degree 0, so the
// bound caps image degree rather than path length.
struct CycleMonoid {
  int vertex = -1;
  int degree_bound = 0;
  std::set<Exps> elements;       // includes the unit (zero vector)
  std::vector<Exps> generators;  // minimal under sum decomposition, sorted
};

CycleMonoid cycle_monoid(const Tiling& t, const Labeling& lab, int vertex, int degree_bound);

struct MonoidAlgebra {
  std::vector<std::string> vars;
  int degree_bound = 0;
  std::set<Exps> elements;
  std::vector<Exps> generators;
};

// S: the monoid generated by all vertex cycle monoids, truncated at the bound.
MonoidAlgebra compute_S(const Tiling& t, const Labeling& lab, int degree_bound);

struct RAlgebra {
  MonoidAlgebra monoid;            // elements: intersection of vertex monoids
  bool equal_to_S = false;
  std::vector<Exps> ideal_gens;    // J: minimal generators of the non-unit part as an S-ideal
  bool presentation_verified = false;  // R = k + J*S checked both ways at the bound
};

RAlgebra compute_R(const Tiling& t, const Labeling& lab, int degree_bound);

struct SCompareResult {
  bool equal = false;
  std::optional<Exps> witness;     // least element of the symmetric difference
  bool witness_in_first = false;   // witness lies in the first algebra
};

SCompareResult compare_S_Sprime(const MonoidAlgebra& s, const MonoidAlgebra& s_prime);

struct CentralElement {
  Exps gamma;
  std::vector<PathWord> cycles;    // one cycle per vertex with image gamma
  Tri central = Tri::unknown;
};

// For each monomial gamma, build a cycle with image gamma at every vertex and
// certify a*c_tail = c_head*a for every arrow via the rewrite engine.
std::vector<CentralElement> central_elements(const Tiling& t, const std::vector<Relation>& rels,
                                             const Labeling& lab, const std::vector<Exps>& gammas,
                                             std::int64_t budget = 1'000'000);

}  // namespace branetiles
