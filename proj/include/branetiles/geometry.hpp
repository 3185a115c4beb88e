#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branetiles/monomial.hpp"
#include "branetiles/tiling.hpp"

namespace branetiles {

// A subalgebra R of a monoid algebra S, given by S's monoid generators and a
// monomial ideal J: either R = k + J*S exactly, or R = k[R', J*S] with J*S
// only certifying part of the agreement locus.
struct Presentation {
  std::vector<std::string> vars;
  std::vector<Exps> s_gens;
  std::vector<Exps> j_gens;   // empty: R = S
  bool k_plus_form = true;    // R = k + J*S (else containment-only results)
};

// True when the S generators are exactly the ambient variables.
bool is_polynomial(const Presentation& p);

struct Loci {
  bool r_equals_s = false;
  bool exact = false;          // U = W = Z(J)^c exactly (k-plus form)
  std::string u;               // description of U
  std::string w;               // description of W
  std::string complement;      // description of the non-agreement locus
};

Loci loci(const Presentation& p);

// Dimension of Z(J) inside Max S (exact toric face enumeration); -1 when J is
// empty or the unit ideal (no closed point to measure).
int geometric_dimension(const Presentation& p);

// The common value dim_S R = trdeg Frac R = dim S: rank of the exponent
// lattice spanned by S's generators.
int dimension_equalities(const Presentation& p);

// "unique-maximal-depiction" when S is a polynomial ring, else "unknown".
std::string uniqueness_flag(const Presentation& p);

struct PointGluing {
  int r = 0;
  bool equals_S = false;
  std::string presentation;      // e.g. "k + (x)(x - 1)S"
  std::string u_complement;      // e.g. "{(0), (1)}"
  int closed_point_dimension = -1;
};

// R = k + (product of the maximal ideals of the given points) * S, the ring of
// functions identifying the points; integer coordinates, duplicates rejected.
PointGluing finite_point_gluing(const std::vector<std::string>& vars,
                                const std::vector<std::vector<long long>>& points);

struct GeometryReport {
  Loci loci;
  std::string closed_point;      // "(j1, j2, ...)" or "none"
  int dim = 0;                   // dimension_equalities value
  int closed_point_dimension = -1;
  bool depicts = false;          // S is a variety model for R by construction
  bool birational = false;
  std::string uniqueness;
};

GeometryReport geometry_report(const Presentation& p);

}  // namespace branetiles
