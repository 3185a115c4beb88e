#include <string>
#include <vector>

#include "branetiles/contraction.hpp"
#include "branetiles/geometry.hpp"
#include "branetiles/tiling.hpp"
#include "branetiles/toric.hpp"
#include "doctest.h"
#include "example_tilings.hpp"

using namespace branetiles;

namespace {

Presentation make(std::vector<std::string> vars, std::vector<Exps> s, std::vector<Exps> j,
                  bool k_plus = true) {
  Presentation p;
  p.vars = std::move(vars);
  p.s_gens = std::move(s);
  p.j_gens = std::move(j);
  p.k_plus_form = k_plus;
  return p;
}

Presentation present(const char* text) {
  Tiling t = examples::parse(text);
  Labeling lab = induced_labeling(t).on_source;
  MonoidAlgebra s = compute_S(t, lab, 16);
  RAlgebra r = compute_R(t, lab, 16);
  Presentation p;
  p.vars = s.vars;
  p.s_gens = s.generators;
  if (!r.equal_to_S) p.j_gens = r.ideal_gens;
  return p;
}

}  // namespace

TEST_CASE("polynomial-ring detection") {
  CHECK(is_polynomial(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}}, {})));
  // duplicates collapse
  CHECK(is_polynomial(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}, Exps{1, 0}}, {})));
  CHECK_FALSE(is_polynomial(make({"x", "y"}, {Exps{1, 0}, Exps{1, 0}}, {})));
  CHECK_FALSE(is_polynomial(make({"x", "y"}, {Exps{1, 0}, Exps{1, 1}}, {})));
  CHECK_FALSE(is_polynomial(present(examples::kConifold)));
  CHECK(is_polynomial(present(examples::kC3)));
}

TEST_CASE("agreement loci of a subalgebra presentation") {
  // R = k + (x)S inside S = k[x,y]: R and S agree away from Z(x)
  Loci l = loci(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}}, {Exps{1, 0}}));
  CHECK_FALSE(l.r_equals_s);
  CHECK(l.exact);
  CHECK(l.u == "Z(x)^c");
  CHECK(l.w == "Z(x)^c");
  CHECK(l.complement == "Z(x)");
  // containment-only presentation: U is only certified, not exact
  Loci lc = loci(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}}, {Exps{1, 0}}, false));
  CHECK_FALSE(lc.exact);
  CHECK(lc.u == "Z(x)^c (certified subset)");
  CHECK(lc.complement == "Z(x)");
  // empty J means R = S
  Loci ls = loci(make({"x"}, {Exps{1}}, {}));
  CHECK(ls.r_equals_s);
  CHECK(ls.exact);
  CHECK(ls.u == "Max S");
  CHECK(ls.w == "Max S");
  CHECK(ls.complement == "empty");
  // the unit ideal also gives R = S
  Loci lu = loci(make({"x"}, {Exps{1}}, {Exps{0}}));
  CHECK(lu.r_equals_s);
}

TEST_CASE("dimension of the non-agreement locus") {
  // Z(x) inside A^2 is the y-axis
  CHECK(geometric_dimension(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}}, {Exps{1, 0}})) == 1);
  // Z(x) inside A^1 is the origin
  CHECK(geometric_dimension(make({"x"}, {Exps{1}}, {Exps{1}})) == 0);
  // no locus to measure
  CHECK(geometric_dimension(make({"x"}, {Exps{1}}, {})) == -1);
  CHECK(geometric_dimension(present(examples::kSample1a)) == 1);
  CHECK(geometric_dimension(present(examples::kSample3a)) == 2);
  CHECK(geometric_dimension(present(examples::kSample3bad)) == 2);
}

TEST_CASE("dimension equalities and uniqueness") {
  CHECK(dimension_equalities(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}}, {Exps{1, 0}})) == 2);
  Presentation conifold = present(examples::kConifold);
  CHECK(dimension_equalities(conifold) == 3);  // rank of the cone over the square
  CHECK(uniqueness_flag(conifold) == "unknown");
  CHECK(uniqueness_flag(present(examples::kC3)) == "unique-maximal-depiction");
  CHECK(uniqueness_flag(make({"x", "y"}, {Exps{1, 0}, Exps{0, 1}}, {Exps{1, 0}})) ==
        "unique-maximal-depiction");
}

TEST_CASE("geometry report for a nonnoetherian center") {
  GeometryReport rep = geometry_report(present(examples::kSample1a));
  CHECK_FALSE(rep.loci.r_equals_s);
  CHECK(rep.loci.exact);
  CHECK(rep.loci.u == "Z(x^2, x*y, y^2)^c");
  CHECK(rep.loci.complement == "Z(x^2, x*y, y^2)");
  CHECK(rep.closed_point == "(x^2, x*y, y^2)");
  CHECK(rep.dim == 3);
  CHECK(rep.closed_point_dimension == 1);
  CHECK(rep.depicts);
  CHECK(rep.birational);
  CHECK(rep.uniqueness == "unknown");
}

TEST_CASE("geometry report when the center is all of S") {
  GeometryReport rep = geometry_report(present(examples::kC3));
  CHECK(rep.loci.r_equals_s);
  CHECK(rep.closed_point == "none");
  CHECK(rep.dim == 3);
  CHECK(rep.closed_point_dimension == -1);
  CHECK(rep.depicts);
  CHECK(rep.birational);
  CHECK(rep.uniqueness == "unique-maximal-depiction");
}

TEST_CASE("gluing finitely many points of an affine line or plane") {
  PointGluing one = finite_point_gluing({"x"}, {{5}});
  CHECK(one.r == 1);
  CHECK(one.equals_S);
  CHECK(one.presentation == "S");
  CHECK(one.u_complement == "empty");
  CHECK(one.closed_point_dimension == -1);

  PointGluing two = finite_point_gluing({"x"}, {{0}, {1}});
  CHECK(two.r == 2);
  CHECK_FALSE(two.equals_S);
  CHECK(two.presentation == "k + (x)(x - 1)S");
  CHECK(two.u_complement == "{(0), (1)}");
  CHECK(two.closed_point_dimension == 0);

  PointGluing neg = finite_point_gluing({"x"}, {{-2}, {3}});
  CHECK(neg.presentation == "k + (x + 2)(x - 3)S");
  CHECK(neg.u_complement == "{(-2), (3)}");

  PointGluing plane = finite_point_gluing({"x", "y"}, {{0, 0}, {1, 2}});
  CHECK(plane.presentation == "k + (x, y)(x - 1, y - 2)S");
  CHECK(plane.u_complement == "{(0, 0), (1, 2)}");
  CHECK(plane.closed_point_dimension == 0);
}

TEST_CASE("point gluing rejects malformed input") {
  CHECK_THROWS_WITH_AS(finite_point_gluing({"x"}, {}),
                       "finite_point_gluing requires at least one point", input_error);
  CHECK_THROWS_WITH_AS(finite_point_gluing({"x"}, {{0, 1}}),
                       "point coordinate count does not match the variable count", input_error);
  CHECK_THROWS_WITH_AS(finite_point_gluing({"x"}, {{0}, {1}, {0}}),
                       "duplicate point in finite_point_gluing", input_error);
}
