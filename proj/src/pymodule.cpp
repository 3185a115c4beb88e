// Python bindings for the branetiles core. Thin layer: every function parses
// plain Python values (strings, lists, ints), calls the library, and returns
// dicts of plain values. Paths are arrow-id lists or strings in product order
// (rightmost arrow acts first), matching the CLI convention.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "branetiles/contraction.hpp"
#include "branetiles/geometry.hpp"
#include "branetiles/labeling.hpp"
#include "branetiles/monomial.hpp"
#include "branetiles/rewrite.hpp"
#include "branetiles/tiling.hpp"
#include "branetiles/toric.hpp"

namespace py = pybind11;
using namespace branetiles;

namespace {

// Mirrors the CLI guard: ring and adequacy computations are only meaningful
// when every unit cycle maps to the same monomial sigma.
void require_sigma_uniform(const Tiling& t, const Labeling& lab) {
  for (size_t f = 0; f < t.faces.size(); ++f) {
    Exps img(lab.vars.size(), 0);
    for (int a : t.faces[f].boundary) img = mul(img, lab.arrow_label[static_cast<size_t>(a)]);
    if (img != lab.sigma)
      throw input_error("labeling is not sigma-uniform: face " + std::to_string(f) +
                        " has image " + monomial_to_string(img, lab.vars) + ", expected " +
                        monomial_to_string(lab.sigma, lab.vars));
  }
}

std::vector<std::string> mono_list(const std::vector<Exps>& es,
                                   const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(monomial_to_string(e, vars));
  return out;
}

py::tuple vec2_tuple(Vec2 v) { return py::make_tuple(v[0], v[1]); }

std::vector<int> arrow_indices(const Tiling& t, const std::vector<std::string>& ids) {
  std::vector<int> idx;
  idx.reserve(ids.size());
  for (const auto& id : ids) {
    int a = t.arrow_index(id);
    if (a < 0) throw input_error("unknown arrow id: " + id);
    idx.push_back(a);
  }
  return idx;
}

Presentation presentation_of(const MonoidAlgebra& s, const RAlgebra& r) {
  Presentation p;
  p.vars = s.vars;
  p.s_gens = s.generators;
  if (!r.equal_to_S) p.j_gens = r.ideal_gens;
  p.k_plus_form = true;
  return p;
}

}  // namespace

PYBIND11_MODULE(_branetiles, m) {
  m.doc() = "Exact-arithmetic core for superpotential algebras of brane tilings";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);

  py::class_<Tiling>(m, "Tiling", "An embedded quiver on the torus, with faces and offsets.")
      .def_property_readonly("name", [](const Tiling& t) { return t.name; })
      .def_property_readonly("vertices", [](const Tiling& t) { return t.vertex_ids; })
      .def_property_readonly("arrows",
                             [](const Tiling& t) {
                               std::vector<std::string> ids;
                               ids.reserve(t.arrows.size());
                               for (const auto& a : t.arrows) ids.push_back(a.id);
                               return ids;
                             })
      .def_property_readonly("num_faces", [](const Tiling& t) { return t.faces.size(); })
      .def_property_readonly("contracted",
                             [](const Tiling& t) {
                               std::vector<std::string> ids;
                               ids.reserve(t.contracted.size());
                               for (int a : t.contracted)
                                 ids.push_back(t.arrows[static_cast<size_t>(a)].id);
                               return ids;
                             })
      .def("__str__", [](const Tiling& t) { return print_tiling(t); })
      .def("__repr__", [](const Tiling& t) {
        return "<Tiling '" + t.name + "': " + std::to_string(t.vertex_ids.size()) +
               " vertices, " + std::to_string(t.arrows.size()) + " arrows, " +
               std::to_string(t.faces.size()) + " faces>";
      });

  m.def(
      "parse", [](const std::string& text) { return parse_tiling(text); }, py::arg("text"),
      "Parse a tiling from its text form.");

  m.def(
      "load",
      [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw input_error("cannot open file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_tiling(ss.str());
      },
      py::arg("path"), "Load a tiling from a file.");

  m.def(
      "to_text", [](const Tiling& t) { return print_tiling(t); }, py::arg("tiling"),
      "Canonical text form; parse(to_text(t)) reproduces t.");

  m.def(
      "validate",
      [](const Tiling& t) {
        ValidationReport rep = validate_tiling(t);
        py::list viols;
        for (const auto& v : rep.violations) {
          py::dict d;
          d["invariant"] = v.invariant;
          d["detail"] = v.detail;
          viols.append(d);
        }
        py::dict out;
        out["ok"] = rep.ok;
        out["violations"] = viols;
        return out;
      },
      py::arg("tiling"), "Check the consistency invariants of a tiling.");

  m.def(
      "relations",
      [](const Tiling& t) {
        py::list out;
        for (const auto& r : superpotential_relations(t)) {
          py::dict d;
          d["left"] = path_to_string(t, r.left);
          d["right"] = path_to_string(t, r.right);
          d["witness"] = t.arrows[static_cast<size_t>(r.witness)].id;
          out.append(d);
        }
        return out;
      },
      py::arg("tiling"),
      "The rewrite relations, one per arrow; paths printed in product order.");

  m.def(
      "paths_equivalent",
      [](const Tiling& t, const std::vector<std::string>& p, const std::vector<std::string>& q,
         std::int64_t budget) {
        auto rels = superpotential_relations(t);
        Equiv e = paths_equivalent(t, rels, path_from_product_tokens(t, p),
                                   path_from_product_tokens(t, q), budget);
        return std::string(e == Equiv::equivalent      ? "equivalent"
                           : e == Equiv::inequivalent  ? "inequivalent"
                                                       : "inconclusive");
      },
      py::arg("tiling"), py::arg("p"), py::arg("q"), py::arg("budget") = 1'000'000,
      "Decide whether two paths (arrow-id lists in product order) are equal in the algebra.");

  m.def(
      "cancellativity",
      [](const Tiling& t, int max_len, std::int64_t budget) {
        auto rels = superpotential_relations(t);
        std::optional<Labeling> lab;
        try {
          lab = induced_labeling(t).on_source;
        } catch (const input_error&) {
          // No usable labeling: the search runs without image grouping.
        }
        CancelResult res = cancellativity_search(t, rels, max_len, budget, lab ? &*lab : nullptr);
        py::dict out;
        out["max_len"] = res.max_len;
        out["indeterminate_pairs"] = res.indeterminate_pairs;
        if (res.counterexample) {
          const Counterexample& c = *res.counterexample;
          out["verdict"] = "counterexample";
          out["p"] = path_to_string(t, c.p);
          out["q"] = path_to_string(t, c.q);
          out["arrow"] = t.arrows[static_cast<size_t>(c.arrow)].id;
          out["side"] = std::string(c.side == 'r' ? "right" : "left");
        } else {
          out["verdict"] =
              std::string(res.indeterminate_pairs > 0 ? "inconclusive" : "cancellative-up-to-bound");
        }
        return out;
      },
      py::arg("tiling"), py::arg("max_len") = 10, py::arg("budget") = 1'000'000,
      "Search for a cancellativity counterexample among paths up to the given length.");

  m.def(
      "contract",
      [](const Tiling& t, std::optional<std::vector<std::string>> arrows) {
        std::vector<int> idx = arrows ? arrow_indices(t, *arrows) : t.contracted;
        return contract(t, idx).target;
      },
      py::arg("tiling"), py::arg("arrows") = std::nullopt,
      "Contract the given arrows (default: the tiling's declared set); returns the target tiling.");

  m.def(
      "remove_two_cycles",
      [](const Tiling& t, std::int64_t budget) {
        TwoCycleRemoval r = remove_two_cycles(t, budget);
        py::dict out;
        out["tiling"] = r.result;
        out["pairs_removed"] = r.removed_pairs;
        out["checks_ok"] = r.checks_ok;
        return out;
      },
      py::arg("tiling"), py::arg("budget") = 1'000'000,
      "Remove length-two faces pairwise, verifying each removal preserves the path relations.");

  m.def(
      "labels",
      [](const Tiling& t) {
        InducedLabeling ind = induced_labeling(t);
        py::dict arrows;
        for (size_t i = 0; i < t.arrows.size(); ++i)
          arrows[py::str(t.arrows[i].id)] =
              monomial_to_string(ind.on_source.arrow_label[i], ind.on_source.vars);
        py::dict out;
        out["vars"] = ind.on_source.vars;
        out["arrows"] = arrows;
        out["sigma"] = monomial_to_string(ind.on_source.sigma, ind.on_source.vars);
        return out;
      },
      py::arg("tiling"),
      "Arrow monomial labels on the source tiling (declared labels, or the induced one).");

  m.def(
      "adequacy",
      [](const Tiling& t, int len_bound) {
        InducedLabeling ind = induced_labeling(t);
        require_sigma_uniform(ind.cmap.target, ind.on_target);
        Cond1 c1 = check_condition1_sufficient(t, t.contracted);
        Cond2Report c2 = check_condition2(ind.cmap, ind.on_target, len_bound);
        py::dict out;
        out["condition1"] = std::string(c1 == Cond1::holds ? "holds" : "not-applicable");
        out["condition2"] = std::string(c2.verdict == Cond2::verified   ? "verified"
                                        : c2.verdict == Cond2::failed   ? "failed"
                                                                        : "inconclusive");
        out["lattice"] = py::make_tuple(vec2_tuple(c2.lattice[0]), vec2_tuple(c2.lattice[1]));
        out["len_bound"] = c2.len_bound;
        if (c2.verdict == Cond2::failed) {
          out["failed_direction"] = vec2_tuple(*c2.failed_direction);
          out["failed_image"] = c2.failed_stripped_image;
          out["failed_search_len"] = c2.failed_search_len;
        }
        return out;
      },
      py::arg("tiling"), py::arg("len_bound") = 16,
      "Check the contraction adequacy conditions; the second condition is decided up to a bound.");

  m.def(
      "rings",
      [](const Tiling& t, int len_bound) {
        InducedLabeling ind = induced_labeling(t);
        require_sigma_uniform(t, ind.on_source);
        MonoidAlgebra S = compute_S(t, ind.on_source, len_bound);
        RAlgebra R = compute_R(t, ind.on_source, len_bound);
        py::dict out;
        out["vars"] = S.vars;
        out["len_bound"] = len_bound;
        out["s_gens"] = mono_list(S.generators, S.vars);
        out["r_equals_s"] = R.equal_to_S;
        out["j_gens"] = mono_list(R.ideal_gens, S.vars);
        out["presentation_verified"] = R.presentation_verified;
        return out;
      },
      py::arg("tiling"), py::arg("len_bound") = 16,
      "The toric ring S and center R = k + J*S, truncated at the image-degree bound.");

  m.def(
      "compare_s",
      [](const Tiling& t, int len_bound) {
        InducedLabeling ind = induced_labeling(t);
        require_sigma_uniform(t, ind.on_source);
        require_sigma_uniform(ind.cmap.target, ind.on_target);
        MonoidAlgebra s = compute_S(t, ind.on_source, len_bound);
        MonoidAlgebra sp = compute_S(ind.cmap.target, ind.on_target, len_bound);
        SCompareResult cmp = compare_S_Sprime(s, sp);
        py::dict out;
        out["s_gens"] = mono_list(s.generators, s.vars);
        out["s_prime_gens"] = mono_list(sp.generators, sp.vars);
        out["equal"] = cmp.equal;
        if (cmp.witness) {
          out["witness"] = monomial_to_string(*cmp.witness, s.vars);
          out["witness_in"] = std::string(cmp.witness_in_first ? "S" : "S'");
        }
        return out;
      },
      py::arg("tiling"), py::arg("len_bound") = 16,
      "Compare S of the source tiling with S' of its contraction target.");

  m.def(
      "central",
      [](const Tiling& t, std::optional<std::vector<std::string>> gammas, std::int64_t budget) {
        InducedLabeling ind = induced_labeling(t);
        require_sigma_uniform(t, ind.on_source);
        const Labeling& lab = ind.on_source;
        std::vector<Exps> gs;
        if (gammas) {
          for (const auto& g : *gammas) {
            auto e = parse_monomial(g, lab.vars);
            if (!e) throw input_error("cannot parse monomial '" + g + "' over the label variables");
            gs.push_back(*e);
          }
        } else {
          gs.push_back(lab.sigma);
        }
        auto rels = superpotential_relations(t);
        py::list out;
        for (const auto& ce : central_elements(t, rels, lab, gs, budget)) {
          py::dict d;
          d["gamma"] = monomial_to_string(ce.gamma, lab.vars);
          py::list cyc;
          for (const auto& c : ce.cycles) cyc.append(path_to_string(t, c));
          d["cycles"] = cyc;
          d["central"] = std::string(ce.central == Tri::yes   ? "yes"
                                     : ce.central == Tri::no  ? "no"
                                                              : "unknown");
          out.append(d);
        }
        return out;
      },
      py::arg("tiling"), py::arg("gammas") = std::nullopt, py::arg("budget") = 1'000'000,
      "Certify central elements: one cycle per vertex with the given image (default sigma).");

  m.def(
      "geometry",
      [](const Tiling& t, int len_bound) {
        InducedLabeling ind = induced_labeling(t);
        require_sigma_uniform(t, ind.on_source);
        MonoidAlgebra S = compute_S(t, ind.on_source, len_bound);
        RAlgebra R = compute_R(t, ind.on_source, len_bound);
        Presentation p = presentation_of(S, R);
        GeometryReport g = geometry_report(p);
        py::dict out;
        out["s_gens"] = mono_list(p.s_gens, p.vars);
        out["form"] = std::string(is_polynomial(p) ? "polynomial" : "toric");
        out["r_equals_s"] = g.loci.r_equals_s;
        out["closed_point"] = g.closed_point;
        out["u"] = g.loci.u;
        out["w"] = g.loci.w;
        out["complement"] = g.loci.complement;
        out["dim"] = g.dim;
        out["closed_point_dimension"] = g.closed_point_dimension;
        out["depicts"] = g.depicts;
        out["birational"] = g.birational;
        out["uniqueness"] = g.uniqueness;
        out["presentation_verified"] = R.presentation_verified;
        return out;
      },
      py::arg("tiling"), py::arg("len_bound") = 16,
      "Geometric report for the center: agreement loci, dimensions, and depiction flags.");

  m.def(
      "finite_point_gluing",
      [](const std::vector<std::string>& vars, const std::vector<std::vector<long long>>& points) {
        PointGluing pg = finite_point_gluing(vars, points);
        py::dict out;
        out["r"] = pg.r;
        out["equals_s"] = pg.equals_S;
        out["presentation"] = pg.presentation;
        out["u_complement"] = pg.u_complement;
        out["closed_point_dimension"] = pg.closed_point_dimension;
        return out;
      },
      py::arg("vars"), py::arg("points"),
      "The ring of polynomial functions identifying a finite set of integer points.");
}
