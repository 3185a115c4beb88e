// branetiles: validate torus tilings, decide path equivalence, search for
// cancellativity counterexamples, contract arrows, check adequacy, compute the
// rings S and R, and report their geometry.
//
// Exit codes: 0 computed, 1 property falsified, 2 inconclusive at the bound,
// 3 input error.

#include <fstream>
#include <iostream>
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

namespace {

using namespace branetiles;

struct Args {
  std::string command;
  std::string file;
  int max_len = 10;
  int len_bound = 16;
  std::int64_t budget = 1'000'000;
  std::vector<std::string> p_tokens, q_tokens;  // equiv only
};

const char* kUsage =
    "usage: branetiles <command> <file> [options]\n"
    "commands:\n"
    "  validate FILE                  check the tiling invariants\n"
    "  relations FILE                 print the superpotential relations\n"
    "  equiv FILE P... -- Q...        decide path equivalence (product order)\n"
    "  cancel-check FILE              search for a cancellation counterexample\n"
    "  contract FILE                  contract the declared arrows, remove 2-cycles\n"
    "  adequacy FILE                  check both contraction adequacy conditions\n"
    "  rings FILE                     compute S and R\n"
    "  geometry FILE                  geometry report for R inside S\n"
    "  full-report FILE               all of the above in order\n"
    "options:\n"
    "  --max-len N     cancel-check search depth        (default 10)\n"
    "  --len-bound N   adequacy/rings degree bound      (default 16)\n"
    "  --budget N      rewrite-search state budget      (default 1000000)\n";

long long parse_int(const std::string& flag, const std::string& text) {
  try {
    size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw input_error("flag " + flag + " needs a non-negative integer, got '" + text + "'");
  }
}

Args parse_args(int argc, char** argv) {
  if (argc < 2) throw input_error(std::string("missing command\n") + kUsage);
  Args a;
  a.command = argv[1];
  bool after_sep = false;
  for (int i = 2; i < argc; ++i) {
    std::string s = argv[i];
    auto next = [&](const std::string& flag) -> std::string {
      if (i + 1 >= argc) throw input_error("flag " + flag + " needs a value");
      return argv[++i];
    };
    if (s == "--max-len") a.max_len = static_cast<int>(parse_int(s, next(s)));
    else if (s == "--len-bound") a.len_bound = static_cast<int>(parse_int(s, next(s)));
    else if (s == "--budget") a.budget = parse_int(s, next(s));
    else if (s == "--") after_sep = true;
    else if (a.file.empty()) a.file = s;
    else if (a.command == "equiv") (after_sep ? a.q_tokens : a.p_tokens).push_back(s);
    else throw input_error("unexpected argument '" + s + "'");
  }
  if (a.file.empty()) throw input_error(std::string("missing input file\n") + kUsage);
  return a;
}

Tiling load_tiling(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tiling(ss.str());
}

std::string vec_str(Vec2 v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
}

std::string join_monomials(const std::vector<Exps>& ms, const std::vector<std::string>& vars) {
  std::string out;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) out += ", ";
    out += monomial_to_string(ms[i], vars);
  }
  return out;
}

std::string contracted_ids(const Tiling& t) {
  if (t.contracted.empty()) return "none";
  std::string out;
  for (size_t i = 0; i < t.contracted.size(); ++i) {
    if (i) out += " ";
    out += t.arrows[static_cast<size_t>(t.contracted[i])].id;
  }
  return out;
}

// Every face image must equal sigma; explicit labels can violate this.
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

// Exit-code precedence for chained reports: 3 > 1 > 2 > 0.
int worst_exit(int a, int b) {
  auto rank = [](int c) { return c == 3 ? 3 : (c == 1 ? 2 : (c == 2 ? 1 : 0)); };
  return rank(a) >= rank(b) ? a : b;
}

int cmd_validate(const Tiling& t) {
  ValidationReport rep = validate_tiling(t);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "vertices: " << t.vertex_ids.size() << "\n";
  std::cout << "arrows: " << t.arrows.size() << "\n";
  std::cout << "faces: " << t.faces.size() << "\n";
  for (const Violation& v : rep.violations)
    std::cout << "violation: " << v.invariant << ": " << v.detail << "\n";
  std::cout << "valid: " << (rep.ok ? "yes" : "no") << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_relations(const Tiling& t) {
  auto rels = superpotential_relations(t);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "relations: " << rels.size() << "\n";
  for (const Relation& r : rels)
    std::cout << "relation: " << path_to_string(t, r.left) << " = " << path_to_string(t, r.right)
              << " (witness " << t.arrows[static_cast<size_t>(r.witness)].id << ")\n";
  return 0;
}

int cmd_equiv(const Tiling& t, const Args& a) {
  if (a.p_tokens.empty() || a.q_tokens.empty())
    throw input_error("equiv needs two paths: equiv FILE P... -- Q...");
  auto rels = superpotential_relations(t);
  PathWord p = path_from_product_tokens(t, a.p_tokens);
  PathWord q = path_from_product_tokens(t, a.q_tokens);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "p: " << path_to_string(t, p) << "\n";
  std::cout << "q: " << path_to_string(t, q) << "\n";
  std::cout << "budget: " << a.budget << "\n";
  Equiv e = paths_equivalent(t, rels, p, q, a.budget);
  switch (e) {
    case Equiv::equivalent: std::cout << "verdict: equivalent\n"; return 0;
    case Equiv::inequivalent: std::cout << "verdict: inequivalent\n"; return 0;
    default: std::cout << "verdict: inconclusive\n"; return 2;
  }
}

int cmd_cancel_check(const Tiling& t, const Args& a) {
  auto rels = superpotential_relations(t);
  std::optional<Labeling> lab;
  try {
    lab = induced_labeling(t).on_source;
  } catch (const input_error&) {
    // No usable labeling: the search runs without image grouping.
  }
  CancelResult res = cancellativity_search(t, rels, a.max_len, a.budget, lab ? &*lab : nullptr);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "max_len: " << a.max_len << "\n";
  if (res.counterexample) {
    const Counterexample& c = *res.counterexample;
    std::cout << "verdict: counterexample\n";
    std::cout << "p: " << path_to_string(t, c.p) << "\n";
    std::cout << "q: " << path_to_string(t, c.q) << "\n";
    std::cout << "arrow: " << t.arrows[static_cast<size_t>(c.arrow)].id << "\n";
    std::cout << "side: " << (c.side == 'r' ? "right" : "left") << "\n";
    return 1;
  }
  if (res.indeterminate_pairs > 0) {
    std::cout << "verdict: inconclusive\n";
    std::cout << "indeterminate_pairs: " << res.indeterminate_pairs << "\n";
    return 2;
  }
  std::cout << "verdict: no counterexample up to " << a.max_len << "\n";
  return 0;
}

int cmd_contract(const Tiling& t, const Args& a) {
  ContractionMap cm = contract(t, t.contracted);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "contracted: " << contracted_ids(t) << "\n";
  std::cout << "target:\n" << print_tiling(cm.target);
  TwoCycleRemoval rem = remove_two_cycles(cm.target, a.budget);
  std::cout << "two_cycle_pairs_removed: " << rem.removed_pairs << "\n";
  if (rem.removed_pairs > 0) std::cout << "after_removal:\n" << print_tiling(rem.result);
  std::cout << "removal_checks: " << (rem.checks_ok ? "ok" : "failed") << "\n";
  return rem.checks_ok ? 0 : 1;
}

int cmd_adequacy(const Tiling& t, const Args& a) {
  InducedLabeling ind = induced_labeling(t);
  require_sigma_uniform(ind.cmap.target, ind.on_target);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "contracted: " << contracted_ids(t) << "\n";
  std::cout << "len_bound: " << a.len_bound << "\n";
  Cond1 c1 = check_condition1_sufficient(t, t.contracted);
  std::cout << "condition1: " << (c1 == Cond1::holds ? "holds" : "not-applicable") << "\n";
  Cond2Report c2 = check_condition2(ind.cmap, ind.on_target, a.len_bound);
  const char* verdict = c2.verdict == Cond2::verified ? "verified"
                        : c2.verdict == Cond2::failed ? "failed"
                                                      : "inconclusive";
  std::cout << "condition2: " << verdict << "\n";
  std::cout << "lattice: " << vec_str(c2.lattice[0]) << " " << vec_str(c2.lattice[1]) << "\n";
  for (size_t v = 0; v < c2.vertex_witnesses.size(); ++v) {
    std::cout << "vertex " << ind.cmap.target.vertex_ids[v] << ": " << verdict << " witness_dirs:";
    const auto& dirs = c2.vertex_witnesses[v];
    if (dirs.empty()) std::cout << " none";
    constexpr size_t kMaxListed = 12;
    for (size_t i = 0; i < dirs.size() && i < kMaxListed; ++i) std::cout << " " << vec_str(dirs[i]);
    if (dirs.size() > kMaxListed) std::cout << " ... (" << dirs.size() << " total)";
    std::cout << "\n";
  }
  if (c2.verdict == Cond2::failed) {
    std::cout << "failed_direction: " << vec_str(*c2.failed_direction) << "\n";
    std::cout << "failed_image: " << c2.failed_stripped_image << "\n";
    std::cout << "failed_search_len: " << c2.failed_search_len << "\n";
  }
  return c2.verdict == Cond2::verified ? 0 : (c2.verdict == Cond2::failed ? 1 : 2);
}

struct Rings {
  Labeling lab;
  MonoidAlgebra S;
  RAlgebra R;
};

Rings compute_rings(const Tiling& t, int len_bound) {
  InducedLabeling ind = induced_labeling(t);
  require_sigma_uniform(t, ind.on_source);
  Rings r;
  r.lab = ind.on_source;
  r.S = compute_S(t, r.lab, len_bound);
  r.R = compute_R(t, r.lab, len_bound);
  return r;
}

void print_rings(const Rings& r, const std::string& name, int len_bound) {
  std::cout << "tiling: " << name << "\n";
  std::cout << "len_bound: " << len_bound << "\n";
  std::cout << "S = " << (r.S.generators.empty() ? "k" : join_monomials(r.S.generators, r.S.vars))
            << "\n";
  if (r.R.equal_to_S)
    std::cout << "R = S\n";
  else
    std::cout << "R = k + (" << join_monomials(r.R.ideal_gens, r.S.vars) << ")S\n";
  std::cout << "presentation_verified: " << (r.R.presentation_verified ? "yes" : "no") << "\n";
}

int cmd_rings(const Tiling& t, const Args& a) {
  Rings r = compute_rings(t, a.len_bound);
  print_rings(r, t.name, a.len_bound);
  return r.R.presentation_verified ? 0 : 2;
}

Presentation presentation_of(const Rings& r) {
  Presentation p;
  p.vars = r.S.vars;
  p.s_gens = r.S.generators;
  if (!r.R.equal_to_S) p.j_gens = r.R.ideal_gens;
  p.k_plus_form = true;
  return p;
}

int cmd_geometry(const Tiling& t, const Args& a) {
  Rings r = compute_rings(t, a.len_bound);
  Presentation p = presentation_of(r);
  GeometryReport rep = geometry_report(p);
  std::cout << "tiling: " << t.name << "\n";
  std::cout << "len_bound: " << a.len_bound << "\n";
  std::cout << "s_gens: " << (p.s_gens.empty() ? "none" : join_monomials(p.s_gens, p.vars)) << "\n";
  std::cout << "form: " << (is_polynomial(p) ? "polynomial" : "toric") << "\n";
  std::cout << "r_equals_s: " << (rep.loci.r_equals_s ? "yes" : "no") << "\n";
  std::cout << "closed_point: " << rep.closed_point << "\n";
  std::cout << "u: " << rep.loci.u << "\n";
  std::cout << "w: " << rep.loci.w << "\n";
  std::cout << "complement: " << rep.loci.complement << "\n";
  std::cout << "dim: " << rep.dim << "\n";
  std::cout << "closed_point_dimension: " << rep.closed_point_dimension << "\n";
  std::cout << "depicts: " << (rep.depicts ? "yes" : "unknown") << "\n";
  std::cout << "birational: " << (rep.birational ? "yes" : "no") << "\n";
  std::cout << "uniqueness: " << rep.uniqueness << "\n";
  std::cout << "presentation_verified: " << (r.R.presentation_verified ? "yes" : "no") << "\n";
  return r.R.presentation_verified ? 0 : 2;
}

int cmd_full_report(const Tiling& t, const Args& a) {
  int exit = 0;
  std::cout << "[validate]\n";
  int v = cmd_validate(t);
  exit = worst_exit(exit, v);
  if (v != 0) return exit;  // later stages assume a valid tiling

  std::cout << "\n[relations]\n";
  exit = worst_exit(exit, cmd_relations(t));

  std::cout << "\n[cancel-check]\n";
  exit = worst_exit(exit, cmd_cancel_check(t, a));

  std::cout << "\n[contract]\n";
  exit = worst_exit(exit, cmd_contract(t, a));

  std::cout << "\n[adequacy]\n";
  exit = worst_exit(exit, cmd_adequacy(t, a));

  std::cout << "\n[rings]\n";
  exit = worst_exit(exit, cmd_rings(t, a));

  std::cout << "\n[compare]\n";
  {
    InducedLabeling ind = induced_labeling(t);
    MonoidAlgebra s = compute_S(t, ind.on_source, a.len_bound);
    MonoidAlgebra sp = compute_S(ind.cmap.target, ind.on_target, a.len_bound);
    std::cout << "S = " << (s.generators.empty() ? "k" : join_monomials(s.generators, s.vars))
              << "\n";
    std::cout << "S' = " << (sp.generators.empty() ? "k" : join_monomials(sp.generators, sp.vars))
              << "\n";
    SCompareResult cmp = compare_S_Sprime(s, sp);
    if (cmp.equal) {
      std::cout << "s_compare: equal\n";
    } else {
      std::cout << "s_compare: differ\n";
      std::cout << "witness: " << monomial_to_string(*cmp.witness, s.vars) << " (in "
                << (cmp.witness_in_first ? "S" : "S'") << ")\n";
      exit = worst_exit(exit, 1);
    }
  }

  std::cout << "\n[geometry]\n";
  exit = worst_exit(exit, cmd_geometry(t, a));
  return exit;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    Args a = parse_args(argc, argv);
    Tiling t = load_tiling(a.file);
    if (a.command == "validate") return cmd_validate(t);
    if (a.command == "relations") return cmd_relations(t);
    if (a.command == "equiv") return cmd_equiv(t, a);
    if (a.command == "cancel-check") return cmd_cancel_check(t, a);
    if (a.command == "contract") return cmd_contract(t, a);
    if (a.command == "adequacy") return cmd_adequacy(t, a);
    if (a.command == "rings") return cmd_rings(t, a);
    if (a.command == "geometry") return cmd_geometry(t, a);
    if (a.command == "full-report") return cmd_full_report(t, a);
    throw input_error("unknown command '" + a.command + "'\n" + kUsage);
  } catch (const branetiles::input_error& e) {
    std::cout << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return 3;
  }
}
