#include "branetiles/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace branetiles {

namespace {

// Row (c, b): the constraint c . n >= b over rational n.
struct Row {
  std::vector<long long> c;
  long long b = 0;
};

void normalize(Row& r) {
  long long g = std::abs(r.b);
  for (long long x : r.c) g = std::gcd(g, std::abs(x));
  if (g > 1) {
    for (long long& x : r.c) x /= g;
    r.b /= g;
  }
}

// Exact rational feasibility of {rows} by Fourier-Motzkin elimination.
bool feasible(std::vector<Row> rows, size_t nvars) {
  for (size_t k = 0; k < nvars; ++k) {
    std::vector<Row> pos, neg, zero;
    for (Row& r : rows) {
      if (r.c[k] > 0) pos.push_back(std::move(r));
      else if (r.c[k] < 0) neg.push_back(std::move(r));
      else zero.push_back(std::move(r));
    }
    std::vector<Row> next = std::move(zero);
    std::set<std::pair<std::vector<long long>, long long>> seen;
    for (Row& nr : next) {
      normalize(nr);
      seen.insert({nr.c, nr.b});
    }
    for (const Row& p : pos)
      for (const Row& n : neg) {
        Row comb;
        comb.c.resize(nvars);
        long long a = p.c[k], bcoef = -n.c[k];
        for (size_t i = 0; i < nvars; ++i) comb.c[i] = bcoef * p.c[i] + a * n.c[i];
        comb.b = bcoef * p.b + a * n.b;
        normalize(comb);
        bool all_zero = std::all_of(comb.c.begin(), comb.c.end(), [](long long x) { return x == 0; });
        if (all_zero) {
          if (comb.b > 0) return false;  // 0 >= positive: contradiction
          continue;
        }
        if (seen.insert({comb.c, comb.b}).second) next.push_back(std::move(comb));
      }
    rows = std::move(next);
  }
  for (const Row& r : rows)
    if (r.b > 0) return false;
  return true;
}

// Rank over the rationals of a set of integer vectors (fraction-free
// elimination; values stay small at these sizes).
int lattice_rank(std::vector<Exps> vecs) {
  size_t dim = vecs.empty() ? 0 : vecs[0].size();
  std::vector<std::vector<long long>> m;
  for (const Exps& v : vecs) m.emplace_back(v.begin(), v.end());
  int rank = 0;
  for (size_t col = 0; col < dim; ++col) {
    size_t pivot = static_cast<size_t>(rank);
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[static_cast<size_t>(rank)], m[pivot]);
    for (size_t r = static_cast<size_t>(rank) + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      long long a = m[static_cast<size_t>(rank)][col], b = m[r][col];
      long long g = std::gcd(std::abs(a), std::abs(b));
      long long fa = b / g, fb = a / g;
      for (size_t cc = 0; cc < dim; ++cc) m[r][cc] = fb * m[r][cc] - fa * m[static_cast<size_t>(rank)][cc];
    }
    ++rank;
  }
  return rank;
}

bool has_unit_ideal(const Presentation& p) {
  for (const Exps& j : p.j_gens)
    if (degree(j) == 0) return true;
  return false;
}

std::string monomial_list(const std::vector<Exps>& ms, const std::vector<std::string>& vars) {
  std::string out;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) out += ", ";
    out += monomial_to_string(ms[i], vars);
  }
  return out;
}

}  // namespace

bool is_polynomial(const Presentation& p) {
  std::set<Exps> gens(p.s_gens.begin(), p.s_gens.end());
  if (gens.size() != p.vars.size()) return false;
  for (size_t i = 0; i < p.vars.size(); ++i) {
    Exps unit(p.vars.size(), 0);
    unit[i] = 1;
    if (!gens.count(unit)) return false;
  }
  return true;
}

Loci loci(const Presentation& p) {
  Loci out;
  if (p.j_gens.empty() || has_unit_ideal(p)) {
    out.r_equals_s = true;
    out.exact = true;
    out.u = "Max S";
    out.w = "Max S";
    out.complement = "empty";
    return out;
  }
  std::string z = "Z(" + monomial_list(p.j_gens, p.vars) + ")";
  out.exact = p.k_plus_form;
  out.u = z + "^c";
  out.w = z + "^c";
  out.complement = z;
  if (!p.k_plus_form) out.u += " (certified subset)";
  return out;
}

int geometric_dimension(const Presentation& p) {
  if (p.j_gens.empty() || has_unit_ideal(p)) return -1;
  std::vector<Exps> gens(p.s_gens.begin(), p.s_gens.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  size_t n = gens.size(), d = p.vars.size();
  std::set<Exps> jset(p.j_gens.begin(), p.j_gens.end());

  int best = -1;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<Exps> face;
    bool skip = false;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) {
        if (jset.count(gens[i])) {
          skip = true;  // a J generator cannot vanish-exempt itself
          break;
        }
        face.push_back(gens[i]);
      }
    if (skip) continue;
    int rank = lattice_rank(face);
    if (rank <= best) continue;

    std::vector<Row> rows;
    for (size_t i = 0; i < n; ++i) {
      Row r;
      r.c.assign(gens[i].begin(), gens[i].end());
      if (mask & (1ull << i)) {
        r.b = 0;
        rows.push_back(r);  // g . n >= 0
        for (long long& x : r.c) x = -x;
        rows.push_back(r);  // g . n <= 0
      } else {
        r.b = 1;
        rows.push_back(r);  // g . n >= 1
      }
    }
    for (const Exps& j : p.j_gens) {
      Row r;
      r.c.assign(j.begin(), j.end());
      r.b = 1;
      rows.push_back(r);
    }
    if (feasible(std::move(rows), d)) best = rank;
  }
  return best;
}

int dimension_equalities(const Presentation& p) { return lattice_rank(p.s_gens); }

std::string uniqueness_flag(const Presentation& p) {
  return is_polynomial(p) ? "unique-maximal-depiction" : "unknown";
}

PointGluing finite_point_gluing(const std::vector<std::string>& vars,
                                const std::vector<std::vector<long long>>& points) {
  if (points.empty()) throw input_error("finite_point_gluing requires at least one point");
  for (const auto& pt : points)
    if (pt.size() != vars.size())
      throw input_error("point coordinate count does not match the variable count");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw input_error("duplicate point in finite_point_gluing");

  PointGluing out;
  out.r = static_cast<int>(points.size());
  out.equals_S = out.r == 1;

  auto point_ideal = [&](const std::vector<long long>& pt) {
    std::string s = "(";
    for (size_t i = 0; i < vars.size(); ++i) {
      if (i) s += ", ";
      s += vars[i];
      if (pt[i] > 0) s += " - " + std::to_string(pt[i]);
      else if (pt[i] < 0) s += " + " + std::to_string(-pt[i]);
    }
    return s + ")";
  };
  if (out.equals_S) {
    out.presentation = "S";
    out.u_complement = "empty";
    out.closed_point_dimension = -1;
    return out;
  }
  out.presentation = "k + ";
  for (const auto& pt : points) out.presentation += point_ideal(pt);
  out.presentation += "S";
  out.u_complement = "{";
  for (size_t i = 0; i < points.size(); ++i) {
    if (i) out.u_complement += ", ";
    out.u_complement += "(";
    for (size_t c = 0; c < points[i].size(); ++c) {
      if (c) out.u_complement += ", ";
      out.u_complement += std::to_string(points[i][c]);
    }
    out.u_complement += ")";
  }
  out.u_complement += "}";
  out.closed_point_dimension = 0;  // a finite set of points
  return out;
}

GeometryReport geometry_report(const Presentation& p) {
  GeometryReport rep;
  rep.loci = loci(p);
  rep.dim = dimension_equalities(p);
  rep.uniqueness = uniqueness_flag(p);
  if (rep.loci.r_equals_s) {
    rep.closed_point = "none";
    rep.closed_point_dimension = -1;
    rep.depicts = true;   // S models itself
    rep.birational = true;
  } else {
    rep.closed_point = "(" + monomial_list(p.j_gens, p.vars) + ")";
    rep.closed_point_dimension = geometric_dimension(p);
    rep.depicts = p.k_plus_form;
    rep.birational = true;  // Frac R = Frac S for a nonzero monomial ideal J
  }
  return rep;
}

}  // namespace branetiles
