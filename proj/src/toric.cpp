#include "branetiles/toric.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace branetiles {

namespace {

// Exact reachable-image sets per vertex: breadth-first search over
// (vertex, exponent vector) states with the image degree capped.
std::vector<std::set<Exps>> vertex_images(const Tiling& t, const Labeling& lab, int start,
                                          int degree_bound) {
  std::vector<std::set<Exps>> at(t.vertex_ids.size());
  std::deque<std::pair<int, Exps>> queue;
  Exps zero(lab.vars.size(), 0);
  at[static_cast<size_t>(start)].insert(zero);
  queue.push_back({start, zero});
  while (!queue.empty()) {
    auto [v, e] = queue.front();
    queue.pop_front();
    for (size_t ai = 0; ai < t.arrows.size(); ++ai) {
      const Arrow& ar = t.arrows[ai];
      if (ar.tail != v) continue;
      Exps ne = mul(e, lab.arrow_label[ai]);
      if (degree(ne) > degree_bound) continue;
      if (at[static_cast<size_t>(ar.head)].insert(ne).second) queue.push_back({ar.head, ne});
    }
  }
  return at;
}

// Minimal generators of a truncated monoid: an element is redundant when it
// splits as a sum of two nonzero elements.
std::vector<Exps> minimal_generators(const std::set<Exps>& elems) {
  std::vector<Exps> gens;
  for (const Exps& e : elems) {
    if (degree(e) == 0) continue;
    bool redundant = false;
    for (const Exps& f : elems) {
      if (degree(f) == 0 || f == e || !divides(f, e)) continue;
      Exps rest = e;
      for (size_t i = 0; i < rest.size(); ++i) rest[i] -= f[i];
      if (degree(rest) > 0 && elems.count(rest)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) gens.push_back(e);
  }
  std::sort(gens.begin(), gens.end(), monomial_less);
  return gens;
}

}  // namespace

CycleMonoid cycle_monoid(const Tiling& t, const Labeling& lab, int vertex, int degree_bound) {
  if (vertex < 0 || vertex >= static_cast<int>(t.vertex_ids.size()))
    throw input_error("cycle_monoid references a dangling vertex index");
  CycleMonoid cm;
  cm.vertex = vertex;
  cm.degree_bound = degree_bound;
  cm.elements = vertex_images(t, lab, vertex, degree_bound)[static_cast<size_t>(vertex)];
  cm.generators = minimal_generators(cm.elements);
  return cm;
}

MonoidAlgebra compute_S(const Tiling& t, const Labeling& lab, int degree_bound) {
  MonoidAlgebra s;
  s.vars = lab.vars;
  s.degree_bound = degree_bound;
  std::set<Exps> base;
  for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v) {
    CycleMonoid cm = cycle_monoid(t, lab, v, degree_bound);
    base.insert(cm.elements.begin(), cm.elements.end());
  }
  // Close the union under addition within the degree bound.
  s.elements = base;
  std::deque<Exps> queue(s.elements.begin(), s.elements.end());
  while (!queue.empty()) {
    Exps e = queue.front();
    queue.pop_front();
    for (const Exps& u : base) {
      if (degree(u) == 0) continue;
      Exps sum = mul(e, u);
      if (degree(sum) > degree_bound) continue;
      if (s.elements.insert(sum).second) queue.push_back(sum);
    }
  }
  s.generators = minimal_generators(s.elements);
  return s;
}

RAlgebra compute_R(const Tiling& t, const Labeling& lab, int degree_bound) {
  RAlgebra r;
  r.monoid.vars = lab.vars;
  r.monoid.degree_bound = degree_bound;

  std::vector<std::set<Exps>> per_vertex;
  for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v)
    per_vertex.push_back(cycle_monoid(t, lab, v, degree_bound).elements);

  r.monoid.elements = per_vertex.empty() ? std::set<Exps>{} : per_vertex[0];
  for (size_t v = 1; v < per_vertex.size(); ++v) {
    std::set<Exps> next;
    for (const Exps& e : r.monoid.elements)
      if (per_vertex[v].count(e)) next.insert(e);
    r.monoid.elements = std::move(next);
  }
  r.monoid.generators = minimal_generators(r.monoid.elements);

  MonoidAlgebra s = compute_S(t, lab, degree_bound);
  r.equal_to_S = (r.monoid.elements == s.elements);

  // J: minimal generators of the non-unit part of R as an ideal of S.
  for (const Exps& e : r.monoid.elements) {
    if (degree(e) == 0) continue;
    bool redundant = false;
    for (const Exps& f : r.monoid.elements) {
      if (degree(f) == 0 || f == e || !divides(f, e)) continue;
      Exps rest = e;
      for (size_t i = 0; i < rest.size(); ++i) rest[i] -= f[i];
      if (degree(rest) > 0 && s.elements.count(rest)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) r.ideal_gens.push_back(e);
  }
  std::sort(r.ideal_gens.begin(), r.ideal_gens.end(), monomial_less);

  // Verify R = k + J*S at the bound, in both directions.
  r.presentation_verified = true;
  for (const Exps& e : r.monoid.elements) {
    if (degree(e) == 0) continue;
    bool covered = false;
    for (const Exps& j : r.ideal_gens) {
      if (!divides(j, e)) continue;
      Exps rest = e;
      for (size_t i = 0; i < rest.size(); ++i) rest[i] -= j[i];
      if (s.elements.count(rest)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      r.presentation_verified = false;
      break;
    }
  }
  if (r.presentation_verified) {
    for (const Exps& j : r.ideal_gens) {
      for (const Exps& se : s.elements) {
        Exps sum = mul(j, se);
        if (degree(sum) > degree_bound) continue;
        if (!r.monoid.elements.count(sum)) {
          r.presentation_verified = false;
          break;
        }
      }
      if (!r.presentation_verified) break;
    }
  }
  return r;
}

SCompareResult compare_S_Sprime(const MonoidAlgebra& s, const MonoidAlgebra& s_prime) {
  SCompareResult out;
  std::vector<Exps> diff;
  bool in_first_least = false;
  for (const Exps& e : s.elements)
    if (!s_prime.elements.count(e)) diff.push_back(e);
  size_t first_count = diff.size();
  for (const Exps& e : s_prime.elements)
    if (!s.elements.count(e)) diff.push_back(e);
  if (diff.empty()) {
    out.equal = true;
    return out;
  }
  size_t best = 0;
  for (size_t i = 1; i < diff.size(); ++i)
    if (monomial_less(diff[i], diff[best])) best = i;
  in_first_least = best < first_count;
  out.equal = false;
  out.witness = diff[best];
  out.witness_in_first = in_first_least;
  return out;
}

namespace {

// Shortest cycle at `vertex` whose image is exactly `gamma`: parent-tracked
// breadth-first search over (vertex, partial image <= gamma) states.
std::optional<PathWord> cycle_with_image(const Tiling& t, const Labeling& lab, int vertex,
                                         const Exps& gamma) {
  if (degree(gamma) == 0) return PathWord{{}, vertex};
  struct Key {
    int v;
    Exps e;
    bool operator<(const Key& o) const { return v != o.v ? v < o.v : e < o.e; }
  };
  std::map<Key, std::pair<Key, int>> parent;
  std::deque<Key> queue;
  Key root{vertex, Exps(gamma.size(), 0)};
  parent[root] = {root, -1};
  queue.push_back(root);
  while (!queue.empty()) {
    Key k = queue.front();
    queue.pop_front();
    for (size_t ai = 0; ai < t.arrows.size(); ++ai) {
      const Arrow& ar = t.arrows[ai];
      if (ar.tail != k.v) continue;
      Exps ne = mul(k.e, lab.arrow_label[ai]);
      if (!divides(ne, gamma)) continue;  // exponents only grow; prune overshoot
      Key nk{ar.head, ne};
      if (parent.count(nk)) continue;
      parent[nk] = {k, static_cast<int>(ai)};
      if (nk.v == vertex && ne == gamma) {
        std::vector<int> arrows;
        Key at = nk;
        while (!(at.v == root.v && at.e == root.e && parent[at].second == -1)) {
          auto [prev, arrow] = parent[at];
          arrows.push_back(arrow);
          at = prev;
        }
        std::reverse(arrows.begin(), arrows.end());
        return PathWord{arrows, vertex};
      }
      queue.push_back(nk);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<CentralElement> central_elements(const Tiling& t, const std::vector<Relation>& rels,
                                             const Labeling& lab, const std::vector<Exps>& gammas,
                                             std::int64_t budget) {
  std::vector<CentralElement> out;
  for (const Exps& gamma : gammas) {
    CentralElement ce;
    ce.gamma = gamma;
    bool all_found = true;
    if (gamma == lab.sigma && degree(gamma) > 0) {
      for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v)
        ce.cycles.push_back(unit_cycle_at(t, v));
    } else {
      for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v) {
        auto c = cycle_with_image(t, lab, v, gamma);
        if (!c) {
          all_found = false;
          break;
        }
        ce.cycles.push_back(*c);
      }
    }
    if (!all_found) {
      ce.central = Tri::unknown;
      out.push_back(std::move(ce));
      continue;
    }
    ce.central = Tri::yes;
    for (size_t ai = 0; ai < t.arrows.size() && ce.central != Tri::no; ++ai) {
      const Arrow& ar = t.arrows[ai];
      // a * c_tail: the cycle at the tail acts first; c_head * a: the arrow first.
      PathWord p = ce.cycles[static_cast<size_t>(ar.tail)];
      p.arrows.push_back(static_cast<int>(ai));
      p.base = -1;
      PathWord q;
      q.arrows.push_back(static_cast<int>(ai));
      const PathWord& ch = ce.cycles[static_cast<size_t>(ar.head)];
      q.arrows.insert(q.arrows.end(), ch.arrows.begin(), ch.arrows.end());
      Equiv e = paths_equivalent(t, rels, p, q, budget);
      if (e == Equiv::inequivalent) ce.central = Tri::no;
      else if (e == Equiv::budget_exceeded && ce.central == Tri::yes) ce.central = Tri::unknown;
    }
    out.push_back(std::move(ce));
  }
  return out;
}

}  // namespace branetiles
