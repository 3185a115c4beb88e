#include "branetiles/labeling.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace branetiles {

Exps tau_path(const Labeling& lab, const PathWord& p) {
  Exps e(lab.vars.size(), 0);
  for (int a : p.arrows) {
    const Exps& l = lab.arrow_label[static_cast<size_t>(a)];
    for (size_t i = 0; i < e.size(); ++i) e[i] += l[i];
  }
  return e;
}

std::string tau_path_string(const Labeling& lab, const PathWord& p) {
  return monomial_to_string(tau_path(lab, p), lab.vars);
}

Vec2 displacement(const Tiling& t, int arrow) {
  if (!t.grid) throw input_error("displacement requires grid coordinates");
  const Arrow& a = t.arrows[static_cast<size_t>(arrow)];
  return add(sub((*t.grid)[static_cast<size_t>(a.head)], (*t.grid)[static_cast<size_t>(a.tail)]),
             a.off);
}

namespace {

Exps face_image(const Tiling& t, const Labeling& lab, const Face& f) {
  Exps e(lab.vars.size(), 0);
  for (int a : f.boundary) {
    const Exps& l = lab.arrow_label[static_cast<size_t>(a)];
    for (size_t i = 0; i < e.size(); ++i) e[i] += l[i];
  }
  return e;
}

}  // namespace

Labeling square_labeling(const Tiling& t) {
  if (!t.grid) throw input_error("unsupported embedding: grid coordinates are required");
  // Eight unit steps, indexed by displacement.
  const std::map<Vec2, std::string> four_var = {
      {{1, 0}, "x1"},        {{-1, 0}, "x2"},      {{0, 1}, "y1"},      {{0, -1}, "y2"},
      {{1, 1}, "x1*y1"},     {{-1, -1}, "x2*y2"},  {{1, -1}, "x1*y2"},  {{-1, 1}, "x2*y1"}};
  std::set<Vec2> present;
  for (size_t a = 0; a < t.arrows.size(); ++a) {
    Vec2 d = displacement(t, static_cast<int>(a));
    if (!four_var.count(d))
      throw input_error("unsupported embedding: arrow '" + t.arrows[a].id + "' has displacement (" +
                        std::to_string(d[0]) + "," + std::to_string(d[1]) + ")");
    present.insert(d);
  }

  Labeling lab;
  const std::set<Vec2> trio = {{0, 1}, {-1, 0}, {1, -1}};  // up, left, down-right
  bool three = std::includes(trio.begin(), trio.end(), present.begin(), present.end());
  if (three) {
    lab.vars = {"x", "y", "z"};
    const std::map<Vec2, std::string> three_var = {{{0, 1}, "x"}, {{-1, 0}, "y"}, {{1, -1}, "z"}};
    for (size_t a = 0; a < t.arrows.size(); ++a) {
      auto m = parse_monomial(three_var.at(displacement(t, static_cast<int>(a))), lab.vars);
      lab.arrow_label.push_back(*m);
    }
  } else {
    lab.vars = {"x1", "x2", "y1", "y2"};
    for (size_t a = 0; a < t.arrows.size(); ++a) {
      auto m = parse_monomial(four_var.at(displacement(t, static_cast<int>(a))), lab.vars);
      lab.arrow_label.push_back(*m);
    }
  }
  lab.sigma = t.faces.empty() ? Exps(lab.vars.size(), 0) : face_image(t, lab, t.faces[0]);
  return lab;
}

Labeling labeling_from_file(const Tiling& t) {
  if (!t.has_labels()) throw input_error("tiling has no explicit labels");
  std::string err;
  auto vars = collect_variables(t.labels, &err);
  if (!vars) throw input_error(err);
  Labeling lab;
  lab.vars = *vars;
  for (size_t a = 0; a < t.arrows.size(); ++a) {
    auto m = parse_monomial(t.labels[a], lab.vars, &err);
    if (!m) throw input_error("arrow '" + t.arrows[a].id + "': " + err);
    lab.arrow_label.push_back(*m);
  }
  lab.sigma = t.faces.empty() ? Exps(lab.vars.size(), 0) : face_image(t, lab, t.faces[0]);
  return lab;
}

LabelingReport verify_labeling(const Tiling& t, const std::vector<Relation>& rels,
                               const Labeling& lab, int max_len, std::int64_t budget) {
  LabelingReport rep;
  rep.separation_bound = max_len;

  rep.sigma_uniform = true;
  for (const Face& f : t.faces)
    if (face_image(t, lab, f) != lab.sigma) rep.sigma_uniform = false;

  rep.relation_compatible = true;
  for (const Relation& r : rels)
    if (tau_path(lab, r.left) != tau_path(lab, r.right)) rep.relation_compatible = false;

  // Separation: within every (tail, head, homology, image) bucket of paths of
  // length <= max_len, all words must be equivalent. Buckets are resolved with
  // full class closures, so a pair split across closures is a proven witness.
  struct BucketKey {
    int tail, head;
    Vec2 hom;
    Exps img;
    bool operator<(const BucketKey& o) const {
      return std::tie(tail, head, hom, img) < std::tie(o.tail, o.head, o.hom, o.img);
    }
  };
  std::map<BucketKey, std::vector<PathWord>> buckets;

  // Depth-first enumeration in arrow-id order, so every bucket's word list is
  // deterministic.
  std::vector<int> arrows_by_id(t.arrows.size());
  for (size_t i = 0; i < arrows_by_id.size(); ++i) arrows_by_id[i] = static_cast<int>(i);
  std::sort(arrows_by_id.begin(), arrows_by_id.end(), [&](int a, int b) {
    return t.arrows[static_cast<size_t>(a)].id < t.arrows[static_cast<size_t>(b)].id;
  });
  std::vector<std::vector<int>> out_by_vertex(t.vertex_ids.size());
  for (int a : arrows_by_id)
    out_by_vertex[static_cast<size_t>(t.arrows[static_cast<size_t>(a)].tail)].push_back(a);

  std::vector<PathWord> frontier;
  for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v)
    frontier.push_back(PathWord{{}, v});
  for (int L = 1; L <= max_len; ++L) {
    std::vector<PathWord> next;
    for (const PathWord& w : frontier) {
      int at = path_head(t, w);
      for (int a : out_by_vertex[static_cast<size_t>(at)]) {
        PathWord nw = w;
        nw.arrows.push_back(a);
        nw.base = -1;
        BucketKey key{path_tail(t, nw), path_head(t, nw), path_homology(t, nw), tau_path(lab, nw)};
        buckets[key].push_back(nw);
        next.push_back(std::move(nw));
      }
    }
    frontier = std::move(next);
  }

  rep.separation = Tri::yes;
  for (auto& [key, words] : buckets) {
    if (words.size() < 2) continue;
    // Representatives of the classes seen so far in this bucket.
    std::vector<std::set<std::vector<int>>> classes;
    std::vector<const PathWord*> reps;
    for (const PathWord& w : words) {
      bool known = false;
      for (const auto& cls : classes)
        if (cls.count(w.arrows)) {
          known = true;
          break;
        }
      if (known) continue;
      EquivClass cls = equivalence_class(t, rels, w, budget);
      if (!cls.exhausted) {
        if (rep.separation == Tri::yes) rep.separation = Tri::unknown;
        break;
      }
      classes.emplace_back(cls.words.begin(), cls.words.end());
      reps.push_back(&w);
      if (reps.size() >= 2) {
        rep.separation = Tri::no;
        rep.separation_witness = std::make_pair(*reps[0], *reps[1]);
        return rep;
      }
    }
    if (rep.separation == Tri::unknown) break;
  }
  return rep;
}

}  // namespace branetiles
