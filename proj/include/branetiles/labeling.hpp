#pragma once
// Arrow labelings into a commutative polynomial ring: the path image map τ,
// the eight-direction grid labeling, and bounded verification of the three
// impression properties (uniform unit-cycle image, relation compatibility,
// separation of inequivalent paths).

#include "monomial.hpp"
#include "rewrite.hpp"
#include "tiling.hpp"

namespace branetiles {

struct Labeling {
  std::vector<std::string> vars;
  std::vector<Exps> arrow_label;  // per arrow index
  Exps sigma;                     // image of face 0 (uniformity is a checked property)
};

// Multiplicative path image; the empty path maps to 1.
Exps tau_path(const Labeling& lab, const PathWord& p);
std::string tau_path_string(const Labeling& lab, const PathWord& p);

// Offset of an arrow's lift between the chosen vertex lifts: needs grid
// coordinates. displacement(a) = grid[head] - grid[tail] + off(a).
Vec2 displacement(const Tiling& t, int arrow);

// The eight-direction labeling over (x1,x2,y1,y2): each displacement must be
// one of the eight unit steps. When only the three directions up, left and
// down-right occur, the three-variable labeling over (x,y,z) is used instead.
// Throws input_error("unsupported embedding: ...") otherwise.
Labeling square_labeling(const Tiling& t);

// Labeling read from explicit per-arrow label text (requires labels on all
// arrows). Variables are the label names, sorted.
Labeling labeling_from_file(const Tiling& t);

enum class Tri { yes, no, unknown };

struct LabelingReport {
  bool sigma_uniform = false;
  bool relation_compatible = false;
  Tri separation = Tri::unknown;  // inequivalent paths with equal endpoints,
                                  // homology and image exist? no -> separation holds
  int separation_bound = 0;
  std::optional<std::pair<PathWord, PathWord>> separation_witness;
};

LabelingReport verify_labeling(const Tiling& t, const std::vector<Relation>& rels,
                               const Labeling& lab, int max_len, std::int64_t budget = 1'000'000);

}  // namespace branetiles
