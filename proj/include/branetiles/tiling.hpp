#pragma once
// Quivers embedded on a two-torus: file format, validation, paths and lifts.
//
// The embedding is combinatorial: every arrow carries an integer offset
// 2-vector (the deck translation its lift crosses). Faces are signed oriented
// cycles; on a consistent tiling every face has offset sum (0,0), every arrow
// lies on exactly one positive and one negative face, and the Euler count
// #vertices - #arrows + #faces is zero.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace branetiles {

// Malformed input (parse errors, inconsistent construction). Line/col are
// 1-based; 0 means "not tied to a source location".
struct input_error : std::runtime_error {
  int line = 0, col = 0;
  input_error(const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ", col " +
                                           std::to_string(col_) + ": " + msg
                                     : msg),
        line(line_),
        col(col_) {}
};

using Vec2 = std::array<int, 2>;

inline Vec2 add(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 sub(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }

struct Arrow {
  std::string id;
  int tail = -1, head = -1;  // vertex indices
  Vec2 off{0, 0};
};

struct Face {
  int sign = +1;              // +1 or -1
  std::vector<int> boundary;  // arrow indices, traversal order (cyclic)
};

struct Tiling {
  std::string name;
  std::vector<std::string> vertex_ids;
  std::optional<std::vector<Vec2>> grid;  // per-vertex coordinates, all-or-none
  std::vector<Arrow> arrows;
  std::vector<Face> faces;
  std::vector<int> contracted;        // arrow indices from `contract` lines (sorted, unique)
  std::vector<std::string> labels;    // per-arrow label text; all empty or all set

  int vertex_index(const std::string& id) const;  // -1 if unknown
  int arrow_index(const std::string& id) const;   // -1 if unknown
  bool has_labels() const { return !labels.empty() && !labels[0].empty(); }
};

Tiling parse_tiling(const std::string& text);  // throws input_error
std::string print_tiling(const Tiling& t);     // canonical form; parse(print(t)) == t

struct Violation {
  std::string invariant;  // "euler-count" | "face-cover" | "face-closure" | "offset-sum"
  std::string detail;
};
struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};
// Throws input_error on dangling indices (malformed input, distinct from a
// validation failure); otherwise reports every violated invariant.
ValidationReport validate_tiling(const Tiling& t);

// Paths are arrow-index sequences in traversal order: arrows[0] acts first,
// and consecutive arrows compose head-to-tail. Product order (used for all
// printing and CLI arguments; rightmost factor acts first) is the reverse.
// The empty path carries its base vertex.
struct PathWord {
  std::vector<int> arrows;
  int base = -1;
};

bool path_composable(const Tiling& t, const PathWord& p);
int path_tail(const Tiling& t, const PathWord& p);
int path_head(const Tiling& t, const PathWord& p);
Vec2 path_homology(const Tiling& t, const PathWord& p);
// (tail, head, offset sum); throws input_error if the word does not compose.
std::tuple<int, int, Vec2> lift_endpoints(const Tiling& t, const PathWord& p);

// Product order, space-separated ids; "e_<vertex>" for an empty path.
std::string path_to_string(const Tiling& t, const PathWord& p);
// Tokens in product order; throws input_error on unknown ids or non-composable words.
PathWord path_from_product_tokens(const Tiling& t, const std::vector<std::string>& tokens);

// The lexicographically least unit cycle based at `vertex` (comparing rotations
// of all incident face boundaries by their arrow-id sequences).
PathWord unit_cycle_at(const Tiling& t, int vertex);
// One unit cycle per vertex, indexed by vertex.
std::vector<PathWord> center_candidate_u(const Tiling& t);

}  // namespace branetiles
