#include "branetiles/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace branetiles {

int Tiling::vertex_index(const std::string& id) const {
  for (size_t i = 0; i < vertex_ids.size(); ++i)
    if (vertex_ids[i] == id) return static_cast<int>(i);
  return -1;
}

int Tiling::arrow_index(const std::string& id) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].id == id) return static_cast<int>(i);
  return -1;
}

namespace {

struct Token {
  std::string text;
  int line, col;  // 1-based
};

// Lines of tokens; '#' starts a comment running to end of line.
std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> cur;
  int line = 1, col = 1;
  std::string word;
  int word_col = 0;
  bool in_comment = false;
  auto flush_word = [&]() {
    if (!word.empty()) {
      cur.push_back({word, line, word_col});
      word.clear();
    }
  };
  auto flush_line = [&]() {
    flush_word();
    if (!cur.empty()) lines.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush_line();
      ++line;
      col = 1;
      in_comment = false;
      continue;
    }
    if (!in_comment) {
      if (c == '#') {
        flush_word();
        in_comment = true;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        flush_word();
      } else {
        if (word.empty()) word_col = col;
        word += c;
      }
    }
    ++col;
  }
  flush_line();
  return lines;
}

int parse_int(const Token& tok) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok.text, &pos);
  } catch (const std::exception&) {
    throw input_error("expected integer, got '" + tok.text + "'", tok.line, tok.col);
  }
  if (pos != tok.text.size())
    throw input_error("expected integer, got '" + tok.text + "'", tok.line, tok.col);
  return v;
}

}  // namespace

Tiling parse_tiling(const std::string& text) {
  auto lines = tokenize(text);
  Tiling t;
  bool saw_name = false;

  // First pass: declarations (vertices, then arrow ids so faces may refer to
  // arrows in any order).
  std::map<std::string, int> vmap;
  std::map<std::string, int> amap;
  std::map<int, Vec2> coords;  // vertex index -> grid coordinate
  for (const auto& ln : lines) {
    const Token& kw = ln[0];
    if (kw.text == "vertex") {
      if (ln.size() != 2 && ln.size() != 5)
        throw input_error("vertex takes: vertex <id> [at <gx> <gy>]", kw.line, kw.col);
      const Token& id = ln[1];
      if (vmap.count(id.text))
        throw input_error("duplicate vertex id '" + id.text + "'", id.line, id.col);
      int idx = static_cast<int>(t.vertex_ids.size());
      vmap[id.text] = idx;
      t.vertex_ids.push_back(id.text);
      if (ln.size() == 5) {
        if (ln[2].text != "at")
          throw input_error("expected 'at', got '" + ln[2].text + "'", ln[2].line, ln[2].col);
        coords[idx] = {parse_int(ln[3]), parse_int(ln[4])};
      }
    } else if (kw.text == "arrow") {
      if (ln.size() != 6 && ln.size() != 8)
        throw input_error("arrow takes: arrow <id> <tail> <head> <dx> <dy> [label <monomial>]",
                          kw.line, kw.col);
      const Token& id = ln[1];
      if (amap.count(id.text))
        throw input_error("duplicate arrow id '" + id.text + "'", id.line, id.col);
      amap[id.text] = static_cast<int>(amap.size());
    }
  }

  // Second pass: everything, with ids resolvable.
  t.labels.assign(amap.size(), "");
  std::set<int> contracted;
  for (const auto& ln : lines) {
    const Token& kw = ln[0];
    if (kw.text == "tiling") {
      if (ln.size() != 2) throw input_error("tiling takes: tiling <name>", kw.line, kw.col);
      if (saw_name) throw input_error("duplicate tiling line", kw.line, kw.col);
      saw_name = true;
      t.name = ln[1].text;
    } else if (kw.text == "vertex") {
      // handled in the first pass
    } else if (kw.text == "arrow") {
      Arrow a;
      a.id = ln[1].text;
      auto vt = vmap.find(ln[2].text);
      if (vt == vmap.end())
        throw input_error("unknown vertex '" + ln[2].text + "'", ln[2].line, ln[2].col);
      auto vh = vmap.find(ln[3].text);
      if (vh == vmap.end())
        throw input_error("unknown vertex '" + ln[3].text + "'", ln[3].line, ln[3].col);
      a.tail = vt->second;
      a.head = vh->second;
      a.off = {parse_int(ln[4]), parse_int(ln[5])};
      if (ln.size() == 8) {
        if (ln[6].text != "label")
          throw input_error("expected 'label', got '" + ln[6].text + "'", ln[6].line, ln[6].col);
        t.labels[t.arrows.size()] = ln[7].text;
      }
      t.arrows.push_back(a);
    } else if (kw.text == "face") {
      if (ln.size() < 3) throw input_error("face takes: face <+|-> <arrow ids...>", kw.line, kw.col);
      Face f;
      if (ln[1].text == "+")
        f.sign = +1;
      else if (ln[1].text == "-")
        f.sign = -1;
      else
        throw input_error("face sign must be '+' or '-', got '" + ln[1].text + "'", ln[1].line,
                          ln[1].col);
      for (size_t i = 2; i < ln.size(); ++i) {
        auto it = amap.find(ln[i].text);
        if (it == amap.end())
          throw input_error("unknown arrow '" + ln[i].text + "'", ln[i].line, ln[i].col);
        f.boundary.push_back(it->second);
      }
      t.faces.push_back(f);
    } else if (kw.text == "contract") {
      if (ln.size() < 2) throw input_error("contract takes: contract <arrow ids...>", kw.line, kw.col);
      for (size_t i = 1; i < ln.size(); ++i) {
        auto it = amap.find(ln[i].text);
        if (it == amap.end())
          throw input_error("unknown arrow '" + ln[i].text + "'", ln[i].line, ln[i].col);
        contracted.insert(it->second);
      }
    } else {
      throw input_error("unknown directive '" + kw.text + "'", kw.line, kw.col);
    }
  }

  if (!saw_name) throw input_error("missing tiling line");

  t.contracted.assign(contracted.begin(), contracted.end());

  // Grid coordinates are all-or-none.
  if (!coords.empty()) {
    if (coords.size() != t.vertex_ids.size())
      throw input_error("grid coordinates must be given for all vertices or none");
    std::vector<Vec2> g(t.vertex_ids.size());
    for (auto& [idx, v] : coords) g[static_cast<size_t>(idx)] = v;
    t.grid = std::move(g);
  }

  // Labels are all-or-none.
  size_t labeled = 0;
  for (const auto& s : t.labels)
    if (!s.empty()) ++labeled;
  if (labeled != 0 && labeled != t.labels.size())
    throw input_error("labels must be given for all arrows or none");
  if (labeled == 0) t.labels.assign(t.arrows.size(), "");

  return t;
}

std::string print_tiling(const Tiling& t) {
  std::ostringstream out;
  out << "tiling " << (t.name.empty() ? "untitled" : t.name) << "\n";
  for (size_t v = 0; v < t.vertex_ids.size(); ++v) {
    out << "vertex " << t.vertex_ids[v];
    if (t.grid) out << " at " << (*t.grid)[v][0] << " " << (*t.grid)[v][1];
    out << "\n";
  }
  for (size_t a = 0; a < t.arrows.size(); ++a) {
    const Arrow& ar = t.arrows[a];
    out << "arrow " << ar.id << " " << t.vertex_ids[static_cast<size_t>(ar.tail)] << " "
        << t.vertex_ids[static_cast<size_t>(ar.head)] << " " << ar.off[0] << " " << ar.off[1];
    if (t.has_labels()) out << " label " << t.labels[a];
    out << "\n";
  }
  for (const Face& f : t.faces) {
    out << "face " << (f.sign > 0 ? "+" : "-");
    for (int a : f.boundary) out << " " << t.arrows[static_cast<size_t>(a)].id;
    out << "\n";
  }
  if (!t.contracted.empty()) {
    out << "contract";
    for (int a : t.contracted) out << " " << t.arrows[static_cast<size_t>(a)].id;
    out << "\n";
  }
  return out.str();
}

ValidationReport validate_tiling(const Tiling& t) {
  int nv = static_cast<int>(t.vertex_ids.size());
  int na = static_cast<int>(t.arrows.size());
  // Malformed structure (dangling indices) is an error, not a validation result.
  for (const Arrow& a : t.arrows)
    if (a.tail < 0 || a.tail >= nv || a.head < 0 || a.head >= nv)
      throw input_error("arrow '" + a.id + "' has a dangling endpoint");
  for (const Face& f : t.faces)
    for (int a : f.boundary)
      if (a < 0 || a >= na) throw input_error("face references a dangling arrow index");
  for (int a : t.contracted)
    if (a < 0 || a >= na) throw input_error("contract references a dangling arrow index");
  if (t.grid && t.grid->size() != t.vertex_ids.size())
    throw input_error("grid coordinates must be given for all vertices or none");

  ValidationReport rep;
  auto violate = [&](const std::string& inv, const std::string& detail) {
    rep.ok = false;
    rep.violations.push_back({inv, detail});
  };

  int nf = static_cast<int>(t.faces.size());
  if (nv - na + nf != 0)
    violate("euler-count", "vertices - arrows + faces = " + std::to_string(nv - na + nf) +
                               " (expected 0)");

  std::vector<int> plus_count(static_cast<size_t>(na), 0), minus_count(static_cast<size_t>(na), 0);
  for (const Face& f : t.faces)
    for (int a : f.boundary) (f.sign > 0 ? plus_count : minus_count)[static_cast<size_t>(a)]++;
  for (int a = 0; a < na; ++a) {
    if (plus_count[static_cast<size_t>(a)] != 1 || minus_count[static_cast<size_t>(a)] != 1)
      violate("face-cover", "arrow '" + t.arrows[static_cast<size_t>(a)].id + "' lies on " +
                                std::to_string(plus_count[static_cast<size_t>(a)]) +
                                " positive and " +
                                std::to_string(minus_count[static_cast<size_t>(a)]) +
                                " negative faces (expected 1 and 1)");
  }

  for (int fi = 0; fi < nf; ++fi) {
    const Face& f = t.faces[static_cast<size_t>(fi)];
    if (f.boundary.size() < 2) {
      violate("face-closure", "face " + std::to_string(fi) + " has length " +
                                  std::to_string(f.boundary.size()) + " (expected >= 2)");
      continue;
    }
    size_t m = f.boundary.size();
    bool closed = true;
    for (size_t i = 0; i < m; ++i) {
      const Arrow& cur = t.arrows[static_cast<size_t>(f.boundary[i])];
      const Arrow& nxt = t.arrows[static_cast<size_t>(f.boundary[(i + 1) % m])];
      if (cur.head != nxt.tail) closed = false;
    }
    if (!closed) violate("face-closure", "face " + std::to_string(fi) + " is not a closed cycle");
    Vec2 s{0, 0};
    for (int a : f.boundary) s = add(s, t.arrows[static_cast<size_t>(a)].off);
    if (s != Vec2{0, 0})
      violate("offset-sum", "face " + std::to_string(fi) + " has offset sum (" +
                                std::to_string(s[0]) + "," + std::to_string(s[1]) +
                                ") (expected (0,0))");
  }

  return rep;
}

bool path_composable(const Tiling& t, const PathWord& p) {
  for (size_t i = 0; i + 1 < p.arrows.size(); ++i)
    if (t.arrows[static_cast<size_t>(p.arrows[i])].head !=
        t.arrows[static_cast<size_t>(p.arrows[i + 1])].tail)
      return false;
  return true;
}

int path_tail(const Tiling& t, const PathWord& p) {
  return p.arrows.empty() ? p.base : t.arrows[static_cast<size_t>(p.arrows.front())].tail;
}

int path_head(const Tiling& t, const PathWord& p) {
  return p.arrows.empty() ? p.base : t.arrows[static_cast<size_t>(p.arrows.back())].head;
}

Vec2 path_homology(const Tiling& t, const PathWord& p) {
  Vec2 s{0, 0};
  for (int a : p.arrows) s = add(s, t.arrows[static_cast<size_t>(a)].off);
  return s;
}

std::tuple<int, int, Vec2> lift_endpoints(const Tiling& t, const PathWord& p) {
  if (!path_composable(t, p)) throw input_error("path does not compose");
  if (p.arrows.empty() && (p.base < 0 || p.base >= static_cast<int>(t.vertex_ids.size())))
    throw input_error("empty path without a base vertex");
  return {path_tail(t, p), path_head(t, p), path_homology(t, p)};
}

std::string path_to_string(const Tiling& t, const PathWord& p) {
  if (p.arrows.empty())
    return "e_" + (p.base >= 0 ? t.vertex_ids[static_cast<size_t>(p.base)] : std::string("?"));
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += " ";
    out += t.arrows[static_cast<size_t>(*it)].id;
  }
  return out;
}

PathWord path_from_product_tokens(const Tiling& t, const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw input_error("empty path");
  PathWord p;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    int a = t.arrow_index(*it);
    if (a < 0) throw input_error("unknown arrow '" + *it + "'");
    p.arrows.push_back(a);
  }
  if (!path_composable(t, p)) throw input_error("path does not compose (product order expected)");
  return p;
}

PathWord unit_cycle_at(const Tiling& t, int vertex) {
  std::vector<std::string> best_ids;
  PathWord best;
  for (const Face& f : t.faces) {
    size_t m = f.boundary.size();
    for (size_t k = 0; k < m; ++k) {
      if (t.arrows[static_cast<size_t>(f.boundary[k])].tail != vertex) continue;
      std::vector<int> rot;
      rot.reserve(m);
      for (size_t i = 0; i < m; ++i) rot.push_back(f.boundary[(k + i) % m]);
      std::vector<std::string> ids;
      ids.reserve(m);
      for (int a : rot) ids.push_back(t.arrows[static_cast<size_t>(a)].id);
      if (best_ids.empty() || ids < best_ids) {
        best_ids = std::move(ids);
        best.arrows = std::move(rot);
      }
    }
  }
  if (best_ids.empty())
    throw input_error("no unit cycle based at vertex '" +
                      t.vertex_ids[static_cast<size_t>(vertex)] + "'");
  return best;
}

std::vector<PathWord> center_candidate_u(const Tiling& t) {
  std::vector<PathWord> out;
  for (int v = 0; v < static_cast<int>(t.vertex_ids.size()); ++v)
    out.push_back(unit_cycle_at(t, v));
  return out;
}

}  // namespace branetiles
