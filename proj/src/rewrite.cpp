#include "branetiles/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "branetiles/labeling.hpp"

namespace branetiles {

namespace {

// Internally a word is a byte string of arrow indices in traversal order.
// Short words stay inside the small-string buffer, which keeps the BFS cheap.
using Word = std::string;

Word to_word(const std::vector<int>& arrows) {
  Word w;
  w.reserve(arrows.size());
  for (int a : arrows) w.push_back(static_cast<char>(a));
  return w;
}

std::vector<int> from_word(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (char c : w) out.push_back(static_cast<int>(static_cast<unsigned char>(c)));
  return out;
}

struct Rule {
  Word from, to;
};

std::vector<Rule> make_rules(const std::vector<Relation>& rels) {
  std::vector<Rule> rules;
  rules.reserve(rels.size() * 2);
  for (const Relation& r : rels) {
    Word l = to_word(r.left.arrows), rr = to_word(r.right.arrows);
    rules.push_back({l, rr});
    rules.push_back({rr, l});
  }
  return rules;
}

void neighbors_into(const Word& w, const std::vector<Rule>& rules, std::vector<Word>& out) {
  out.clear();
  for (size_t pos = 0; pos <= w.size(); ++pos) {
    for (const Rule& rule : rules) {
      size_t n = rule.from.size();
      if (n == 0 || pos + n > w.size()) continue;
      if (w.compare(pos, n, rule.from) != 0) continue;
      Word nb;
      nb.reserve(w.size() - n + rule.to.size());
      nb.append(w, 0, pos);
      nb.append(rule.to);
      nb.append(w, pos + n, w.size() - pos - n);
      out.push_back(std::move(nb));
    }
  }
}

// BFS over the rewrite graph from `start`. Visits at most `budget` words.
// If `target` is non-null, stops as soon as it is reached. Otherwise collects
// the whole class. Returns true when the search exhausted the class.
struct ClosureResult {
  std::unordered_set<Word> seen;
  bool exhausted = true;
  bool found_target = false;
};

ClosureResult closure_bfs(const Word& start, const std::vector<Rule>& rules, const Word* target,
                          std::int64_t budget) {
  ClosureResult res;
  if (target && start == *target) {
    res.found_target = true;
    res.seen.insert(start);
    return res;
  }
  std::deque<Word> queue;
  res.seen.insert(start);
  queue.push_back(start);
  std::vector<Word> nbs;
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    neighbors_into(w, rules, nbs);
    for (Word& nb : nbs) {
      if (res.seen.count(nb)) continue;
      if (target && nb == *target) {
        res.found_target = true;
        res.seen.insert(nb);
        return res;
      }
      if (static_cast<std::int64_t>(res.seen.size()) >= budget) {
        res.exhausted = false;
        return res;
      }
      res.seen.insert(nb);
      queue.push_back(nb);
    }
  }
  return res;
}

}  // namespace

std::vector<Relation> superpotential_relations(const Tiling& t) {
  // Arrows ordered by id.
  std::vector<int> order(t.arrows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return t.arrows[static_cast<size_t>(a)].id < t.arrows[static_cast<size_t>(b)].id; });

  std::vector<Relation> rels;
  for (int a : order) {
    PathWord sides[2];
    bool have[2] = {false, false};
    for (const Face& f : t.faces) {
      int occurrences = 0;
      size_t at = 0;
      for (size_t i = 0; i < f.boundary.size(); ++i)
        if (f.boundary[i] == a) {
          ++occurrences;
          at = i;
        }
      if (occurrences == 0) continue;
      int slot = f.sign > 0 ? 0 : 1;
      if (occurrences > 1 || have[slot])
        throw input_error("arrow '" + t.arrows[static_cast<size_t>(a)].id +
                          "' does not lie on exactly one positive and one negative face");
      if (f.boundary.size() < 2)
        throw input_error("face of length < 2 gives no relation for arrow '" +
                          t.arrows[static_cast<size_t>(a)].id + "'");
      PathWord d;
      for (size_t i = 1; i < f.boundary.size(); ++i)
        d.arrows.push_back(f.boundary[(at + i) % f.boundary.size()]);
      sides[slot] = std::move(d);
      have[slot] = true;
    }
    if (!have[0] || !have[1])
      throw input_error("arrow '" + t.arrows[static_cast<size_t>(a)].id +
                        "' does not lie on exactly one positive and one negative face");
    rels.push_back({a, sides[0], sides[1]});
  }
  return rels;
}

std::vector<std::vector<int>> rewrite_neighbors(const std::vector<int>& word,
                                                const std::vector<Relation>& rels) {
  std::vector<Rule> rules = make_rules(rels);
  std::vector<Word> nbs;
  neighbors_into(to_word(word), rules, nbs);
  std::vector<std::vector<int>> out;
  out.reserve(nbs.size());
  for (const Word& nb : nbs) out.push_back(from_word(nb));
  return out;
}

Equiv paths_equivalent(const Tiling& t, const std::vector<Relation>& rels, const PathWord& p,
                       const PathWord& q, std::int64_t budget) {
  auto [pt, ph, phom] = lift_endpoints(t, p);
  auto [qt, qh, qhom] = lift_endpoints(t, q);
  if (pt != qt || ph != qh || phom != qhom) return Equiv::inequivalent;
  if (p.arrows == q.arrows) return Equiv::equivalent;
  if (p.arrows.empty() || q.arrows.empty()) return Equiv::inequivalent;  // rewrites keep length >= 1

  std::vector<Rule> rules = make_rules(rels);
  Word pw = to_word(p.arrows), qw = to_word(q.arrows);
  ClosureResult res = closure_bfs(pw, rules, &qw, budget);
  if (res.found_target) return Equiv::equivalent;
  return res.exhausted ? Equiv::inequivalent : Equiv::budget_exceeded;
}

EquivClass equivalence_class(const Tiling& t, const std::vector<Relation>& rels, const PathWord& p,
                             std::int64_t budget) {
  if (!path_composable(t, p)) throw input_error("path does not compose");
  std::vector<Rule> rules = make_rules(rels);
  ClosureResult res = closure_bfs(to_word(p.arrows), rules, nullptr, budget);
  EquivClass cls;
  cls.exhausted = res.exhausted;
  for (const Word& w : res.seen) cls.words.push_back(from_word(w));
  std::sort(cls.words.begin(), cls.words.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return cls;
}

namespace {

// Sort key used for the deterministic pair order: length, then the printed
// (product-order) id sequence.
std::vector<std::string> product_ids(const Tiling& t, const Word& w) {
  std::vector<std::string> ids;
  ids.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    ids.push_back(t.arrows[static_cast<size_t>(static_cast<unsigned char>(*it))].id);
  return ids;
}

}  // namespace

CancelResult cancellativity_search(const Tiling& t, const std::vector<Relation>& rels, int max_len,
                                   std::int64_t budget, const Labeling* lab) {
  CancelResult result;
  result.max_len = max_len;
  if (t.arrows.size() >= 255) throw input_error("too many arrows for the search (max 254)");

  // Image grouping is sound only when relations preserve the labeling.
  bool use_images = false;
  if (lab) {
    use_images = true;
    for (const Relation& r : rels)
      if (tau_path(*lab, r.left) != tau_path(*lab, r.right)) use_images = false;
  }

  std::vector<Rule> rules = make_rules(rels);

  // Arrows in id order, bucketed by tail for the word enumeration and by
  // head/tail for extensions.
  std::vector<int> arrows_by_id(t.arrows.size());
  for (size_t i = 0; i < arrows_by_id.size(); ++i) arrows_by_id[i] = static_cast<int>(i);
  std::sort(arrows_by_id.begin(), arrows_by_id.end(), [&](int a, int b) {
    return t.arrows[static_cast<size_t>(a)].id < t.arrows[static_cast<size_t>(b)].id;
  });
  std::vector<std::vector<int>> out_by_vertex(t.vertex_ids.size());
  for (int a : arrows_by_id) out_by_vertex[static_cast<size_t>(t.arrows[static_cast<size_t>(a)].tail)].push_back(a);

  struct GroupData {
    std::vector<Word> words;                   // enumerated words, insertion order
    std::vector<int> component;                // restricted-rewrite union-find
    std::unordered_map<Word, int> index_of;    // word -> index in `words`
    bool indeterminate = false;
  };
  // Group key: tail, head, homology, and (optionally) the monomial image.
  using Key = std::string;
  auto key_of = [&](const Word& w) {
    Vec2 hom{0, 0};
    Exps img;
    if (use_images) img.assign(lab->vars.size(), 0);
    for (char c : w) {
      size_t ai = static_cast<size_t>(static_cast<unsigned char>(c));
      hom = add(hom, t.arrows[ai].off);
      if (use_images)
        for (size_t i = 0; i < img.size(); ++i) img[i] += lab->arrow_label[ai][i];
    }
    Key key;
    key.push_back(static_cast<char>(t.arrows[static_cast<size_t>(static_cast<unsigned char>(w.front()))].tail));
    key.push_back(static_cast<char>(t.arrows[static_cast<size_t>(static_cast<unsigned char>(w.back()))].head));
    auto push_int = [&key](int v) {
      key.push_back(static_cast<char>((v >> 8) & 0xff));
      key.push_back(static_cast<char>(v & 0xff));
    };
    push_int(hom[0] + 0x4000);
    push_int(hom[1] + 0x4000);
    for (int e : img) push_int(e);
    return key;
  };

  std::map<Key, GroupData> groups;

  // Union-find over word indices within one group.
  auto find_root = [](std::vector<int>& parent, int i) {
    while (parent[static_cast<size_t>(i)] != i) {
      parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
      i = parent[static_cast<size_t>(i)];
    }
    return i;
  };

  // Cached closures of already-confirmed classes, keyed by any member word.
  std::unordered_map<Word, std::shared_ptr<ClosureResult>> closure_cache;
  auto closure_of = [&](const Word& w) {
    auto it = closure_cache.find(w);
    if (it != closure_cache.end()) return it->second;
    auto res = std::make_shared<ClosureResult>(closure_bfs(w, rules, nullptr, budget));
    if (res->exhausted)
      for (const Word& m : res->seen) closure_cache[m] = res;
    else
      closure_cache[w] = res;
    return res;
  };

  constexpr std::int64_t kMaxWords = 8'000'000;
  std::int64_t total_words = 0;

  std::vector<Word> frontier;  // words of the previous length
  for (size_t v = 0; v < t.vertex_ids.size(); ++v) frontier.push_back(Word());
  std::vector<Word> nbs;

  for (int L = 1; L <= max_len; ++L) {
    // Extend every word of length L-1 by one arrow (id order under DFS order
    // is preserved because the frontier is itself in generation order).
    std::vector<Word> next;
    std::vector<std::pair<Key, int>> added;  // (group key, index within group)
    for (const Word& w : frontier) {
      int at;
      if (w.empty())
        at = static_cast<int>(&w - frontier.data());  // frontier of length 0: one per vertex
      else
        at = t.arrows[static_cast<size_t>(static_cast<unsigned char>(w.back()))].head;
      for (int a : out_by_vertex[static_cast<size_t>(at)]) {
        Word nw = w;
        nw.push_back(static_cast<char>(a));
        if (++total_words > kMaxWords) {
          result.indeterminate_pairs++;  // enumeration truncated
          return result;
        }
        Key k = key_of(nw);
        GroupData& g = groups[k];
        int idx = static_cast<int>(g.words.size());
        g.index_of.emplace(nw, idx);
        g.words.push_back(nw);
        g.component.push_back(idx);
        added.emplace_back(std::move(k), idx);
        next.push_back(std::move(nw));
      }
    }
    frontier = std::move(next);

    // Restricted rewrite edges discovered from the new words.
    for (const auto& [k, idx] : added) {
      GroupData& g = groups[k];
      neighbors_into(g.words[static_cast<size_t>(idx)], rules, nbs);
      for (const Word& nb : nbs) {
        auto it = g.index_of.find(nb);
        if (it == g.index_of.end()) continue;  // outside the enumerated set (or other group: impossible)
        int ra = find_root(g.component, idx), rb = find_root(g.component, it->second);
        if (ra != rb) g.component[static_cast<size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
    }

    // Candidate pairs at this length: group members in distinct components
    // where at least one word has length L.
    struct Candidate {
      std::vector<std::string> pk, qk;  // printed-order sort keys
      Word p, q;
      Key group;
    };
    std::vector<Candidate> cands;
    for (auto& [k, g] : groups) {
      // Quick skip: single component.
      bool multi = false;
      for (size_t i = 0; i < g.component.size() && !multi; ++i)
        if (find_root(g.component, static_cast<int>(i)) != 0) multi = true;
      if (!multi || g.indeterminate) continue;

      // Refine with full closures: components whose true classes coincide get
      // merged; what remains is genuinely inequivalent.
      std::vector<int> comps;
      for (size_t i = 0; i < g.words.size(); ++i)
        if (find_root(g.component, static_cast<int>(i)) == static_cast<int>(i))
          comps.push_back(static_cast<int>(i));
      for (size_t ci = 0; ci < comps.size(); ++ci) {
        int rep = comps[static_cast<size_t>(ci)];
        if (find_root(g.component, rep) != rep) continue;  // merged meanwhile
        auto cls = closure_of(g.words[static_cast<size_t>(rep)]);
        if (!cls->exhausted) {
          g.indeterminate = true;
          result.indeterminate_pairs++;
          break;
        }
        for (size_t cj = ci + 1; cj < comps.size(); ++cj) {
          int other = comps[static_cast<size_t>(cj)];
          if (find_root(g.component, other) != other) continue;
          if (cls->seen.count(g.words[static_cast<size_t>(other)])) {
            g.component[static_cast<size_t>(other)] = rep;
          }
        }
      }
      if (g.indeterminate) continue;

      for (size_t i = 0; i < g.words.size(); ++i)
        for (size_t j = i + 1; j < g.words.size(); ++j) {
          if (find_root(g.component, static_cast<int>(i)) ==
              find_root(g.component, static_cast<int>(j)))
            continue;
          const Word& wi = g.words[i];
          const Word& wj = g.words[j];
          if (static_cast<int>(std::max(wi.size(), wj.size())) != L) continue;  // seen earlier
          Candidate c;
          c.p = wi;
          c.q = wj;
          c.group = k;
          c.pk = product_ids(t, wi);
          c.qk = product_ids(t, wj);
          bool swap_pq = (wj.size() < wi.size()) || (wj.size() == wi.size() && c.qk < c.pk);
          if (swap_pq) {
            std::swap(c.p, c.q);
            std::swap(c.pk, c.qk);
          }
          cands.push_back(std::move(c));
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.p.size() != b.p.size()) return a.p.size() < b.p.size();
      if (a.pk != b.pk) return a.pk < b.pk;
      if (a.q.size() != b.q.size()) return a.q.size() < b.q.size();
      return a.qk < b.qk;
    });

    for (const Candidate& c : cands) {
      PathWord p{from_word(c.p), -1}, q{from_word(c.q), -1};
      int tail = path_tail(t, p), head = path_head(t, p);
      // Right extensions first (p·a with h(a) = t(p)), then left (a·p).
      for (int pass = 0; pass < 2; ++pass) {
        for (int a : arrows_by_id) {
          const Arrow& ar = t.arrows[static_cast<size_t>(a)];
          Word pe, qe;
          if (pass == 0) {
            if (ar.head != tail) continue;
            pe = Word(1, static_cast<char>(a)) + c.p;
            qe = Word(1, static_cast<char>(a)) + c.q;
          } else {
            if (ar.tail != head) continue;
            pe = c.p + Word(1, static_cast<char>(a));
            qe = c.q + Word(1, static_cast<char>(a));
          }
          ClosureResult res = closure_bfs(pe, rules, &qe, budget);
          if (res.found_target) {
            result.counterexample = Counterexample{p, q, a, pass == 0 ? 'r' : 'l'};
            return result;
          }
          if (!res.exhausted) result.indeterminate_pairs++;
        }
      }
    }
  }
  return result;
}

}  // namespace branetiles
