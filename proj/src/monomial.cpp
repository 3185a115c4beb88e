#include "branetiles/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace branetiles {

int degree(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0); }

Exps mul(const Exps& a, const Exps& b) {
  Exps r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

bool divides(const Exps& a, const Exps& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool monomial_less(const Exps& a, const Exps& b) {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return a > b;  // descending lex within a degree
}

std::string monomial_to_string(const Exps& e, const std::vector<std::string>& vars) {
  std::string out;
  for (size_t i = 0; i < e.size() && i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
}  // namespace

std::optional<Exps> parse_monomial(const std::string& text,
                                   const std::vector<std::string>& vars,
                                   std::string* err) {
  auto fail = [&](const std::string& m) -> std::optional<Exps> {
    if (err) *err = m;
    return std::nullopt;
  };
  Exps e(vars.size(), 0);
  size_t i = 0, n = text.size();
  if (n == 0) return fail("empty monomial");
  if (text == "1") return e;
  while (i < n) {
    size_t j = i;
    while (j < n && is_name_char(text[j])) ++j;
    if (j == i) return fail("expected variable name in '" + text + "'");
    std::string name = text.substr(i, j - i);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) return fail("unknown variable '" + name + "'");
    int exp = 1;
    i = j;
    if (i < n && text[i] == '^') {
      ++i;
      size_t k = i;
      while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      if (k == i) return fail("expected exponent after '^' in '" + text + "'");
      exp = std::stoi(text.substr(i, k - i));
      if (exp <= 0) return fail("exponent must be positive in '" + text + "'");
      i = k;
    }
    e[static_cast<size_t>(it - vars.begin())] += exp;
    if (i < n) {
      if (text[i] != '*') return fail("expected '*' between factors in '" + text + "'");
      ++i;
      if (i == n) return fail("trailing '*' in '" + text + "'");
    }
  }
  return e;
}

std::optional<std::vector<std::string>> collect_variables(
    const std::vector<std::string>& labels, std::string* err) {
  std::set<std::string> names;
  for (const auto& text : labels) {
    if (text.empty()) continue;
    if (text == "1") continue;
    size_t i = 0, n = text.size();
    while (i < n) {
      size_t j = i;
      while (j < n && is_name_char(text[j])) ++j;
      if (j == i) {
        if (err) *err = "malformed label '" + text + "'";
        return std::nullopt;
      }
      names.insert(text.substr(i, j - i));
      i = j;
      if (i < n && text[i] == '^') {
        ++i;
        size_t k = i;
        while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == i) {
          if (err) *err = "malformed label '" + text + "'";
          return std::nullopt;
        }
        i = k;
      }
      if (i < n) {
        if (text[i] != '*') {
          if (err) *err = "malformed label '" + text + "'";
          return std::nullopt;
        }
        ++i;
        if (i == n) {
          if (err) *err = "malformed label '" + text + "'";
          return std::nullopt;
        }
      }
    }
  }
  return std::vector<std::string>(names.begin(), names.end());
}

}  // namespace branetiles
