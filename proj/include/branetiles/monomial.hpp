#pragma once
// Monomials as exponent vectors over a fixed, ordered variable list.
// All arithmetic is exact; exponents are non-negative integers.

#include <optional>
#include <string>
#include <vector>

namespace branetiles {

// One exponent per variable. The variable list itself is carried by whoever
// owns the monomials (Labeling, MonoidAlgebra, ...).
using Exps = std::vector<int>;

int degree(const Exps& e);
Exps mul(const Exps& a, const Exps& b);
bool divides(const Exps& a, const Exps& b);  // a | b, componentwise <=

// Fixed output order: ascending total degree, then descending lexicographic
// on the exponent tuple. This is the order every report uses.
bool monomial_less(const Exps& a, const Exps& b);

// "x1^2*y2", "x*y", "1" (unit). Variables joined with '*' in list order.
std::string monomial_to_string(const Exps& e, const std::vector<std::string>& vars);

// Parse the same syntax. Unknown variable / malformed text yields nullopt and
// fills *err when provided.
std::optional<Exps> parse_monomial(const std::string& text,
                                   const std::vector<std::string>& vars,
                                   std::string* err = nullptr);

// Variable names appearing in a set of label texts, sorted and deduplicated.
// Returns nullopt on a malformed label (fills *err).
std::optional<std::vector<std::string>> collect_variables(
    const std::vector<std::string>& labels, std::string* err = nullptr);

}  // namespace branetiles
