#pragma once

#include <optional>
#include <string>
#include <vector>

#include "workbench/words.hpp"

namespace wb {

// Replace occurrences of v by u.
struct RewriteRule {
    Word v;
    Word u;
};

// Reason the rule v -> u (v taken from the relation side given) fails the confluence and termination
// preconditions, or nullopt when both hold.
std::optional<std::string> rewrite_precondition_failure(const Presentation& p, bool v_is_rhs = true);
// Rule with v = rhs of the single relation; throws Error(precondition) naming the failing condition.
RewriteRule rewrite_rule(const Presentation& p);
// First orientation (rhs, then lhs) satisfying the preconditions.
std::optional<RewriteRule> find_confluent_rule(const Presentation& p);

// Leftmost rewriting to the v-free normal form. When trace is given, every intermediate word is appended.
Word rewrite_irreducible(const Word& z, const RewriteRule& rule, std::vector<Word>* trace = nullptr);
Word rewrite_irreducible(const Word& z, const Presentation& p);

enum class Verdict { equal, distinct, unknown };
std::string to_string(Verdict v);

struct EqualityVerdict {
    Verdict status = Verdict::unknown;
    std::vector<Word> witness;
    std::size_t budget_used = 0;
    std::string method;
};

// Words reachable from w by one relation application, in deterministic order.
std::vector<Word> relation_neighbours(const Word& w, const Presentation& p);
// Letter-count invariant: true when x, y are separated by the abelianized relation lattice.
bool abelian_invariant_separates(const Word& x, const Word& y, const Presentation& p);

EqualityVerdict words_equal(const Word& x, const Word& y, const Presentation& p, std::size_t budget = 1000000);

// All words equal to w, or nullopt if more than cap are found.
std::optional<std::vector<Word>> equivalence_class(const Word& w, const Presentation& p, std::size_t cap);

}  // namespace wb
