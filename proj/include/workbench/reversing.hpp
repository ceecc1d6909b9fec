#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "workbench/words.hpp"

namespace wb {

inline constexpr std::size_t default_reversing_budget = 100000;

enum class Answer { yes, no, unknown };
std::string to_string(Answer a);

// Complement rules σ⁻¹τ -> s t⁻¹ with σs = τt a relation.
class Complement {
public:
    // Throws Error(precondition) when two relations give a rule for the same ordered pair, or a
    // relation has equal first letters.
    explicit Complement(const Presentation& p);
    const std::pair<Word, Word>* find(Letter sigma, Letter tau) const;
    std::size_t alphabet_size() const { return n_; }

private:
    std::size_t n_;
    std::map<std::pair<Letter, Letter>, std::pair<Word, Word>> rules_;
};

enum class ReversingStatus { terminated, stuck, budget };
std::string to_string(ReversingStatus s);

struct ReversingStep {
    std::size_t position;
    Letter sigma, tau;
    bool cancel;
    Word s, t;
    SignedWord result;
};

struct ReversingTrace {
    SignedWord start;
    std::vector<ReversingStep> steps;
    std::size_t step_count = 0;
    SignedWord terminal;
    ReversingStatus status = ReversingStatus::budget;
    // Position of the first factor σ⁻¹τ without a rule.
    std::optional<std::size_t> stuck_at;

    bool terminated() const { return status == ReversingStatus::terminated; }
    // Terminal as x y⁻¹; nullopt when it is not of that shape.
    std::optional<std::pair<Word, Word>> split() const;
};

// Leftmost right reversing. Steps are recorded only when record is set.
ReversingTrace reverse(const SignedWord& w, const Complement& c, std::size_t budget = default_reversing_budget,
                       bool record = false);
ReversingTrace reverse(const SignedWord& w, const Presentation& p, std::size_t budget = default_reversing_budget,
                       bool record = false);

struct CubeReport {
    Answer holds = Answer::unknown;
    // Failing triple, or the triple whose reversing exhausted the budget.
    std::optional<std::array<Letter, 3>> triple;
};
CubeReport check_cube_condition(const Presentation& p, std::size_t budget = default_reversing_budget);

struct HomogeneityWeights {
    std::vector<std::size_t> weights;
    bool certified = false;
    std::string method;
};
// λ(w) for the weight vector.
std::size_t weight_of(const Word& w, const std::vector<std::size_t>& weights);
std::optional<HomogeneityWeights> check_r_homogeneity(const Presentation& p);

enum class LcmStatus { found, disjoint, budget };
std::string to_string(LcmStatus s);

struct LcmResult {
    LcmStatus status = LcmStatus::budget;
    Word join, comp_x, comp_y;
    std::size_t steps = 0;
};
LcmResult lcm(const Word& x, const Word& y, const Complement& c, std::size_t budget = default_reversing_budget);
LcmResult lcm(const Word& x, const Word& y, const Presentation& p, std::size_t budget = default_reversing_budget);

// x ≺ z, that is z ∈ xP.
Answer divides(const Word& x, const Word& z, const Complement& c, std::size_t budget = default_reversing_budget);
Answer divides(const Word& x, const Word& z, const Presentation& p, std::size_t budget = default_reversing_budget);

struct LeftReversibleReport {
    Answer verdict = Answer::unknown;
    std::string reason;
    std::vector<Word> closure;
};
// closure_bound caps the size of the searched set Σ′.
LeftReversibleReport check_left_reversible(const Presentation& p, std::size_t closure_bound = 64,
                                           std::size_t budget = default_reversing_budget);

struct GarsideLikeW {
    Word w, alpha, beta, gamma, delta;
    std::size_t test_length = 0;
};
// Shortlex-first w of length at most length_bound with w = aα = αγ = bβ = βδ, then checked against
// xw ∈ wP and x ≺ w^ℓ(x) for all x with ℓ(x) <= test_length.
std::optional<GarsideLikeW> find_garside_like_w(const Presentation& p, std::size_t length_bound,
                                                std::size_t test_length = 4,
                                                std::size_t budget = default_reversing_budget);
// The same test for a given w.
std::optional<GarsideLikeW> check_garside_like(const Presentation& p, const Word& w, std::size_t test_length = 4,
                                               std::size_t budget = default_reversing_budget);
Answer garside_w_property_i(const Word& w, const Word& x, const Complement& c, std::size_t budget);
Answer garside_w_property_ii(const Word& w, const Word& x, const Complement& c, std::size_t budget);

struct Condition23Row {
    std::size_t l;
    Word z;
    LcmResult join;
    Answer holds;
};
struct Condition23Report {
    Answer holds = Answer::yes;
    std::vector<Condition23Row> rows;
    std::optional<std::size_t> failing_l;
};
// For each 1 <= l < ℓ(v), with v the relator starting with the first generator a and b the second one,
// checks w ≺ lcm(v[0..l) σ, b) where σ differs from the (l+1)-th letter of v.
Condition23Report verify_condition_2_3prime(const Presentation& p, const Word& w,
                                            std::size_t budget = default_reversing_budget);

}  // namespace wb
