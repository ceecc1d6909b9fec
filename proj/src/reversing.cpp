#include "workbench/reversing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "workbench/equality.hpp"
#include "workbench/error.hpp"

namespace wb {

std::string to_string(Answer a) {
    switch (a) {
        case Answer::yes: return "yes";
        case Answer::no: return "no";
        case Answer::unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(ReversingStatus s) {
    switch (s) {
        case ReversingStatus::terminated: return "terminated";
        case ReversingStatus::stuck: return "stuck";
        case ReversingStatus::budget: return "budget";
    }
    return "budget";
}

std::string to_string(LcmStatus s) {
    switch (s) {
        case LcmStatus::found: return "found";
        case LcmStatus::disjoint: return "disjoint";
        case LcmStatus::budget: return "budget";
    }
    return "budget";
}

Complement::Complement(const Presentation& p) : n_(p.alphabet().size()) {
    for (const auto& rel : p.relations()) {
        if (rel.lhs == rel.rhs) continue;
        if (rel.lhs.empty() || rel.rhs.empty())
            throw Error(ErrorCode::precondition, "relation with an empty side has no complement rule");
        Letter s = rel.lhs[0], t = rel.rhs[0];
        if (s == t)
            throw Error(ErrorCode::precondition,
                        "relation " + p.render(rel.lhs) + " = " + p.render(rel.rhs) + " has equal first letters");
        Word ls(rel.lhs.begin() + 1, rel.lhs.end()), rs(rel.rhs.begin() + 1, rel.rhs.end());
        if (!rules_.emplace(std::make_pair(s, t), std::make_pair(ls, rs)).second ||
            !rules_.emplace(std::make_pair(t, s), std::make_pair(rs, ls)).second)
            throw Error(ErrorCode::precondition, "presentation is not complemented: two relations start with " +
                                                     p.alphabet().symbol(s) + " and " + p.alphabet().symbol(t));
    }
}

const std::pair<Word, Word>* Complement::find(Letter sigma, Letter tau) const {
    auto it = rules_.find({sigma, tau});
    return it == rules_.end() ? nullptr : &it->second;
}

std::optional<std::pair<Word, Word>> ReversingTrace::split() const {
    Word x, y;
    std::size_t i = 0;
    while (i < terminal.size() && terminal[i].sign > 0) x.push_back(terminal[i++].letter);
    for (; i < terminal.size(); ++i) {
        if (terminal[i].sign > 0) return std::nullopt;
        y.push_back(terminal[i].letter);
    }
    std::reverse(y.begin(), y.end());
    return std::make_pair(x, y);
}

ReversingTrace reverse(const SignedWord& start, const Complement& c, std::size_t budget, bool record) {
    ReversingTrace tr;
    tr.start = start;
    SignedWord w = start;
    std::size_t from = 0;
    for (;;) {
        std::size_t k = from;
        const std::pair<Word, Word>* rule = nullptr;
        bool found = false;
        for (; k + 1 < w.size(); ++k) {
            if (w[k].sign > 0 || w[k + 1].sign < 0) continue;
            if (w[k].letter == w[k + 1].letter) {
                found = true;
                break;
            }
            rule = c.find(w[k].letter, w[k + 1].letter);
            if (rule) {
                found = true;
                break;
            }
            if (!tr.stuck_at || *tr.stuck_at > k) tr.stuck_at = k;
        }
        if (!found) {
            tr.status = tr.stuck_at ? ReversingStatus::stuck : ReversingStatus::terminated;
            break;
        }
        if (tr.step_count == budget) {
            tr.status = ReversingStatus::budget;
            break;
        }
        ReversingStep step{k, w[k].letter, w[k + 1].letter, rule == nullptr, {}, {}, {}};
        SignedWord rep;
        if (rule) {
            step.s = rule->first;
            step.t = rule->second;
            for (Letter l : rule->first) rep.push_back({l, 1});
            for (auto it = rule->second.rbegin(); it != rule->second.rend(); ++it) rep.push_back({*it, -1});
        }
        w.erase(w.begin() + static_cast<long>(k), w.begin() + static_cast<long>(k + 2));
        w.insert(w.begin() + static_cast<long>(k), rep.begin(), rep.end());
        ++tr.step_count;
        if (record) {
            step.result = w;
            tr.steps.push_back(std::move(step));
        }
        from = k > 0 ? k - 1 : 0;
    }
    tr.terminal = std::move(w);
    return tr;
}

ReversingTrace reverse(const SignedWord& w, const Presentation& p, std::size_t budget, bool record) {
    return reverse(w, Complement(p), budget, record);
}

CubeReport check_cube_condition(const Presentation& p, std::size_t budget) {
    Complement c(p);
    const auto n = static_cast<Letter>(p.alphabet().size());
    CubeReport rep;
    rep.holds = Answer::yes;
    for (Letter s = 0; s < n; ++s)
        for (Letter t = 0; t < n; ++t)
            for (Letter u = 0; u < n; ++u) {
                SignedWord w{{s, -1}, {t, 1}, {t, -1}, {u, 1}};
                auto r1 = reverse(w, c, budget);
                if (r1.status == ReversingStatus::stuck) continue;
                if (r1.status == ReversingStatus::budget) {
                    if (rep.holds == Answer::yes) rep = {Answer::unknown, std::array<Letter, 3>{s, t, u}};
                    continue;
                }
                auto [x, y] = *r1.split();
                auto r2 = reverse(concat(inverse(concat(Word{s}, x)), positive(concat(Word{u}, y))), c, budget);
                if (r2.status == ReversingStatus::budget) {
                    if (rep.holds == Answer::yes) rep = {Answer::unknown, std::array<Letter, 3>{s, t, u}};
                    continue;
                }
                if (r2.status != ReversingStatus::terminated || !r2.terminal.empty())
                    return {Answer::no, std::array<Letter, 3>{s, t, u}};
            }
    return rep;
}

std::size_t weight_of(const Word& w, const std::vector<std::size_t>& weights) {
    std::size_t s = 0;
    for (Letter l : w) s += weights.at(l);
    return s;
}

namespace {

bool weights_balance(const Presentation& p, const std::vector<std::size_t>& wt) {
    for (const auto& rel : p.relations())
        if (weight_of(rel.lhs, wt) != weight_of(rel.rhs, wt)) return false;
    return true;
}

std::optional<HomogeneityWeights> small_weight_search(const Presentation& p) {
    const std::size_t n = p.alphabet().size();
    std::size_t bound = 12;
    while (bound > 2 && std::pow(static_cast<double>(bound), static_cast<double>(n)) > 200000) --bound;
    std::vector<std::size_t> wt(n, 1);
    for (;;) {
        if (weights_balance(p, wt)) return HomogeneityWeights{wt, true, "small-weight-search"};
        std::size_t i = 0;
        while (i < n && wt[i] == bound) wt[i++] = 1;
        if (i == n) return std::nullopt;
        ++wt[i];
    }
}

}  // namespace

std::optional<HomogeneityWeights> check_r_homogeneity(const Presentation& p) {
    const std::size_t n = p.alphabet().size();
    std::vector<std::size_t> ones(n, 1);
    if (weights_balance(p, ones)) return HomogeneityWeights{ones, true, "length"};
    if (p.one_relator()) {
        Word u = p.relation().lhs, v = p.relation().rhs;
        if (u.size() > v.size()) std::swap(u, v);
        for (Letter s = 0; s < n; ++s) {
            std::size_t us = letter_count(u, s), vs = letter_count(v, s);
            if (us <= vs) continue;
            std::size_t d = us - vs;
            std::size_t delta = (v.size() - vs) - (u.size() - us);
            std::size_t l = std::lcm(delta, d);
            std::vector<std::size_t> wt(n, l / delta);
            wt[s] = l / d;
            if (weights_balance(p, wt)) return HomogeneityWeights{wt, true, "lcm-construction"};
        }
    }
    return small_weight_search(p);
}

LcmResult lcm(const Word& x, const Word& y, const Complement& c, std::size_t budget) {
    auto tr = reverse(concat(inverse(x), positive(y)), c, budget);
    LcmResult r;
    r.steps = tr.step_count;
    if (tr.status == ReversingStatus::budget) return r;
    if (tr.status == ReversingStatus::stuck) {
        r.status = LcmStatus::disjoint;
        return r;
    }
    auto [s, t] = *tr.split();
    r.status = LcmStatus::found;
    r.join = concat(x, s);
    r.comp_x = s;
    r.comp_y = t;
    return r;
}

LcmResult lcm(const Word& x, const Word& y, const Presentation& p, std::size_t budget) {
    return lcm(x, y, Complement(p), budget);
}

Answer divides(const Word& x, const Word& z, const Complement& c, std::size_t budget) {
    auto tr = reverse(concat(inverse(x), positive(z)), c, budget);
    if (tr.status == ReversingStatus::budget) return Answer::unknown;
    if (tr.status == ReversingStatus::stuck) return Answer::no;
    return tr.split()->second.empty() ? Answer::yes : Answer::no;
}

Answer divides(const Word& x, const Word& z, const Presentation& p, std::size_t budget) {
    return divides(x, z, Complement(p), budget);
}

namespace {

Word canonical_word(const Word& w, const Presentation& p) {
    auto cls = equivalence_class(w, p, 256);
    return cls ? cls->front() : w;
}

}  // namespace

LeftReversibleReport check_left_reversible(const Presentation& p, std::size_t closure_bound, std::size_t budget) {
    if (!p.one_relator()) throw Error(ErrorCode::precondition, "left reversibility test needs a one-relator presentation");
    const std::size_t n = p.alphabet().size();
    LeftReversibleReport rep;
    if (n >= 3) {
        rep.verdict = Answer::no;
        rep.reason = "alphabet has at least 3 generators";
        return rep;
    }
    if (auto rule = find_confluent_rule(p); rule && n == 2) {
        const Word& v = rule->v;
        Letter a = v[0];
        bool ab_power = std::all_of(v.begin() + 1, v.end(), [a](Letter l) { return l != a; });
        if (!ab_power) {
            rep.verdict = Answer::no;
            rep.reason = "OVL(v) = {ε}, v -> u is noetherian and v is not of the form a b^k";
            return rep;
        }
    }
    Complement c(p);
    bool homogeneous = check_r_homogeneity(p).has_value();
    std::vector<Word> set;
    std::set<Word> seen;
    for (Letter l = 0; l < n; ++l) {
        set.push_back({l});
        seen.insert({l});
    }
    std::size_t done = 0;
    while (done < set.size()) {
        const Word w = set[done];
        for (std::size_t i = 0; i <= done; ++i) {
            for (int side = 0; side < 2; ++side) {
                const Word& x = side ? w : set[i];
                const Word& y = side ? set[i] : w;
                auto tr = reverse(concat(inverse(x), positive(y)), c, budget);
                if (tr.status == ReversingStatus::budget) {
                    rep.reason = "reversing " + p.render(x) + "^-1 " + p.render(y) + " exceeded the budget";
                    rep.closure = set;
                    return rep;
                }
                if (tr.status == ReversingStatus::stuck) {
                    rep.verdict = homogeneous ? Answer::no : Answer::unknown;
                    rep.reason = p.render(x) + "P and " + p.render(y) + "P have no common element found by reversing";
                    rep.closure = set;
                    return rep;
                }
                auto [z, t] = *tr.split();
                for (const Word& q : {z, t}) {
                    if (q.empty()) continue;
                    Word cq = canonical_word(q, p);
                    if (seen.insert(cq).second) set.push_back(cq);
                }
                if (set.size() > closure_bound) {
                    rep.reason = "closure set exceeded " + std::to_string(closure_bound) + " words";
                    rep.closure = set;
                    return rep;
                }
            }
        }
        ++done;
    }
    rep.verdict = Answer::yes;
    rep.reason = "closure set of " + std::to_string(set.size()) + " words is closed under reversing";
    rep.closure = set;
    return rep;
}

namespace {

std::optional<Word> quotient(const Word& x, const Word& w, const Complement& c, std::size_t budget) {
    auto tr = reverse(concat(inverse(x), positive(w)), c, budget);
    if (!tr.terminated()) return std::nullopt;
    auto [s, t] = *tr.split();
    if (!t.empty()) return std::nullopt;
    return s;
}

std::vector<Word> words_up_to(std::size_t n, std::size_t len) {
    std::vector<Word> out;
    std::vector<Word> layer{{}};
    for (std::size_t l = 1; l <= len; ++l) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (Letter a = 0; a < n; ++a) {
                Word x = w;
                x.push_back(a);
                next.push_back(x);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

}  // namespace

Answer garside_w_property_i(const Word& w, const Word& x, const Complement& c, std::size_t budget) {
    return divides(w, concat(x, w), c, budget);
}

Answer garside_w_property_ii(const Word& w, const Word& x, const Complement& c, std::size_t budget) {
    return divides(x, repeat(w, std::max<std::size_t>(x.size(), 1)), c, budget);
}

namespace {

std::optional<GarsideLikeW> certify(const Word& w, const Complement& c, const std::vector<Word>& tests,
                                    std::size_t test_length, std::size_t budget) {
    const Word a{0}, b{1};
    auto alpha = quotient(a, w, c, budget);
    if (!alpha) return std::nullopt;
    auto gamma = quotient(*alpha, w, c, budget);
    if (!gamma) return std::nullopt;
    auto beta = quotient(b, w, c, budget);
    if (!beta) return std::nullopt;
    auto delta = quotient(*beta, w, c, budget);
    if (!delta) return std::nullopt;
    for (const Word& x : tests)
        if (garside_w_property_i(w, x, c, budget) != Answer::yes || garside_w_property_ii(w, x, c, budget) != Answer::yes)
            return std::nullopt;
    return GarsideLikeW{w, *alpha, *beta, *gamma, *delta, test_length};
}

void require_two_letter_one_relator(const Presentation& p) {
    if (!p.one_relator() || p.alphabet().size() != 2)
        throw Error(ErrorCode::precondition, "Garside-like element search needs a one-relator presentation on {a, b}");
}

}  // namespace

std::optional<GarsideLikeW> check_garside_like(const Presentation& p, const Word& w, std::size_t test_length,
                                               std::size_t budget) {
    require_two_letter_one_relator(p);
    return certify(w, Complement(p), words_up_to(2, test_length), test_length, budget);
}

std::optional<GarsideLikeW> find_garside_like_w(const Presentation& p, std::size_t length_bound,
                                                std::size_t test_length, std::size_t budget) {
    require_two_letter_one_relator(p);
    Complement c(p);
    const auto tests = words_up_to(2, test_length);
    for (const Word& w : words_up_to(2, length_bound))
        if (auto g = certify(w, c, tests, test_length, budget)) return g;
    return std::nullopt;
}

Condition23Report verify_condition_2_3prime(const Presentation& p, const Word& w, std::size_t budget) {
    if (!p.one_relator() || p.alphabet().size() != 2)
        throw Error(ErrorCode::precondition, "condition 2.3' needs a one-relator presentation on {a, b}");
    const auto& rel = p.relation();
    const Word* v = rel.lhs.size() && rel.lhs[0] == 0 ? &rel.lhs : rel.rhs.size() && rel.rhs[0] == 0 ? &rel.rhs : nullptr;
    if (!v) throw Error(ErrorCode::precondition, "no relator starts with " + p.alphabet().symbol(0));
    Complement c(p);
    Condition23Report rep;
    for (std::size_t l = 1; l < v->size(); ++l) {
        Condition23Row row;
        row.l = l;
        row.z = subword(*v, 0, l);
        row.z.push_back((*v)[l] == 0 ? 1 : 0);
        row.join = lcm(row.z, Word{1}, c, budget);
        if (row.join.status == LcmStatus::disjoint)
            row.holds = Answer::yes;
        else if (row.join.status == LcmStatus::budget)
            row.holds = Answer::unknown;
        else
            row.holds = divides(w, row.join.join, c, budget);
        if (row.holds == Answer::no && rep.holds != Answer::no) {
            rep.holds = Answer::no;
            rep.failing_l = l;
        } else if (row.holds == Answer::unknown && rep.holds == Answer::yes) {
            rep.holds = Answer::unknown;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace wb
