#include "workbench/equality.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "workbench/abelian.hpp"
#include "workbench/error.hpp"

namespace wb {

std::optional<std::string> rewrite_precondition_failure(const Presentation& p, bool v_is_rhs) {
    if (!p.one_relator()) return "presentation is not one-relator";
    const auto& rel = p.relation();
    const Word& v = v_is_rhs ? rel.rhs : rel.lhs;
    const Word& u = v_is_rhs ? rel.lhs : rel.rhs;
    if (v.empty()) return "relator v is empty";
    if (overlap_set(v).size() != 1) return "overlap set OVL(v) is not {ε}";
    for (Letter l = 0; l < p.alphabet().size(); ++l)
        if (letter_count(u, l) < letter_count(v, l)) return std::nullopt;
    return "no letter σ with ℓ_σ(u) < ℓ_σ(v) (noetherian condition)";
}

RewriteRule rewrite_rule(const Presentation& p) {
    if (auto why = rewrite_precondition_failure(p, true)) throw Error(ErrorCode::precondition, *why);
    return {p.relation().rhs, p.relation().lhs};
}

std::optional<RewriteRule> find_confluent_rule(const Presentation& p) {
    if (!p.one_relator()) return std::nullopt;
    if (!rewrite_precondition_failure(p, true)) return RewriteRule{p.relation().rhs, p.relation().lhs};
    if (!rewrite_precondition_failure(p, false)) return RewriteRule{p.relation().lhs, p.relation().rhs};
    return std::nullopt;
}

Word rewrite_irreducible(const Word& z, const RewriteRule& rule, std::vector<Word>* trace) {
    Word w = z;
    if (trace) trace->push_back(w);
    std::size_t from = 0;
    for (;;) {
        std::size_t pos = find_factor(w, rule.v, from);
        if (pos == std::string::npos) break;
        w.erase(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos + rule.v.size()));
        w.insert(w.begin() + static_cast<long>(pos), rule.u.begin(), rule.u.end());
        if (trace) trace->push_back(w);
        from = pos >= rule.v.size() ? pos - rule.v.size() + 1 : 0;
    }
    return w;
}

Word rewrite_irreducible(const Word& z, const Presentation& p) { return rewrite_irreducible(z, rewrite_rule(p)); }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::equal: return "equal";
        case Verdict::distinct: return "distinct";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

std::vector<Word> relation_neighbours(const Word& w, const Presentation& p) {
    std::vector<Word> out;
    for (const auto& rel : p.relations()) {
        for (int dir = 0; dir < 2; ++dir) {
            const Word& from = dir ? rel.rhs : rel.lhs;
            const Word& to = dir ? rel.lhs : rel.rhs;
            if (from.empty() || from == to) continue;
            for (std::size_t pos = find_factor(w, from); pos != std::string::npos; pos = find_factor(w, from, pos + 1)) {
                Word n(w.begin(), w.begin() + static_cast<long>(pos));
                n.insert(n.end(), to.begin(), to.end());
                n.insert(n.end(), w.begin() + static_cast<long>(pos + from.size()), w.end());
                out.push_back(std::move(n));
            }
        }
    }
    return out;
}

bool abelian_invariant_separates(const Word& x, const Word& y, const Presentation& p) {
    const std::size_t n = p.alphabet().size();
    auto cx = word_stats(x, n).counts, cy = word_stats(y, n).counts;
    IntVector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = Int(static_cast<long>(cx[i])) - Int(static_cast<long>(cy[i]));
    std::vector<IntVector> cols;
    for (const auto& rel : p.relations()) {
        auto cl = word_stats(rel.lhs, n).counts, cr = word_stats(rel.rhs, n).counts;
        IntVector d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = Int(static_cast<long>(cl[i])) - Int(static_cast<long>(cr[i]));
        cols.push_back(d);
    }
    return !Lattice(IntMatrix::from_columns(cols, n)).contains(diff);
}

EqualityVerdict words_equal(const Word& x, const Word& y, const Presentation& p, std::size_t budget) {
    if (budget == 0) throw Error(ErrorCode::precondition, "budget must be positive");
    EqualityVerdict r;
    if (x == y) {
        r.status = Verdict::equal;
        r.witness = {x};
        r.method = "identical";
        return r;
    }
    if (auto rule = find_confluent_rule(p)) {
        std::vector<Word> tx, ty;
        Word nx = rewrite_irreducible(x, *rule, &tx);
        Word ny = rewrite_irreducible(y, *rule, &ty);
        r.budget_used = tx.size() + ty.size() - 2;
        r.method = "confluent-rewriting";
        if (nx == ny) {
            r.status = Verdict::equal;
            r.witness = tx;
            for (auto it = ty.rbegin() + 1; it != ty.rend(); ++it) r.witness.push_back(*it);
        } else {
            r.status = Verdict::distinct;
        }
        return r;
    }
    if (abelian_invariant_separates(x, y, p)) {
        r.status = Verdict::distinct;
        r.method = "abelian-invariant";
        return r;
    }
    r.method = "bidirectional-bfs";
    using Parents = std::unordered_map<Word, Word, WordHash>;
    Parents pa, pb;
    pa.emplace(x, x);
    pb.emplace(y, y);
    std::vector<Word> fa{x}, fb{y};
    std::size_t used = 2;
    auto path_to_root = [](const Parents& par, Word w) {
        std::vector<Word> path{w};
        for (;;) {
            const Word& up = par.at(w);
            if (up == w) break;
            w = up;
            path.push_back(w);
        }
        return path;
    };
    for (;;) {
        if (fa.empty() || fb.empty()) {
            r.status = Verdict::distinct;
            r.budget_used = used;
            r.method = "bidirectional-bfs (component exhausted)";
            return r;
        }
        bool expand_a = fa.size() <= fb.size();
        Parents& mine = expand_a ? pa : pb;
        Parents& other = expand_a ? pb : pa;
        std::vector<Word>& front = expand_a ? fa : fb;
        std::vector<Word> next;
        for (const Word& w : front) {
            for (Word& nb : relation_neighbours(w, p)) {
                if (mine.count(nb)) continue;
                mine.emplace(nb, w);
                ++used;
                if (other.count(nb)) {
                    auto left = path_to_root(pa, nb);
                    auto right = path_to_root(pb, nb);
                    std::reverse(left.begin(), left.end());
                    r.witness = left;
                    r.witness.insert(r.witness.end(), right.begin() + 1, right.end());
                    r.status = Verdict::equal;
                    r.budget_used = used;
                    return r;
                }
                if (used >= budget) {
                    r.status = Verdict::unknown;
                    r.budget_used = used;
                    return r;
                }
                next.push_back(std::move(nb));
            }
        }
        front = std::move(next);
    }
}

std::optional<std::vector<Word>> equivalence_class(const Word& w, const Presentation& p, std::size_t cap) {
    std::unordered_set<Word, WordHash> seen{w};
    std::vector<Word> order{w}, frontier{w};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& x : frontier)
            for (Word& nb : relation_neighbours(x, p)) {
                if (!seen.insert(nb).second) continue;
                order.push_back(nb);
                if (order.size() > cap) return std::nullopt;
                next.push_back(std::move(nb));
            }
        frontier = std::move(next);
    }
    std::sort(order.begin(), order.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return order;
}

}  // namespace wb
