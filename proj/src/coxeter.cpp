#include "workbench/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <unordered_map>

#include "workbench/error.hpp"

namespace wb {

namespace {

constexpr CoxeterSystem::Elem none = ~CoxeterSystem::Elem{0};

Subset bit(Letter s) { return Subset{1} << s; }

std::vector<std::string> numbered_symbols(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back("s" + std::to_string(i));
    return out;
}

bool shortlex_less(const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace

std::vector<std::vector<int>> coxeter_matrix_of_type(const std::string& label) {
    std::smatch mt;
    static const std::regex dihedral(R"(I2\((\d+)\))");
    static const std::regex series(R"(([A-HI])(\d+))");
    std::size_t n = 0;
    std::vector<std::tuple<int, int, int>> edges;  // 1-based endpoints, m
    if (std::regex_match(label, mt, dihedral)) {
        int m = std::stoi(mt[1]);
        if (m < 2) throw Error(ErrorCode::invalid, "I2(m) needs m >= 2");
        n = 2;
        edges.emplace_back(1, 2, m);
    } else if (std::regex_match(label, mt, series)) {
        char kind = mt[1].str()[0];
        n = std::stoul(mt[2]);
        auto path = [&](std::size_t last) {
            for (std::size_t i = 1; i < last; ++i) edges.emplace_back(i, i + 1, 3);
        };
        switch (kind) {
            case 'A':
                if (n < 1) throw Error(ErrorCode::invalid, "A_n needs n >= 1");
                path(n);
                break;
            case 'B':
            case 'C':
                if (n < 2) throw Error(ErrorCode::invalid, "B_n needs n >= 2");
                path(n - 1);
                edges.emplace_back(n - 1, n, 4);
                break;
            case 'D':
                if (n < 4) throw Error(ErrorCode::invalid, "D_n needs n >= 4");
                path(n - 1);
                edges.emplace_back(n - 2, n, 3);
                break;
            case 'E':
                if (n < 6 || n > 8) throw Error(ErrorCode::invalid, "E_n needs 6 <= n <= 8");
                edges.emplace_back(1, 3, 3);
                edges.emplace_back(2, 4, 3);
                for (std::size_t i = 3; i < n; ++i) edges.emplace_back(i, i + 1, 3);
                break;
            case 'F':
                if (n != 4) throw Error(ErrorCode::invalid, "only F4 exists");
                edges = {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}};
                break;
            case 'G':
                if (n != 2) throw Error(ErrorCode::invalid, "only G2 exists");
                edges = {{1, 2, 6}};
                break;
            case 'H':
                if (n != 3 && n != 4) throw Error(ErrorCode::invalid, "only H3 and H4 exist");
                edges.emplace_back(1, 2, 5);
                for (std::size_t i = 2; i < n; ++i) edges.emplace_back(i, i + 1, 3);
                break;
            default: throw Error(ErrorCode::invalid, "unknown Coxeter type '" + label + "'");
        }
    } else {
        throw Error(ErrorCode::invalid, "unknown Coxeter type '" + label + "'");
    }
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    for (auto [a, b, v] : edges) m[a - 1][b - 1] = m[b - 1][a - 1] = v;
    return m;
}

std::vector<std::vector<int>> parse_coxeter_matrix(const std::string& text) {
    std::vector<std::vector<int>> m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw Error(ErrorCode::parse, "Coxeter matrix entry '" + tok + "' is not an integer");
            if (v == 0) throw Error(ErrorCode::invalid, "m_st = 0 (infinity) is not of finite type");
            row.push_back(v);
        }
        if (!row.empty()) m.push_back(row);
    }
    return m;
}

CoxeterSystem CoxeterSystem::of_type(const std::string& label, std::size_t cap) {
    auto m = coxeter_matrix_of_type(label);
    CoxeterSystem w(Alphabet(numbered_symbols(m.size())), m, cap);
    w.certificate_ = "type " + label + ", |W| = " + std::to_string(w.order());
    return w;
}

CoxeterSystem::CoxeterSystem(Alphabet generators, std::vector<std::vector<int>> m, std::size_t cap)
    : gens_(std::move(generators)), m_(std::move(m)) {
    const std::size_t n = gens_.size();
    if (n == 0 || n > 64) throw Error(ErrorCode::precondition, "Coxeter rank must be between 1 and 64");
    if (m_.size() != n) throw Error(ErrorCode::invalid, "Coxeter matrix size does not match the generators");
    for (std::size_t i = 0; i < n; ++i) {
        if (m_[i].size() != n) throw Error(ErrorCode::invalid, "Coxeter matrix is not square");
        if (m_[i][i] != 1) throw Error(ErrorCode::invalid, "Coxeter matrix needs m_ss = 1");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (m_[i][j] != m_[j][i] || m_[i][j] < 2))
                throw Error(ErrorCode::invalid, "Coxeter matrix needs m_st = m_ts >= 2 for s != t");
    }

    // Level-by-level construction. For g with s not in R(g), t is in R(gs) iff the maximal alternating
    // t, s, t, ... suffix stripped from g has length m_st - 1.
    std::vector<Elem> up;
    std::vector<std::size_t> len{0};
    std::vector<Word> words{{}};
    std::vector<Subset> rset{0};
    up.assign(n, none);
    std::vector<Elem> level{0};
    auto grow = [&] {
        if (len.size() > cap)
            throw Error(ErrorCode::precondition,
                        "not finite type within cap: |W| exceeds " + std::to_string(cap));
        up.resize(len.size() * n, none);
    };
    while (!level.empty()) {
        std::map<std::pair<Letter, Elem>, Elem> keys;
        std::vector<Elem> next;
        for (Elem g : level) {
            for (Letter s = 0; s < n; ++s) {
                if (rset[g] & bit(s)) continue;
                Subset r = bit(s);
                std::vector<std::pair<Letter, Elem>> lower{{s, g}};
                for (Letter t = 0; t < n; ++t) {
                    if (t == s) continue;
                    Elem cur = g;
                    Letter l = t;
                    int stripped = 0;
                    while (rset[cur] & bit(l)) {
                        cur = up[cur * n + l];
                        l = l == t ? s : t;
                        ++stripped;
                    }
                    const int mst = m_[s][t];
                    if (stripped != mst - 1) continue;
                    r |= bit(t);
                    // (gs)t = x · (alternating word of length m - 1 ending with s)
                    Elem ht = cur;
                    for (int j = 0; j < mst - 1; ++j) ht = up[ht * n + (((mst - 2 - j) % 2 == 0) ? s : t)];
                    lower.emplace_back(t, ht);
                }
                std::sort(lower.begin(), lower.end());
                auto key = lower.front();
                auto it = keys.find(key);
                if (it != keys.end()) {
                    up[g * n + s] = it->second;
                    continue;
                }
                Elem h = static_cast<Elem>(len.size());
                len.push_back(len[g] + 1);
                rset.push_back(r);
                Word best;
                for (auto [t, ht] : lower) {
                    Word cand = words[ht];
                    cand.push_back(t);
                    if (best.empty() || cand < best) best = cand;
                }
                words.push_back(best);
                grow();
                for (auto [t, ht] : lower) {
                    up[h * n + t] = ht;
                    up[ht * n + t] = h;
                }
                keys.emplace(key, h);
                next.push_back(h);
            }
        }
        level = std::move(next);
    }

    // Renumber in ShortLex order.
    const std::size_t order = len.size();
    std::vector<Elem> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](Elem a, Elem b) { return shortlex_less(words[a], words[b]); });
    std::vector<Elem> inv(order);
    for (Elem i = 0; i < order; ++i) inv[perm[i]] = i;
    mul_.assign(order * n, none);
    len_.resize(order);
    words_.resize(order);
    rset_.resize(order);
    for (Elem i = 0; i < order; ++i) {
        Elem old = perm[i];
        len_[i] = len[old];
        words_[i] = std::move(words[old]);
        rset_[i] = rset[old];
        for (Letter s = 0; s < n; ++s) mul_[i * n + s] = inv[up[old * n + s]];
    }
    lmul_.assign(order * n, none);
    lset_.assign(order, 0);
    for (Elem g = 0; g < order; ++g)
        for (Letter s = 0; s < n; ++s) {
            Elem h = generator(s);
            for (Letter l : words_[g]) h = mul(h, l);
            lmul_[g * n + s] = h;
            if (len_[h] < len_[g]) lset_[g] |= bit(s);
        }
    certificate_ = "enumerated, |W| = " + std::to_string(order);
}

CoxeterSystem::Elem CoxeterSystem::longest(Subset t) const {
    Elem g = 0;
    for (bool grew = true; grew;) {
        grew = false;
        for (Letter s = 0; s < rank(); ++s)
            if ((t & bit(s)) && !(rset_[g] & bit(s))) {
                g = mul(g, s);
                grew = true;
            }
    }
    return g;
}

CoxeterSystem::Elem CoxeterSystem::element(const Word& x) const {
    Elem g = 0;
    for (Letter l : x) {
        if (l >= rank()) throw Error(ErrorCode::invalid, "letter outside the Coxeter generators");
        g = mul(g, l);
    }
    return g;
}

bool CoxeterSystem::is_reduced(const Word& x) const { return length(element(x)) == x.size(); }

Subset CoxeterSystem::support(Elem g) const {
    Subset s = 0;
    for (Letter l : words_[g]) s |= bit(l);
    return s;
}

Presentation CoxeterSystem::artin_presentation() const {
    std::vector<Relation> rels;
    for (Letter s = 0; s < rank(); ++s)
        for (Letter t = s + 1; t < rank(); ++t) {
            Word u, v;
            for (int i = 0; i < m_[s][t]; ++i) {
                u.push_back(i % 2 ? t : s);
                v.push_back(i % 2 ? s : t);
            }
            rels.push_back({u, v});
        }
    return Presentation(gens_, rels);
}

std::string CoxeterSystem::render_subset(Subset s) const {
    std::string out = "{";
    bool first = true;
    for (Letter l = 0; l < rank(); ++l)
        if (s & bit(l)) {
            if (!first) out += ",";
            out += gens_.symbol(l);
            first = false;
        }
    return out + "}";
}

Subset CoxeterSystem::parse_subset(const std::string& text) const {
    std::string body;
    for (char c : text)
        if (c != '{' && c != '}') body += c == ',' ? ' ' : c;
    std::istringstream in(body);
    std::string tok;
    Subset s = 0;
    while (in >> tok) {
        auto l = gens_.find(tok);
        if (!l) throw Error(ErrorCode::parse, "unknown generator '" + tok + "'");
        s |= bit(*l);
    }
    return s;
}

namespace {

// Normal form of the product of two simple elements a b.
void normalize_pair(CoxeterSystem::Elem& a, CoxeterSystem::Elem& b, const CoxeterSystem& w) {
    for (;;) {
        Subset move = w.left_set(b) & ~w.right_set(a);
        if (!move) return;
        auto t = static_cast<Letter>(std::countr_zero(move));
        a = w.mul(a, t);
        b = w.lmul(t, b);
    }
}

// Right multiplication of a normal form by a generator: one right-to-left pass of pair normalizations.
void append_letter(NormalForm& f, Letter s, const CoxeterSystem& w) {
    CoxeterSystem::Elem h = w.generator(s);
    NormalForm tail;
    for (std::size_t i = f.size(); i-- > 0;) {
        CoxeterSystem::Elem a = f[i];
        normalize_pair(a, h, w);
        tail.push_back(h);
        h = a;
    }
    f.assign(1, h);
    f.insert(f.end(), tail.rbegin(), tail.rend());
    std::erase(f, w.identity());
}

Word reversed(const Word& x) { return Word(x.rbegin(), x.rend()); }

}  // namespace

NormalForm normal_form(const Word& x, const CoxeterSystem& w) {
    NormalForm f;
    for (Letter l : x) {
        if (l >= w.rank()) throw Error(ErrorCode::invalid, "letter outside the Coxeter generators");
        append_letter(f, l, w);
    }
    return f;
}

bool is_normal_form(const NormalForm& f, const CoxeterSystem& w) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == w.identity() || f[i] >= w.order()) return false;
        if (i + 1 < f.size() && (w.left_set(f[i + 1]) & ~w.right_set(f[i]))) return false;
    }
    return true;
}

Word nf_word(const NormalForm& f, const CoxeterSystem& w) {
    Word out;
    for (auto g : f) out.insert(out.end(), w.word(g).begin(), w.word(g).end());
    return out;
}

std::string render_nf(const NormalForm& f, const CoxeterSystem& w) {
    std::string out = "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ", ";
        out += render_word(w.word(f[i]), w.generators());
    }
    return out + ")";
}

Word canonical(const Word& x, const CoxeterSystem& w) { return nf_word(normal_form(x, w), w); }

bool equal_in_p(const Word& x, const Word& y, const CoxeterSystem& w) {
    return x.size() == y.size() && normal_form(x, w) == normal_form(y, w);
}

Subset left_set(const Word& g, const CoxeterSystem& w) {
    auto f = normal_form(g, w);
    return f.empty() ? 0 : w.left_set(f.front());
}

Subset right_set(const Word& g, const CoxeterSystem& w) { return left_set(reversed(g), w); }

std::optional<Word> left_quotient(const Word& x, const Word& g, const CoxeterSystem& w) {
    NormalForm f = normal_form(g, w);
    for (Letter s : x) {
        if (f.empty() || !(w.left_set(f.front()) & bit(s))) return std::nullopt;
        f.front() = w.lmul(s, f.front());
        f = normal_form(nf_word(f, w), w);
    }
    return nf_word(f, w);
}

bool left_divides(const Word& x, const Word& g, const CoxeterSystem& w) { return left_quotient(x, g, w).has_value(); }

Word delta_power(const CoxeterSystem& w, std::size_t n) { return repeat(w.word(w.longest()), n); }

Word meet(const Word& g, const Word& h, const CoxeterSystem& w) {
    NormalForm a = normal_form(g, w), b = normal_form(h, w);
    Word d;
    for (;;) {
        if (a.empty() || b.empty()) break;
        Subset common = w.left_set(a.front()) & w.left_set(b.front());
        if (!common) break;
        auto s = static_cast<Letter>(std::countr_zero(common));
        d.push_back(s);
        a.front() = w.lmul(s, a.front());
        b.front() = w.lmul(s, b.front());
        a = normal_form(nf_word(a, w), w);
        b = normal_form(nf_word(b, w), w);
    }
    return canonical(d, w);
}

Word join(const Word& g, const Word& h, const CoxeterSystem& w) {
    const std::size_t n = std::max(normal_form(g, w).size(), normal_form(h, w).size());
    Word d = delta_power(w, n);
    Word cg = *left_quotient(g, d, w), ch = *left_quotient(h, d, w);
    Word c = reversed(meet(reversed(cg), reversed(ch), w));
    Word j = reversed(*left_quotient(reversed(c), reversed(d), w));
    return canonical(j, w);
}

bool cylinder_intersects_x0(const Word& g, const Word& h, const CoxeterSystem& w) {
    auto f = normal_form(join(g, h, w), w);
    return f.empty() || f.front() != w.longest();
}

std::optional<NormalForm> equiv_search(const CoxeterSystem& w, Subset t, Subset source, Subset target) {
    if (t & ~w.all()) throw Error(ErrorCode::precondition, "T is not a subset of S");
    auto proper = [t](Subset x) { return x != 0 && (x & ~t) == 0 && x != t; };
    if (!proper(source) || !proper(target))
        throw Error(ErrorCode::precondition, "source and target must be proper nonempty subsets of T");
    const auto delta_t = w.longest(t);
    std::vector<CoxeterSystem::Elem> pool;
    for (CoxeterSystem::Elem g = 1; g < w.order(); ++g)
        if (g != delta_t && (w.support(g) & ~t) == 0) pool.push_back(g);

    std::map<Subset, std::pair<Subset, CoxeterSystem::Elem>> parent;
    std::deque<Subset> queue;
    for (auto g : pool)
        if (w.left_set(g) == source && !parent.count(w.right_set(g))) {
            parent[w.right_set(g)] = {0, g};
            queue.push_back(w.right_set(g));
        }
    while (!queue.empty()) {
        Subset c = queue.front();
        queue.pop_front();
        if (c == target) {
            NormalForm out;
            for (Subset cur = c; cur != 0;) {
                auto [prev, g] = parent.at(cur);
                out.push_back(g);
                cur = prev;
            }
            std::reverse(out.begin(), out.end());
            return out;
        }
        for (auto g : pool) {
            if (w.left_set(g) & ~c) continue;
            Subset r = w.right_set(g);
            if (parent.count(r)) continue;
            parent[r] = {c, g};
            queue.push_back(r);
        }
    }
    return std::nullopt;
}

namespace {

std::vector<CoxeterSystem::Elem> p0(const CoxeterSystem& w) {
    std::vector<CoxeterSystem::Elem> out;
    const auto d = w.longest();
    for (CoxeterSystem::Elem g = 1; g < w.order(); ++g)
        if (g != d) out.push_back(g);
    return out;
}

}  // namespace

mpz_class infinite_nf_count(const CoxeterSystem& w, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::precondition, "n must be at least 1");
    auto pool = p0(w);
    // count[g] = number of admissible sequences of the current length ending in g
    std::map<Subset, mpz_class> by_right;
    for (auto g : pool) by_right[w.right_set(g)] += 1;
    for (std::size_t k = 1; k < n; ++k) {
        std::map<Subset, mpz_class> next;
        for (auto g : pool) {
            mpz_class c = 0;
            for (const auto& [r, cnt] : by_right)
                if ((w.left_set(g) & ~r) == 0) c += cnt;
            if (c != 0) next[w.right_set(g)] += c;
        }
        by_right = std::move(next);
    }
    mpz_class total = 0;
    for (const auto& [r, cnt] : by_right) total += cnt;
    return total;
}

std::vector<NormalForm> enumerate_infinite_nf(const CoxeterSystem& w, std::size_t n, std::size_t limit) {
    auto pool = p0(w);
    std::vector<NormalForm> out;
    NormalForm cur;
    auto rec = [&](auto&& self) -> void {
        if (out.size() >= limit) return;
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (auto g : pool) {
            if (!cur.empty() && (w.left_set(g) & ~w.right_set(cur.back()))) continue;
            cur.push_back(g);
            self(self);
            cur.pop_back();
            if (out.size() >= limit) return;
        }
    };
    if (n > 0) rec(rec);
    return out;
}

}  // namespace wb
