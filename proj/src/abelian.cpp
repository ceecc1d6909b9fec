#include "workbench/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "workbench/error.hpp"

namespace wb {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

Snf smith_impl(const IntMatrix& m, bool track) {
    const std::size_t R = m.rows(), C = m.cols();
    Snf s;
    s.S = m;
    if (track) {
        s.U = IntMatrix::identity(R);
        s.Uinv = IntMatrix::identity(R);
        s.V = IntMatrix::identity(C);
    }
    IntMatrix& S = s.S;
    auto rowop = [&](std::size_t i, std::size_t k, const Int& q) {
        S.add_row_multiple(i, k, q);
        if (track) {
            s.U.add_row_multiple(i, k, q);
            s.Uinv.add_col_multiple(k, i, -q);
        }
    };
    auto colop = [&](std::size_t j, std::size_t k, const Int& q) {
        S.add_col_multiple(j, k, q);
        if (track) s.V.add_col_multiple(j, k, q);
    };
    auto rowswap = [&](std::size_t i, std::size_t k) {
        S.swap_rows(i, k);
        if (track) {
            s.U.swap_rows(i, k);
            s.Uinv.swap_cols(i, k);
        }
    };
    auto colswap = [&](std::size_t j, std::size_t k) {
        S.swap_cols(j, k);
        if (track) s.V.swap_cols(j, k);
    };

    std::size_t t = 0;
    const std::size_t lim = std::min(R, C);
    while (t < lim) {
        bool found = false;
        std::size_t pi = 0, pj = 0;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (S(i, j) == 0) continue;
                Int a = abs_int(S(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                    if (best == 1) goto pivot_found;
                }
            }
    pivot_found:
        if (!found) break;
        rowswap(t, pi);
        colswap(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (S(i, t) == 0) continue;
                Int q = S(i, t) / S(t, t);
                rowop(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (S(t, j) == 0) continue;
                Int q = S(t, j) / S(t, t);
                colop(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi = t, bj = t;
                Int b = abs_int(S(t, t));
                for (std::size_t i = t + 1; i < R; ++i)
                    if (S(i, t) != 0 && abs_int(S(i, t)) < b) {
                        b = abs_int(S(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < C; ++j)
                    if (S(t, j) != 0 && abs_int(S(t, j)) < b) {
                        b = abs_int(S(t, j));
                        bi = t;
                        bj = j;
                    }
                rowswap(t, bi);
                colswap(t, bj);
                continue;
            }
            bool bad = false;
            for (std::size_t i = t + 1; i < R && !bad; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        rowop(t, i, 1);
                        bad = true;
                        break;
                    }
            if (!bad) break;
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            if (track) {
                s.U.negate_row(t);
                s.Uinv.negate_col(t);
            }
        }
        ++t;
    }
    s.rank = t;
    return s;
}

}  // namespace

IntVector Snf::diagonal() const {
    IntVector d(rank);
    for (std::size_t i = 0; i < rank; ++i) d[i] = S(i, i);
    return d;
}

Snf smith(const IntMatrix& m) { return smith_impl(m, true); }

IntVector invariant_factors(const IntMatrix& m) { return smith_impl(m, false).diagonal(); }

IntMatrix hermite_columns(const IntMatrix& m) {
    IntMatrix h = m;
    const std::size_t R = h.rows(), C = h.cols();
    std::size_t k = 0;
    for (std::size_t i = 0; i < R && k < C; ++i) {
        for (;;) {
            std::size_t p = C;
            for (std::size_t j = k; j < C; ++j)
                if (h(i, j) != 0 && (p == C || abs_int(h(i, j)) < abs_int(h(i, p)))) p = j;
            if (p == C) break;
            h.swap_cols(k, p);
            bool done = true;
            for (std::size_t j = k + 1; j < C; ++j) {
                if (h(i, j) == 0) continue;
                Int q = h(i, j) / h(i, k);
                h.add_col_multiple(j, k, -q);
                if (h(i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (k < C && h(i, k) != 0) {
            if (h(i, k) < 0) h.negate_col(k);
            for (std::size_t j = 0; j < k; ++j) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
                h.add_col_multiple(j, k, -q);
            }
            ++k;
        }
    }
    std::vector<std::size_t> keep(k);
    std::iota(keep.begin(), keep.end(), 0);
    return h.select_columns(keep);
}

IntMatrix kernel_basis(const IntMatrix& m) {
    Snf s = smith(m);
    std::vector<std::size_t> idx;
    for (std::size_t j = s.rank; j < m.cols(); ++j) idx.push_back(j);
    return s.V.select_columns(idx);
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
    if (b.size() != m.rows()) throw Error(ErrorCode::invalid, "solve: shape mismatch");
    Snf s = smith(m);
    IntVector y = s.U * b;
    IntVector w(m.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (y[i] % s.S(i, i) != 0) return std::nullopt;
            w[i] = y[i] / s.S(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * w;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) {
        if (n == 1 && (rng() & 1)) u(0, 0) = -1;
        return u;
    }
    if (steps <= 0) steps = static_cast<int>(2 * n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), k = pick(rng);
        if (i == k) continue;
        u.add_row_multiple(i, k, coef(rng));
    }
    return u;
}

Lattice::Lattice(IntMatrix gens) : gens_(std::move(gens)), snf_(std::make_shared<const Snf>(smith(gens_))) {}

bool Lattice::contains(const IntVector& v) const {
    if (v.size() != gens_.rows()) throw Error(ErrorCode::invalid, "lattice membership: dimension mismatch");
    if (!snf_) {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }
    IntVector y = snf_->U * v;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < snf_->rank) {
            if (y[i] % snf_->S(i, i) != 0) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

bool Lattice::contains_all(const IntMatrix& cols) const {
    for (std::size_t j = 0; j < cols.cols(); ++j)
        if (!contains(cols.column(j))) return false;
    return true;
}

bool Lattice::same_as(const Lattice& o) const { return contains_all(o.gens_) && o.contains_all(gens_); }

FinAbGroup::FinAbGroup(std::size_t generators, IntMatrix relations) : n_(generators), rel_(std::move(relations)) {
    if (rel_.rows() != n_) {
        if (rel_.cols() == 0)
            rel_ = IntMatrix(n_, 0);
        else
            throw Error(ErrorCode::invalid, "relation matrix row count differs from generator count");
    }
    lattice_ = Lattice(rel_);
    IntVector d = invariant_factors(rel_);
    for (const auto& x : d)
        if (x != 1) inv_.push_back(x);
    for (std::size_t i = d.size(); i < n_; ++i) inv_.push_back(0);
}

FinAbGroup FinAbGroup::free(std::size_t n) { return FinAbGroup(n, IntMatrix(n, 0)); }

FinAbGroup FinAbGroup::from_invariants(const IntVector& d) {
    std::vector<IntVector> cols;
    std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] < 0) throw Error(ErrorCode::invalid, "negative invariant factor");
        if (d[i] == 0) continue;
        IntVector c(n);
        c[i] = d[i];
        cols.push_back(c);
    }
    return FinAbGroup(n, IntMatrix::from_columns(cols, n));
}

std::size_t FinAbGroup::rank() const {
    return static_cast<std::size_t>(std::count(inv_.begin(), inv_.end(), Int(0)));
}

IntVector FinAbGroup::torsion() const {
    IntVector t;
    for (const auto& x : inv_)
        if (x != 0) t.push_back(x);
    return t;
}

bool FinAbGroup::is_free() const { return torsion().empty(); }

Int FinAbGroup::order() const {
    if (rank() > 0) return 0;
    Int o = 1;
    for (const auto& x : inv_) o *= x;
    return o;
}

Int FinAbGroup::element_order(const IntVector& x) const {
    Snf s = smith(rel_);
    IntVector y = s.U * x;
    Int o = 1;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i >= s.rank) {
            if (y[i] != 0) return 0;
            continue;
        }
        Int g;
        mpz_gcd(g.get_mpz_t(), s.S(i, i).get_mpz_t(), y[i].get_mpz_t());
        Int part = s.S(i, i) / g;
        mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), part.get_mpz_t());
    }
    return o;
}

std::string FinAbGroup::to_string() const {
    std::vector<std::string> parts;
    std::size_t r = rank();
    if (r == 1) parts.push_back("Z");
    if (r > 1) parts.push_back("Z^" + std::to_string(r));
    for (const auto& t : torsion()) parts.push_back("Z/" + t.get_str());
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    return s;
}

FinAbGroup parse_group(const std::string& text) {
    IntVector d;
    std::string cleaned;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) cleaned += c;
    std::stringstream ss(cleaned);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        if (tok.empty() || tok == "0") continue;
        if (tok == "Z") {
            d.push_back(0);
        } else if (tok.rfind("Z^", 0) == 0) {
            long r = std::stol(tok.substr(2));
            for (long i = 0; i < r; ++i) d.push_back(0);
        } else if (tok.rfind("Z/", 0) == 0) {
            Int x;
            if (x.set_str(tok.substr(2), 10) != 0 || x <= 0) throw Error(ErrorCode::parse, "bad group token " + tok);
            d.push_back(x);
        } else {
            throw Error(ErrorCode::parse, "bad group token " + tok);
        }
    }
    return FinAbGroup::from_invariants(d);
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    return FinAbGroup(a.generators() + b.generators(), block_diagonal(a.relations(), b.relations()));
}

AbHom::AbHom(FinAbGroup dom, FinAbGroup cod, IntMatrix m) : dom_(std::move(dom)), cod_(std::move(cod)), m_(std::move(m)) {
    if (m_.rows() == 0 && m_.cols() == 0) m_ = IntMatrix(cod_.generators(), dom_.generators());
    if (m_.rows() != cod_.generators() || m_.cols() != dom_.generators())
        throw Error(ErrorCode::invalid, "homomorphism matrix has wrong shape");
    IntMatrix img = m_ * dom_.relations();
    if (!cod_.relation_lattice().contains_all(img))
        throw Error(ErrorCode::invalid, "matrix does not define a homomorphism (relations not preserved)");
}

AbHom AbHom::zero(const FinAbGroup& dom, const FinAbGroup& cod) {
    return AbHom(dom, cod, IntMatrix(cod.generators(), dom.generators()));
}

AbHom AbHom::identity(const FinAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.generators())); }

bool AbHom::is_zero() const { return cod_.relation_lattice().contains_all(m_); }

bool AbHom::is_injective() const { return kernel(*this).group.is_trivial(); }

bool AbHom::is_surjective() const { return cokernel(*this).group.is_trivial(); }

bool AbHom::equals(const AbHom& o) const {
    if (m_.rows() != o.m_.rows() || m_.cols() != o.m_.cols()) return false;
    return cod_.relation_lattice().contains_all(m_ - o.m_);
}

std::optional<IntVector> AbHom::preimage(const IntVector& y) const {
    auto sol = solve(hstack(m_, cod_.relations()), y);
    if (!sol) return std::nullopt;
    sol->resize(dom_.generators());
    return sol;
}

AbHom compose(const AbHom& g, const AbHom& f) {
    if (f.codomain().generators() != g.domain().generators())
        throw Error(ErrorCode::invalid, "composition of incompatible homomorphisms");
    return AbHom(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

AbHom inverse(const AbHom& iso) {
    const std::size_t n = iso.codomain().generators();
    std::vector<IntVector> cols;
    for (std::size_t k = 0; k < n; ++k) {
        IntVector e(n);
        e[k] = 1;
        auto x = iso.preimage(e);
        if (!x) throw Error(ErrorCode::invalid, "inverse requested for a non-surjective map");
        cols.push_back(*x);
    }
    AbHom inv(iso.codomain(), iso.domain(), IntMatrix::from_columns(cols, iso.domain().generators()));
    if (!compose(inv, iso).equals(AbHom::identity(iso.domain())))
        throw Error(ErrorCode::invalid, "inverse requested for a non-injective map");
    return inv;
}

AbHom hom_direct_sum(const AbHom& f, const AbHom& g) {
    return AbHom(direct_sum(f.domain(), g.domain()), direct_sum(f.codomain(), g.codomain()),
                 block_diagonal(f.matrix(), g.matrix()));
}

IntMatrix kernel_lattice(const AbHom& f) {
    const std::size_t a = f.domain().generators();
    IntMatrix k = kernel_basis(hstack(f.matrix(), -f.codomain().relations()));
    return k.block(0, 0, a, k.cols());
}

Simplified simplify(const FinAbGroup& g) {
    Snf s = smith(g.relations());
    const std::size_t n = g.generators();
    std::vector<std::size_t> keep;
    IntVector d;
    for (std::size_t i = 0; i < n; ++i) {
        Int di = i < s.rank ? s.S(i, i) : Int(0);
        if (di == 1) continue;
        keep.push_back(i);
        d.push_back(di);
    }
    FinAbGroup h = FinAbGroup::from_invariants(d);
    AbHom to(g, h, s.U.select_rows(keep));
    AbHom from(h, g, s.Uinv.select_columns(keep));
    return {h, to, from};
}

Kernel kernel(const AbHom& f) {
    IntMatrix x = kernel_lattice(f);
    const std::size_t t = x.cols();
    IntMatrix kb = kernel_basis(hstack(x, -f.domain().relations()));
    FinAbGroup k(t, kb.block(0, 0, t, kb.cols()));
    AbHom incl(k, f.domain(), x);
    Simplified s = simplify(k);
    return {s.group, compose(incl, s.from)};
}

Cokernel cokernel(const AbHom& f) {
    const FinAbGroup& b = f.codomain();
    FinAbGroup c(b.generators(), hstack(b.relations(), f.matrix()));
    AbHom proj(b, c, IntMatrix::identity(b.generators()));
    Simplified s = simplify(c);
    return {s.group, compose(s.to, proj)};
}

ExactnessReport check_exact(const ExactSeq& seq) {
    const std::size_t n = seq.groups.size();
    const std::size_t nmaps = seq.cyclic ? n : (n ? n - 1 : 0);
    if (seq.maps.size() != nmaps) return {false, std::nullopt, "map count does not match group count"};
    for (std::size_t k = 0; k < nmaps; ++k) {
        const auto& f = seq.maps[k];
        if (f.domain().generators() != seq.groups[k].generators() ||
            f.codomain().generators() != seq.groups[(k + 1) % n].generators())
            return {false, k, "map " + std::to_string(k) + " is not composable with its neighbours"};
    }
    std::size_t first = seq.cyclic ? 0 : 1;
    std::size_t last = seq.cyclic ? n : (n >= 2 ? n - 1 : 0);
    for (std::size_t k = first; k < last; ++k) {
        const AbHom& in = seq.maps[(k + n - 1) % n];
        const AbHom& out = seq.maps[k];
        const FinAbGroup& b = seq.groups[k];
        Lattice im(hstack(in.matrix(), b.relations()));
        Lattice ker(kernel_lattice(out));
        if (!ker.contains_all(im.generators()))
            return {false, k, "composition into node " + std::to_string(k) + " is not zero"};
        if (!im.contains_all(ker.generators()))
            return {false, k, "image is smaller than kernel at node " + std::to_string(k)};
    }
    return {};
}

ExtensionResult solve_extension(const FinAbGroup& sub, const FinAbGroup& quot, const ExtensionHints& hints) {
    ExtensionResult r;
    FinAbGroup split = direct_sum(sub, quot);
    if (sub.is_trivial()) {
        r.candidates = {quot};
        r.determined = true;
        r.route = "trivial-sub";
        return r;
    }
    if (quot.is_free()) {
        r.candidates = {split};
        r.determined = true;
        r.route = "free-quotient";
        return r;
    }
    if (hints.sub_is_direct_summand) {
        r.candidates = {split};
        r.determined = true;
        r.route = "hint:sub-direct-summand";
        return r;
    }
    const IntVector& sd = sub.invariants();
    IntVector qt = quot.torsion();
    const std::size_t a = sd.size(), kq = qt.size(), f = quot.rank();
    std::vector<std::vector<Int>> moduli(kq);
    Int total = 1;
    for (std::size_t k = 0; k < kq; ++k) {
        if (qt[k] > 64) r.bounded = false;
        for (std::size_t i = 0; i < a; ++i) {
            Int g;
            if (sd[i] == 0)
                g = qt[k];
            else
                mpz_gcd(g.get_mpz_t(), sd[i].get_mpz_t(), qt[k].get_mpz_t());
            moduli[k].push_back(g);
            total *= g;
        }
    }
    if (total > 4096) r.bounded = false;
    if (!r.bounded) {
        r.candidates = {split};
        r.determined = false;
        r.route = "torsion-bound-exceeded";
        return r;
    }
    std::map<IntVector, FinAbGroup> seen;
    std::vector<Int> digits(a * kq, 0);
    const std::size_t ng = a + kq + f;
    for (;;) {
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < a; ++i)
            if (sd[i] != 0) {
                IntVector c(ng);
                c[i] = sd[i];
                cols.push_back(c);
            }
        for (std::size_t k = 0; k < kq; ++k) {
            IntVector c(ng);
            c[a + k] = qt[k];
            for (std::size_t i = 0; i < a; ++i) c[i] = -digits[k * a + i];
            cols.push_back(c);
        }
        FinAbGroup e(ng, IntMatrix::from_columns(cols, ng));
        seen.emplace(e.invariants(), e);
        std::size_t pos = 0;
        while (pos < digits.size()) {
            digits[pos] += 1;
            if (digits[pos] < moduli[pos / a][pos % a]) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == digits.size()) break;
    }
    for (auto& [inv, g] : seen) r.candidates.push_back(g);
    std::sort(r.candidates.begin(), r.candidates.end(),
              [](const FinAbGroup& x, const FinAbGroup& y) { return x.to_string() < y.to_string(); });
    r.determined = r.candidates.size() == 1;
    r.route = "ext-enumeration";
    return r;
}

}  // namespace wb
