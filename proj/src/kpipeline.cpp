#include "workbench/kpipeline.hpp"

#include <algorithm>

#include "json.hpp"

#include "workbench/error.hpp"
#include "workbench/reversing.hpp"

namespace wb {

namespace {

using json = nlohmann::json;

Word alternating(Letter s, std::size_t k) {
    Word w;
    for (std::size_t i = 0; i < k; ++i) w.push_back(i % 2 == 0 ? s : 1 - s);
    return w;
}

const IntMatrix& letter_matrix(Letter l, const CoeffAction& act, int degree) {
    return l == 0 ? act.alpha[degree] : act.beta[degree];
}

IntMatrix sum_of_powers(const IntMatrix& m, std::size_t count) {
    IntMatrix s(m.rows(), m.cols()), p = IntMatrix::identity(m.rows());
    for (std::size_t k = 0; k < count; ++k) {
        s += p;
        p = p * m;
    }
    return s;
}

IntMatrix row_of_blocks(const std::vector<IntMatrix>& blocks, std::size_t rank) {
    IntMatrix out(rank, rank * blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) out.set_block(0, i * rank, blocks[i]);
    return out;
}

bool unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() == 0) return true;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

IntMatrix parse_json_matrix(const json& j, std::size_t rank, const std::string& key) {
    if (!j.is_array() || j.size() != rank) throw Error(ErrorCode::parse, "coefficient matrix " + key + " must have " + std::to_string(rank) + " rows");
    IntMatrix m(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
        if (!j[i].is_array() || j[i].size() != rank)
            throw Error(ErrorCode::parse, "coefficient matrix " + key + " must be square");
        for (std::size_t k = 0; k < rank; ++k) {
            if (!j[i][k].is_number_integer()) throw Error(ErrorCode::parse, "coefficient matrix " + key + " has a non-integer entry");
            m(i, k) = Int(j[i][k].get<long>());
        }
    }
    return m;
}

Word lcm_with(const Word& v, const PipelineCase& c) {
    auto r = lcm(v, c.w, c.presentation);
    if (r.status != LcmStatus::found)
        throw Error(ErrorCode::undetermined, "no common multiple found for " + c.presentation.render(v) + " and " +
                                                 c.presentation.render(c.w));
    return r.join;
}

// Brings a unit into position (k, k) of the lower-right block and clears its row and column, using
// Euclidean steps when no entry is ±1 already. Returns false when the block's entries have a common factor.
bool unit_pivot(IntMatrix& a, IntMatrix& u, IntMatrix& v, std::size_t k) {
    const std::size_t rows = a.rows(), cols = a.cols();
    auto move_to_pivot = [&](std::size_t i, std::size_t c) {
        a.swap_rows(k, i);
        u.swap_rows(k, i);
        a.swap_cols(k, c);
        v.swap_cols(k, c);
    };
    auto pick = [&](bool units_only) -> bool {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t c = k; c < cols; ++c) {
                if (a(i, c) == 0) continue;
                if (units_only && abs(a(i, c)) != 1) continue;
                if (!best || abs(a(i, c)) < abs(a(best->first, best->second))) best = std::make_pair(i, c);
            }
        if (best) move_to_pivot(best->first, best->second);
        return best.has_value();
    };
    if (!pick(true) && !pick(false)) return false;
    while (true) {
        bool clean = true;
        for (std::size_t i = k + 1; i < rows; ++i)
            if (a(i, k) != 0) {
                const Int f = -(a(i, k) / a(k, k));
                a.add_row_multiple(i, k, f);
                u.add_row_multiple(i, k, f);
                clean = clean && a(i, k) == 0;
            }
        for (std::size_t c = k + 1; c < cols; ++c)
            if (a(k, c) != 0) {
                const Int f = -(a(k, c) / a(k, k));
                a.add_col_multiple(c, k, f);
                v.add_col_multiple(c, k, f);
                clean = clean && a(k, c) == 0;
            }
        if (!clean) {
            pick(false);
            continue;
        }
        if (abs(a(k, k)) == 1) break;
        std::optional<std::size_t> spoiler;
        for (std::size_t i = k + 1; i < rows && !spoiler; ++i)
            for (std::size_t c = k + 1; c < cols && !spoiler; ++c)
                if (a(i, c) % a(k, k) != 0) spoiler = i;
        if (!spoiler) return false;
        a.add_row_multiple(k, *spoiler, 1);
        u.add_row_multiple(k, *spoiler, 1);
    }
    if (a(k, k) == -1) {
        a.negate_row(k);
        u.negate_row(k);
    }
    return true;
}

std::size_t nullity(const IntMatrix& m) { return m.cols() - invariant_factors(m).size(); }

}  // namespace

CoeffAction trivial_action() {
    return {"trivial", {IntMatrix{{1}}, IntMatrix(0, 0)}, {IntMatrix{{1}}, IntMatrix(0, 0)}};
}

CoeffAction b4_action() {
    return {"b4-coeff", {IntMatrix{{1}}, IntMatrix{{1, 1}, {0, 1}}}, {IntMatrix{{1}}, IntMatrix{{2, 1}, {-1, 0}}}};
}

CoeffAction artin_rep_action() {
    return {"artin-rep-coeff",
            {IntMatrix{{1}}, IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}},
            {IntMatrix{{1}}, IntMatrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}}};
}

CoeffAction parse_coeff_action(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string("coefficient file: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::parse, "coefficient file must be a JSON object");
    CoeffAction act;
    act.name = j.value("name", std::string("custom"));
    for (int d = 0; d < 2; ++d) {
        const std::string r = "rank" + std::to_string(d);
        if (!j.contains(r) || !j[r].is_number_unsigned()) throw Error(ErrorCode::parse, "coefficient file needs a nonnegative " + r);
        const auto rank = j[r].get<std::size_t>();
        for (const char* name : {"alpha", "beta"}) {
            const std::string key = name + std::to_string(d);
            if (!j.contains(key)) throw Error(ErrorCode::parse, "coefficient file is missing " + key);
            (name[0] == 'a' ? act.alpha : act.beta)[d] = parse_json_matrix(j[key], rank, key);
        }
    }
    return act;
}

PipelineCase PipelineCase::dihedral(std::size_t m) {
    if (m < 3) throw Error(ErrorCode::precondition, "dihedral case needs m >= 3");
    PipelineCase c;
    c.family = Family::dihedral;
    c.m = m;
    Alphabet ab({"a", "b"});
    c.presentation = Presentation(ab, {{alternating(0, m), alternating(1, m)}});
    c.graph = builtin_dihedral(m);
    c.w = alternating(0, m);
    return c;
}

PipelineCase PipelineCase::torus(std::size_t p, std::size_t q) {
    if (p < 2 || q < 2) throw Error(ErrorCode::precondition, "torus case needs p, q >= 2");
    PipelineCase c;
    c.family = Family::torus;
    c.p = p;
    c.q = q;
    Alphabet ab({"a", "b"});
    c.presentation = Presentation(ab, {{Word(p, 0), Word(q, 1)}});
    c.graph = p == 2 ? build_reversible_graph_case1(c.presentation) : builtin_torus(p, q);
    c.w = Word(p, 0);
    return c;
}

std::string PipelineCase::name() const {
    if (family == Family::dihedral) return "dihedral(" + std::to_string(m) + ")";
    return "torus(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

IntMatrix gamma_inverse(const Word& x, const CoeffAction& act, int degree) {
    IntMatrix g = IntMatrix::identity(act.rank(degree));
    for (Letter l : x) g = letter_matrix(l, act, degree) * g;
    return g;
}

ActionCheck validate_action(const PipelineCase& c, const CoeffAction& act) {
    ActionCheck r;
    const auto& rel = c.presentation.relation();
    for (int d = 0; d < 2; ++d) {
        const std::size_t n = act.rank(d);
        if (act.beta[d].rows() != n || act.alpha[d].cols() != n || act.beta[d].cols() != n) {
            r.ok = false;
            r.message = "degree " + std::to_string(d) + ": alpha and beta must be square of the same size";
            return r;
        }
        if (!unimodular(act.alpha[d]) || !unimodular(act.beta[d])) {
            r.ok = false;
            r.message = "degree " + std::to_string(d) + ": alpha and beta must be invertible over Z";
            return r;
        }
        r.lhs[d] = gamma_inverse(rel.lhs, act, d);
        r.rhs[d] = gamma_inverse(rel.rhs, act, d);
        if (!(r.lhs[d] == r.rhs[d]) && r.ok) {
            r.ok = false;
            r.message = "degree " + std::to_string(d) + ": " + c.presentation.render(rel.lhs) + " gives " +
                        r.lhs[d].to_string() + " but " + c.presentation.render(rel.rhs) + " gives " + r.rhs[d].to_string();
        }
    }
    return r;
}

IntMatrix build_full_j(const PipelineCase& c, const CoeffAction& act, int degree) {
    const std::size_t r = act.rank(degree), n = c.graph.vertices.size();
    IntMatrix m(n * r, n * r);
    for (const auto& e : c.graph.edges) {
        if (!e.letter) throw Error(ErrorCode::precondition, "pipeline graphs must label every edge");
        m.add_block(e.to * r, e.from * r, letter_matrix(*e.letter, act, degree));
    }
    return IntMatrix::identity(n * r) - m;
}

std::vector<std::vector<Word>> phi_words(const PipelineCase& c, std::size_t max_length) {
    const auto& g = c.graph;
    const auto relators = c.presentation.relators();
    std::vector<std::vector<Word>> blocked(g.vertices.size());
    for (const auto& e : g.edges) {
        Word b{g.vertices[e.from].front()};
        const Word& x = g.vertices[e.to];
        b.insert(b.end(), x.begin(), x.end());
        blocked[e.from].push_back(std::move(b));
    }
    std::vector<std::vector<Word>> out(g.vertices.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        std::vector<Word> stack{g.vertices[i]};
        while (!stack.empty()) {
            Word x = std::move(stack.back());
            stack.pop_back();
            if (std::any_of(relators.begin(), relators.end(), [&](const Word& z) { return contains_factor(x, z); })) continue;
            if (std::any_of(blocked[i].begin(), blocked[i].end(), [&](const Word& b) { return is_prefix(b, x); })) continue;
            if (x.size() > max_length)
                throw Error(ErrorCode::invalid, "phi word set for " + g.label(i) + " exceeds length " + std::to_string(max_length));
            for (Letter l : {Letter{1}, Letter{0}}) {
                Word y = x;
                y.push_back(l);
                stack.push_back(std::move(y));
            }
            out[i].push_back(std::move(x));
        }
        std::sort(out[i].begin(), out[i].end(),
                  [](const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    }
    return out;
}

IntMatrix build_phi(const PipelineCase& c, const CoeffAction& act, int degree) {
    const std::size_t r = act.rank(degree);
    std::vector<IntMatrix> blocks;
    for (const auto& words : phi_words(c)) {
        IntMatrix s(r, r);
        for (const Word& x : words) s += gamma_inverse(x, act, degree);
        blocks.push_back(std::move(s));
    }
    return row_of_blocks(blocks, r);
}

Reduction reduce_with_tracking(const IntMatrix& j, const IntMatrix& phi, std::size_t rank) {
    Reduction red;
    red.kernel = kernel_basis(phi);
    if (red.kernel.rows() != j.cols()) red.kernel = IntMatrix(j.cols(), 0);
    red.restricted = j * red.kernel;
    IntMatrix a = red.restricted;
    const std::size_t rows = a.rows(), cols = a.cols();
    red.U = IntMatrix::identity(rows);
    red.V = IntMatrix::identity(cols);
    const std::size_t target = rows >= 2 * rank ? rows - 2 * rank : 0;
    std::size_t k = 0;
    while (k < target && k < cols && unit_pivot(a, red.U, red.V, k)) ++k;
    red.identity_size = k;
    red.block = a.block(k, k, rows - k, cols - k);
    red.expected_shape = k == target && red.block.rows() == 2 * rank && red.block.cols() == rank;
    return red;
}

IntMatrix tilde_j_closed_form(const PipelineCase& c, const CoeffAction& act, int degree) {
    const IntMatrix& a = act.alpha[degree];
    const IntMatrix& b = act.beta[degree];
    const std::size_t r = act.rank(degree);
    const IntMatrix id = IntMatrix::identity(r);
    if (c.family == Family::torus) return vstack(sum_of_powers(a, c.p), sum_of_powers(b, c.q));
    const std::size_t m = c.m;
    const IntMatrix ba = b * a, ab = a * b;
    if (m % 2 == 0) {
        IntMatrix top = id - power(ba, static_cast<unsigned>(m / 2));
        IntMatrix bottom = sum_of_powers(ba, (m - 2) / 2 + 1) - b * sum_of_powers(ab, (m - 2) / 2 + 1);
        return vstack(top, bottom);
    }
    IntMatrix left = id;
    for (Letter l : alternating(1, m)) left = left * letter_matrix(l, act, degree);
    IntMatrix top = id + left;
    IntMatrix bottom = sum_of_powers(ba, (m - 1) / 2 + 1) - b * sum_of_powers(ab, (m - 3) / 2 + 1);
    return vstack(top, bottom);
}

IntMatrix iota_pi(const PipelineCase& c, const CoeffAction& act, int degree) {
    std::vector<IntMatrix> blocks;
    for (const Word& v : c.graph.vertices)
        blocks.push_back(gamma_inverse(v, act, degree) - gamma_inverse(lcm_with(v, c), act, degree));
    return row_of_blocks(blocks, act.rank(degree));
}

IntMatrix iota_pi_display(const PipelineCase& c, const CoeffAction& act, int degree) {
    std::vector<IntMatrix> blocks;
    for (const Word& v : {Word{0}, Word{1}})
        blocks.push_back(gamma_inverse(v, act, degree) - gamma_inverse(lcm_with(v, c), act, degree));
    return row_of_blocks(blocks, act.rank(degree));
}

KReport run_pipeline(const PipelineCase& c, const CoeffAction& act, const PipelineHints& hints) {
    KReport rep;
    rep.case_name = c.name();
    rep.action_name = act.name;
    rep.action = validate_action(c, act);
    if (!rep.action.ok) throw Error(ErrorCode::precondition, "coefficient action fails the relation: " + rep.action.message);

    std::array<std::size_t, 2> kernel_rank{};
    for (int d = 0; d < 2; ++d) {
        auto& dr = rep.degree[d];
        const std::size_t r = act.rank(d);
        dr.j = build_full_j(c, act, d);
        dr.phi = build_phi(c, act, d);
        dr.phi_surjective = FinAbGroup(r, dr.phi).is_trivial();
        if (!dr.phi_surjective) throw Error(ErrorCode::invalid, "phi is not surjective in degree " + std::to_string(d));
        dr.reduction = reduce_with_tracking(dr.j, dr.phi, r);
        dr.closed_form = tilde_j_closed_form(c, act, d);
        dr.iota_pi = iota_pi(c, act, d);
        dr.iota_pi_display = iota_pi_display(c, act, d);
        const IntMatrix& jk = dr.reduction.restricted;
        dr.annihilates = (dr.iota_pi * jk).is_zero();
        if (!dr.annihilates) throw Error(ErrorCode::invalid, "iota-pi does not vanish on the image of j in degree " + std::to_string(d));
        dr.coker_j = FinAbGroup(jk.rows(), jk);
        kernel_rank[d] = nullity(jk);
        dr.ker_j = FinAbGroup::free(kernel_rank[d]);
        dr.matches_closed_form = dr.coker_j == FinAbGroup(dr.closed_form.rows(), dr.closed_form) &&
                                 kernel_rank[d] == nullity(dr.closed_form);
    }

    bool unit_hint_used = false;
    for (int d = 0; d < 2; ++d) {
        auto& dr = rep.degree[d];
        const std::size_t r = act.rank(d);
        const std::size_t extra = kernel_rank[1 - d];
        const IntMatrix& jk = dr.reduction.restricted;
        IntMatrix rel(jk.rows() + extra, jk.cols());
        rel.set_block(0, 0, jk);
        dr.k_of_i = FinAbGroup(jk.rows() + extra, rel);
        IntMatrix iota(r, jk.rows() + extra);
        iota.set_block(0, 0, dr.iota_pi);
        if (extra == 0) {
            dr.iota = iota;
            dr.iota_route = "induced by iota-pi";
        } else if (r == 0) {
            dr.iota = iota;
            dr.iota_route = "target is zero";
        } else if (d == 0 && hints.unit_summand && r == 1) {
            if (!dr.iota_pi.is_zero())
                throw Error(ErrorCode::invalid, "the unit-summand hint needs iota_0 o pi_0 = 0");
            dr.iota = iota;
            dr.iota_route = "zero by the unit-summand hint";
            unit_hint_used = true;
        } else {
            dr.iota_route = "undetermined on the kernel summand of K_" + std::to_string(d) + "(I)";
        }
    }

    for (int d = 0; d < 2; ++d) {
        auto& dr = rep.degree[d];
        const auto& next = rep.degree[1 - d];
        if (!dr.iota || !next.iota) {
            dr.crossed.determined = false;
            dr.crossed.route = "iota_" + std::to_string(dr.iota ? 1 - d : d) + " is undetermined";
            continue;
        }
        AbHom here(dr.k_of_i, FinAbGroup::free(act.rank(d)), *dr.iota);
        AbHom there(next.k_of_i, FinAbGroup::free(act.rank(1 - d)), *next.iota);
        const FinAbGroup sub = cokernel(here).group;
        const FinAbGroup quot = kernel(there).group;
        dr.crossed = solve_extension(sub, quot);
        if (!dr.crossed.determined && d == 0 && hints.unit_summand && act.rank(0) == 1) {
            dr.crossed = solve_extension(sub, quot, ExtensionHints{true});
            dr.crossed.route += " (unit-summand hint)";
            unit_hint_used = true;
        }
    }
    if (unit_hint_used) rep.hints_used.push_back("unit-summand");
    return rep;
}

BoundaryK boundary_quotient_k(const Presentation& p, bool infinite_alphabet) {
    if (infinite_alphabet) return {FinAbGroup::free(1), FinAbGroup::free(0), {Int(1)}};
    if (!p.one_relator()) throw Error(ErrorCode::precondition, "boundary quotient K-theory needs one relator");
    const std::size_t n = p.alphabet().size();
    if (n < 3) throw Error(ErrorCode::precondition, "boundary quotient K-theory needs at least three generators");
    IntMatrix m{{2 - long(n)}};
    return {FinAbGroup(1, m), FinAbGroup::free(nullity(m)), {Int(1)}};
}

}  // namespace wb
