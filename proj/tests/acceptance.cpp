#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "workbench/abelian.hpp"
#include "workbench/coxeter.hpp"
#include "workbench/fixtures.hpp"
#include "workbench/graph.hpp"
#include "workbench/kpipeline.hpp"
#include "workbench/reversing.hpp"
#include "workbench/splice.hpp"

using namespace wb;

namespace {

struct Failed {
    std::string why;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failed{what};
}

FinAbGroup group(const std::string& s) { return parse_group(s); }

std::string show(const FinAbGroup& a, const FinAbGroup& b) { return "(" + a.to_string() + ", " + b.to_string() + ")"; }

void expect_k(const FinAbGroup& k0, const FinAbGroup& k1, const std::string& e0, const std::string& e1,
              const std::string& where) {
    expect(k0 == group(e0) && k1 == group(e1), where + ": got " + show(k0, k1) + ", expected (" + e0 + ", " + e1 + ")");
}

Presentation boundary_presentation(std::size_t n) {
    std::vector<std::string> syms;
    for (std::size_t i = 0; i < n; ++i) syms.push_back(std::string(1, static_cast<char>('a' + i)));
    return n == 3 ? make_presentation(syms, {{"aa", "bc"}}) : make_presentation(syms, {{"ab", "cd"}});
}

const std::vector<std::pair<std::size_t, std::size_t>> torus_params{{2, 2}, {2, 3}, {3, 3}, {2, 5}};

void criterion1() {
    for (std::size_t m : {3u, 5u, 7u}) {
        auto k = graph_k_theory(builtin_dihedral(m));
        expect_k(k.k0, k.k1, "Z/" + std::to_string(m - 2), "0", "dihedral(" + std::to_string(m) + ")");
    }
    for (std::size_t m : {4u, 6u, 8u}) {
        auto k = graph_k_theory(builtin_dihedral(m));
        expect_k(k.k0, k.k1, "Z + Z/" + std::to_string((m - 2) / 2), "Z", "dihedral(" + std::to_string(m) + ")");
    }
}

void criterion2() {
    const std::vector<std::pair<std::string, std::string>> expected{{"Z", "Z"}, {"0", "0"}, {"Z/3", "0"}, {"Z/3", "0"}};
    for (std::size_t i = 0; i < torus_params.size(); ++i) {
        auto [p, q] = torus_params[i];
        auto k = graph_k_theory(builtin_torus(p, q));
        expect_k(k.k0, k.k1, expected[i].first, expected[i].second,
                 "torus(" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
}

void expect_final(const KReport& r, const std::string& e0, const std::string& e1) {
    expect(r.determined(), r.case_name + " " + r.action_name + ": not determined");
    expect_k(r.degree[0].crossed.candidates.front(), r.degree[1].crossed.candidates.front(), e0, e1,
             r.case_name + " " + r.action_name + " final");
}

void criterion3() {
    for (std::size_t m = 3; m <= 8; ++m) {
        auto r = run_pipeline(PipelineCase::dihedral(m), trivial_action());
        if (m % 2) {
            expect_final(r, "Z", "Z");
        } else {
            expect_k(r.degree[0].k_of_i, r.degree[1].k_of_i, "Z^2", "Z", r.case_name + " K(I)");
            expect_final(r, "Z^2", "Z^2");
        }
    }
    for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}, {4, 6}}) {
        std::string g = std::to_string(std::gcd(p, q));
        auto r = run_pipeline(PipelineCase::torus(p, q), trivial_action());
        expect_k(r.degree[0].k_of_i, r.degree[1].k_of_i, "Z + Z/" + g, "0", r.case_name + " K(I)");
        expect_final(r, "Z", "Z + Z/" + g);
    }
}

void criterion4() {
    auto c = PipelineCase::dihedral(3);
    auto act = b4_action();
    for (int d = 0; d < 2; ++d) {
        const auto &a = act.alpha[d], &b = act.beta[d];
        expect(a * b * a == b * a * b, "alpha beta alpha != beta alpha beta in degree " + std::to_string(d));
    }
    expect(validate_action(c, act).ok, "relation check rejected the B4 matrices");
    auto plain = run_pipeline(c, act);
    expect_k(plain.degree[0].k_of_i, plain.degree[1].k_of_i, "Z", "Z^2 + Z/2", "B4 K(I)");
    auto r = run_pipeline(c, act, PipelineHints{true});
    for (const auto& h : r.hints_used) expect(h == "unit-summand", "unexpected hint " + h);
    expect_final(r, "Z + Z/2", "Z");
    expect(iota_pi_display(c, act, 1) == IntMatrix{{0, -1, 1, -1}, {1, 2, 0, 1}}, "displayed iota-pi matrix differs");
}

void criterion5() {
    auto c = PipelineCase::dihedral(3);
    auto act = artin_rep_action();
    auto j1 = tilde_j_closed_form(c, act, 1);
    expect(kernel_basis(j1).cols() == 1, "ker j1 is not Z");
    expect(FinAbGroup(j1.rows(), j1) == group("Z^4"), "coker j1 is not Z^4");
    auto plain = run_pipeline(c, act);
    expect_k(plain.degree[0].k_of_i, plain.degree[1].k_of_i, "Z^2", "Z^4", "Artin K(I)");
    auto r = run_pipeline(c, act, PipelineHints{true});
    expect(r.hints_used == std::vector<std::string>{"unit-summand"}, "unit-summand hint not recorded");
    expect_final(r, "Z^3", "Z^3");
}

void criterion6() {
    for (std::size_t n : {3u, 4u, 5u}) {
        auto k = boundary_quotient_k(boundary_presentation(n));
        expect_k(k.k0, k.k1, "Z/" + std::to_string(n - 2), "0", "|alphabet| = " + std::to_string(n));
        expect(k.unit == IntVector{1}, "unit class is not 1");
    }
}

void criterion7() {
    for (std::size_t m = 3; m <= 8; ++m) {
        auto a = graph_k_theory(builtin_dihedral(m));
        auto b = graph_k_theory(build_reversible_graph_case1(load_presentation_fixture("dihedral(" + std::to_string(m) + ")")));
        expect(a.k0 == b.k0 && a.k1 == b.k1,
               "dihedral(" + std::to_string(m) + "): builtin " + show(a.k0, a.k1) + " vs generic " + show(b.k0, b.k1));
    }
    for (auto [p, q] : torus_params) {
        std::string name = "torus(" + std::to_string(p) + "," + std::to_string(q) + ")";
        auto a = graph_k_theory(builtin_torus(p, q));
        auto b = graph_k_theory(build_reversible_graph_case1(load_presentation_fixture(name)));
        expect(a.k0 == b.k0 && a.k1 == b.k1, name + ": builtin " + show(a.k0, a.k1) + " vs generic " + show(b.k0, b.k1));
    }
}

Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(rank - 1));
    Word w(len(rng));
    for (auto& l : w) l = letter(rng);
    return w;
}

// Distinct elements of P represented by reduced positive words of length at most ℓ(Δ).
std::size_t count_reduced(const CoxeterSystem& w) {
    std::set<Word> seen;
    std::vector<Word> layer{{}};
    seen.insert(Word{});
    for (std::size_t l = 0; l < w.length(w.longest()); ++l) {
        std::vector<Word> next;
        for (const auto& x : layer)
            for (Letter s = 0; s < w.rank(); ++s) {
                Word y = x;
                y.push_back(s);
                if (w.is_reduced(y)) next.push_back(y);
            }
        layer.clear();
        for (auto& y : next)
            if (seen.insert(canonical(y, w)).second) layer.push_back(y);
    }
    return seen.size();
}

void criterion8() {
    const std::vector<std::pair<std::string, std::size_t>> orders{
        {"A2", 6}, {"A3", 24}, {"B3", 48}, {"C3", 48}, {"I2(4)", 8}, {"I2(5)", 10}};
    for (const auto& [type, order] : orders) {
        auto w = CoxeterSystem::of_type(type);
        expect(w.order() == order, type + ": |W| = " + std::to_string(w.order()));
        expect(count_reduced(w) == order, type + ": |P_red| = " + std::to_string(count_reduced(w)));
    }
    auto a3 = CoxeterSystem::of_type("A3");
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10000; ++i) {
        auto f = normal_form(random_word(rng, 3, 16), a3);
        expect(is_normal_form(f, a3) && normal_form(nf_word(f, a3), a3) == f, "normal form is not idempotent");
    }
    const Subset all = a3.all();
    for (Letter t = 0; t < 3; ++t)
        for (Letter s = 0; s < 3; ++s) {
            Subset from = Subset{1} << t, to = all & ~(Subset{1} << s);
            auto f = equiv_search(a3, all, from, to);
            std::string pair = a3.render_subset(from) + " ~ " + a3.render_subset(to);
            expect(f.has_value(), "no witness for " + pair);
            expect(is_normal_form(*f, a3), "witness for " + pair + " is not a normal form");
            for (auto g : *f) expect(g != a3.identity() && g != a3.longest(), "witness factor outside P0");
            expect(a3.left_set(f->front()) == from && a3.right_set(f->back()) == to, "witness endpoints differ");
        }
    Complement comp(a3.artin_presentation());
    for (int i = 0; i < 1000; ++i) {
        Word x = random_word(rng, 3, 8), y = random_word(rng, 3, 8);
        auto r = lcm(x, y, comp);
        expect(r.status == LcmStatus::found, "reversing lcm did not terminate");
        Word j = join(x, y, a3);
        expect(left_divides(x, j, a3) && left_divides(y, j, a3), "join is not a common multiple");
        expect(equal_in_p(r.join, j, a3), "join differs from reversing lcm");
    }
}

std::size_t weight(const Word& w, const std::vector<std::size_t>& lambda) {
    std::size_t s = 0;
    for (Letter l : w) s += lambda[l];
    return s;
}

void criterion9() {
    for (const std::string name : {"remstillLCM", "remstillLCM(2,3)"})
        expect(check_cube_condition(load_presentation_fixture(name)).holds == Answer::yes, name + ": cube condition");
    for (const std::string name :
         {"braid3", "ex-u-bj", "torus(2,3)", "torus(3,4)", "dihedral(4)", "dihedral(5)", "dihedral(6)"}) {
        auto p = load_presentation_fixture(name);
        expect(check_cube_condition(p).holds == Answer::yes, name + ": cube condition");
        auto h = check_r_homogeneity(p);
        expect(h.has_value(), name + ": no homogeneity weights");
        for (const auto& rel : p.relations())
            expect(weight(rel.lhs, h->weights) == weight(rel.rhs, h->weights), name + ": weights differ on a relation");
    }
    auto braid = load_presentation_fixture("braid3");
    auto r = lcm(braid.word("a"), braid.word("b"), braid);
    expect(r.status == LcmStatus::found && r.join == braid.word("aba"), "braid3 a v b");
    auto torus = load_presentation_fixture("torus(2,3)");
    r = lcm(torus.word("a"), torus.word("b"), torus);
    expect(r.status == LcmStatus::found && (r.join == torus.word("aa") || r.join == torus.word("bbb")),
           "torus(2,3) a v b");
    auto still = load_presentation_fixture("remstillLCM");
    expect(!check_r_homogeneity(still).has_value(), "remstillLCM has a homogeneity certificate");
    std::vector<Word> small{{0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (const auto& x : small)
        for (const auto& y : small)
            expect(lcm(x, y, still).status != LcmStatus::budget,
                   "remstillLCM lcm(" + still.render(x) + ", " + still.render(y) + ") did not terminate");
}

void criterion10() {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 200; ++t) {
        auto d = random_ladder(rng, 1 + t % 3);
        auto report = check_exact(splice(d));
        expect(report.exact, "spliced sequence not exact: " + report.reason);
    }
    std::uniform_int_distribution<std::size_t> dim(1, 12);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int t = 0; t < 1000; ++t) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = entry(rng);
        auto s = smith(m);
        expect(s.U * m * s.V == s.S, "U M V != S");
        expect(abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1, "transform not unimodular");
        for (std::size_t i = 0; i < s.S.rows(); ++i)
            for (std::size_t k = 0; k < s.S.cols(); ++k)
                if (i != k) expect(s.S(i, k) == 0, "S is not diagonal");
        for (std::size_t i = 0; i + 1 < s.rank; ++i)
            expect(s.S(i, i) > 0 && s.S(i + 1, i + 1) % s.S(i, i) == 0, "invariant factors do not divide");
    }
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<void()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "dihedral boundary K-theory", 6, criterion1},
        {2, "torus knot boundary K-theory", 1, criterion2},
        {3, "trivial-coefficient pipelines", 2, criterion3},
        {4, "B4 pipeline", 5, criterion4},
        {5, "Artin representation pipeline", 5, criterion5},
        {6, "boundary quotient K-theory", 1, criterion6},
        {7, "builtin versus generic graph models", 5, criterion7},
        {8, "Garside suite", 30, criterion8},
        {9, "reversing suite", 5, criterion9},
        {10, "splicing and Smith normal form", 30, criterion10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string why;
        try {
            c.run();
        } catch (const Failed& f) {
            why = f.why;
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (why.empty() && secs > c.limit_seconds) {
            std::ostringstream os;
            os << "took " << secs << " s, limit " << c.limit_seconds << " s";
            why = os.str();
        }
        std::printf("%s %d %s (%.2f s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    why.empty() ? "" : ": ", why.c_str());
        if (!why.empty()) ++failures;
    }
    return failures ? 1 : 0;
}
