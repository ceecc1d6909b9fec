#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "workbench/coxeter.hpp"
#include "workbench/error.hpp"
#include "workbench/reversing.hpp"

using namespace wb;

namespace {

CoxeterSystem a2() { return CoxeterSystem(Alphabet({"a", "b"}), {{1, 3}, {3, 1}}); }

Word random_word(std::mt19937_64& rng, std::size_t n, std::size_t len) {
    Word w(len);
    for (auto& l : w) l = static_cast<Letter>(rng() % n);
    return w;
}

// Signed permutation of {1..n} as images of 1..n; type A uses only the transpositions.
using Perm = std::vector<int>;

Perm act_a(const Word& w, std::size_t n) {
    Perm p(n + 1);
    std::iota(p.begin(), p.end(), 0);
    for (Letter l : w) std::swap(p[l], p[l + 1]);
    return p;
}

Perm act_b(const Word& w, std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 1);
    for (Letter l : w) {
        if (l + 1 < n)
            std::swap(p[l], p[l + 1]);
        else
            p[n - 1] = -p[n - 1];
    }
    return p;
}

std::set<Word> braid_class(const Word& w, const CoxeterSystem& c) {
    std::set<Word> seen{w};
    std::vector<Word> todo{w};
    while (!todo.empty()) {
        Word x = todo.back();
        todo.pop_back();
        for (Letter s = 0; s < c.rank(); ++s)
            for (Letter t = 0; t < c.rank(); ++t) {
                if (s == t) continue;
                const auto m = static_cast<std::size_t>(c.m(s, t));
                for (std::size_t i = 0; i + m <= x.size(); ++i) {
                    bool match = true;
                    for (std::size_t j = 0; j < m && match; ++j) match = x[i + j] == (j % 2 ? t : s);
                    if (!match) continue;
                    Word y = x;
                    for (std::size_t j = 0; j < m; ++j) y[i + j] = j % 2 ? s : t;
                    if (seen.insert(y).second) todo.push_back(y);
                }
            }
    }
    return seen;
}

// Greedy normal form through reversing: the first factor is the longest reduced element dividing x.
std::vector<Word> greedy_oracle(Word x, const CoxeterSystem& c) {
    Complement comp(c.artin_presentation());
    std::vector<Word> out;
    while (!x.empty()) {
        Word best;
        for (CoxeterSystem::Elem g = 1; g < c.order(); ++g)
            if (c.length(g) > best.size() && divides(c.word(g), x, comp) == Answer::yes) best = c.word(g);
        auto q = lcm(best, x, comp);
        REQUIRE(q.status == LcmStatus::found);
        REQUIRE(q.comp_y.empty());
        out.push_back(best);
        x = q.comp_x;
    }
    return out;
}

}  // namespace

TEST_CASE("enumerate W: type A against permutations") {
    for (std::size_t n : {1, 2, 3, 4}) {
        auto w = CoxeterSystem::of_type("A" + std::to_string(n));
        std::size_t fact = 1;
        for (std::size_t i = 2; i <= n + 1; ++i) fact *= i;
        CHECK(w.order() == fact);
        std::set<Perm> perms;
        for (CoxeterSystem::Elem g = 0; g < w.order(); ++g) {
            Perm p = act_a(w.word(g), n);
            perms.insert(p);
            std::size_t inv = 0;
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j) inv += p[i] > p[j];
            CHECK(inv == w.length(g));
            for (Letter s = 0; s < n; ++s) CHECK(act_a(w.word(w.mul(g, s)), n) == act_a(concat(w.word(g), Word{s}), n));
        }
        CHECK(perms.size() == fact);
    }
}

TEST_CASE("enumerate W: B3, dihedral and exceptional orders") {
    auto b3 = CoxeterSystem::of_type("B3");
    CHECK(b3.order() == 48);
    std::set<Perm> signed_perms;
    for (CoxeterSystem::Elem g = 0; g < b3.order(); ++g) signed_perms.insert(act_b(b3.word(g), 3));
    CHECK(signed_perms.size() == 48);
    CHECK(CoxeterSystem::of_type("C3").order() == 48);
    for (int m : {2, 3, 4, 5, 6, 7}) CHECK(CoxeterSystem::of_type("I2(" + std::to_string(m) + ")").order() == 2u * m);
    CHECK(CoxeterSystem::of_type("D4").order() == 192);
    CHECK(CoxeterSystem::of_type("H3").order() == 120);
    CHECK(CoxeterSystem::of_type("F4").order() == 1152);
    CHECK(CoxeterSystem::of_type("G2").order() == 12);
}

TEST_CASE("enumerate W: cap and malformed matrices") {
    CHECK_THROWS_WITH(CoxeterSystem(Alphabet({"a", "b"}), {{1, 1000}, {1000, 1}}, 100),
                      doctest::Contains("not finite type within cap"));
    CHECK_THROWS_WITH(CoxeterSystem::of_type("A3", 10), doctest::Contains("cap"));
    CHECK_THROWS(CoxeterSystem(Alphabet({"a", "b"}), {{1, 3}, {2, 1}}));
    CHECK_THROWS(CoxeterSystem(Alphabet({"a", "b"}), {{2, 3}, {3, 1}}));
    CHECK_THROWS(parse_coxeter_matrix("1 0\n0 1\n"));
    CHECK(parse_coxeter_matrix("1 3\n3 1\n") == std::vector<std::vector<int>>{{1, 3}, {3, 1}});
    CHECK_THROWS(CoxeterSystem::of_type("X9"));
}

TEST_CASE("canonical words are ShortLex-least in their braid-move class") {
    for (const char* t : {"A3", "B3", "I2(5)", "H3"}) {
        auto w = CoxeterSystem::of_type(t);
        std::mt19937_64 rng(std::hash<std::string>{}(t));
        for (int i = 0; i < 40; ++i) {
            auto g = static_cast<CoxeterSystem::Elem>(rng() % w.order());
            auto cls = braid_class(w.word(g), w);
            CHECK(*cls.begin() == w.word(g));
            Subset r = 0, l = 0;
            for (const Word& x : cls) {
                CHECK(w.element(x) == g);
                if (!x.empty()) {
                    r |= Subset{1} << x.back();
                    l |= Subset{1} << x.front();
                }
            }
            CHECK(r == w.right_set(g));
            CHECK(l == w.left_set(g));
        }
    }
}

TEST_CASE("delta") {
    auto w = a2();
    CHECK(render_word(w.word(w.longest()), w.generators()) == "aba");
    CHECK(w.left_set(w.longest()) == w.all());
    CHECK(w.right_set(w.longest()) == w.all());
    auto i4 = CoxeterSystem(Alphabet({"a", "b"}), {{1, 4}, {4, 1}});
    CHECK(render_word(i4.word(i4.longest()), i4.generators()) == "abab");
    CHECK(w.longest(0) == w.identity());
    auto a3 = CoxeterSystem::of_type("A3");
    CHECK(a3.length(a3.longest()) == 6);
    CHECK(a3.length(a3.longest(0b101)) == 2);
}

TEST_CASE("delta_T divides reduced g whenever T is in L(g)") {
    for (const char* t : {"A2", "A3", "I2(4)", "I2(5)"}) {
        auto w = CoxeterSystem::of_type(t);
        for (CoxeterSystem::Elem g = 0; g < w.order(); ++g)
            for (Subset s = 0; s <= w.all(); ++s) {
                if ((s & w.left_set(g)) != s) continue;
                CHECK(left_divides(w.word(w.longest(s)), w.word(g), w));
            }
    }
}

TEST_CASE("left and right sets") {
    auto w = a2();
    auto ab = Word{0, 1};
    CHECK(w.left_set(w.element(ab)) == 0b01);
    CHECK(w.right_set(w.element(ab)) == 0b10);
    CHECK(left_set(Word{0, 1, 0}, w) == 0b11);
    CHECK(right_set(Word{0, 1, 0, 0}, w) == 0b11);
    CHECK(left_set(Word{0, 1, 0, 0}, w) == 0b11);
}

TEST_CASE("L and R of g Δ_U for U commuting with the support of g") {
    std::mt19937_64 rng(13);
    auto a4 = CoxeterSystem::of_type("A4");
    // U = {s1}, T = {s3, s4}; U = {s1, s4}, T = {}; U = {s4}, T = {s1, s2}
    for (auto [u, t] : {std::pair<Subset, Subset>{0b0001, 0b1100}, {0b1001, 0}, {0b1000, 0b0011}}) {
        Word du = a4.word(a4.longest(u));
        std::vector<Letter> tl;
        for (Letter l = 0; l < 4; ++l)
            if (t & (Subset{1} << l)) tl.push_back(l);
        for (int k = 0; k < 80; ++k) {
            Word g;
            if (!tl.empty())
                for (std::size_t n = rng() % 7; n-- > 0;) g.push_back(tl[rng() % tl.size()]);
            CHECK(left_set(concat(g, du), a4) == (left_set(g, a4) | u));
            CHECK(right_set(concat(g, du), a4) == (right_set(g, a4) | u));
        }
    }
}

TEST_CASE("normal form examples") {
    auto w = a2();
    CHECK(render_nf(normal_form(Word{0, 0, 1}, w), w) == "(a, ab)");
    CHECK(render_nf(normal_form(Word{0, 1, 0, 1}, w), w) == "(aba, b)");
    CHECK(render_nf(normal_form(Word{0}, w), w) == "(a)");
    CHECK(normal_form(Word{}, w).empty());
    CHECK(normal_form(Word{0, 1, 0, 1}, w).size() == 2);
}

TEST_CASE("normal form matches the greedy oracle") {
    std::mt19937_64 rng(12);
    for (const char* t : {"A2", "A3", "B3", "I2(5)"}) {
        auto w = CoxeterSystem::of_type(t);
        for (int i = 0; i < 25; ++i) {
            Word x = random_word(rng, w.rank(), 1 + rng() % 9);
            auto f = normal_form(x, w);
            auto g = greedy_oracle(x, w);
            REQUIRE(f.size() == g.size());
            for (std::size_t k = 0; k < f.size(); ++k) CHECK(f[k] == w.element(g[k]));
        }
    }
}

TEST_CASE("normal form is idempotent and well formed") {
    auto w = CoxeterSystem::of_type("A3");
    std::mt19937_64 rng(44);
    for (int i = 0; i < 2000; ++i) {
        Word x = random_word(rng, 3, 1 + rng() % 15);
        auto f = normal_form(x, w);
        CHECK(is_normal_form(f, w));
        CHECK(normal_form(nf_word(f, w), w) == f);
        CHECK(nf_word(f, w).size() == x.size());
    }
}

TEST_CASE("join and meet examples") {
    auto w = a2();
    CHECK(render_word(join(Word{0}, Word{1}, w), w.generators()) == "aba");
    CHECK(meet(Word{0}, Word{1}, w).empty());
    CHECK(equal_in_p(join(Word{0, 1}, Word{1, 0}, w), Word{0, 1, 0}, w));
    CHECK(join(Word{0}, Word{0}, w) == Word{0});
    CHECK_FALSE(cylinder_intersects_x0(Word{0}, Word{1}, w));
    CHECK(cylinder_intersects_x0(Word{0}, Word{0}, w));
    CHECK(cylinder_intersects_x0(Word{0, 1}, Word{0}, w));
}

TEST_CASE("join agrees with reversing lcm; meet is the greatest common divisor") {
    std::mt19937_64 rng(77);
    for (const char* t : {"A2", "A3", "B3"}) {
        auto w = CoxeterSystem::of_type(t);
        Complement comp(w.artin_presentation());
        for (int i = 0; i < 60; ++i) {
            Word g = random_word(rng, w.rank(), 1 + rng() % 6), h = random_word(rng, w.rank(), 1 + rng() % 6);
            Word j = join(g, h, w);
            auto r = lcm(g, h, comp);
            REQUIRE(r.status == LcmStatus::found);
            CHECK(equal_in_p(j, r.join, w));
            Word m = meet(g, h, w);
            CHECK(divides(m, g, comp) == Answer::yes);
            CHECK(divides(m, h, comp) == Answer::yes);
            for (Letter s = 0; s < w.rank(); ++s) {
                Word ms = concat(m, Word{s});
                CHECK_FALSE((divides(ms, g, comp) == Answer::yes && divides(ms, h, comp) == Answer::yes));
            }
        }
    }
}

TEST_CASE("equiv_search") {
    auto w = a2();
    auto wit = equiv_search(w, 0b11, 0b01, 0b10);
    REQUIRE(wit.has_value());
    CHECK(render_nf(*wit, w) == "(ab)");
    CHECK_THROWS_AS(equiv_search(w, 0b11, 0b11, 0b01), Error);
    CHECK_THROWS_AS(equiv_search(w, 0b11, 0, 0b01), Error);

    auto a3 = CoxeterSystem::of_type("A3");
    for (Letter t = 0; t < 3; ++t)
        for (Letter s = 0; s < 3; ++s) {
            Subset src = Subset{1} << t, dst = a3.all() & ~(Subset{1} << s);
            if (src == dst) continue;
            auto f = equiv_search(a3, a3.all(), src, dst);
            REQUIRE(f.has_value());
            CHECK(is_normal_form(*f, a3));
            CHECK(a3.left_set(f->front()) == src);
            CHECK(a3.right_set(f->back()) == dst);
            for (auto g : *f) {
                CHECK(g != a3.identity());
                CHECK(g != a3.longest());
            }
        }
}

TEST_CASE("explicit three-factor witnesses are normal forms") {
    for (std::size_t n : {3, 4}) {
        auto w = CoxeterSystem::of_type("A" + std::to_string(n));
        for (std::size_t i = 2; i < n; ++i) {
            // 1-based s_i is letter i-1.
            Subset below = (Subset{1} << (i - 1)) - 1;  // {s1..s(i-1)}
            Subset upto = (Subset{1} << i) - 1;         // {s1..si}
            Word d1 = w.word(w.longest(below)), d2 = w.word(w.longest(upto));
            auto si = static_cast<Letter>(i - 1), si1 = static_cast<Letter>(i);
            NormalForm f{w.element(concat(d1, Word{si})), w.element(concat(concat(Word{si}, d1), Word{si1})),
                         w.element(concat(Word{si1}, d2))};
            CHECK(w.is_reduced(concat(d1, Word{si})));
            CHECK(w.is_reduced(concat(concat(Word{si}, d1), Word{si1})));
            CHECK(w.is_reduced(concat(Word{si1}, d2)));
            CHECK(is_normal_form(f, w));
            Subset mid1 = ((Subset{1} << (i - 2)) - 1) | (Subset{1} << (i - 1));
            Subset mid2 = below | (Subset{1} << i);
            CHECK(w.left_set(f[0]) == below);
            CHECK(w.right_set(f[0]) == mid1);
            CHECK(w.left_set(f[1]) == mid1);
            CHECK(w.right_set(f[1]) == mid2);
            CHECK(w.left_set(f[2]) == mid2);
            CHECK(w.right_set(f[2]) == upto);
        }
    }
}

TEST_CASE("infinite normal form counts") {
    auto w = a2();
    CHECK(infinite_nf_count(w, 1) == 4);
    CHECK(infinite_nf_count(w, 2) == 8);
    CHECK(infinite_nf_count(w, 6) == 128);
    for (const char* t : {"A3", "B3", "I2(5)"}) {
        auto c = CoxeterSystem::of_type(t);
        CHECK(infinite_nf_count(c, 1) == c.order() - 2);
        for (std::size_t n : {2, 3}) {
            auto all = enumerate_infinite_nf(c, n, 1000000);
            CHECK(infinite_nf_count(c, n) == all.size());
            for (const auto& f : all) CHECK(is_normal_form(f, c));
        }
    }
    auto first = enumerate_infinite_nf(w, 2, 3);
    REQUIRE(first.size() == 3);
    CHECK(render_nf(first[0], w) == "(a, a)");
}
