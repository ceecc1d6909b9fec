#include <doctest.h>

#include <random>
#include <set>

#include "workbench/equality.hpp"
#include "workbench/error.hpp"
#include "workbench/words.hpp"

using namespace wb;

namespace {

Presentation braid3() { return make_presentation({"a", "b"}, {{"aba", "bab"}}); }

Word random_word(std::mt19937_64& rng, std::size_t n, std::size_t len) {
    Word w(len);
    for (auto& l : w) l = static_cast<Letter>(rng() % n);
    return w;
}

// Every maximal rewriting sequence, choosing occurrences at random.
Word rewrite_random_order(Word w, const RewriteRule& r, std::mt19937_64& rng) {
    for (;;) {
        std::vector<std::size_t> occ;
        for (std::size_t p = find_factor(w, r.v); p != std::string::npos; p = find_factor(w, r.v, p + 1)) occ.push_back(p);
        if (occ.empty()) return w;
        std::size_t pos = occ[rng() % occ.size()];
        Word n(w.begin(), w.begin() + static_cast<long>(pos));
        n.insert(n.end(), r.u.begin(), r.u.end());
        n.insert(n.end(), w.begin() + static_cast<long>(pos + r.v.size()), w.end());
        w = n;
    }
}

bool one_move_apart(const Word& a, const Word& b, const Presentation& p) {
    for (const Word& n : relation_neighbours(a, p))
        if (n == b) return true;
    return false;
}

}  // namespace

TEST_CASE("parse and render words") {
    Alphabet ab({"a", "b"});
    CHECK(parse_word("aba", ab) == Word{0, 1, 0});
    CHECK(parse_word("b^3", ab) == Word{1, 1, 1});
    CHECK(parse_word("a b^3 a", ab) == parse_word("ab3a", ab));
    CHECK(parse_word("", ab).empty());
    CHECK_THROWS_AS(parse_word("axa", ab), Error);
    CHECK_THROWS_AS(parse_word("a^0", ab), Error);
    CHECK_THROWS_AS(parse_word("a^-1", ab), Error);
    CHECK(render_word(parse_word("abbba", ab), ab) == "ab^3a");
    CHECK(render_word({}, ab).empty());
    for (const char* s : {"aba", "ab^3a", "b^2a^2", "a"}) CHECK(render_word(parse_word(s, ab), ab) == s);

    Alphabet s({"s1", "s2", "s10"});
    CHECK(parse_word("s1 s10 s2^2", s) == Word{0, 2, 1, 1});
    CHECK(render_word(Word{0, 2, 1, 1}, s) == "s1 s10 s2^2");
    CHECK_THROWS(parse_word("s13", s));

    SignedWord w = parse_signed_word("a^-1 b", ab);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == SignedLetter{0, -1});
    CHECK(render_signed(w, ab) == "a^-1 b");
    CHECK(inverse(parse_word("ab", ab)) == parse_signed_word("b^-1 a^-1", ab));
}

TEST_CASE("word_stats") {
    Alphabet ab({"a", "b"});
    auto e = word_stats({}, 2);
    CHECK(e.total == 0);
    CHECK(e.counts == std::vector<std::size_t>{0, 0});
    auto s = word_stats(parse_word("aba", ab), 2);
    CHECK(s.total == 3);
    CHECK(s.counts == std::vector<std::size_t>{2, 1});
    CHECK(word_stats(parse_word("b^3", ab), 2).counts == std::vector<std::size_t>{0, 3});
}

TEST_CASE("overlap_set against brute force") {
    Alphabet abcd({"a", "b", "c", "d"});
    CHECK(overlap_set(parse_word("cd", abcd)) == std::vector<Word>{{}});
    CHECK(overlap_set(parse_word("bab", abcd)) == std::vector<Word>{{}, {1}});
    CHECK(overlap_set(parse_word("aa", abcd)) == std::vector<Word>{{}, {0}});
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        Word v = random_word(rng, 2, 1 + rng() % 7);
        auto ovl = overlap_set(v);
        std::set<Word> brute;
        for (std::size_t k = 0; k < v.size(); ++k)
            for (std::size_t m = 1; m <= v.size(); ++m) {
                Word x = subword(v, 0, k);
                if (k + m == v.size() && subword(v, m, k) == x) brute.insert(x);
            }
        CHECK(std::set<Word>(ovl.begin(), ovl.end()) == brute);
        CHECK(ovl.front().empty());
        CHECK(std::find(ovl.begin(), ovl.end(), v) == ovl.end());
    }
}

TEST_CASE("rewrite_irreducible") {
    Presentation p = make_presentation({"a", "b", "c", "d"}, {{"ab", "cd"}});
    CHECK(p.render(rewrite_irreducible(p.word("acdb"), p)) == "a^2b^2");
    CHECK(rewrite_irreducible(p.word("abba"), p) == p.word("abba"));
    Word z = p.word("cdacdb");
    Word rz = rewrite_irreducible(z, p);
    CHECK(rz == p.word("abaabb"));
    std::mt19937_64 rng(3);
    RewriteRule rule = rewrite_rule(p);
    for (int t = 0; t < 20; ++t) CHECK(rewrite_random_order(z, rule, rng) == rz);
}

TEST_CASE("rewrite precondition failures are named") {
    CHECK_THROWS_WITH(rewrite_rule(make_presentation({"a", "b"}, {{"aba", "bab"}})), doctest::Contains("OVL"));
    CHECK_THROWS_WITH(rewrite_rule(make_presentation({"a", "b", "c"}, {{"abc", "ca"}})), doctest::Contains("noetherian"));
}

TEST_CASE("rewriting confluence on random words") {
    std::vector<Presentation> fixtures{
        make_presentation({"a", "b", "c", "d"}, {{"ab", "cd"}}),
        make_presentation({"a", "b"}, {{"ba", "aab"}}),
        make_presentation({"a", "b", "c"}, {{"a", "bc"}}),
    };
    std::mt19937_64 rng(17);
    for (const auto& p : fixtures) {
        auto rule = find_confluent_rule(p);
        REQUIRE(rule.has_value());
        for (int t = 0; t < 1000; ++t) {
            Word z = random_word(rng, p.alphabet().size(), rng() % 14);
            Word a = rewrite_irreducible(z, *rule);
            CHECK(find_factor(a, rule->v) == std::string::npos);
            CHECK(rewrite_random_order(z, *rule, rng) == a);
            if (t % 50 == 0) CHECK(words_equal(z, a, p).status == Verdict::equal);
        }
    }
}

TEST_CASE("words_equal in braid3") {
    Presentation p = braid3();
    auto v = words_equal(p.word("aba"), p.word("bab"), p);
    CHECK(v.status == Verdict::equal);
    CHECK(v.witness.size() == 2);
    auto v2 = words_equal(p.word("abaa"), p.word("baba"), p);
    CHECK(v2.status == Verdict::equal);
    for (std::size_t i = 0; i + 1 < v2.witness.size(); ++i) CHECK(one_move_apart(v2.witness[i], v2.witness[i + 1], p));
    CHECK(v2.witness.front() == p.word("abaa"));
    CHECK(v2.witness.back() == p.word("baba"));
    CHECK(words_equal(p.word("a"), p.word("b"), p).status == Verdict::distinct);
    CHECK(words_equal(p.word("ab"), p.word("ba"), p).status == Verdict::distinct);
}

TEST_CASE("words_equal is symmetric and respects length") {
    Presentation p = braid3();
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        Word x = random_word(rng, 2, 1 + rng() % 6), y = random_word(rng, 2, 1 + rng() % 6);
        auto a = words_equal(x, y, p), b = words_equal(y, x, p);
        CHECK(a.status == b.status);
        if (a.status == Verdict::equal) CHECK(x.size() == y.size());
    }
}

TEST_CASE("words_equal reports unknown on budget exhaustion") {
    Presentation p = make_presentation({"a", "b"}, {{"bab", "a"}});
    auto v = words_equal(p.word("a"), p.word("b"), p, 50);
    CHECK(v.status != Verdict::equal);
    CHECK(abelian_invariant_separates(p.word("aa"), p.word("ab"), p));
    auto w = words_equal(p.word("a"), p.word("abb"), p, 50);
    CHECK(w.status == Verdict::unknown);
    CHECK(w.budget_used <= 50);
}

TEST_CASE("check_presentation flags") {
    auto ok = check_presentation(braid3());
    CHECK(ok.all_pass());
    auto red = check_presentation(make_presentation({"a", "b"}, {{"a", "bb"}}));
    CHECK(red.redundant_generators == std::vector<std::string>{"a"});
    auto last = check_presentation(make_presentation({"a", "b"}, {{"ab", "bb"}}));
    CHECK(last.first_letters_differ == true);
    CHECK(last.last_letters_differ == false);
    auto triv = check_presentation(make_presentation({"a", "b"}, {{"ab", "ab"}}));
    CHECK(triv.trivial_relations.size() == 1);
    auto eps = check_presentation(make_presentation({"a", "b"}, {{"ab", ""}}));
    CHECK(eps.epsilon_relators.size() == 1);
}

TEST_CASE("parse_presentation") {
    auto p = parse_presentation("# braid\ngenerators: a b\nrelation: aba = bab\n");
    CHECK(p.one_relator());
    CHECK(p.render(p.relation().lhs) == "aba");
    CHECK_THROWS(parse_presentation("relation: a = b\n"));
    CHECK_THROWS(parse_presentation("generators: a b\nrelation: a b\n"));
    CHECK_THROWS(parse_presentation("generators: a b\nrelation: ax = b\n"));
    CHECK(parse_presentation(p.to_text()).to_text() == p.to_text());
}

TEST_CASE("find_separating_word") {
    auto p = make_presentation({"a", "b", "c"}, {{"aba", "bab"}});
    auto z = find_separating_word(p);
    REQUIRE(z.has_value());
    CHECK(p.render(*z) == "c^8");
    CHECK(separating_conditions_hold(*z, p));
    CHECK_FALSE(find_separating_word(braid3()).has_value());

    auto d = make_presentation({"a", "b", "c"}, {{"ac", "bb"}});
    auto zd = find_separating_word(d);
    REQUIRE(zd.has_value());
    CHECK(d.render(*zd) == "a^3bc^3");
    CHECK(separating_conditions_hold(*zd, d));

    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        Word u = random_word(rng, 3, 1 + rng() % 4), v = random_word(rng, 3, 1 + rng() % 4);
        if (u == v) continue;
        Presentation q(Alphabet({"a", "b", "c"}), {{u, v}});
        auto s = find_separating_word(q);
        if (s) CHECK(separating_conditions_hold(*s, q));
    }
}
