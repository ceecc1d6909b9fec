#include <doctest.h>

#include <random>

#include "workbench/abelian.hpp"
#include "workbench/splice.hpp"

using namespace wb;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
    IntMatrix m(r, c);
    std::uniform_int_distribution<int> d(-range, range);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

bool unimodular(const IntMatrix& m) {
    Int d = determinant(m);
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("snf of diag(2,3) is diag(1,6)") {
    Snf s = smith(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.S == IntMatrix{{1, 0}, {0, 6}});
    CHECK(s.U * IntMatrix{{2, 0}, {0, 3}} * s.V == s.S);
}

TEST_CASE("snf of zero 1x1") {
    Snf s = smith(IntMatrix{{0}});
    CHECK(s.rank == 0);
    CHECK(s.S == IntMatrix{{0}});
}

TEST_CASE("snf of the B4 j1 block has invariant factors 1,2") {
    IntMatrix m{{2, 2}, {-1, 0}, {1, 2}, {0, 0}};
    CHECK(invariant_factors(m) == IntVector{1, 2});
}

TEST_CASE("snf round trip on random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        IntMatrix m = random_matrix(rng, r, c, 5);
        Snf s = smith(m);
        CHECK(s.U * m * s.V == s.S);
        CHECK(unimodular(s.U));
        CHECK(unimodular(s.V));
        CHECK(s.U * s.Uinv == IntMatrix::identity(r));
        for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
        IntMatrix p = random_unimodular(r, rng) * m * random_unimodular(c, rng);
        CHECK(invariant_factors(p) == s.diagonal());
    }
}

TEST_CASE("hermite basis is canonical for the lattice") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        IntMatrix m = random_matrix(rng, 4, 3, 6);
        IntMatrix h1 = hermite_columns(m);
        IntMatrix h2 = hermite_columns(m * random_unimodular(3, rng));
        CHECK(h1 == h2);
        for (std::size_t i = 0; i < h1.rows(); ++i)
            for (std::size_t j = 0; j < h1.cols(); ++j)
                if (j > i) CHECK(h1(i, j) == 0);
        CHECK(Lattice(m).same_as(Lattice(h1)));
    }
}

TEST_CASE("cokernel and kernel of multiplication by 2") {
    AbHom f(FinAbGroup::free(1), FinAbGroup::free(1), IntMatrix{{2}});
    CHECK(cokernel(f).group.to_string() == "Z/2");
    CHECK(kernel(f).group.is_trivial());
}

TEST_CASE("torus map (p;q) has cokernel Z + Z/gcd") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 3}, {4, 6}, {3, 3}, {6, 9}}) {
        AbHom f(FinAbGroup::free(1), FinAbGroup::free(2), IntMatrix{{p}, {q}});
        long g = std::gcd(p, q);
        CHECK(cokernel(f).group == parse_group(g == 1 ? "Z" : "Z + Z/" + std::to_string(g)));
    }
}

TEST_CASE("B4 j1 cokernel and kernel") {
    AbHom f(FinAbGroup::free(2), FinAbGroup::free(4), IntMatrix{{2, 2}, {-1, 0}, {1, 2}, {0, 0}});
    CHECK(cokernel(f).group.to_string() == "Z^2 + Z/2");
    CHECK(kernel(f).group.is_trivial());
}

TEST_CASE("kernel inclusion composed with the map is zero") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        FinAbGroup a(3, random_matrix(rng, 3, 2, 4));
        IntMatrix fm = random_matrix(rng, 2, 3, 3);
        FinAbGroup b(2, hstack(fm * a.relations(), random_matrix(rng, 2, 1, 4)));
        AbHom f(a, b, fm);
        Kernel k = kernel(f);
        CHECK(compose(f, k.inclusion).is_zero());
        CHECK(k.inclusion.is_injective());
        Cokernel c = cokernel(f);
        CHECK(compose(c.projection, f).is_zero());
        CHECK(c.projection.is_surjective());
    }
}

TEST_CASE("cokernel classification is independent of redundant relations") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        IntMatrix r = random_matrix(rng, 3, 3, 5);
        IntMatrix extra = r * random_matrix(rng, 3, 2, 3);
        CHECK(FinAbGroup(3, r) == FinAbGroup(3, hstack(r, extra)));
    }
}

TEST_CASE("group rendering and parsing") {
    CHECK(FinAbGroup::from_invariants({0, 2, 0}).to_string() == "Z^2 + Z/2");
    CHECK(FinAbGroup().to_string() == "0");
    CHECK(FinAbGroup::from_invariants({6, 4}).to_string() == "Z/2 + Z/12");
    CHECK(parse_group("Z + Z/2") == FinAbGroup::from_invariants({2, 0}));
    CHECK(parse_group("0").is_trivial());
}

TEST_CASE("check_exact on short sequences") {
    FinAbGroup z0, z = FinAbGroup::free(1), z2 = FinAbGroup::cyclic(2), z4 = FinAbGroup::cyclic(4);
    ExactSeq good;
    good.groups = {z0, z, z, z2, z0};
    good.maps = {AbHom::zero(z0, z), AbHom(z, z, IntMatrix{{2}}), AbHom(z, z2, IntMatrix{{1}}), AbHom::zero(z2, z0)};
    CHECK(check_exact(good).exact);

    ExactSeq bad;
    bad.groups = {z0, z, z, z4, z0};
    bad.maps = {AbHom::zero(z0, z), AbHom(z, z, IntMatrix{{2}}), AbHom(z, z4, IntMatrix{{1}}), AbHom::zero(z4, z0)};
    auto rep = check_exact(bad);
    CHECK_FALSE(rep.exact);
    REQUIRE(rep.failing_node.has_value());
    CHECK(*rep.failing_node == 2);
}

TEST_CASE("not a homomorphism is rejected") {
    CHECK_THROWS(AbHom(FinAbGroup::cyclic(2), FinAbGroup::cyclic(3), IntMatrix{{1}}));
}

TEST_CASE("splice of random ladders is exact") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 25; ++t) {
        LadderDiagram d = random_ladder(rng, 1 + t % 3);
        ExactSeq s = splice(d);
        CHECK(check_exact(s).exact);
    }
}

TEST_CASE("splice with isomorphic verticals degenerates to the bottom row") {
    std::mt19937_64 rng(3);
    LadderDiagram d = random_ladder(rng, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        d.hcheck[i] = d.gcheck[i];
        d.h[i] = d.g[i];
        d.phi[i] = AbHom::identity(d.gcheck[i]);
        d.pi[i] = AbHom::identity(d.g[i]);
        d.k[i] = d.j[i];
    }
    for (std::size_t i = 0; i < 2; ++i) {
        d.q[i] = compose(d.psi[i], d.p[i]);
        d.eps[i] = compose(d.d[i], inverse(d.psi[i]));
    }
    ExactSeq s = splice(d);
    CHECK(check_exact(s).exact);
    CHECK(s.groups[0].is_trivial());
    CHECK(s.groups[3].is_trivial());
}

TEST_CASE("splice rejects a non-surjective phi") {
    std::mt19937_64 rng(4);
    LadderDiagram d = random_ladder(rng, 1);
    d.phi[0] = AbHom::zero(d.gcheck[0], d.hcheck[0]);
    if (!d.hcheck[0].is_trivial()) CHECK_THROWS(splice(d));
}

TEST_CASE("solve_extension") {
    auto z = FinAbGroup::free(1);
    auto r1 = solve_extension(z, FinAbGroup::free(2));
    CHECK(r1.determined);
    CHECK(r1.candidates.at(0).to_string() == "Z^3");

    auto r2 = solve_extension(z, FinAbGroup::cyclic(2));
    CHECK_FALSE(r2.determined);
    REQUIRE(r2.candidates.size() == 2);
    CHECK(r2.candidates[0].to_string() == "Z");
    CHECK(r2.candidates[1].to_string() == "Z + Z/2");

    auto r3 = solve_extension(z, FinAbGroup::cyclic(2), {.sub_is_direct_summand = true});
    CHECK(r3.determined);
    CHECK(r3.candidates.at(0).to_string() == "Z + Z/2");

    auto r4 = solve_extension(FinAbGroup(), FinAbGroup::cyclic(5));
    CHECK(r4.determined);
    CHECK(r4.candidates.at(0).to_string() == "Z/5");

    auto r5 = solve_extension(FinAbGroup::cyclic(2), FinAbGroup::cyclic(2));
    CHECK(r5.candidates.size() == 2);
}
