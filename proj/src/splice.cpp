#include "workbench/splice.hpp"

#include "workbench/error.hpp"

namespace wb {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::precondition, what);
}

ExactSeq row(const std::vector<FinAbGroup>& a, const std::vector<FinAbGroup>& b, const std::vector<FinAbGroup>& c,
             const std::vector<AbHom>& f, const std::vector<AbHom>& g, const std::vector<AbHom>& h) {
    ExactSeq s;
    s.cyclic = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s.groups.insert(s.groups.end(), {a[i], b[i], c[i]});
        s.maps.insert(s.maps.end(), {f[i], g[i], h[i]});
    }
    return s;
}

IntVector random_group_invariants(std::mt19937_64& rng, int max_order) {
    IntVector d;
    long prod = 1;
    int factors = static_cast<int>(rng() % 3);
    for (int f = 0; f < factors; ++f) {
        long room = max_order / prod;
        if (room < 2) break;
        long x = 2 + static_cast<long>(rng() % static_cast<unsigned long>(room - 1));
        d.push_back(Int(x));
        prod *= x;
    }
    return d;
}

// Both groups are diagonal presentations from from_invariants.
AbHom random_hom(std::mt19937_64& rng, const FinAbGroup& a, const FinAbGroup& b) {
    IntMatrix m(b.generators(), a.generators());
    auto diag = [](const FinAbGroup& g, std::size_t i) {
        for (std::size_t c = 0; c < g.relations().cols(); ++c)
            if (g.relations()(i, c) != 0) return g.relations()(i, c);
        return Int(0);
    };
    for (std::size_t r = 0; r < b.generators(); ++r)
        for (std::size_t c = 0; c < a.generators(); ++c) {
            Int br = diag(b, r), ac = diag(a, c);
            if (br == 0) continue;
            Int g;
            mpz_gcd(g.get_mpz_t(), ac.get_mpz_t(), br.get_mpz_t());
            Int step = br / g;
            m(r, c) = step * Int(static_cast<long>(rng() % g.get_ui()));
        }
    return AbHom(a, b, m);
}

IntVector random_element(std::mt19937_64& rng, const FinAbGroup& g) {
    IntVector x(g.generators());
    for (auto& e : x) e = static_cast<long>(rng() % 17);
    return x;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    std::vector<IntVector> cols;
    for (std::size_t k = 0; k < u.rows(); ++k) {
        IntVector e(u.rows());
        e[k] = 1;
        auto x = solve(u, e);
        if (!x) throw Error(ErrorCode::invalid, "matrix is not unimodular");
        cols.push_back(*x);
    }
    return IntMatrix::from_columns(cols, u.rows());
}

}  // namespace

ExactSeq splice(const LadderDiagram& D) {
    const std::size_t N = D.period();
    require(N > 0, "empty diagram");
    for (auto* v : {&D.gcheck, &D.gbar, &D.hcheck, &D.h, &D.hbar})
        require(v->size() == N, "diagram groups have inconsistent period");
    for (auto* v : {&D.j, &D.p, &D.d, &D.k, &D.q, &D.eps, &D.phi, &D.pi, &D.psi})
        require(v->size() == N, "diagram maps have inconsistent period");

    auto top = check_exact(row(D.gcheck, D.g, D.gbar, D.j, D.p, D.d));
    require(top.exact, "top row is not exact: " + top.reason);
    auto bottom = check_exact(row(D.hcheck, D.h, D.hbar, D.k, D.q, D.eps));
    require(bottom.exact, "bottom row is not exact: " + bottom.reason);

    for (std::size_t i = 0; i < N; ++i) {
        std::size_t n = (i + 1) % N;
        std::string at = " at index " + std::to_string(i);
        require(compose(D.phi[n], D.d[i]).equals(compose(D.eps[i], D.psi[i])), "square phi.d = eps.psi fails" + at);
        require(compose(D.k[i], D.phi[i]).equals(compose(D.pi[i], D.j[i])), "square k.phi = pi.j fails" + at);
        require(compose(D.q[i], D.pi[i]).equals(compose(D.psi[i], D.p[i])), "square q.pi = psi.p fails" + at);
        require(D.psi[i].is_iso(), "psi is not an isomorphism" + at);
        require(D.phi[i].is_surjective(), "phi is not surjective" + at);
    }

    std::vector<Kernel> kers;
    for (std::size_t i = 0; i < N; ++i) kers.push_back(kernel(D.phi[i]));

    ExactSeq out;
    out.cyclic = true;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t n = (i + 1) % N;
        AbHom t = compose(D.d[i], compose(inverse(D.psi[i]), D.q[i]));
        std::vector<IntVector> cols;
        for (std::size_t c = 0; c < t.domain().generators(); ++c) {
            auto z = kers[n].inclusion.preimage(t.matrix().column(c));
            require(z.has_value(), "connecting map does not land in ker phi");
            cols.push_back(*z);
        }
        AbHom conn(D.h[i], kers[n].group, IntMatrix::from_columns(cols, kers[n].group.generators()));
        out.groups.insert(out.groups.end(), {kers[i].group, D.g[i], D.h[i]});
        out.maps.insert(out.maps.end(), {compose(D.j[i], kers[i].inclusion), D.pi[i], conn});
    }
    return out;
}

LadderDiagram random_ladder(std::mt19937_64& rng, std::size_t N, int max_order, bool disguise) {
    LadderDiagram D;
    for (std::size_t i = 0; i < N; ++i) {
        D.gcheck.push_back(FinAbGroup::from_invariants(random_group_invariants(rng, max_order)));
        D.g.push_back(FinAbGroup::from_invariants(random_group_invariants(rng, max_order)));
    }
    for (std::size_t i = 0; i < N; ++i) D.j.push_back(random_hom(rng, D.gcheck[i], D.g[i]));
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t n = (i + 1) % N;
        Cokernel c = cokernel(D.j[i]);
        Kernel k = kernel(D.j[n]);
        FinAbGroup gb = direct_sum(c.group, k.group);
        D.gbar.push_back(gb);
        D.p.push_back(AbHom(D.g[i], gb, vstack(c.projection.matrix(), IntMatrix(k.group.generators(), D.g[i].generators()))));
        D.d.push_back(AbHom(gb, D.gcheck[n], hstack(IntMatrix(D.gcheck[n].generators(), c.group.generators()), k.inclusion.matrix())));
    }
    for (std::size_t i = 0; i < N; ++i) {
        IntVector x(D.gcheck[i].generators());
        for (int attempt = 0; attempt < 20; ++attempt) {
            IntVector y = random_element(rng, D.gcheck[i]);
            if (D.gcheck[i].element_order(y) == D.g[i].element_order(D.j[i].apply(y))) {
                x = y;
                break;
            }
        }
        IntMatrix xc = IntMatrix::from_columns({x}, x.size());
        IntMatrix jx = D.j[i].matrix() * xc;
        D.hcheck.push_back(FinAbGroup(D.gcheck[i].generators(), hstack(D.gcheck[i].relations(), xc)));
        D.h.push_back(FinAbGroup(D.g[i].generators(), hstack(D.g[i].relations(), jx)));
        D.phi.push_back(AbHom(D.gcheck[i], D.hcheck[i], IntMatrix::identity(D.gcheck[i].generators())));
        D.pi.push_back(AbHom(D.g[i], D.h[i], IntMatrix::identity(D.g[i].generators())));
        D.k.push_back(AbHom(D.hcheck[i], D.h[i], D.j[i].matrix()));
    }
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t n = (i + 1) % N;
        std::size_t m = D.gbar[i].generators();
        IntMatrix u = disguise ? random_unimodular(m, rng) : IntMatrix::identity(m);
        IntMatrix uinv = inverse_unimodular(u);
        D.hbar.push_back(FinAbGroup(m, u * D.gbar[i].relations()));
        D.psi.push_back(AbHom(D.gbar[i], D.hbar[i], u));
        D.q.push_back(AbHom(D.h[i], D.hbar[i], u * D.p[i].matrix()));
        D.eps.push_back(AbHom(D.hbar[i], D.hcheck[n], D.d[i].matrix() * uinv));
    }
    return D;
}

}  // namespace wb
