#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "workbench/intmatrix.hpp"

namespace wb {

// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ... | dr, di > 0.
struct Snf {
    IntMatrix U, Uinv, S, V;
    std::size_t rank = 0;
    IntVector diagonal() const;
};

Snf smith(const IntMatrix& m);
// Nonzero diagonal entries of the Smith form (ones included).
IntVector invariant_factors(const IntMatrix& m);
// Lower-triangular column-style Hermite basis of the column lattice; zero columns dropped.
IntMatrix hermite_columns(const IntMatrix& m);
// Columns form a basis of {x : m x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);
// Some integer x with m x = b, if one exists.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 0);

// Column lattice of a matrix with cached Smith data for membership tests.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(IntMatrix gens);
    std::size_t dim() const { return gens_.rows(); }
    const IntMatrix& generators() const { return gens_; }
    bool contains(const IntVector& v) const;
    bool contains_all(const IntMatrix& cols) const;
    bool same_as(const Lattice& o) const;

private:
    IntMatrix gens_;
    std::shared_ptr<const Snf> snf_;
};

// Z^n / (column span of relations).
class FinAbGroup {
public:
    FinAbGroup() : FinAbGroup(0, IntMatrix(0, 0)) {}
    FinAbGroup(std::size_t generators, IntMatrix relations);

    static FinAbGroup free(std::size_t n);
    // Entries 0 give free summands, entries 1 are dropped.
    static FinAbGroup from_invariants(const IntVector& d);
    static FinAbGroup cyclic(long d) { return from_invariants({Int(d)}); }

    std::size_t generators() const { return n_; }
    const IntMatrix& relations() const { return rel_; }
    const Lattice& relation_lattice() const { return lattice_; }

    // Torsion factors > 1 in a divisibility chain, followed by one 0 per free summand.
    const IntVector& invariants() const { return inv_; }
    std::size_t rank() const;
    IntVector torsion() const;
    bool is_trivial() const { return inv_.empty(); }
    bool is_free() const;
    bool is_finite() const { return rank() == 0; }
    Int order() const;  // 0 when infinite
    bool isomorphic(const FinAbGroup& o) const { return inv_ == o.inv_; }
    bool operator==(const FinAbGroup& o) const { return isomorphic(o); }
    bool is_zero(const IntVector& x) const { return lattice_.contains(x); }
    Int element_order(const IntVector& x) const;  // 0 when infinite
    std::string to_string() const;

private:
    std::size_t n_;
    IntMatrix rel_;
    Lattice lattice_;
    IntVector inv_;
};

FinAbGroup parse_group(const std::string& text);
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

// Homomorphism given by its matrix on generators (codomain rows x domain columns).
class AbHom {
public:
    AbHom() = default;
    AbHom(FinAbGroup dom, FinAbGroup cod, IntMatrix m);
    static AbHom zero(const FinAbGroup& dom, const FinAbGroup& cod);
    static AbHom identity(const FinAbGroup& g);

    const FinAbGroup& domain() const { return dom_; }
    const FinAbGroup& codomain() const { return cod_; }
    const IntMatrix& matrix() const { return m_; }

    IntVector apply(const IntVector& x) const { return m_ * x; }
    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const { return is_injective() && is_surjective(); }
    bool equals(const AbHom& o) const;
    std::optional<IntVector> preimage(const IntVector& y) const;

private:
    FinAbGroup dom_, cod_;
    IntMatrix m_;
};

// g o f
AbHom compose(const AbHom& g, const AbHom& f);
AbHom inverse(const AbHom& iso);
AbHom hom_direct_sum(const AbHom& f, const AbHom& g);

struct Kernel {
    FinAbGroup group;
    AbHom inclusion;
};
struct Cokernel {
    FinAbGroup group;
    AbHom projection;
};
struct Simplified {
    FinAbGroup group;
    AbHom to;    // original -> simplified
    AbHom from;  // simplified -> original
};

Kernel kernel(const AbHom& f);
Cokernel cokernel(const AbHom& f);
Simplified simplify(const FinAbGroup& g);
// Subgroup of Z^n (as a lattice containing the relations) that is the preimage of 0 under f.
IntMatrix kernel_lattice(const AbHom& f);

struct ExactSeq {
    std::vector<FinAbGroup> groups;
    std::vector<AbHom> maps;  // maps[k]: groups[k] -> groups[k+1] (mod size when cyclic)
    bool cyclic = false;
};

struct ExactnessReport {
    bool exact = true;
    std::optional<std::size_t> failing_node;
    std::string reason;
};

ExactnessReport check_exact(const ExactSeq& seq);

struct ExtensionResult {
    std::vector<FinAbGroup> candidates;
    bool determined = false;
    bool bounded = true;  // false when the torsion bound was exceeded
    std::string route;
};

struct ExtensionHints {
    bool sub_is_direct_summand = false;
};

ExtensionResult solve_extension(const FinAbGroup& sub, const FinAbGroup& quot, const ExtensionHints& hints = {});

}  // namespace wb
