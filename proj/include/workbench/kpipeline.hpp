#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "workbench/abelian.hpp"
#include "workbench/graph.hpp"
#include "workbench/intmatrix.hpp"
#include "workbench/words.hpp"

namespace wb {

// Letter matrices α_i = (γ_a)⁻¹ and β_i = (γ_b)⁻¹ on free coefficient groups, per degree i ∈ {0, 1}.
struct CoeffAction {
    std::string name;
    std::array<IntMatrix, 2> alpha, beta;
    std::size_t rank(int degree) const { return alpha[degree].rows(); }
};

// Rank 1 identity in degree 0, rank 0 in degree 1.
CoeffAction trivial_action();
CoeffAction b4_action();
CoeffAction artin_rep_action();
// {"rank0":1,"rank1":2,"alpha0":[[1]],"beta0":[[1]],"alpha1":[[1,1],[0,1]],"beta1":[[2,1],[-1,0]]}
CoeffAction parse_coeff_action(const std::string& json_text);

enum class Family { dihedral, torus };

struct PipelineCase {
    Family family = Family::dihedral;
    std::size_t m = 0, p = 0, q = 0;
    Presentation presentation;
    ModelGraph graph;
    Word w;

    // Builtin dihedral list; torus uses the builtin list for p >= 3 and the case 1 graph for p = 2.
    static PipelineCase dihedral(std::size_t m);
    static PipelineCase torus(std::size_t p, std::size_t q);
    std::string name() const;
};

// (γ_x)⁻¹ = mat(x_n) ⋯ mat(x_1) for x = x_1 ⋯ x_n.
IntMatrix gamma_inverse(const Word& x, const CoeffAction& act, int degree);

struct ActionCheck {
    bool ok = true;
    std::string message;
    std::array<IntMatrix, 2> lhs, rhs;
};
ActionCheck validate_action(const PipelineCase& c, const CoeffAction& act);

// id - M with M[x-block][y-block] summing (γ_e)⁻¹ over edges e: y -> x.
IntMatrix build_full_j(const PipelineCase& c, const CoeffAction& act, int degree);
// For each vertex v, the relator-free words starting with v having no prefix v[0] w for a successor w.
std::vector<std::vector<Word>> phi_words(const PipelineCase& c, std::size_t max_length = 64);
IntMatrix build_phi(const PipelineCase& c, const CoeffAction& act, int degree);

// U (j K) V = diag(I_k, block) where the columns of K span ker φ.
struct Reduction {
    IntMatrix kernel, restricted, U, V, block;
    std::size_t identity_size = 0;
    bool expected_shape = false;
};
Reduction reduce_with_tracking(const IntMatrix& j, const IntMatrix& phi, std::size_t rank);

IntMatrix tilde_j_closed_form(const PipelineCase& c, const CoeffAction& act, int degree);

// Row of blocks (γ_v)⁻¹ - (γ_{v∨w})⁻¹ over the vertices v.
IntMatrix iota_pi(const PipelineCase& c, const CoeffAction& act, int degree);
// The same blocks for the words a and b.
IntMatrix iota_pi_display(const PipelineCase& c, const CoeffAction& act, int degree);

struct PipelineHints {
    // [1]_0 generates a free direct summand of K_0(A ⋊ G).
    bool unit_summand = false;
};

struct DegreeReport {
    IntMatrix j, phi, closed_form, iota_pi, iota_pi_display;
    Reduction reduction;
    bool phi_surjective = false;
    bool annihilates = false;
    bool matches_closed_form = false;
    FinAbGroup coker_j, ker_j;
    FinAbGroup k_of_i;
    // Matrix of ι_i on K_i(I); absent when the kernel summand's image is not determined.
    std::optional<IntMatrix> iota;
    ExtensionResult crossed;
    std::string iota_route;
};

struct KReport {
    std::string case_name, action_name;
    ActionCheck action;
    std::array<DegreeReport, 2> degree;
    std::vector<std::string> hints_used;
    bool determined() const { return degree[0].crossed.determined && degree[1].crossed.determined; }
};

KReport run_pipeline(const PipelineCase& c, const CoeffAction& act, const PipelineHints& hints = {});

struct BoundaryK {
    FinAbGroup k0, k1;
    IntVector unit;
};
// K-theory of the boundary quotient: coker and ker of multiplication by 2 - |Σ| on Z, or (Z, 1, 0) for an
// infinite alphabet.
BoundaryK boundary_quotient_k(const Presentation& p, bool infinite_alphabet = false);

}  // namespace wb
