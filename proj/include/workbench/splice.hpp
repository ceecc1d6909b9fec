#pragma once

#include <random>
#include <vector>

#include "workbench/abelian.hpp"

namespace wb {

// Two cyclic exact rows of period N joined by vertical maps:
//   top:    gcheck_i -j-> g_i -p-> gbar_i -d-> gcheck_{i+1}
//   bottom: hcheck_i -k-> h_i -q-> hbar_i -eps-> hcheck_{i+1}
//   vertical: phi_i (onto), pi_i, psi_i (iso).
struct LadderDiagram {
    std::vector<FinAbGroup> gcheck, g, gbar, hcheck, h, hbar;
    std::vector<AbHom> j, p, d, k, q, eps, phi, pi, psi;
    std::size_t period() const { return g.size(); }
};

// Verifies every hypothesis and returns ... ker(phi_i) -> g_i -> h_i -> ker(phi_{i+1}) -> ...
// as a cyclic sequence with nodes ordered (ker phi_0, g_0, h_0, ker phi_1, ...).
ExactSeq splice(const LadderDiagram& diagram);

// Random ladder satisfying all hypotheses; groups have order at most max_order.
LadderDiagram random_ladder(std::mt19937_64& rng, std::size_t period, int max_order = 16, bool disguise = true);

}  // namespace wb
