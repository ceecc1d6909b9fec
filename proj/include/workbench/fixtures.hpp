#pragma once

#include <string>
#include <vector>

#include "workbench/kpipeline.hpp"
#include "workbench/words.hpp"

namespace wb {

// braid3, braid4, dihedral(m), torus(p,q), remstillLCM, remstillLCM(d,c), ex-u-bj.
Presentation load_presentation_fixture(const std::string& name);
// trivial, b4-coeff, artin-rep-coeff.
CoeffAction load_coeff_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace wb
