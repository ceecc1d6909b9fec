#include "workbench/fixtures.hpp"

#include <regex>

#include "workbench/error.hpp"

namespace wb {

namespace {

std::size_t to_size(const std::string& s) {
    if (s.size() > 6) throw Error(ErrorCode::parse, "fixture parameter too large: " + s);
    return std::stoul(s);
}

std::string alternating(char x, char y, std::size_t m) {
    std::string s;
    for (std::size_t i = 0; i < m; ++i) s += i % 2 ? y : x;
    return s;
}

}  // namespace

Presentation load_presentation_fixture(const std::string& name) {
    static const std::regex one(R"((dihedral)\((\d+)\))"), two(R"((torus|remstillLCM)\((\d+),\s*(\d+)\))");
    std::smatch m;
    if (name == "braid3") return make_presentation({"a", "b"}, {{"aba", "bab"}});
    if (name == "braid4") return make_presentation({"a", "b", "c"}, {{"aba", "bab"}, {"bcb", "cbc"}, {"ac", "ca"}});
    if (name == "ex-u-bj") return make_presentation({"a", "b"}, {{"bb", "aba"}});
    if (name == "remstillLCM") return load_presentation_fixture("remstillLCM(1,1)");
    if (std::regex_match(name, m, one)) {
        std::size_t k = to_size(m[2]);
        if (k < 3) throw Error(ErrorCode::precondition, "dihedral(m) needs m >= 3");
        return make_presentation({"a", "b"}, {{alternating('a', 'b', k), alternating('b', 'a', k)}});
    }
    if (std::regex_match(name, m, two)) {
        std::size_t x = to_size(m[2]), y = to_size(m[3]);
        if (m[1] == "torus") {
            if (x < 2 || y < 2) throw Error(ErrorCode::precondition, "torus(p,q) needs p, q >= 2");
            return make_presentation({"a", "b"}, {{std::string(x, 'a'), std::string(y, 'b')}});
        }
        if (x < 1 || y < 1) throw Error(ErrorCode::precondition, "remstillLCM(d,c) needs d, c >= 1");
        return make_presentation({"a", "b"}, {{std::string(x, 'b') + "a" + std::string(y, 'b'), "a"}});
    }
    throw Error(ErrorCode::parse, "unknown fixture: " + name);
}

CoeffAction load_coeff_fixture(const std::string& name) {
    if (name == "trivial") return trivial_action();
    if (name == "b4-coeff") return b4_action();
    if (name == "artin-rep-coeff") return artin_rep_action();
    throw Error(ErrorCode::parse, "unknown coefficient fixture: " + name);
}

std::vector<std::string> fixture_names() {
    return {"braid3", "braid4", "dihedral(m)", "torus(p,q)", "remstillLCM",
            "remstillLCM(d,c)", "ex-u-bj", "trivial", "b4-coeff", "artin-rep-coeff"};
}

}  // namespace wb
