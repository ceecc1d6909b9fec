#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "workbench/workbench.h"

namespace {

using nlohmann::ordered_json;

enum Exit { exit_ok = 0, exit_malformed = 1, exit_undetermined = 2 };

struct Failure {
    int code;
    std::string message;
};

struct Options {
    std::string presentation, fixture, out;
    std::size_t budget = 0;
    bool pretty = false;
    std::uint64_t seed = 0;
};

struct Chosen {
    std::string x, y, word;
};

template <class T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    ~Handle() { Free(ptr); }
};
using PresentationHandle = Handle<wb_presentation, wb_presentation_free>;
using CoxeterHandle = Handle<wb_coxeter, wb_coxeter_free>;
using GraphHandle = Handle<wb_graph, wb_graph_free>;
using CoeffHandle = Handle<wb_coeff, wb_coeff_free>;

void check(int status) {
    if (status == WB_OK) return;
    int code = status == WB_ERR_BUDGET || status == WB_ERR_UNDETERMINED ? exit_undetermined : exit_malformed;
    throw Failure{code, wb_last_error()};
}

std::string take(char* s) {
    std::string out(s);
    wb_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{exit_malformed, "cannot read " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t budget_of(const Options& o) {
    if (o.budget) return o.budget;
    if (const char* env = std::getenv("WORKBENCH_BUDGET")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw Failure{exit_malformed, "WORKBENCH_BUDGET is not a number"};
        }
    }
    return 0;
}

void load_presentation(const Options& o, PresentationHandle& h) {
    if (!o.fixture.empty() && !o.presentation.empty())
        throw Failure{exit_malformed, "give --presentation or --fixture, not both"};
    if (!o.fixture.empty())
        check(wb_presentation_fixture(o.fixture.c_str(), &h.ptr));
    else if (!o.presentation.empty())
        check(wb_presentation_parse(read_file(o.presentation).c_str(), &h.ptr));
    else
        throw Failure{exit_malformed, "--presentation or --fixture is required"};
}

std::string scalar(const ordered_json& v) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        while (!s.empty() && s.back() == '\n') s.pop_back();
        return s;
    }
    if (v.is_object() && v.contains("group")) return v["group"].get<std::string>();
    return v.dump();
}

void pretty_print(const ordered_json& j, std::ostream& os, const std::string& indent = "") {
    for (const auto& [key, v] : j.items()) {
        if (key == "schema_version") continue;
        bool nested = v.is_object() && !v.contains("group");
        bool lines = v.is_array() && !v.empty() && v.front().is_string();
        if (nested) {
            os << indent << key << ":\n";
            pretty_print(v, os, indent + "  ");
        } else if (lines) {
            os << indent << key << ":\n";
            for (const auto& item : v) os << indent << "  " << item.get<std::string>() << "\n";
        } else {
            os << indent << key << ": " << scalar(v) << "\n";
        }
    }
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) throw Failure{exit_malformed, "cannot write " + path};
}

void emit(const std::string& json_text, const Options& o) {
    if (!o.pretty) return write_text(json_text, o.out);
    std::ostringstream os;
    pretty_print(ordered_json::parse(json_text), os);
    write_text(os.str(), o.out);
}

// Emits the report and returns the exit code implied by field == undetermined_value.
template <class V>
int emit_with(const std::string& json_text, const Options& o, const std::string& field, const V& undetermined) {
    emit(json_text, o);
    auto j = ordered_json::parse(json_text);
    return j.contains(field) && j[field] == undetermined ? exit_undetermined : exit_ok;
}

void add_common(CLI::App* app, Options& o, bool presentation) {
    if (presentation) {
        app->add_option("--presentation", o.presentation, "Presentation file");
        app->add_option("--fixture", o.fixture,
                        "Builtin presentation: braid3, braid4, dihedral(m), torus(p,q), remstillLCM(d,c), ex-u-bj");
    }
    app->add_option("--budget", o.budget, "Step budget (default: WORKBENCH_BUDGET or the library default)");
    app->add_flag("--pretty", o.pretty, "Human-readable output");
}

struct GraphOptions {
    std::string family;
    std::size_t m = 0, p = 0, q = 0, extra_loops = 0;
    std::string w, scope = "literal", input;
    bool pruned = false;
};

void add_graph_options(CLI::App* app, Options& o, GraphOptions& g) {
    app->add_option("--family", g.family, "dihedral, torus, case1, case2 or nonreversible")
        ->check(CLI::IsMember({"dihedral", "torus", "case1", "case2", "nonreversible"}));
    app->add_option("--m", g.m, "Dihedral parameter");
    app->add_option("--p", g.p, "Torus parameter p");
    app->add_option("--q", g.q, "Torus parameter q");
    app->add_option("--w", g.w, "Garside-like word for case2");
    app->add_option("--scope", g.scope, "literal or core (nonreversible)")->check(CLI::IsMember({"literal", "core"}));
    app->add_option("--extra-loops", g.extra_loops, "Unlabeled loops per vertex (nonreversible)");
    app->add_flag("--pruned", g.pruned, "Remove sources and sinks");
    add_common(app, o, true);
}

void build_graph(const Options& o, const GraphOptions& g, GraphHandle& out) {
    GraphHandle raw;
    bool prune = g.pruned;
    if (!g.input.empty()) {
        check(wb_graph_import_json(read_file(g.input).c_str(), &raw.ptr));
    } else if (g.family.empty()) {
        throw Failure{exit_malformed, "--family is required"};
    } else if (g.family == "dihedral") {
        if (!g.m) throw Failure{exit_malformed, "--m is required"};
        check(wb_graph_builtin(WB_FAMILY_DIHEDRAL, g.m, 0, &raw.ptr));
    } else if (g.family == "torus") {
        if (!g.p || !g.q) throw Failure{exit_malformed, "--p and --q are required"};
        check(wb_graph_builtin(WB_FAMILY_TORUS, g.p, g.q, &raw.ptr));
    } else {
        PresentationHandle ph;
        load_presentation(o, ph);
        if (g.family == "case1") {
            check(wb_graph_case1(ph.ptr, g.pruned, &raw.ptr));
            prune = false;
        } else if (g.family == "case2") {
            if (g.w.empty()) throw Failure{exit_malformed, "--w is required for case2"};
            check(wb_graph_case2(ph.ptr, g.w.c_str(), g.pruned, &raw.ptr));
            prune = false;
        } else {
            auto scope = g.scope == "core" ? WB_SCOPE_CORE : WB_SCOPE_LITERAL;
            check(wb_graph_nonreversible(ph.ptr, scope, g.extra_loops, &raw.ptr));
        }
    }
    if (prune) {
        check(wb_graph_prune(raw.ptr, &out.ptr));
    } else {
        out.ptr = raw.ptr;
        raw.ptr = nullptr;
    }
}

std::string usage(CLI::App& app, const CLI::ParseError&) {
    CLI::App* sub = &app;
    while (true) {
        auto subs = sub->get_subcommands();
        if (subs.empty()) break;
        sub = subs.front();
    }
    return sub->help();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workbench for positive monoid presentations, Garside structures and boundary K-theory", "wb"};
    app.require_subcommand(1);
    Options o;
    Chosen c;
    GraphOptions g;
    std::string type, matrix_file, t_subset, from, to, coeff = "trivial", hint, family, format_or_file;
    std::size_t n = 0, closure_bound = 0, length_bound = 0, test_length = 0, samples = 1000;
    bool trace = false, infinite = false;

    auto* pres = app.add_subcommand("presentation", "Presentation checks")->require_subcommand(1);
    auto* pres_check = pres->add_subcommand("check", "Report presentation invariants");
    add_common(pres_check, o, true);

    auto* word = app.add_subcommand("word", "Word problem")->require_subcommand(1);
    auto* word_equal = word->add_subcommand("equal", "Decide equality of two positive words");
    add_common(word_equal, o, true);
    word_equal->add_option("x", c.x, "First word")->required();
    word_equal->add_option("y", c.y, "Second word")->required();

    auto* rev = app.add_subcommand("reverse", "Right reversing of a signed word");
    add_common(rev, o, true);
    rev->add_option("--word", c.word, "Signed word such as \"a^-1 b\"")->required();
    rev->add_flag("--trace", trace, "Print every step");

    auto* lcm = app.add_subcommand("lcm", "Right lcm by reversing");
    add_common(lcm, o, true);
    lcm->add_option("x", c.x, "First word")->required();
    lcm->add_option("y", c.y, "Second word")->required();

    auto* div = app.add_subcommand("divides", "Left divisibility x ≺ z");
    add_common(div, o, true);
    div->add_option("x", c.x, "Divisor")->required();
    div->add_option("z", c.y, "Multiple")->required();

    auto* cube = app.add_subcommand("cube", "Cube condition on all generator triples");
    add_common(cube, o, true);

    auto* homog = app.add_subcommand("homog", "Homogeneity weight certificate");
    add_common(homog, o, true);

    auto* reversible = app.add_subcommand("reversible", "Left reversibility");
    add_common(reversible, o, true);
    reversible->add_option("--closure-bound", closure_bound, "Cap on the searched closure (default 64)");

    auto* garside = app.add_subcommand("garside-w", "Garside-like element search or check");
    add_common(garside, o, true);
    garside->add_option("--w", c.word, "Word to check instead of searching");
    garside->add_option("--length-bound", length_bound, "Search bound on ℓ(w) (default 8)");
    garside->add_option("--test-length", test_length, "Divisibility tests on words up to this length (default 4)");

    auto* gm = app.add_subcommand("graph-model", "Build a graph model");
    add_graph_options(gm, o, g);
    gm->add_option("--out", format_or_file, "dot, json, or a path ending in .dot or .json");

    auto* gk = app.add_subcommand("graph-k", "K-theory of a graph model");
    add_graph_options(gk, o, g);
    gk->add_option("--input", g.input, "Graph JSON file instead of --family");
    gk->add_option("--out", o.out, "Report file");

    auto* artin = app.add_subcommand("artin", "Artin-Tits monoids of finite type")->require_subcommand(1);
    auto add_type = [&](CLI::App* a) {
        a->add_option("--type", type, "Coxeter type such as A3, B3, I2(5)");
        a->add_option("--matrix", matrix_file, "Coxeter matrix file");
        a->add_flag("--pretty", o.pretty, "Human-readable output");
    };
    auto* nf = artin->add_subcommand("nf", "Left-greedy normal form");
    add_type(nf);
    nf->add_option("--word", c.word, "Word such as \"s1 s1 s2\"")->required();
    auto* equiv = artin->add_subcommand("equiv", "Witness for the subset equivalence");
    add_type(equiv);
    equiv->add_option("--T", t_subset, "Ambient subset (default: all generators)");
    equiv->add_option("--from", from, "Source subset such as \"{s2}\"")->required();
    equiv->add_option("--to", to, "Target subset")->required();
    auto* count = artin->add_subcommand("count-nf", "Count normal forms of infinite words of length n");
    add_type(count);
    count->add_option("--n", n, "Length")->required();
    auto* delta = artin->add_subcommand("delta", "Power of the Garside element");
    add_type(delta);
    delta->add_option("--n", n, "Exponent")->required();
    auto* selfcheck = artin->add_subcommand("check", "Randomized normal form and join checks");
    add_type(selfcheck);
    selfcheck->add_option("--samples", samples, "Number of samples (default 1000)");
    selfcheck->add_option("--seed", o.seed, "Random seed");

    auto* kt = app.add_subcommand("ktheory", "K-theory computations")->require_subcommand(1);
    auto* pipe = kt->add_subcommand("pipeline", "Crossed product K-theory pipeline");
    pipe->add_option("--case", family, "dihedral or torus")->required()->check(CLI::IsMember({"dihedral", "torus"}));
    pipe->add_option("--m", g.m, "Dihedral parameter");
    pipe->add_option("--p", g.p, "Torus parameter p");
    pipe->add_option("--q", g.q, "Torus parameter q");
    pipe->add_option("--coeff", coeff, "trivial, b4-coeff, artin-rep-coeff or a JSON file");
    pipe->add_option("--hint", hint, "unit-summand")->check(CLI::IsMember({"unit-summand"}));
    pipe->add_option("--out", o.out, "Report file");
    pipe->add_flag("--pretty", o.pretty, "Human-readable output");
    auto* boundary = kt->add_subcommand("boundary", "K-theory of the boundary quotient");
    add_common(boundary, o, true);
    boundary->add_flag("--infinite", infinite, "Countably infinite alphabet");

    for (auto* a : {pres_check, word_equal, rev, lcm, div, cube, homog, reversible, garside, boundary})
        a->add_option("--out", o.out, "Report file");
    for (auto* a : {nf, equiv, count, delta, selfcheck}) a->add_option("--out", o.out, "Report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << usage(app, e);
        return exit_malformed;
    }

    try {
        std::size_t budget = budget_of(o);
        char* out = nullptr;
        PresentationHandle ph;
        if (pres_check->parsed()) {
            load_presentation(o, ph);
            check(wb_presentation_check(ph.ptr, &out));
            return emit_with(take(out), o, "valid", false);
        }
        if (word_equal->parsed()) {
            load_presentation(o, ph);
            check(wb_word_equal(ph.ptr, c.x.c_str(), c.y.c_str(), budget, &out));
            return emit_with(take(out), o, "verdict", "unknown");
        }
        if (rev->parsed()) {
            load_presentation(o, ph);
            check(wb_reverse(ph.ptr, c.word.c_str(), budget, trace, &out));
            return emit_with(take(out), o, "status", "budget");
        }
        if (lcm->parsed()) {
            load_presentation(o, ph);
            check(wb_lcm(ph.ptr, c.x.c_str(), c.y.c_str(), budget, &out));
            return emit_with(take(out), o, "status", "budget");
        }
        if (div->parsed()) {
            load_presentation(o, ph);
            check(wb_divides(ph.ptr, c.x.c_str(), c.y.c_str(), budget, &out));
            return emit_with(take(out), o, "divides", "unknown");
        }
        if (cube->parsed()) {
            load_presentation(o, ph);
            check(wb_cube(ph.ptr, budget, &out));
            return emit_with(take(out), o, "holds", "unknown");
        }
        if (homog->parsed()) {
            load_presentation(o, ph);
            check(wb_homogeneity(ph.ptr, &out));
            return emit_with(take(out), o, "certified", false);
        }
        if (reversible->parsed()) {
            load_presentation(o, ph);
            check(wb_left_reversible(ph.ptr, closure_bound, budget, &out));
            return emit_with(take(out), o, "verdict", "unknown");
        }
        if (garside->parsed()) {
            load_presentation(o, ph);
            check(wb_garside_w(ph.ptr, c.word.empty() ? nullptr : c.word.c_str(), length_bound, test_length, budget,
                               &out));
            return emit_with(take(out), o, "found", false);
        }
        if (gm->parsed()) {
            GraphHandle gh;
            build_graph(o, g, gh);
            std::string fmt = format_or_file, path;
            if (fmt != "dot" && fmt != "json" && !fmt.empty()) {
                path = fmt;
                fmt = path.size() > 4 && path.substr(path.size() - 4) == ".dot" ? "dot" : "json";
            }
            check(wb_graph_export(gh.ptr, fmt == "dot" ? WB_FORMAT_DOT : WB_FORMAT_JSON, &out));
            write_text(take(out), path);
            return exit_ok;
        }
        if (gk->parsed()) {
            GraphHandle gh;
            build_graph(o, g, gh);
            check(wb_graph_k(gh.ptr, &out));
            emit(take(out), o);
            return exit_ok;
        }
        for (auto* a : {nf, equiv, count, delta, selfcheck}) {
            if (!a->parsed()) continue;
            CoxeterHandle ch;
            if (type.empty() == matrix_file.empty()) throw Failure{exit_malformed, "give exactly one of --type, --matrix"};
            if (!type.empty())
                check(wb_coxeter_create(type.c_str(), &ch.ptr));
            else
                check(wb_coxeter_from_matrix(read_file(matrix_file).c_str(), &ch.ptr));
            if (a == nf) check(wb_artin_nf(ch.ptr, c.word.c_str(), &out));
            if (a == equiv)
                check(wb_artin_equiv(ch.ptr, t_subset.empty() ? nullptr : t_subset.c_str(), from.c_str(), to.c_str(),
                                     &out));
            if (a == count) check(wb_artin_count_nf(ch.ptr, n, &out));
            if (a == delta) check(wb_artin_delta(ch.ptr, n, &out));
            if (a == selfcheck) {
                check(wb_artin_selfcheck(ch.ptr, samples, o.seed, &out));
                return emit_with(take(out), o, "passed", false);
            }
            emit(take(out), o);
            return exit_ok;
        }
        if (pipe->parsed()) {
            CoeffHandle coef;
            if (wb_coeff_fixture(coeff.c_str(), &coef.ptr) != WB_OK)
                check(wb_coeff_parse(read_file(coeff).c_str(), &coef.ptr));
            unsigned hints = hint == "unit-summand" ? WB_HINT_UNIT_SUMMAND : 0u;
            if (family == "dihedral") {
                if (!g.m) throw Failure{exit_malformed, "--m is required"};
                check(wb_ktheory_pipeline(WB_FAMILY_DIHEDRAL, g.m, 0, coef.ptr, hints, &out));
            } else {
                if (!g.p || !g.q) throw Failure{exit_malformed, "--p and --q are required"};
                check(wb_ktheory_pipeline(WB_FAMILY_TORUS, g.p, g.q, coef.ptr, hints, &out));
            }
            return emit_with(take(out), o, "determined", false);
        }
        if (boundary->parsed()) {
            load_presentation(o, ph);
            check(wb_ktheory_boundary(ph.ptr, infinite, &out));
            emit(take(out), o);
            return exit_ok;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_malformed;
    }
    std::cerr << app.help();
    return exit_malformed;
}
