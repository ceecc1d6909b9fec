#include "workbench/workbench.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <string>

#include "json.hpp"
#include "workbench/coxeter.hpp"
#include "workbench/equality.hpp"
#include "workbench/error.hpp"
#include "workbench/fixtures.hpp"
#include "workbench/graph.hpp"
#include "workbench/kpipeline.hpp"
#include "workbench/reversing.hpp"

struct wb_presentation {
    wb::Presentation p;
};
struct wb_coxeter {
    wb::CoxeterSystem w;
};
struct wb_graph {
    wb::ModelGraph g;
};
struct wb_coeff {
    wb::CoeffAction a;
};

namespace {

using nlohmann::ordered_json;

constexpr std::size_t default_bfs_budget = 1000000;

thread_local std::string last_error;

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
int guard(F&& f) {
    last_error.clear();
    try {
        f();
        return WB_OK;
    } catch (const wb::Error& e) {
        last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const ArgumentError& e) {
        last_error = e.what();
        return WB_ERR_ARGUMENT;
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return WB_ERR_PARSE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return WB_ERR_INTERNAL;
    }
}

template <class... T>
void require(const T*... ptrs) {
    if (((ptrs == nullptr) || ...)) throw ArgumentError("null argument");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ordered_json report() { return ordered_json{{"schema_version", WB_SCHEMA_VERSION}}; }

void emit(ordered_json& j, char** out) { *out = dup(j.dump(2) + "\n"); }

ordered_json integer(const wb::Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

ordered_json matrix(const wb::IntMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(integer(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

ordered_json group(const wb::FinAbGroup& g) {
    ordered_json inv = ordered_json::array();
    for (const auto& d : g.invariants()) inv.push_back(integer(d));
    return {{"group", g.to_string()}, {"invariants", inv}};
}

std::string word_text(const wb::Word& w, const wb::Alphabet& a) { return w.empty() ? "ε" : wb::render_word(w, a); }

std::string signed_text(const wb::SignedWord& w, const wb::Alphabet& a) {
    return w.empty() ? "ε" : wb::render_signed(w, a);
}

std::size_t or_default(std::size_t budget, std::size_t fallback) { return budget ? budget : fallback; }

ordered_json lcm_json(const wb::LcmResult& r, const wb::Alphabet& a) {
    ordered_json j{{"status", wb::to_string(r.status)}, {"steps", r.steps}};
    if (r.status == wb::LcmStatus::found) {
        j["lcm"] = word_text(r.join, a);
        j["complement_x"] = word_text(r.comp_x, a);
        j["complement_y"] = word_text(r.comp_y, a);
    }
    return j;
}

wb::Subset subset(const wb::CoxeterSystem& w, const char* text) { return text ? w.parse_subset(text) : w.all(); }

ordered_json nf_json(const wb::NormalForm& f, const wb::CoxeterSystem& w) {
    ordered_json factors = ordered_json::array();
    for (auto g : f) factors.push_back(word_text(w.word(g), w.generators()));
    return factors;
}

ordered_json properties_json(const wb::GraphProperties& p) {
    return {{"irreducible", p.irreducible},
            {"every_cycle_has_exit", p.every_cycle_has_exit},
            {"has_sources", p.has_sources},
            {"has_sinks", p.has_sinks}};
}

ordered_json degree_json(const wb::DegreeReport& d) {
    ordered_json candidates = ordered_json::array();
    for (const auto& g : d.crossed.candidates) candidates.push_back(group(g));
    ordered_json j{{"j", matrix(d.j)},
                   {"phi", matrix(d.phi)},
                   {"phi_surjective", d.phi_surjective},
                   {"annihilates", d.annihilates},
                   {"reduced_block", matrix(d.reduction.block)},
                   {"identity_size", d.reduction.identity_size},
                   {"closed_form", matrix(d.closed_form)},
                   {"matches_closed_form", d.matches_closed_form},
                   {"coker_j", group(d.coker_j)},
                   {"ker_j", group(d.ker_j)},
                   {"k_of_i", group(d.k_of_i)},
                   {"iota_pi", matrix(d.iota_pi)},
                   {"iota_pi_display", matrix(d.iota_pi_display)},
                   {"iota_route", d.iota_route}};
    j["iota"] = d.iota ? matrix(*d.iota) : ordered_json(nullptr);
    j["crossed"] = {{"determined", d.crossed.determined},
                    {"route", d.crossed.route},
                    {"candidates", candidates}};
    return j;
}

}  // namespace

const char* wb_last_error(void) { return last_error.c_str(); }

const char* wb_version(void) { return "1.0.0"; }

void wb_string_free(char* s) { std::free(s); }

int wb_presentation_parse(const char* text, wb_presentation** out) {
    return guard([&] {
        require(text, out);
        auto p = wb::parse_presentation(text);
        p.validate();
        *out = new wb_presentation{std::move(p)};
    });
}

int wb_presentation_fixture(const char* name, wb_presentation** out) {
    return guard([&] {
        require(name, out);
        *out = new wb_presentation{wb::load_presentation_fixture(name)};
    });
}

void wb_presentation_free(wb_presentation* p) { delete p; }

int wb_presentation_text(const wb_presentation* p, char** out) {
    return guard([&] {
        require(p, out);
        *out = dup(p->p.to_text());
    });
}

int wb_presentation_check(const wb_presentation* p, char** json) {
    return guard([&] {
        require(p, json);
        auto r = wb::check_presentation(p->p);
        auto j = report();
        j["presentation"] = p->p.to_text();
        j["valid"] = r.valid();
        j["all_pass"] = r.all_pass();
        j["redundant_generators"] = r.redundant_generators;
        j["trivial_relations"] = r.trivial_relations;
        j["epsilon_relators"] = r.epsilon_relators;
        j["first_letters_differ"] = r.first_letters_differ ? ordered_json(*r.first_letters_differ) : nullptr;
        j["last_letters_differ"] = r.last_letters_differ ? ordered_json(*r.last_letters_differ) : nullptr;
        if (p->p.one_relator() && p->p.alphabet().size() >= 3) {
            auto z = wb::find_separating_word(p->p);
            j["separating_word"] = z ? ordered_json(word_text(*z, p->p.alphabet())) : nullptr;
        }
        emit(j, json);
    });
}

int wb_word_equal(const wb_presentation* p, const char* x, const char* y, size_t budget, char** json) {
    return guard([&] {
        require(p, x, y, json);
        const auto& a = p->p.alphabet();
        auto v = wb::words_equal(p->p.word(x), p->p.word(y), p->p, or_default(budget, default_bfs_budget));
        auto j = report();
        j["x"] = word_text(p->p.word(x), a);
        j["y"] = word_text(p->p.word(y), a);
        j["verdict"] = wb::to_string(v.status);
        j["method"] = v.method;
        j["budget_used"] = v.budget_used;
        ordered_json witness = ordered_json::array();
        for (const auto& w : v.witness) witness.push_back(word_text(w, a));
        j["witness"] = witness;
        emit(j, json);
    });
}

int wb_reverse(const wb_presentation* p, const char* signed_word, size_t budget, int trace, char** json) {
    return guard([&] {
        require(p, signed_word, json);
        const auto& a = p->p.alphabet();
        auto start = wb::parse_signed_word(signed_word, a);
        auto t = wb::reverse(start, p->p, or_default(budget, wb::default_reversing_budget), trace != 0);
        auto j = report();
        j["start"] = signed_text(t.start, a);
        j["status"] = wb::to_string(t.status);
        j["steps"] = t.step_count;
        j["terminal"] = signed_text(t.terminal, a);
        if (auto s = t.split(); s && t.terminated()) {
            j["numerator"] = word_text(s->first, a);
            j["denominator"] = word_text(s->second, a);
        }
        j["stuck_at"] = t.stuck_at ? ordered_json(*t.stuck_at) : nullptr;
        if (trace) {
            ordered_json lines = ordered_json::array();
            for (const auto& st : t.steps) {
                wb::SignedWord factor{{st.sigma, -1}, {st.tau, 1}};
                auto replacement = wb::concat(wb::positive(st.s), wb::inverse(st.t));
                lines.push_back("pos " + std::to_string(st.position) + ": " + signed_text(factor, a) + " → " +
                                signed_text(replacement, a));
            }
            j["trace"] = lines;
        }
        emit(j, json);
    });
}

int wb_lcm(const wb_presentation* p, const char* x, const char* y, size_t budget, char** json) {
    return guard([&] {
        require(p, x, y, json);
        auto r = wb::lcm(p->p.word(x), p->p.word(y), p->p, or_default(budget, wb::default_reversing_budget));
        auto j = report();
        j.update(lcm_json(r, p->p.alphabet()));
        emit(j, json);
    });
}

int wb_divides(const wb_presentation* p, const char* x, const char* z, size_t budget, char** json) {
    return guard([&] {
        require(p, x, z, json);
        auto r = wb::divides(p->p.word(x), p->p.word(z), p->p, or_default(budget, wb::default_reversing_budget));
        auto j = report();
        j["x"] = word_text(p->p.word(x), p->p.alphabet());
        j["z"] = word_text(p->p.word(z), p->p.alphabet());
        j["divides"] = wb::to_string(r);
        emit(j, json);
    });
}

int wb_cube(const wb_presentation* p, size_t budget, char** json) {
    return guard([&] {
        require(p, json);
        auto r = wb::check_cube_condition(p->p, or_default(budget, wb::default_reversing_budget));
        auto j = report();
        j["holds"] = wb::to_string(r.holds);
        if (r.triple) {
            ordered_json t = ordered_json::array();
            for (auto l : *r.triple) t.push_back(p->p.alphabet().symbol(l));
            j["triple"] = t;
        } else {
            j["triple"] = nullptr;
        }
        emit(j, json);
    });
}

int wb_homogeneity(const wb_presentation* p, char** json) {
    return guard([&] {
        require(p, json);
        auto r = wb::check_r_homogeneity(p->p);
        auto j = report();
        j["certified"] = r.has_value() && r->certified;
        if (r) {
            ordered_json weights = ordered_json::object();
            for (std::size_t i = 0; i < r->weights.size(); ++i)
                weights[p->p.alphabet().symbol(static_cast<wb::Letter>(i))] = r->weights[i];
            j["weights"] = weights;
            j["method"] = r->method;
        } else {
            j["weights"] = nullptr;
            j["message"] = "no homogeneity certificate";
        }
        emit(j, json);
    });
}

int wb_left_reversible(const wb_presentation* p, size_t closure_bound, size_t budget, char** json) {
    return guard([&] {
        require(p, json);
        auto r = wb::check_left_reversible(p->p, or_default(closure_bound, 64),
                                           or_default(budget, wb::default_reversing_budget));
        auto j = report();
        j["verdict"] = wb::to_string(r.verdict);
        j["reason"] = r.reason;
        ordered_json closure = ordered_json::array();
        for (const auto& w : r.closure) closure.push_back(word_text(w, p->p.alphabet()));
        j["closure"] = closure;
        emit(j, json);
    });
}

int wb_garside_w(const wb_presentation* p, const char* w, size_t length_bound, size_t test_length, size_t budget,
                 char** json) {
    return guard([&] {
        require(p, json);
        std::size_t tl = or_default(test_length, 4), b = or_default(budget, wb::default_reversing_budget);
        auto r = w ? wb::check_garside_like(p->p, p->p.word(w), tl, b)
                   : wb::find_garside_like_w(p->p, or_default(length_bound, 8), tl, b);
        auto j = report();
        j["found"] = r.has_value();
        if (r) {
            const auto& a = p->p.alphabet();
            j["w"] = word_text(r->w, a);
            j["alpha"] = word_text(r->alpha, a);
            j["beta"] = word_text(r->beta, a);
            j["gamma"] = word_text(r->gamma, a);
            j["delta"] = word_text(r->delta, a);
            j["test_length"] = r->test_length;
        }
        emit(j, json);
    });
}

int wb_coxeter_create(const char* type, wb_coxeter** out) {
    return guard([&] {
        require(type, out);
        *out = new wb_coxeter{wb::CoxeterSystem::of_type(type)};
    });
}

int wb_coxeter_from_matrix(const char* text, wb_coxeter** out) {
    return guard([&] {
        require(text, out);
        auto m = wb::parse_coxeter_matrix(text);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < m.size(); ++i) names.push_back("s" + std::to_string(i + 1));
        *out = new wb_coxeter{wb::CoxeterSystem(wb::Alphabet(names), m)};
    });
}

void wb_coxeter_free(wb_coxeter* c) { delete c; }

int wb_artin_nf(const wb_coxeter* c, const char* word, char** json) {
    return guard([&] {
        require(c, word, json);
        auto x = wb::parse_word(word, c->w.generators());
        auto f = wb::normal_form(x, c->w);
        auto j = report();
        j["word"] = word_text(x, c->w.generators());
        j["normal_form"] = wb::render_nf(f, c->w);
        j["factors"] = nf_json(f, c->w);
        emit(j, json);
    });
}

int wb_artin_equiv(const wb_coxeter* c, const char* t, const char* from, const char* to, char** json) {
    return guard([&] {
        require(c, from, to, json);
        wb::Subset ts = subset(c->w, t), s = c->w.parse_subset(from), r = c->w.parse_subset(to);
        auto f = wb::equiv_search(c->w, ts, s, r);
        auto j = report();
        j["T"] = c->w.render_subset(ts);
        j["from"] = c->w.render_subset(s);
        j["to"] = c->w.render_subset(r);
        j["equivalent"] = f.has_value();
        if (f) {
            j["witness"] = wb::render_nf(*f, c->w);
            j["factors"] = nf_json(*f, c->w);
        } else {
            j["witness"] = nullptr;
        }
        emit(j, json);
    });
}

int wb_artin_count_nf(const wb_coxeter* c, size_t n, char** json) {
    return guard([&] {
        require(c, json);
        auto j = report();
        j["n"] = n;
        j["count"] = integer(wb::infinite_nf_count(c->w, n));
        emit(j, json);
    });
}

int wb_artin_delta(const wb_coxeter* c, size_t n, char** json) {
    return guard([&] {
        require(c, json);
        auto d = wb::delta_power(c->w, n);
        auto j = report();
        j["n"] = n;
        j["length"] = d.size();
        j["word"] = word_text(d, c->w.generators());
        j["normal_form"] = wb::render_nf(wb::normal_form(d, c->w), c->w);
        emit(j, json);
    });
}

int wb_artin_selfcheck(const wb_coxeter* c, size_t samples, uint64_t seed, char** json) {
    return guard([&] {
        require(c, json);
        const auto& w = c->w;
        auto artin = w.artin_presentation();
        wb::Complement comp(artin);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> len(0, 12);
        std::uniform_int_distribution<wb::Letter> letter(0, static_cast<wb::Letter>(w.rank() - 1));
        auto random_word = [&] {
            wb::Word x(len(rng));
            for (auto& l : x) l = letter(rng);
            return x;
        };
        std::size_t nf_fail = 0, join_fail = 0, join_budget = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            auto f = wb::normal_form(random_word(), w);
            if (!wb::is_normal_form(f, w) || wb::normal_form(wb::nf_word(f, w), w) != f) ++nf_fail;
            auto x = random_word(), y = random_word();
            auto r = wb::lcm(x, y, comp);
            if (r.status != wb::LcmStatus::found)
                ++join_budget;
            else if (!wb::equal_in_p(r.join, wb::join(x, y, w), w))
                ++join_fail;
        }
        auto j = report();
        j["samples"] = samples;
        j["seed"] = seed;
        j["nf_idempotence_failures"] = nf_fail;
        j["join_lcm_mismatches"] = join_fail;
        j["lcm_undecided"] = join_budget;
        j["passed"] = nf_fail == 0 && join_fail == 0 && join_budget == 0;
        emit(j, json);
    });
}

int wb_graph_builtin(wb_family family, size_t a, size_t b, wb_graph** out) {
    return guard([&] {
        require(out);
        if (family == WB_FAMILY_DIHEDRAL) {
            if (a < 3) throw wb::Error(wb::ErrorCode::precondition, "dihedral family needs m >= 3");
            *out = new wb_graph{wb::builtin_dihedral(a)};
        } else if (family == WB_FAMILY_TORUS) {
            if (a < 2 || b < 2) throw wb::Error(wb::ErrorCode::precondition, "torus family needs p, q >= 2");
            *out = new wb_graph{wb::builtin_torus(a, b)};
        } else {
            throw ArgumentError("unknown family");
        }
    });
}

int wb_graph_case1(const wb_presentation* p, int pruned, wb_graph** out) {
    return guard([&] {
        require(p, out);
        *out = new wb_graph{wb::build_reversible_graph_case1(p->p, pruned != 0)};
    });
}

int wb_graph_case2(const wb_presentation* p, const char* w, int pruned, wb_graph** out) {
    return guard([&] {
        require(p, w, out);
        *out = new wb_graph{wb::build_reversible_graph_case2(p->p, p->p.word(w), pruned != 0)};
    });
}

int wb_graph_nonreversible(const wb_presentation* p, wb_scope scope, size_t extra_loops, wb_graph** out) {
    return guard([&] {
        require(p, out);
        auto s = scope == WB_SCOPE_CORE ? wb::VertexScope::core : wb::VertexScope::literal;
        *out = new wb_graph{wb::build_nonreversible_graph(p->p, s, extra_loops)};
    });
}

int wb_graph_import_json(const char* text, wb_graph** out) {
    return guard([&] {
        require(text, out);
        *out = new wb_graph{wb::import_json(text)};
    });
}

int wb_graph_prune(const wb_graph* g, wb_graph** out) {
    return guard([&] {
        require(g, out);
        *out = new wb_graph{wb::prune(g->g)};
    });
}

void wb_graph_free(wb_graph* g) { delete g; }

size_t wb_graph_vertex_count(const wb_graph* g) { return g ? g->g.vertices.size() : 0; }

size_t wb_graph_edge_count(const wb_graph* g) { return g ? g->g.edges.size() : 0; }

int wb_graph_export(const wb_graph* g, wb_format format, char** out) {
    return guard([&] {
        require(g, out);
        if (format == WB_FORMAT_DOT)
            *out = dup(wb::export_dot(g->g));
        else if (format == WB_FORMAT_JSON)
            *out = dup(wb::export_json(g->g));
        else
            throw ArgumentError("unknown format");
    });
}

int wb_graph_k(const wb_graph* g, char** json) {
    return guard([&] {
        require(g, json);
        auto props = wb::graph_properties(g->g);
        auto k = wb::graph_k_theory(g->g);
        auto j = report();
        j["vertices"] = g->g.vertices.size();
        j["edges"] = g->g.edges.size();
        j["k0"] = group(k.k0);
        j["k1"] = group(k.k1);
        j["properties"] = properties_json(props);
        emit(j, json);
    });
}

int wb_coeff_fixture(const char* name, wb_coeff** out) {
    return guard([&] {
        require(name, out);
        *out = new wb_coeff{wb::load_coeff_fixture(name)};
    });
}

int wb_coeff_parse(const char* json_text, wb_coeff** out) {
    return guard([&] {
        require(json_text, out);
        *out = new wb_coeff{wb::parse_coeff_action(json_text)};
    });
}

void wb_coeff_free(wb_coeff* c) { delete c; }

int wb_ktheory_pipeline(wb_family family, size_t a, size_t b, const wb_coeff* coeff, unsigned hints, char** json) {
    return guard([&] {
        require(coeff, json);
        wb::PipelineCase c;
        if (family == WB_FAMILY_DIHEDRAL) {
            if (a < 3) throw wb::Error(wb::ErrorCode::precondition, "dihedral family needs m >= 3");
            c = wb::PipelineCase::dihedral(a);
        } else if (family == WB_FAMILY_TORUS) {
            if (a < 2 || b < 2) throw wb::Error(wb::ErrorCode::precondition, "torus family needs p, q >= 2");
            c = wb::PipelineCase::torus(a, b);
        } else {
            throw ArgumentError("unknown family");
        }
        wb::PipelineHints h;
        h.unit_summand = (hints & WB_HINT_UNIT_SUMMAND) != 0;
        auto r = wb::run_pipeline(c, coeff->a, h);
        auto j = report();
        j["case"] = r.case_name;
        j["coeff"] = r.action_name;
        j["determined"] = r.determined();
        for (int d = 0; d < 2; ++d) {
            const auto& cr = r.degree[d].crossed;
            std::string key = "K" + std::to_string(d);
            if (cr.determined && !cr.candidates.empty()) {
                j[key] = group(cr.candidates.front());
            } else {
                ordered_json cands = ordered_json::array();
                for (const auto& g : cr.candidates) cands.push_back(group(g));
                j[key] = {{"candidates", cands}};
            }
        }
        j["K_of_I"] = {{"K0", group(r.degree[0].k_of_i)}, {"K1", group(r.degree[1].k_of_i)}};
        j["hints_used"] = r.hints_used;
        j["action_check"] = {{"ok", r.action.ok}, {"message", r.action.message}};
        j["relation"] = c.presentation.render(c.presentation.relation().lhs) + " = " +
                        c.presentation.render(c.presentation.relation().rhs);
        j["degrees"] = {degree_json(r.degree[0]), degree_json(r.degree[1])};
        emit(j, json);
    });
}

int wb_ktheory_boundary(const wb_presentation* p, int infinite_alphabet, char** json) {
    return guard([&] {
        require(p, json);
        auto k = wb::boundary_quotient_k(p->p, infinite_alphabet != 0);
        auto j = report();
        j["alphabet_size"] = infinite_alphabet ? ordered_json("infinite") : ordered_json(p->p.alphabet().size());
        j["K0"] = group(k.k0);
        j["K1"] = group(k.k1);
        ordered_json unit = ordered_json::array();
        for (const auto& x : k.unit) unit.push_back(integer(x));
        j["unit"] = unit;
        emit(j, json);
    });
}
