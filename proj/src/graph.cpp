#include "workbench/graph.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "workbench/equality.hpp"
#include "workbench/error.hpp"
#include "workbench/reversing.hpp"

namespace wb {

namespace {

using json = nlohmann::json;

std::vector<Word> words_of_length(std::size_t n, std::size_t len) {
    std::vector<Word> layer{{}};
    for (std::size_t l = 0; l < len; ++l) {
        std::vector<Word> next;
        next.reserve(layer.size() * n);
        for (const Word& w : layer)
            for (Letter a = 0; a < n; ++a) {
                Word x = w;
                x.push_back(a);
                next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    return layer;
}

bool avoids(const Word& w, const std::vector<Word>& forbidden) {
    return std::none_of(forbidden.begin(), forbidden.end(), [&](const Word& z) { return contains_factor(w, z); });
}

Word tail(const Word& w) { return w.empty() ? w : Word(w.begin() + 1, w.end()); }

void index_vertices(const ModelGraph& g, std::map<Word, std::size_t>& idx) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i) idx.emplace(g.vertices[i], i);
}

// Vertices are the words of length l avoiding `forbidden`; y -> y[1..]τ labelled y[0] when yτ avoids it too.
ModelGraph shift_graph(const Alphabet& alphabet, std::size_t l, const std::vector<Word>& forbidden) {
    ModelGraph g;
    g.alphabet = alphabet;
    for (Word& w : words_of_length(alphabet.size(), l))
        if (avoids(w, forbidden)) g.vertices.push_back(std::move(w));
    std::map<Word, std::size_t> idx;
    index_vertices(g, idx);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Word& y = g.vertices[i];
        for (Letter t = 0; t < alphabet.size(); ++t) {
            Word yt = y;
            yt.push_back(t);
            if (!avoids(yt, forbidden)) continue;
            Word x = tail(yt);
            g.edges.push_back({i, idx.at(x), yt.front()});
        }
    }
    return g;
}

std::string render_list(const std::vector<Word>& ws, const Alphabet& a) {
    std::string out;
    for (const Word& w : ws) out += (out.empty() ? "" : ", ") + render_word(w, a);
    return out;
}

struct Orientation {
    Word u, v;
    std::vector<std::string> failing;
};

Orientation check_nonreversible_conditions(const Word& u, const Word& v, std::size_t n) {
    Orientation o{u, v, {}};
    const auto ovl = overlap_set(v);
    if (!std::all_of(ovl.begin(), ovl.end(), [](const Word& x) { return x.empty(); })) o.failing.push_back("(OVL)");
    bool smaller = false;
    for (Letter s = 0; s < n; ++s) smaller = smaller || letter_count(u, s) < letter_count(v, s);
    if (!smaller) o.failing.push_back("(l<l)");
    bool apart = !contains_factor(v, u);
    for (std::size_t k = 1; k <= u.size() && apart; ++k)
        apart = !is_suffix(subword(u, 0, k), v) && !is_prefix(subword(u, u.size() - k, k), v);
    if (!apart) o.failing.push_back("(uNotvNotu)");
    return o;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& s : names) out += (out.empty() ? "" : ", ") + s;
    return out;
}

Word alternating(Letter s, std::size_t k) {
    Word w;
    for (std::size_t i = 0; i < k; ++i) w.push_back(i % 2 == 0 ? s : 1 - s);
    return w;
}

ModelGraph lookahead_graph(std::vector<Word> vertices, const std::vector<Word>& forbidden) {
    ModelGraph g;
    g.alphabet = Alphabet({"a", "b"});
    g.vertices = std::move(vertices);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Word& v = g.vertices[i];
        const Word rest = tail(v);
        for (std::size_t j = 0; j < g.vertices.size(); ++j) {
            const Word& w = g.vertices[j];
            if (!is_prefix(rest, w)) continue;
            Word joined{v.front()};
            joined.insert(joined.end(), w.begin(), w.end());
            if (avoids(joined, forbidden)) g.edges.push_back({i, j, v.front()});
        }
    }
    g.provenance["edge_rule"] = "lookahead";
    return g;
}

struct Degrees {
    std::vector<std::size_t> in, out;
};

Degrees degrees(const ModelGraph& g) {
    Degrees d{std::vector<std::size_t>(g.vertices.size()), std::vector<std::size_t>(g.vertices.size())};
    for (const auto& e : g.edges) {
        ++d.out[e.from];
        ++d.in[e.to];
    }
    return d;
}

// Kosaraju; component ids in reverse topological order of the condensation.
std::vector<std::size_t> strong_components(const ModelGraph& g, std::size_t& count) {
    const std::size_t n = g.vertices.size();
    std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
    for (const auto& e : g.edges) {
        fwd[e.from].push_back(e.to);
        bwd[e.to].push_back(e.from);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> order;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (k < fwd[v].size()) {
                std::size_t w = fwd[v][k++];
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back({w, 0});
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    const std::size_t none = n;
    std::vector<std::size_t> comp(n, none);
    count = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != none) continue;
        std::vector<std::size_t> stack{*it};
        comp[*it] = count;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : bwd[v])
                if (comp[w] == none) {
                    comp[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return comp;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string ModelGraph::label(std::size_t v) const { return render_plain(vertices.at(v), alphabet); }

std::optional<std::size_t> ModelGraph::find(const Word& w) const {
    auto it = std::find(vertices.begin(), vertices.end(), w);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
}

bool ModelGraph::operator==(const ModelGraph& o) const {
    return alphabet == o.alphabet && vertices == o.vertices && edges == o.edges && provenance == o.provenance;
}

ModelGraph build_nonreversible_graph(const Presentation& p, VertexScope scope, std::size_t extra_loops) {
    if (!p.one_relator()) throw Error(ErrorCode::precondition, "the non-reversible graph needs one relator");
    const std::size_t n = p.alphabet().size();
    if (n < 3) throw Error(ErrorCode::precondition, "the non-reversible graph needs at least three generators");
    const auto& rel = p.relation();
    Orientation first = check_nonreversible_conditions(rel.lhs, rel.rhs, n);
    Orientation second = check_nonreversible_conditions(rel.rhs, rel.lhs, n);
    const Orientation* chosen = first.failing.empty() ? &first : second.failing.empty() ? &second : nullptr;
    if (!chosen)
        throw Error(ErrorCode::precondition,
                    "conditions fail: with v = " + p.render(rel.rhs) + ": " + join_names(first.failing) +
                        "; with v = " + p.render(rel.lhs) + ": " + join_names(second.failing));
    const Word& v = chosen->v;

    ModelGraph g;
    g.alphabet = p.alphabet();
    const std::size_t top = v.size() - 1;
    for (std::size_t len = scope == VertexScope::literal ? 0 : top; len <= top; ++len)
        for (Word& w : words_of_length(n, len)) g.vertices.push_back(std::move(w));
    std::map<Word, std::size_t> idx;
    index_vertices(g, idx);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Word& y = g.vertices[i];
        for (Letter t = 0; t < n; ++t) {
            Word yt = y;
            yt.push_back(t);
            if (yt == v) continue;
            g.edges.push_back({i, idx.at(tail(yt)), yt.front()});
        }
        for (std::size_t k = 0; k < extra_loops; ++k) g.edges.push_back({i, i, std::nullopt});
    }
    g.provenance = {{"model", "nonreversible"},
                    {"scope", scope == VertexScope::literal ? "literal" : "core"},
                    {"u", p.render(chosen->u)},
                    {"v", p.render(v)},
                    {"extra_loops", std::to_string(extra_loops)}};
    return g;
}

ModelGraph build_reversible_graph_case1(const Presentation& p, bool pruned) {
    if (!p.one_relator() || p.alphabet().size() != 2)
        throw Error(ErrorCode::precondition, "case 1 needs a one-relator presentation on {a, b}");
    const auto& rel = p.relation();
    if (!check_garside_like(p, rel.lhs))
        throw Error(ErrorCode::precondition, "the relator " + p.render(rel.lhs) + " is not Garside-like");
    const std::vector<Word> forbidden{rel.lhs, rel.rhs};
    const std::size_t l = std::max(rel.lhs.size(), rel.rhs.size()) - 1;
    ModelGraph g = shift_graph(p.alphabet(), l, forbidden);
    if (pruned) {
        g = prune(g);
    } else {
        std::vector<Word> shorter;
        for (std::size_t len = 0; len < l; ++len)
            for (Word& w : words_of_length(2, len))
                if (avoids(w, forbidden)) shorter.push_back(std::move(w));
        const std::size_t k = shorter.size();
        for (auto& e : g.edges) {
            e.from += k;
            e.to += k;
        }
        g.vertices.insert(g.vertices.begin(), shorter.begin(), shorter.end());
    }
    g.provenance = {{"model", "reversible-case-1"},
                    {"relation", p.render(rel.lhs) + " = " + p.render(rel.rhs)},
                    {"pruned", pruned ? "true" : "false"}};
    return g;
}

ModelGraph build_reversible_graph_case2(const Presentation& p, const Word& w, bool pruned, std::size_t class_cap) {
    if (!p.one_relator() || p.alphabet().size() != 2)
        throw Error(ErrorCode::precondition, "case 2 needs a one-relator presentation on {a, b}");
    const auto& rel = p.relation();
    if (rel.lhs.empty() || rel.rhs.empty() || rel.lhs.front() == rel.rhs.front())
        throw Error(ErrorCode::precondition, "case 2 needs one side starting with each generator");
    const Word& u = rel.lhs.front() == 1 ? rel.lhs : rel.rhs;
    const Word& v = rel.lhs.front() == 0 ? rel.lhs : rel.rhs;

    bool apart = !contains_factor(v, u);
    for (std::size_t k = 1; k <= u.size() && apart; ++k)
        apart = !is_suffix(subword(u, 0, k), v) && !is_prefix(subword(u, u.size() - k, k), v);
    if (!apart) throw Error(ErrorCode::precondition, "condition 2.2 fails");

    auto cls = equivalence_class(w, p, class_cap);
    if (!cls)
        throw Error(ErrorCode::precondition,
                    "condition 2.1 fails: the class of " + p.render(w) + " exceeds " + std::to_string(class_cap) + " words");

    auto c23 = verify_condition_2_3prime(p, w);
    if (c23.holds != Answer::yes)
        throw Error(ErrorCode::precondition, "condition 2.3' is " + std::string(c23.holds == Answer::no ? "violated" : "undetermined") +
                                                 (c23.failing_l ? " at l = " + std::to_string(*c23.failing_l) : ""));

    std::vector<Word> forbidden{v};
    forbidden.insert(forbidden.end(), cls->begin(), cls->end());
    std::size_t longest = 0;
    for (const Word& z : forbidden) longest = std::max(longest, z.size());
    ModelGraph g = shift_graph(p.alphabet(), longest - 1, forbidden);
    if (pruned) g = prune(g);
    g.provenance = {{"model", "reversible-case-2"},
                    {"relation", p.render(rel.lhs) + " = " + p.render(rel.rhs)},
                    {"w", p.render(w)},
                    {"W", render_list(*cls, p.alphabet())},
                    {"pruned", pruned ? "true" : "false"}};
    return g;
}

std::vector<Word> dihedral_vertices(std::size_t m) {
    if (m < 3) throw Error(ErrorCode::precondition, "dihedral model needs m >= 3");
    std::vector<Word> out;
    for (Letter s : {Letter{0}, Letter{1}}) {
        std::vector<Word> same, other;
        for (std::size_t k = 1; k + 2 <= m; ++k) {
            Word d = alternating(s, k);
            d.push_back(d.back());
            (d.back() == s ? same : other).push_back(std::move(d));
        }
        std::vector<Word> list;
        const std::vector<Word>& head = s == 0 ? same : other;
        const std::vector<Word>& back = s == 0 ? other : same;
        list.insert(list.end(), head.begin(), head.end());
        list.push_back(alternating(s, m - 1));
        list.insert(list.end(), back.rbegin(), back.rend());
        out.insert(out.end(), list.begin(), list.end());
    }
    return out;
}

std::vector<Word> torus_vertices(std::size_t p, std::size_t q) {
    if (p < 2 || q < 2) throw Error(ErrorCode::precondition, "torus model needs p, q >= 2");
    std::vector<Word> out;
    for (std::size_t j = 1; j + 2 <= p; ++j) {
        Word w(j, 0);
        w.push_back(1);
        out.push_back(std::move(w));
    }
    out.push_back(Word(p - 1, 0));
    for (std::size_t k = 1; k < q; ++k) {
        Word w(k, 1);
        w.push_back(0);
        out.push_back(std::move(w));
    }
    return out;
}

ModelGraph builtin_dihedral(std::size_t m) {
    ModelGraph g = lookahead_graph(dihedral_vertices(m), {alternating(0, m), alternating(1, m)});
    g.provenance["model"] = "dihedral";
    g.provenance["m"] = std::to_string(m);
    return g;
}

ModelGraph builtin_torus(std::size_t p, std::size_t q) {
    ModelGraph g = lookahead_graph(torus_vertices(p, q), {Word(p, 0), Word(q, 1)});
    g.provenance["model"] = "torus";
    g.provenance["p"] = std::to_string(p);
    g.provenance["q"] = std::to_string(q);
    return g;
}

ModelGraph prune(const ModelGraph& g) {
    std::vector<bool> alive(g.vertices.size(), true);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::size_t> in(g.vertices.size()), out(g.vertices.size());
        for (const auto& e : g.edges)
            if (alive[e.from] && alive[e.to]) {
                ++out[e.from];
                ++in[e.to];
            }
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (alive[i] && (in[i] == 0 || out[i] == 0)) {
                alive[i] = false;
                changed = true;
            }
    }
    ModelGraph r;
    r.alphabet = g.alphabet;
    r.provenance = g.provenance;
    std::vector<std::size_t> remap(g.vertices.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (alive[i]) {
            remap[i] = r.vertices.size();
            r.vertices.push_back(g.vertices[i]);
        }
    for (const auto& e : g.edges)
        if (alive[e.from] && alive[e.to]) r.edges.push_back({remap[e.from], remap[e.to], e.letter});
    return r;
}

IntMatrix adjacency(const ModelGraph& g) {
    IntMatrix a(g.vertices.size(), g.vertices.size());
    for (const auto& e : g.edges) a(e.from, e.to) += 1;
    return a;
}

GraphK graph_k_theory(const ModelGraph& g) {
    const auto props = graph_properties(g);
    if (props.has_sources || props.has_sinks)
        throw Error(ErrorCode::precondition, "graph has sources or sinks; prune it before computing K-theory");
    const std::size_t n = g.vertices.size();
    IntMatrix m = IntMatrix::identity(n) - adjacency(g).transpose();
    const std::size_t rank = invariant_factors(m).size();
    return {FinAbGroup(n, m), FinAbGroup::free(n - rank)};
}

GraphProperties graph_properties(const ModelGraph& g) {
    GraphProperties r;
    const Degrees d = degrees(g);
    const std::size_t n = g.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        r.has_sources = r.has_sources || d.in[i] == 0;
        r.has_sinks = r.has_sinks || d.out[i] == 0;
    }
    std::size_t count = 0;
    const auto comp = strong_components(g, count);
    r.irreducible = n > 0 && count == 1 && !g.edges.empty();
    // A cycle without exit is a cyclic component all of whose vertices have out-degree 1.
    std::vector<bool> cyclic(count, false), all_one(count, true);
    for (const auto& e : g.edges)
        if (comp[e.from] == comp[e.to]) cyclic[comp[e.from]] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (d.out[i] != 1) all_one[comp[i]] = false;
    for (std::size_t c = 0; c < count; ++c)
        if (cyclic[c] && all_one[c]) r.every_cycle_has_exit = false;
    return r;
}

std::string export_dot(const ModelGraph& g) {
    const Degrees d = degrees(g);
    std::ostringstream out;
    out << "digraph {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (d.in[i] == 0 && d.out[i] == 0) out << "  " << quote(g.label(i)) << ";\n";
    for (const auto& e : g.edges) {
        out << "  " << quote(g.label(e.from)) << " -> " << quote(g.label(e.to));
        if (e.letter) out << " [label=" << quote(g.alphabet.symbol(*e.letter)) << "]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_json(const ModelGraph& g) {
    json j;
    j["alphabet"] = g.alphabet.symbols();
    j["vertices"] = json::array();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) j["vertices"].push_back({{"id", i}, {"label", g.label(i)}});
    j["edges"] = json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"src", e.from},
                              {"dst", e.to},
                              {"letter", e.letter ? json(g.alphabet.symbol(*e.letter)) : json(nullptr)}});
    j["provenance"] = g.provenance;
    return j.dump(2) + "\n";
}

ModelGraph import_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string("graph JSON: ") + e.what());
    }
    try {
        ModelGraph g;
        g.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>());
        const auto& vs = j.at("vertices");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (vs[i].at("id").get<std::size_t>() != i) throw Error(ErrorCode::parse, "graph JSON: vertex ids must be 0, 1, ...");
            g.vertices.push_back(parse_word(vs[i].at("label").get<std::string>(), g.alphabet));
        }
        for (const auto& e : j.at("edges")) {
            GraphEdge edge{e.at("src").get<std::size_t>(), e.at("dst").get<std::size_t>(), std::nullopt};
            if (edge.from >= g.vertices.size() || edge.to >= g.vertices.size())
                throw Error(ErrorCode::parse, "graph JSON: edge endpoint out of range");
            if (e.contains("letter") && !e["letter"].is_null()) {
                auto l = g.alphabet.find(e["letter"].get<std::string>());
                if (!l) throw Error(ErrorCode::parse, "graph JSON: unknown edge letter");
                edge.letter = *l;
            }
            g.edges.push_back(edge);
        }
        if (j.contains("provenance")) g.provenance = j["provenance"].get<std::map<std::string, std::string>>();
        return g;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse, std::string("graph JSON: ") + e.what());
    }
}

}  // namespace wb
