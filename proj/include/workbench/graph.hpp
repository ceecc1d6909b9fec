#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "workbench/abelian.hpp"
#include "workbench/intmatrix.hpp"
#include "workbench/words.hpp"

namespace wb {

inline constexpr std::size_t default_class_cap = 4096;

// Edge y -> x with range y and source x; letter is σ, absent for the extra loops.
struct GraphEdge {
    std::size_t from = 0, to = 0;
    std::optional<Letter> letter;
    bool operator==(const GraphEdge& o) const = default;
};

struct ModelGraph {
    Alphabet alphabet;
    std::vector<Word> vertices;
    std::vector<GraphEdge> edges;
    std::map<std::string, std::string> provenance;

    std::string label(std::size_t v) const;
    std::optional<std::size_t> find(const Word& w) const;
    bool operator==(const ModelGraph& o) const;
};

enum class VertexScope { literal, core };

// Vertices are the words of length at most ℓ(v) - 1 (literal) or exactly ℓ(v) - 1 (core); y -> x when
// yτ = σx differs from v. Requires one relator over at least three letters satisfying (OVL), (l<l) and
// (uNotvNotu) for one of its two orientations.
ModelGraph build_nonreversible_graph(const Presentation& p, VertexScope scope = VertexScope::literal,
                                     std::size_t extra_loops = 0);

// The relator u = v must itself be Garside-like. Vertices are the relator-free words of length
// max(ℓ(u), ℓ(v)) - 1; unpruned graphs also carry the shorter relator-free words as isolated vertices.
ModelGraph build_reversible_graph_case1(const Presentation& p, bool pruned = true);

// Forbidden factors are v and the class W of w; u is the side starting with the second generator.
ModelGraph build_reversible_graph_case2(const Presentation& p, const Word& w, bool pruned = true,
                                        std::size_t class_cap = default_class_cap);

std::vector<Word> dihedral_vertices(std::size_t m);
std::vector<Word> torus_vertices(std::size_t p, std::size_t q);
// Edge v -> w when v[1..] is a prefix of w and v[0] w has no relator factor.
ModelGraph builtin_dihedral(std::size_t m);
ModelGraph builtin_torus(std::size_t p, std::size_t q);

// Iteratively removes vertices without incoming or without outgoing edges.
ModelGraph prune(const ModelGraph& g);

// A(i, j) = number of edges i -> j.
IntMatrix adjacency(const ModelGraph& g);

struct GraphK {
    FinAbGroup k0, k1;
};
// K0 = coker(I - Aᵗ), K1 = ker(I - Aᵗ). Throws Error(precondition) on sources or sinks.
GraphK graph_k_theory(const ModelGraph& g);

struct GraphProperties {
    bool irreducible = false;
    bool every_cycle_has_exit = true;
    bool has_sources = false;
    bool has_sinks = false;
};
GraphProperties graph_properties(const ModelGraph& g);

std::string export_dot(const ModelGraph& g);
std::string export_json(const ModelGraph& g);
ModelGraph import_json(const std::string& text);

}  // namespace wb
