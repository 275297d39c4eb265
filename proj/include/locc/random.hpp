#pragma once

#include <random>
#include <vector>

#include "graph.hpp"
#include "stabilizer.hpp"
#include "unitary.hpp"

namespace locc {

using Rng = std::mt19937_64;

/// Erdos-Renyi graph G(n, p).
inline Graph random_graph(std::size_t n, double p, Rng &rng) {
    std::bernoulli_distribution edge(p);
    Graph g(n);
    for (std::size_t u = 0; u < n; u++) {
        for (std::size_t v = u + 1; v < n; v++) {
            if (edge(rng)) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

/// Random recursive tree: vertex v attaches to a uniformly chosen earlier vertex.
inline Graph random_tree(std::size_t n, Rng &rng) {
    Graph g(n);
    for (std::size_t v = 1; v < n; v++) {
        g.add_edge(v, std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    }
    return g;
}

/// A single-qubit Clifford, times an eighth-root phase, from a random generator word.
inline SingleQubitUnitary random_clifford(Rng &rng) {
    const auto &gens = SingleQubitUnitary::generators();
    SingleQubitUnitary u;
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
    for (std::size_t i = 0; i < len; i++) {
        u = u * gens[rng() % gens.size()].second;
    }
    return u;
}

inline LocalCliffordLayer random_layer(std::size_t n, Rng &rng) {
    LocalCliffordLayer layer(n);
    for (std::size_t q = 0; q < n; q++) {
        layer.set(q, random_clifford(rng));
    }
    return layer;
}

/// Replaces rows by random products of rows; the generated group is unchanged.
inline void mix_rows(std::vector<PauliString> &rows, Rng &rng, std::size_t rounds) {
    if (rows.size() < 2) {
        return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
    for (std::size_t i = 0; i < rounds; i++) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a != b) {
            rows[a] *= rows[b];
        }
    }
}

/// Stabilizer state LC-equivalent to a random graph, written with scrambled rows.
inline StabilizerTableau random_tableau(std::size_t n, Rng &rng, double edge_probability = 0.5) {
    Graph g = random_graph(n, edge_probability, rng);
    LocalCliffordLayer layer = random_layer(n, rng);
    StabilizerTableau base = graph_stabilizers(g);
    std::vector<PauliString> rows;
    for (const auto &row : base.rows()) {
        rows.push_back(layer.conjugate(row));
    }
    mix_rows(rows, rng, 4 * n);
    return StabilizerTableau(std::move(rows));
}

/// Random [[n,1]] code: a random graph on n+1 vertices (the last one, the
/// reference, gets at least one neighbour), hidden behind random local
/// Cliffords and row mixing.
inline CodeSpec random_code(std::size_t n, Rng &rng, double edge_probability = 0.5) {
    Graph g = random_graph(n + 1, edge_probability, rng);
    if (g.degree(n) == 0) {
        g.add_edge(n, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    }
    LocalCliffordLayer layer = random_layer(n + 1, rng);
    StabilizerTableau base = graph_stabilizers(g);
    std::vector<PauliString> rows;
    for (const auto &row : base.rows()) {
        rows.push_back(layer.conjugate(row));
    }
    mix_rows(rows, rng, 4 * (n + 1));
    return code_from_reference(StabilizerTableau(std::move(rows)));
}

/// Code whose reference state is exactly |G> (last vertex = reference), up to row choice.
inline CodeSpec code_from_graph(const Graph &g) { return code_from_reference(graph_stabilizers(g)); }

}  // namespace locc
