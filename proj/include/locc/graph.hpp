#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bitvec.hpp"
#include "errors.hpp"
#include "unitary.hpp"

namespace locc {

/// Simple undirected graph on vertices 0..size()-1. Deleted vertices keep
/// their index (so labels stay stable) and carry no edges.
class Graph {
   public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n, BitVector(n)), removed_(n, false) {}

    std::size_t size() const noexcept { return adj_.size(); }

    std::size_t live_count() const noexcept {
        return static_cast<std::size_t>(std::count(removed_.begin(), removed_.end(), false));
    }

    bool is_removed(std::size_t v) const { return removed_.at(v); }

    bool has_edge(std::size_t u, std::size_t v) const {
        check_live(u);
        check_live(v);
        return adj_[u].get(v);
    }

    void add_edge(std::size_t u, std::size_t v) {
        if (!has_edge(u, v)) {
            toggle_edge(u, v);
        }
    }

    void remove_edge(std::size_t u, std::size_t v) {
        if (has_edge(u, v)) {
            toggle_edge(u, v);
        }
    }

    void toggle_edge(std::size_t u, std::size_t v) {
        check_live(u);
        check_live(v);
        if (u == v) {
            throw InvalidOperand("self loops are not allowed");
        }
        adj_[u].flip(v);
        adj_[v].flip(u);
    }

    const BitVector &neighborhood(std::size_t v) const {
        check_live(v);
        return adj_[v];
    }

    std::vector<std::size_t> neighbors(std::size_t v) const { return neighborhood(v).ones(); }

    std::size_t degree(std::size_t v) const { return neighborhood(v).popcount(); }

    std::vector<std::size_t> vertices() const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < size(); v++) {
            if (!removed_[v]) {
                out.push_back(v);
            }
        }
        return out;
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto &row : adj_) {
            total += row.popcount();
        }
        return total / 2;
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t u = 0; u < size(); u++) {
            for (std::size_t v : adj_[u].ones()) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    /// Complements the subgraph induced on N(j).
    void local_complement_in_place(std::size_t j) {
        check_live(j);
        BitVector nj = adj_[j];
        for (std::size_t a : nj.ones()) {
            adj_[a] ^= nj;
            adj_[a].flip(a);  // undo the toggle of a's own bit
        }
    }

    void remove_vertex_in_place(std::size_t j) {
        check_live(j);
        for (std::size_t a : adj_[j].ones()) {
            adj_[a].set(j, false);
        }
        adj_[j].clear();
        removed_[j] = true;
    }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.removed_ == b.removed_ && a.adj_ == b.adj_;
    }

   private:
    void check_live(std::size_t v) const {
        if (v >= size()) {
            throw InvalidOperand("vertex index " + std::to_string(v) + " out of range");
        }
        if (removed_[v]) {
            throw InvalidOperand("vertex " + std::to_string(v) + " has been deleted");
        }
    }

    std::vector<BitVector> adj_;
    std::vector<bool> removed_;
};

/// tau_j(G): complement the neighbourhood of j.
inline Graph local_complement(Graph g, std::size_t j) {
    g.local_complement_in_place(j);
    return g;
}

/// G - j.
inline Graph delete_vertex(Graph g, std::size_t j) {
    g.remove_vertex_in_place(j);
    return g;
}

enum class PauliBasis { X, Y, Z };

inline char basis_letter(PauliBasis b) { return b == PauliBasis::X ? 'X' : (b == PauliBasis::Y ? 'Y' : 'Z'); }

/// Post-measurement description of a graph state after projecting vertex j:
///   P_{basis,outcome} |G> = sqrt(probability) * omega^phase_eighths * |basis,outcome>_j (x) byproduct |graph>
/// with omega = exp(i pi/4). Eigenvector conventions: |Z+->=|0>,|1>;
/// |X+-> = (|0> +- |1>)/sqrt2; |Y+-> = (|0> +- i|1>)/sqrt2.
struct MeasurementRewrite {
    Graph graph;
    LocalCliffordLayer byproduct;
    int phase_eighths = 0;
    double probability = 0.5;
};

/// Rewrite rule for a Pauli measurement on vertex j of a graph state.
/// `minus` selects the -1 eigenvalue outcome. X measurements use the special
/// neighbour `special` (default: lowest-index neighbour), which must lie in N(j).
inline MeasurementRewrite measure_pauli(const Graph &g, std::size_t j, PauliBasis basis, bool minus,
                                        std::optional<std::size_t> special = std::nullopt) {
    const std::vector<std::size_t> nj = g.neighbors(j);
    MeasurementRewrite out;
    out.byproduct = LocalCliffordLayer(g.size());
    switch (basis) {
        case PauliBasis::Z: {
            out.graph = delete_vertex(g, j);
            if (minus) {
                for (std::size_t a : nj) {
                    out.byproduct.set(a, SingleQubitUnitary::pauli_z());
                }
            }
            break;
        }
        case PauliBasis::Y: {
            out.graph = delete_vertex(local_complement(g, j), j);
            SingleQubitUnitary root = minus ? SingleQubitUnitary::sqrt_iz() : SingleQubitUnitary::sqrt_miz();
            for (std::size_t a : nj) {
                out.byproduct.set(a, root);
            }
            int e = static_cast<int>(nj.size()) - 1;
            out.phase_eighths = (((minus ? -e : e) % 8) + 8) % 8;
            break;
        }
        case PauliBasis::X: {
            if (nj.empty()) {
                // |+> on an isolated vertex: the outcome is deterministic.
                out.graph = delete_vertex(g, j);
                out.probability = minus ? 0.0 : 1.0;
                break;
            }
            std::size_t k = special.value_or(nj.front());
            if (!g.neighborhood(j).get(k)) {
                throw InvalidOperand("special neighbour must be adjacent to the measured vertex");
            }
            Graph h = local_complement(g, k);
            h.local_complement_in_place(j);
            h.remove_vertex_in_place(j);
            h.local_complement_in_place(k);
            out.graph = std::move(h);

            const BitVector &n_j = g.neighborhood(j);
            const BitVector &n_k = g.neighborhood(k);
            if (!minus) {
                out.byproduct.set(k, SingleQubitUnitary::sqrt_iy());
                for (std::size_t a : nj) {
                    if (a != k && !n_k.get(a)) {
                        out.byproduct.set(a, SingleQubitUnitary::pauli_z());
                    }
                }
            } else {
                out.byproduct.set(k, SingleQubitUnitary::sqrt_miy());
                for (std::size_t a : g.neighbors(k)) {
                    if (a != j && !n_j.get(a)) {
                        out.byproduct.set(a, SingleQubitUnitary::pauli_z());
                    }
                }
            }
            break;
        }
    }
    return out;
}

/// Shortest path from `from` to `to`, exploring neighbours in increasing index order.
inline std::optional<std::vector<std::size_t>> bfs_path(const Graph &g, std::size_t from, std::size_t to) {
    g.neighborhood(from);
    g.neighborhood(to);
    std::vector<std::size_t> parent(g.size(), BitVector::npos);
    std::deque<std::size_t> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        if (v == to) {
            break;
        }
        for (std::size_t w : g.neighbors(v)) {
            if (parent[w] == BitVector::npos) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if (parent[to] == BitVector::npos) {
        return std::nullopt;
    }
    std::vector<std::size_t> path{to};
    while (path.back() != from) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

/// Connected components of the live vertices, each sorted, ordered by smallest member.
inline std::vector<std::vector<std::size_t>> connected_components(const Graph &g) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t s : g.vertices()) {
        if (seen[s]) {
            continue;
        }
        std::vector<std::size_t> comp{s};
        seen[s] = true;
        for (std::size_t i = 0; i < comp.size(); i++) {
            for (std::size_t w : g.neighbors(comp[i])) {
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// The component containing v.
inline std::vector<std::size_t> component_of(const Graph &g, std::size_t v) {
    for (auto &c : connected_components(g)) {
        if (std::binary_search(c.begin(), c.end(), v)) {
            return c;
        }
    }
    throw InvalidOperand("vertex " + std::to_string(v) + " has been deleted");
}

/// GF(2) rank of the adjacency block between `part` and the remaining live vertices.
inline std::size_t cut_rank(const Graph &g, const std::vector<std::size_t> &part) {
    std::vector<bool> inside(g.size(), false);
    for (std::size_t v : part) {
        g.neighborhood(v);
        inside[v] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t v : g.vertices()) {
        if (!inside[v]) {
            rest.push_back(v);
        }
    }
    if (part.empty() || rest.empty()) {
        throw InvalidOperand("cut must split the live vertices into two nonempty parts");
    }
    std::vector<BitVector> rows;
    for (std::size_t v : part) {
        BitVector row(rest.size());
        for (std::size_t c = 0; c < rest.size(); c++) {
            row.set(c, g.neighborhood(v).get(rest[c]));
        }
        rows.push_back(std::move(row));
    }
    return gf2_rank(std::move(rows));
}

/// Graphviz rendering with 1-based labels; the reference vertex (if any) is
/// labelled R and double-circled.
inline std::string to_dot(const Graph &g, std::optional<std::size_t> reference = std::nullopt) {
    auto label = [&](std::size_t v) {
        return (reference && *reference == v) ? std::string("R") : std::to_string(v + 1);
    };
    std::ostringstream out;
    out << "graph G {\n  node [shape=circle];\n";
    for (std::size_t v : g.vertices()) {
        out << "  \"" << label(v) << "\"";
        if (reference && *reference == v) {
            out << " [shape=doublecircle]";
        }
        out << ";\n";
    }
    for (auto [u, v] : g.edges()) {
        out << "  \"" << label(u) << "\" -- \"" << label(v) << "\";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace locc
