#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"
#include "protocol.hpp"
#include "stabilizer.hpp"

namespace locc {

struct FeasibilityReport {
    bool feasible = false;
    std::size_t target = 0;
    /// When infeasible: a party set containing the target but not the
    /// reference whose reduced state factors off everything else.
    std::vector<std::size_t> witness;
};

struct SynthesisOptions {
    GraphConversionOptions conversion;
    bool simplify = true;
};

struct Synthesis {
    GraphStateDecomposition decomposition;
    FeasibilityReport feasibility;
    /// Shortest path target -> ... -> reference, empty if infeasible.
    std::vector<std::size_t> path;
    std::optional<Protocol> protocol;
};

/// Extraction to `target` is possible iff target and the reference share a component.
inline FeasibilityReport feasibility(const Graph &g, std::size_t target) {
    const std::size_t r = g.size() - 1;
    FeasibilityReport report;
    report.target = target;
    std::vector<std::size_t> comp = component_of(g, target);
    report.feasible = std::binary_search(comp.begin(), comp.end(), r);
    if (!report.feasible) {
        report.witness = std::move(comp);
    }
    return report;
}

inline std::string outcome_name(char prefix, std::size_t party) { return prefix + std::to_string(party + 1); }

/// Builds the extraction protocol on an already computed graph decomposition.
inline Synthesis synthesize_from_decomposition(const CodeSpec &code, GraphStateDecomposition d, std::size_t target,
                                               bool simplify_output = true) {
    const std::size_t n = code.n;
    const std::size_t r = n;
    const std::size_t j = target;
    if (d.graph.size() != n + 1) {
        throw DimensionError("decomposition does not match the code size");
    }
    Synthesis out;
    out.feasibility = feasibility(d.graph, j);
    if (!out.feasibility.feasible) {
        out.decomposition = std::move(d);
        return out;
    }
    const Graph &g = d.graph;
    std::vector<std::size_t> path = *bfs_path(g, r, j);
    std::reverse(path.begin(), path.end());  // v_1 = j, ..., v_L = R
    const std::size_t L = path.size();
    std::vector<bool> on_path(n + 1, false);
    for (std::size_t v : path) {
        on_path[v] = true;
    }
    std::set<std::size_t> adjacent;  // A' = N(path) \ path
    for (std::size_t v : path) {
        for (std::size_t w : g.neighbors(v)) {
            if (!on_path[w]) {
                adjacent.insert(w);
            }
        }
    }
    std::set<std::size_t> acting(adjacent.begin(), adjacent.end());
    for (std::size_t v : path) {
        if (v != r) {
            acting.insert(v);
        }
    }

    std::vector<Instruction> ins;
    // Undo the local frame so the parties hold |G>.
    for (std::size_t k : acting) {
        ins.push_back(ApplyLocal{k, d.layer.get(k).dagger()});
    }

    // Z-measure the neighbourhood of the path; each outcome flips Z on its path neighbours.
    std::vector<std::vector<std::string>> parity(n + 1);
    for (std::size_t v : adjacent) {
        std::string var = outcome_name('m', v);
        ins.push_back(Measure{v, PauliBasis::Z, var});
        std::set<std::size_t> to;
        for (std::size_t l = 0; l < L; l++) {
            if (g.has_edge(v, path[l])) {
                parity[path[l]].push_back(var);
                to.insert(path[l] == r ? j : path[l]);
            }
        }
        ins.push_back(Broadcast{v, var, std::vector<std::size_t>(to.begin(), to.end())});
    }
    for (std::size_t l = 0; l + 1 < L; l++) {
        if (!parity[path[l]].empty()) {
            ins.push_back(ConditionalPauli{path[l], 'Z', parity[path[l]]});
        }
    }

    // Contract the path with X measurements, special neighbour j each time.
    const auto root_iy_inv = SingleQubitUnitary::sqrt_iy().dagger();
    const auto root_miy_inv = SingleQubitUnitary::sqrt_miy().dagger();
    const auto h = SingleQubitUnitary::hadamard();
    const auto z = SingleQubitUnitary::pauli_z();
    for (std::size_t l = 1; l + 1 < L; l++) {
        std::size_t v = path[l];
        std::string var = outcome_name('x', v);
        ins.push_back(Measure{v, PauliBasis::X, var});
        bool last = l + 2 == L;
        std::vector<std::size_t> to{j};
        if (!last) {
            to.push_back(path[l + 1]);
        }
        std::sort(to.begin(), to.end());
        ins.push_back(Broadcast{v, var, to});
        if (!last) {
            ins.push_back(ConditionalUnitary{j, var, root_miy_inv, root_iy_inv});
            ins.push_back(ConditionalUnitary{path[l + 1], var, SingleQubitUnitary(), z});
        } else {
            // The + outcome's Z lands on the reference; it is moved to j after the Hadamard.
            ins.push_back(ConditionalUnitary{j, var, h * root_miy_inv, z * h * root_iy_inv});
        }
    }
    if (L == 2) {
        ins.push_back(ApplyLocal{j, h});
    }
    // (A_R) applied to the reference acts as (A^T)_j on the Bell pair.
    if (!parity[r].empty()) {
        ins.push_back(ConditionalPauli{j, 'Z', parity[r]});
    }
    ins.push_back(ApplyLocal{j, d.layer.get(r).dagger().transpose()});

    if (simplify_output) {
        ins = simplify(std::move(ins));
    }
    Protocol p;
    p.n = n;
    p.target = j;
    p.cooperating = cooperating_set(ins, j);
    p.instructions = std::move(ins);
    out.protocol = std::move(p);
    out.path = std::move(path);
    out.decomposition = std::move(d);
    return out;
}

/// Synthesises a one-way LOCC protocol that moves the encoded qubit to `target`.
/// Returns an infeasibility report with a witness when no protocol exists.
inline Synthesis synthesize_extraction(const CodeSpec &code, std::size_t target, const SynthesisOptions &options = {}) {
    validate_code(code);
    if (target >= code.n) {
        throw InvalidOperand("target party " + std::to_string(target + 1) + " is outside 1.." + std::to_string(code.n));
    }
    return synthesize_from_decomposition(code, to_graph_state(reference_stabilizer(code), options.conversion), target,
                                         options.simplify);
}

/// Parties that can receive the encoded qubit: the reference's component, minus the reference.
inline std::vector<std::size_t> feasible_targets(const CodeSpec &code, const GraphConversionOptions &options = {}) {
    validate_code(code);
    GraphStateDecomposition d = to_graph_state(reference_stabilizer(code), options);
    std::vector<std::size_t> comp = component_of(d.graph, code.n);
    comp.pop_back();  // the reference has the largest index
    return comp;
}

}  // namespace locc
