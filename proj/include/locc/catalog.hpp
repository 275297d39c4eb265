#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "random.hpp"
#include "stabilizer.hpp"

namespace locc {

inline CodeSpec make_code(std::size_t n, const std::vector<std::string> &generators, const std::string &logical_x,
                          const std::string &logical_z) {
    CodeSpec c;
    c.n = n;
    for (const auto &g : generators) {
        c.generators.push_back(PauliString::parse(g));
    }
    c.logical_x = PauliString::parse(logical_x);
    c.logical_z = PauliString::parse(logical_z);
    validate_code(c);
    return c;
}

/// The [[5,1,3]] code with transversal logicals.
inline CodeSpec five_qubit_code() { return make_code(5, {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}, "XXXXX", "ZZZZZ"); }

/// |0_L> = |00>, |1_L> = |11>.
inline CodeSpec repetition_code() { return make_code(2, {"ZZ"}, "XX", "ZI"); }

/// Tree R - 1 - 2 - ... - n.
inline Graph line_graph(std::size_t n) {
    Graph g(n + 1);
    g.add_edge(n, 0);
    for (std::size_t v = 0; v + 1 < n; v++) {
        g.add_edge(v, v + 1);
    }
    return g;
}

/// Code whose reference state is the graph state of line_graph(n).
inline CodeSpec line_code(std::size_t n) { return code_from_graph(line_graph(n)); }

/// n-qubit GHZ code: |0_L> = |0...0>, |1_L> = |1...1>.
inline CodeSpec ghz_code(std::size_t n) {
    if (n < 2) {
        throw InvalidOperand("GHZ code needs at least 2 qubits");
    }
    std::vector<std::string> gens;
    for (std::size_t i = 0; i + 1 < n; i++) {
        std::string g(n, 'I');
        g[i] = g[i + 1] = 'Z';
        gens.push_back(g);
    }
    std::string lz(n, 'I');
    lz[0] = 'Z';
    return make_code(n, gens, std::string(n, 'X'), lz);
}

}  // namespace locc
