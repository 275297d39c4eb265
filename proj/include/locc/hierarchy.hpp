#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"
#include "protocol.hpp"
#include "stabilizer.hpp"
#include "synthesis.hpp"

namespace locc {

inline bool is_tree(const Graph &g) {
    std::size_t live = g.live_count();
    return live > 0 && g.edge_count() + 1 == live && connected_components(g).size() == 1;
}

/// On a tree whose last vertex is the reference: the path from target to the
/// reference plus its neighbours, without the reference. Every protocol
/// extracting to `target` needs all of these parties.
inline std::vector<std::size_t> minimal_cooperating_set(const Graph &g, std::size_t target) {
    if (!is_tree(g)) {
        throw UnsupportedTopology("cooperation hierarchy is only defined for tree graphs");
    }
    const std::size_t r = g.size() - 1;
    std::set<std::size_t> out;
    const std::vector<std::size_t> path = *bfs_path(g, target, r);
    for (std::size_t v : path) {
        out.insert(v);
        for (std::size_t w : g.neighbors(v)) {
            out.insert(w);
        }
    }
    out.erase(r);
    return {out.begin(), out.end()};
}

struct HierarchyEntry {
    std::size_t party;
    std::vector<std::size_t> required;
};

struct HierarchyReport {
    std::size_t n = 0;
    std::vector<HierarchyEntry> entries;  // one per party, in index order

    /// Parties grouped by the size of their required set, smallest first.
    std::map<std::size_t, std::vector<std::size_t>> levels() const {
        std::map<std::size_t, std::vector<std::size_t>> out;
        for (const auto &e : entries) {
            out[e.required.size()].push_back(e.party);
        }
        return out;
    }
};

inline HierarchyReport hierarchy_report(const Graph &g) {
    if (!is_tree(g)) {
        throw UnsupportedTopology("cooperation hierarchy is only defined for tree graphs");
    }
    HierarchyReport report;
    report.n = g.size() - 1;
    for (std::size_t j = 0; j < report.n; j++) {
        report.entries.push_back({j, minimal_cooperating_set(g, j)});
    }
    return report;
}

inline HierarchyReport hierarchy_report(const CodeSpec &code, const GraphConversionOptions &options = {}) {
    return hierarchy_report(to_graph_state(reference_stabilizer(code), options).graph);
}

inline std::string to_table(const HierarchyReport &report) {
    std::ostringstream out;
    out << "party  parties needed  set\n";
    for (const auto &e : report.entries) {
        std::string label = party_label(e.party, report.n);
        out << label << std::string(7 - std::min<std::size_t>(label.size(), 6), ' ') << e.required.size();
        std::string count = std::to_string(e.required.size());
        out << std::string(16 - std::min<std::size_t>(count.size(), 15), ' ') << "{";
        for (std::size_t i = 0; i < e.required.size(); i++) {
            out << (i ? "," : "") << party_label(e.required[i], report.n);
        }
        out << "}\n";
    }
    out << "levels:";
    for (const auto &[size, parties] : report.levels()) {
        out << " " << size << ":{";
        for (std::size_t i = 0; i < parties.size(); i++) {
            out << (i ? "," : "") << party_label(parties[i], report.n);
        }
        out << "}";
    }
    out << "\n";
    return out.str();
}

}  // namespace locc
