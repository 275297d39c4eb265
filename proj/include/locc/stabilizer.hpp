#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitvec.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "pauli.hpp"
#include "unitary.hpp"

namespace locc {

namespace detail {

/// Row [x | z] as one 2n-bit vector.
inline BitVector symplectic_row(const PauliString &p) {
    std::size_t n = p.size();
    BitVector v(2 * n);
    for (std::size_t q : p.xs().ones()) {
        v.set(q);
    }
    for (std::size_t q : p.zs().ones()) {
        v.set(n + q);
    }
    return v;
}

inline std::size_t symplectic_rank(const std::vector<PauliString> &rows) {
    std::vector<BitVector> bits;
    bits.reserve(rows.size());
    for (const auto &r : rows) {
        bits.push_back(symplectic_row(r));
    }
    return gf2_rank(std::move(bits));
}

/// First pair (i, j), i < j, of anticommuting rows; nullopt if all commute.
inline std::optional<std::pair<std::size_t, std::size_t>> first_anticommuting(const std::vector<PauliString> &rows) {
    for (std::size_t i = 0; i < rows.size(); i++) {
        for (std::size_t j = i + 1; j < rows.size(); j++) {
            if (anticommutes(rows[i], rows[j])) {
                return std::make_pair(i, j);
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Reduced echelon form of a set of Pauli rows, for exact group membership queries.
class GroupReducer {
   public:
    explicit GroupReducer(std::vector<PauliString> rows) : rows_(std::move(rows)) {
        if (rows_.empty()) {
            return;
        }
        std::size_t n = rows_[0].size();
        std::size_t rank = 0;
        for (std::size_t c = 0; c < 2 * n && rank < rows_.size(); c++) {
            std::size_t pivot = rank;
            while (pivot < rows_.size() && !bit(rows_[pivot], c)) {
                pivot++;
            }
            if (pivot == rows_.size()) {
                continue;
            }
            std::swap(rows_[rank], rows_[pivot]);
            for (std::size_t r = 0; r < rows_.size(); r++) {
                if (r != rank && bit(rows_[r], c)) {
                    rows_[r] *= rows_[rank];
                }
            }
            pivots_.push_back(c);
            rank++;
        }
        rows_.resize(rank);
    }

    std::size_t rank() const noexcept { return rows_.size(); }

    /// The group element with the same letters as p, if p's letters lie in the group.
    std::optional<PauliString> express(const PauliString &p) const {
        PauliString residual = p;
        PauliString product(p.size());
        for (std::size_t i = 0; i < rows_.size(); i++) {
            if (bit(residual, pivots_[i])) {
                residual *= rows_[i];
                product *= rows_[i];
            }
        }
        if (!residual.is_identity_letters()) {
            return std::nullopt;
        }
        // Rows commute, so product order does not change the phase relative to p's letters.
        return product;
    }

    /// Exact membership, including the sign.
    bool contains(const PauliString &p) const {
        auto e = express(p);
        return e && *e == p;
    }

   private:
    static bool bit(const PauliString &p, std::size_t c) {
        std::size_t n = p.size();
        return c < n ? p.x(c) : p.z(c - n);
    }

    std::vector<PauliString> rows_;
    std::vector<std::size_t> pivots_;
};

/// n commuting, independent, Hermitian Pauli rows on n qubits.
class StabilizerTableau {
   public:
    StabilizerTableau() = default;

    /// Throws InvalidTableau unless the rows form a full-rank stabilizer group.
    explicit StabilizerTableau(std::vector<PauliString> rows) : rows_(std::move(rows)) {
        std::size_t n = rows_.empty() ? 0 : rows_[0].size();
        if (rows_.size() != n || n == 0) {
            throw InvalidTableau("tableau needs exactly as many rows as qubits");
        }
        for (std::size_t i = 0; i < rows_.size(); i++) {
            if (rows_[i].size() != n) {
                throw InvalidTableau("row " + std::to_string(i + 1) + " has the wrong number of qubits");
            }
            if (!rows_[i].is_hermitian()) {
                throw InvalidTableau("row " + std::to_string(i + 1) + " is not Hermitian");
            }
        }
        if (auto pair = detail::first_anticommuting(rows_)) {
            throw InvalidTableau("rows " + std::to_string(pair->first + 1) + " and " +
                                 std::to_string(pair->second + 1) + " anticommute");
        }
        if (detail::symplectic_rank(rows_) != n) {
            throw InvalidTableau("rows are not independent");
        }
    }

    std::size_t num_qubits() const noexcept { return rows_.size(); }
    const std::vector<PauliString> &rows() const noexcept { return rows_; }

   private:
    std::vector<PauliString> rows_;
};

/// Same stabilizer group, signs included.
inline bool same_group(const StabilizerTableau &a, const StabilizerTableau &b) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    GroupReducer reducer(a.rows());
    for (const auto &row : b.rows()) {
        if (!reducer.contains(row)) {
            return false;
        }
    }
    return true;
}

/// [[n,1]] stabilizer code: n-1 generators and one logical pair.
struct CodeSpec {
    std::size_t n = 0;
    std::vector<PauliString> generators;
    PauliString logical_x;
    PauliString logical_z;
};

/// Throws InvalidCode describing the first violated requirement.
inline void validate_code(const CodeSpec &code) {
    if (code.n == 0) {
        throw InvalidCode("code needs at least one qubit");
    }
    if (code.generators.size() != code.n - 1) {
        throw InvalidCode("expected " + std::to_string(code.n - 1) + " generators, got " +
                          std::to_string(code.generators.size()));
    }
    auto check = [&](const PauliString &p, const std::string &what) {
        if (p.size() != code.n) {
            throw InvalidCode(what + " acts on " + std::to_string(p.size()) + " qubits, expected " +
                              std::to_string(code.n));
        }
        if (!p.is_hermitian()) {
            throw InvalidCode(what + " is not Hermitian");
        }
    };
    for (std::size_t i = 0; i < code.generators.size(); i++) {
        check(code.generators[i], "generator " + std::to_string(i + 1));
    }
    check(code.logical_x, "logical X");
    check(code.logical_z, "logical Z");
    if (auto pair = detail::first_anticommuting(code.generators)) {
        throw InvalidCode("generators " + std::to_string(pair->first + 1) + " and " +
                          std::to_string(pair->second + 1) + " anticommute");
    }
    if (detail::symplectic_rank(code.generators) != code.generators.size()) {
        throw InvalidCode("generators are not independent");
    }
    for (std::size_t i = 0; i < code.generators.size(); i++) {
        if (anticommutes(code.generators[i], code.logical_x) || anticommutes(code.generators[i], code.logical_z)) {
            throw InvalidCode("logical operators must commute with generator " + std::to_string(i + 1));
        }
    }
    if (commutes(code.logical_x, code.logical_z)) {
        throw InvalidCode("logical X and logical Z must anticommute");
    }
}

/// A logical pair for the code generated by `generators`.
///
/// Picks the first anticommuting pair from a basis of the normalizer (the
/// kernel of the symplectic form against the generators). Both returned
/// operators carry sign +1.
inline std::pair<PauliString, PauliString> standard_form_logicals(const std::vector<PauliString> &generators) {
    if (generators.empty()) {
        throw InvalidCode("need at least one generator to derive logicals");
    }
    std::size_t n = generators[0].size();
    if (generators.size() + 1 != n) {
        throw InvalidCode("logical derivation needs n-1 generators on n qubits");
    }
    if (detail::first_anticommuting(generators) || detail::symplectic_rank(generators) != n - 1) {
        throw InvalidCode("generators must commute and be independent");
    }
    // v = [v_x | v_z] commutes with g iff g_z.v_x + g_x.v_z = 0, so the check
    // matrix row for g is [g_z | g_x].
    std::vector<BitVector> m;
    for (const auto &g : generators) {
        BitVector row(2 * n);
        for (std::size_t q : g.zs().ones()) {
            row.set(q);
        }
        for (std::size_t q : g.xs().ones()) {
            row.set(n + q);
        }
        m.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < 2 * n && rank < m.size(); c++) {
        std::size_t p = rank;
        while (p < m.size() && !m[p].get(c)) {
            p++;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[rank], m[p]);
        for (std::size_t r = 0; r < m.size(); r++) {
            if (r != rank && m[r].get(c)) {
                m[r] ^= m[rank];
            }
        }
        pivot_cols.push_back(c);
        rank++;
    }
    std::vector<bool> is_pivot(2 * n, false);
    for (std::size_t c : pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<PauliString> kernel;
    for (std::size_t f = 0; f < 2 * n; f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(2 * n);
        v.set(f);
        for (std::size_t r = 0; r < rank; r++) {
            if (m[r].get(f)) {
                v.set(pivot_cols[r]);
            }
        }
        PauliString p(n);
        for (std::size_t q = 0; q < n; q++) {
            p.xs().set(q, v.get(q));
            p.zs().set(q, v.get(n + q));
        }
        p.set_sign(1);
        kernel.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < kernel.size(); i++) {
        for (std::size_t j = i + 1; j < kernel.size(); j++) {
            if (anticommutes(kernel[i], kernel[j])) {
                return {kernel[i], kernel[j]};
            }
        }
    }
    throw InvalidCode("normalizer has no anticommuting pair");
}

/// Stabilizer of (|0>_R|0>_S + |1>_R|1>_S)/sqrt2 on n+1 qubits, with R as the last qubit.
inline StabilizerTableau reference_stabilizer(const CodeSpec &code) {
    validate_code(code);
    std::vector<PauliString> rows;
    for (const auto &g : code.generators) {
        rows.push_back(tensor(g, PauliString(1)));
    }
    rows.push_back(tensor(code.logical_x, PauliString::parse("X")));
    rows.push_back(tensor(code.logical_z, PauliString::parse("Z")));
    return StabilizerTableau(std::move(rows));
}

/// Inverse of reference_stabilizer: reads the code off a state on n+1 qubits
/// whose last qubit is maximally entangled with the rest. The result has the
/// same reference state, signs included. Throws InvalidCode otherwise.
inline CodeSpec code_from_reference(const StabilizerTableau &t) {
    const std::size_t total = t.num_qubits();
    if (total < 2) {
        throw InvalidCode("reference state needs at least two qubits");
    }
    const std::size_t r = total - 1;
    std::vector<PauliString> rows = t.rows();
    auto eliminate = [&](std::size_t start, bool use_z) {
        for (std::size_t i = start; i < rows.size(); i++) {
            if (use_z ? rows[i].z(r) : rows[i].x(r)) {
                std::swap(rows[start], rows[i]);
                for (std::size_t o = 0; o < rows.size(); o++) {
                    if (o != start && (use_z ? rows[o].z(r) : rows[o].x(r))) {
                        rows[o] *= rows[start];
                    }
                }
                return true;
            }
        }
        return false;
    };
    if (!eliminate(0, false) || !eliminate(1, true)) {
        throw InvalidCode("last qubit is not maximally entangled with the rest");
    }
    // rows[0] = L_x (x) X_R, rows[1] = L_z (x) Z_R, the rest act trivially on R.
    auto restrict = [&](const PauliString &p) {
        PauliString out(r);
        for (std::size_t q = 0; q < r; q++) {
            out.xs().set(q, p.x(q));
            out.zs().set(q, p.z(q));
        }
        out.set_phase(p.phase());
        return out;
    };
    CodeSpec code;
    code.n = r;
    code.logical_x = restrict(rows[0]);
    code.logical_z = restrict(rows[1]);
    for (std::size_t i = 2; i < rows.size(); i++) {
        code.generators.push_back(restrict(rows[i]));
    }
    validate_code(code);
    return code;
}

/// Canonical stabilizer rows K_v = X_v Z_{N(v)} of a graph without deleted vertices.
inline StabilizerTableau graph_stabilizers(const Graph &g) {
    if (g.live_count() != g.size()) {
        throw InvalidOperand("graph stabilizers need a graph without deleted vertices");
    }
    std::vector<PauliString> rows;
    for (std::size_t v = 0; v < g.size(); v++) {
        PauliString k(g.size());
        k.xs().set(v);
        k.zs() = g.neighborhood(v);
        rows.push_back(std::move(k));
    }
    return StabilizerTableau(std::move(rows));
}

struct RowOp {
    enum Kind : std::uint8_t { swap, multiply } kind;
    std::uint32_t target;
    std::uint32_t source;  // multiply: target *= source
};

/// Local-Clifford equivalence to a graph state: layer |graph> = |psi_tableau> up to a global phase.
struct GraphStateDecomposition {
    Graph graph;
    LocalCliffordLayer layer;
    std::vector<RowOp> row_ops;
    /// Columns whose pivot came from a Z bit (these get a Hadamard).
    std::vector<bool> hadamard_columns;
};

struct GraphConversionOptions {
    /// Per-column hint: choose a Z-bit pivot before an X-bit one. Empty means no preference.
    std::vector<bool> prefer_hadamard;
    /// Use an X on the last qubit to absorb sign fixes when that shortens the Z frame elsewhere.
    bool push_frame_to_last = true;
    bool record_row_ops = true;
};

/// Converts a stabilizer state to graph form by column-wise Gauss-Jordan elimination.
///
/// Each column k takes a pivot from the not-yet-used rows, preferring an X
/// bit (which needs no Hadamard); Z pivots mark the column for a Hadamard.
/// Maximal isotropy guarantees one of the two bits is available.
inline GraphStateDecomposition to_graph_state(const StabilizerTableau &tableau,
                                              const GraphConversionOptions &options = {}) {
    const std::size_t n = tableau.num_qubits();
    std::vector<PauliString> rows = tableau.rows();
    GraphStateDecomposition out;
    out.hadamard_columns.assign(n, false);

    for (std::size_t k = 0; k < n; k++) {
        bool prefer_z = k < options.prefer_hadamard.size() && options.prefer_hadamard[k];
        std::size_t pivot = BitVector::npos;
        bool use_z = false;
        for (int attempt = 0; attempt < 2 && pivot == BitVector::npos; attempt++) {
            bool want_z = attempt == 0 ? prefer_z : !prefer_z;
            for (std::size_t r = k; r < n; r++) {
                if (want_z ? rows[r].z(k) : rows[r].x(k)) {
                    pivot = r;
                    use_z = want_z;
                    break;
                }
            }
        }
        if (pivot == BitVector::npos) {
            throw InvalidTableau("no pivot for column " + std::to_string(k + 1));
        }
        out.hadamard_columns[k] = use_z;
        if (pivot != k) {
            std::swap(rows[pivot], rows[k]);
            if (options.record_row_ops) {
                out.row_ops.push_back({RowOp::swap, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(pivot)});
            }
        }
        for (std::size_t r = 0; r < n; r++) {
            if (r != k && (use_z ? rows[r].z(k) : rows[r].x(k))) {
                rows[r] *= rows[k];
                if (options.record_row_ops) {
                    out.row_ops.push_back(
                        {RowOp::multiply, static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(k)});
                }
            }
        }
    }

    const SignedPauli hx{'Z', 1}, hz{'X', 1}, hy{'Y', -1};
    for (auto &row : rows) {
        for (std::size_t k = 0; k < n; k++) {
            if (out.hadamard_columns[k]) {
                conjugate_qubit(row, k, hx, hz, hy);
            }
        }
    }
    // S^dag Y S = X fixes diagonal Y entries; other rows hold only I or Z at k.
    std::vector<bool> phase_fix(n, false);
    for (std::size_t k = 0; k < n; k++) {
        if (rows[k].z(k)) {
            phase_fix[k] = true;
            conjugate_qubit(rows[k], k, SignedPauli{'Y', -1}, SignedPauli{'Z', 1}, SignedPauli{'X', 1});
        }
    }

    Graph g(n);
    for (std::size_t v = 0; v < n; v++) {
        for (std::size_t w : rows[v].zs().ones()) {
            if (!rows[w].z(v)) {
                throw InvalidTableau("adjacency is not symmetric; rows do not commute");
            }
            if (v < w) {
                g.add_edge(v, w);
            }
        }
    }

    // Sign fixes: Z_v flips row v; X on the last qubit flips every row adjacent to it.
    std::vector<bool> flip(n, false);
    for (std::size_t v = 0; v < n; v++) {
        flip[v] = rows[v].sign() < 0;
    }
    bool x_last = false;
    if (options.push_frame_to_last && n > 1) {
        const std::size_t last = n - 1;
        std::size_t plain = 0, shifted = 0;
        for (std::size_t v = 0; v < last; v++) {
            plain += flip[v] ? 1 : 0;
            shifted += (flip[v] != g.neighborhood(last).get(v)) ? 1 : 0;
        }
        if (shifted < plain) {
            x_last = true;
            for (std::size_t v : g.neighbors(last)) {
                flip[v] = !flip[v];
            }
        }
    }

    out.layer = LocalCliffordLayer(n);
    for (std::size_t q = 0; q < n; q++) {
        SingleQubitUnitary c;
        if (out.hadamard_columns[q]) {
            c = SingleQubitUnitary::hadamard() * c;
        }
        if (phase_fix[q]) {
            c = SingleQubitUnitary::phase_sdg() * c;
        }
        if (x_last && q == n - 1) {
            c = SingleQubitUnitary::pauli_x() * c;
        }
        if (flip[q]) {
            c = SingleQubitUnitary::pauli_z() * c;
        }
        out.layer.set(q, c.dagger());
    }
    out.graph = std::move(g);
    return out;
}

}  // namespace locc
