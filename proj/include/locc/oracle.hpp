#pragma once

#include <Eigen/Dense>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "pauli.hpp"
#include "stabilizer.hpp"
#include "unitary.hpp"

namespace locc {

using cplx = std::complex<double>;

constexpr std::size_t default_oracle_limit = 14;

inline void check_oracle_limit(std::size_t qubits, std::size_t limit) {
    if (qubits > limit) {
        throw OracleLimitError("statevector of " + std::to_string(qubits) + " qubits exceeds the oracle limit of " +
                               std::to_string(limit));
    }
}

/// Dense n-qubit state. Qubit q is bit q of a basis index.
class StateVector {
   public:
    StateVector() = default;
    StateVector(std::size_t n, std::size_t limit = default_oracle_limit) : n_(n) {
        check_oracle_limit(n, limit);
        amps_.assign(std::size_t{1} << n, cplx(0));
        amps_[0] = 1;
    }

    std::size_t num_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::vector<cplx> &amplitudes() noexcept { return amps_; }
    const std::vector<cplx> &amplitudes() const noexcept { return amps_; }
    cplx &operator[](std::size_t i) { return amps_[i]; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    void apply(std::size_t q, const std::array<cplx, 4> &u) {
        std::size_t bit = std::size_t{1} << q;
        for (std::size_t i = 0; i < amps_.size(); i++) {
            if (i & bit) {
                continue;
            }
            cplx a0 = amps_[i], a1 = amps_[i | bit];
            amps_[i] = u[0] * a0 + u[1] * a1;
            amps_[i | bit] = u[2] * a0 + u[3] * a1;
        }
    }

    void apply(std::size_t q, const SingleQubitUnitary &u) { apply(q, u.to_complex()); }

    void apply(const LocalCliffordLayer &layer) {
        for (const auto &[q, u] : layer.ops()) {
            apply(q, u);
        }
    }

    void apply_cz(std::size_t a, std::size_t b) {
        std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
        for (std::size_t i = 0; i < amps_.size(); i++) {
            if ((i & mask) == mask) {
                amps_[i] = -amps_[i];
            }
        }
    }

    void apply(const PauliString &p) {
        if (p.size() != n_) {
            throw DimensionError("Pauli string size does not match the state");
        }
        std::size_t xmask = 0, zmask = 0;
        for (std::size_t q : p.xs().ones()) {
            xmask |= std::size_t{1} << q;
        }
        for (std::size_t q : p.zs().ones()) {
            zmask |= std::size_t{1} << q;
        }
        static const cplx ipow[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
        cplx c = ipow[p.phase()];
        std::vector<cplx> out(amps_.size());
        // i^p X^x Z^z |b> = i^p (-1)^{z.b} |b ^ x>
        for (std::size_t b = 0; b < amps_.size(); b++) {
            double s = (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
            out[b ^ xmask] += c * s * amps_[b];
        }
        amps_ = std::move(out);
    }

    /// (I + P)/2 in place.
    void project_plus(const PauliString &p) {
        StateVector image = *this;
        image.apply(p);
        for (std::size_t i = 0; i < amps_.size(); i++) {
            amps_[i] = 0.5 * (amps_[i] + image.amps_[i]);
        }
    }

    double norm_squared() const {
        double s = 0;
        for (auto a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    void normalize() {
        double nrm = std::sqrt(norm_squared());
        if (nrm == 0) {
            throw InvalidOperand("cannot normalise the zero vector");
        }
        for (auto &a : amps_) {
            a /= nrm;
        }
    }

   private:
    std::size_t n_ = 0;
    std::vector<cplx> amps_;
};

inline cplx inner(const StateVector &a, const StateVector &b) {
    cplx s = 0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |<a|b>| for normalised states.
inline double overlap(const StateVector &a, const StateVector &b) { return std::abs(inner(a, b)); }

/// |G>; deleted vertices are left in |0>.
inline StateVector graph_state_vector(const Graph &g, std::size_t limit = default_oracle_limit) {
    StateVector s(g.size(), limit);
    auto h = SingleQubitUnitary::hadamard();
    for (std::size_t v : g.vertices()) {
        s.apply(v, h);
    }
    for (auto [u, v] : g.edges()) {
        s.apply_cz(u, v);
    }
    return s;
}

/// The +1 common eigenvector of a full-rank tableau, normalised, global phase unspecified.
inline StateVector stabilizer_state_vector(const StabilizerTableau &t, std::size_t limit = default_oracle_limit) {
    StateVector s(t.num_qubits(), limit);
    // A generic seed vector has nonzero overlap with every state.
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    for (auto &a : s.amplitudes()) {
        a = std::polar(1.0, angle(rng));
    }
    for (const auto &row : t.rows()) {
        s.project_plus(row);
    }
    s.normalize();
    return s;
}

/// Code state a|0_L> + b|1_L> on the n physical qubits.
inline StateVector logical_state_vector(const CodeSpec &code, cplx a, cplx b, std::size_t limit = default_oracle_limit) {
    std::vector<PauliString> rows = code.generators;
    rows.push_back(code.logical_z);
    StateVector zero = stabilizer_state_vector(StabilizerTableau(rows), limit);
    StateVector one = zero;
    one.apply(code.logical_x);
    StateVector out = zero;
    for (std::size_t i = 0; i < out.dim(); i++) {
        out[i] = a * zero[i] + b * one[i];
    }
    return out;
}

/// (|0>_R |0_L> + |1>_R |1_L>)/sqrt2 with R as the last qubit. Built from the
/// logical operators, so the relative sign is fixed.
inline StateVector reference_state_vector(const CodeSpec &code, std::size_t limit = default_oracle_limit) {
    check_oracle_limit(code.n + 1, limit);
    StateVector zero = logical_state_vector(code, 1, 0, limit);
    StateVector one = zero;
    one.apply(code.logical_x);
    StateVector out(code.n + 1, limit);
    std::size_t r_bit = std::size_t{1} << code.n;
    const double s = 1 / std::sqrt(2.0);
    for (std::size_t i = 0; i < zero.dim(); i++) {
        out[i] = s * zero[i];
        out[i | r_bit] = s * one[i];
    }
    return out;
}

/// Amplitude matrix with rows indexed by the qubits in `part` and columns by the rest.
inline Eigen::MatrixXcd bipartition_matrix(const StateVector &s, const std::vector<std::size_t> &part) {
    std::size_t n = s.num_qubits();
    std::vector<bool> inside(n, false);
    for (std::size_t q : part) {
        inside[q] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; q++) {
        if (!inside[q]) {
            rest.push_back(q);
        }
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << part.size(), Eigen::Index{1} << rest.size());
    for (std::size_t i = 0; i < s.dim(); i++) {
        std::size_t r = 0, c = 0;
        for (std::size_t k = 0; k < part.size(); k++) {
            r |= ((i >> part[k]) & 1) << k;
        }
        for (std::size_t k = 0; k < rest.size(); k++) {
            c |= ((i >> rest[k]) & 1) << k;
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s[i];
    }
    return m;
}

/// Schmidt coefficients across part | rest, descending.
inline std::vector<double> schmidt_coefficients(const StateVector &s, const std::vector<std::size_t> &part) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(bipartition_matrix(s, part));
    const auto &sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

inline std::size_t schmidt_rank(const StateVector &s, const std::vector<std::size_t> &part, double tol = 1e-9) {
    std::size_t rank = 0;
    for (double c : schmidt_coefficients(s, part)) {
        rank += c > tol ? 1 : 0;
    }
    return rank;
}

/// Reduced density matrix of qubits (a, b), basis index bit0 = a, bit1 = b.
inline Eigen::Matrix4cd reduced_pair(const StateVector &s, std::size_t a, std::size_t b) {
    Eigen::MatrixXcd m = bipartition_matrix(s, {a, b});
    return m * m.adjoint();
}

inline Eigen::Matrix2cd reduced_single(const StateVector &s, std::size_t a) {
    Eigen::MatrixXcd m = bipartition_matrix(s, {a});
    return m * m.adjoint();
}

}  // namespace locc
