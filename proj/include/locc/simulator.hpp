#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "oracle.hpp"
#include "protocol.hpp"
#include "stabilizer.hpp"

namespace locc {

struct SimulationOptions {
    std::size_t oracle_limit = default_oracle_limit;
    /// Branches whose probability falls below this are skipped.
    double zero_probability = 1e-12;
    double tolerance = 1e-9;
};

struct Message {
    std::size_t from;
    std::size_t to;
    std::string var;
    bool value;
};

/// Mutable state of one branch while a protocol runs.
struct ExecutionState {
    StateVector state;
    double probability = 1.0;
    std::vector<std::pair<std::string, bool>> outcomes;  // in measurement order
    std::map<std::size_t, std::set<std::string>> known;
    std::map<std::string, bool> values;
    std::vector<Message> log;
};

namespace detail {

inline std::array<cplx, 2> eigenvector(PauliBasis b, bool minus) {
    const double s = 1 / std::sqrt(2.0);
    switch (b) {
        case PauliBasis::Z:
            return minus ? std::array<cplx, 2>{0.0, 1.0} : std::array<cplx, 2>{1.0, 0.0};
        case PauliBasis::X:
            return {s, minus ? -s : s};
        case PauliBasis::Y:
            return {s, minus ? cplx(0, -s) : cplx(0, s)};
    }
    return {};
}

/// Projects qubit q onto |e><e|; returns the squared norm of the result.
inline double project_qubit(StateVector &s, std::size_t q, const std::array<cplx, 2> &e) {
    std::size_t bit = std::size_t{1} << q;
    double norm = 0;
    for (std::size_t i = 0; i < s.dim(); i++) {
        if (i & bit) {
            continue;
        }
        cplx c = std::conj(e[0]) * s[i] + std::conj(e[1]) * s[i | bit];
        s[i] = e[0] * c;
        s[i | bit] = e[1] * c;
        norm += std::norm(c);
    }
    return norm;
}

inline bool read_parity(const ExecutionState &st, std::size_t party, const std::vector<std::string> &vars) {
    bool parity = false;
    for (const auto &v : vars) {
        auto it = st.known.find(party);
        if (it == st.known.end() || !it->second.count(v)) {
            throw ProtocolOrderError("party " + std::to_string(party + 1) + " reads " + v + " before receiving it");
        }
        parity ^= st.values.at(v);
    }
    return parity;
}

inline void check_party(std::size_t party, std::size_t n) {
    if (party >= n) {
        throw InvalidOperand("party index " + std::to_string(party + 1) + " cannot act (reference or out of range)");
    }
}

}  // namespace detail

/// Executes one instruction. A Measure uses the given outcome; the return value
/// is false when that outcome has (near) zero probability.
inline bool execute_instruction(ExecutionState &st, const Instruction &ins, std::size_t n, bool outcome,
                                const SimulationOptions &opt = {}) {
    std::size_t party = party_of(ins);
    detail::check_party(party, n);
    if (auto *a = std::get_if<ApplyLocal>(&ins)) {
        st.state.apply(party, a->unitary);
    } else if (auto *m = std::get_if<Measure>(&ins)) {
        if (st.values.count(m->var)) {
            throw ProtocolOrderError("variable " + m->var + " is written twice");
        }
        double p = detail::project_qubit(st.state, party, detail::eigenvector(m->basis, outcome));
        if (p < opt.zero_probability) {
            return false;
        }
        double scale = 1 / std::sqrt(p);
        for (auto &amp : st.state.amplitudes()) {
            amp *= scale;
        }
        st.probability *= p;
        st.values[m->var] = outcome;
        st.known[party].insert(m->var);
        st.outcomes.emplace_back(m->var, outcome);
    } else if (auto *b = std::get_if<Broadcast>(&ins)) {
        detail::read_parity(st, party, {b->var});
        for (std::size_t to : b->to) {
            detail::check_party(to, n);
            st.known[to].insert(b->var);
            st.log.push_back({party, to, b->var, st.values.at(b->var)});
        }
    } else if (auto *c = std::get_if<ConditionalPauli>(&ins)) {
        if (detail::read_parity(st, party, c->parity_of)) {
            st.state.apply(party, SingleQubitUnitary::pauli(c->pauli));
        }
    } else if (auto *u = std::get_if<ConditionalUnitary>(&ins)) {
        bool bit = detail::read_parity(st, party, {u->var});
        st.state.apply(party, bit ? u->then_unitary : u->else_unitary);
    }
    return true;
}

/// Runs instructions [0, stop) with the given outcomes. Returns nullopt for a zero-probability branch.
inline std::optional<ExecutionState> execute_branch(const Protocol &p, StateVector initial,
                                                    const std::map<std::string, bool> &outcomes,
                                                    std::size_t stop = static_cast<std::size_t>(-1),
                                                    const SimulationOptions &opt = {}) {
    ExecutionState st;
    st.state = std::move(initial);
    for (std::size_t i = 0; i < p.instructions.size() && i < stop; i++) {
        bool outcome = false;
        if (auto *m = std::get_if<Measure>(&p.instructions[i])) {
            auto it = outcomes.find(m->var);
            if (it == outcomes.end()) {
                throw InvalidOperand("no outcome given for " + m->var);
            }
            outcome = it->second;
        }
        if (!execute_instruction(st, p.instructions[i], p.n, outcome, opt)) {
            return std::nullopt;
        }
    }
    return st;
}

/// Visits every branch in lexicographic order of outcomes (measurement order,
/// 0 before 1). Leaves reached with probability below threshold are reported
/// to `on_excluded` with the number of complete assignments they stand for.
inline void for_each_branch(const Protocol &p, StateVector initial,
                            const std::function<void(const ExecutionState &)> &on_leaf,
                            const std::function<void(const ExecutionState &, std::size_t)> &on_excluded,
                            const SimulationOptions &opt = {}) {
    std::vector<std::size_t> measures_after(p.instructions.size() + 1, 0);
    for (std::size_t i = p.instructions.size(); i-- > 0;) {
        measures_after[i] = measures_after[i + 1] + (std::holds_alternative<Measure>(p.instructions[i]) ? 1 : 0);
    }
    std::function<void(ExecutionState, std::size_t)> run = [&](ExecutionState st, std::size_t i) {
        for (; i < p.instructions.size(); i++) {
            if (std::holds_alternative<Measure>(p.instructions[i])) {
                for (bool outcome : {false, true}) {
                    ExecutionState branch = st;
                    if (execute_instruction(branch, p.instructions[i], p.n, outcome, opt)) {
                        run(std::move(branch), i + 1);
                    } else {
                        branch.outcomes.emplace_back(std::get<Measure>(p.instructions[i]).var, outcome);
                        on_excluded(branch, std::size_t{1} << measures_after[i + 1]);
                    }
                }
                return;
            }
            execute_instruction(st, p.instructions[i], p.n, false, opt);
        }
        on_leaf(st);
    };
    ExecutionState st;
    st.state = std::move(initial);
    run(std::move(st), 0);
}

struct BranchResult {
    std::vector<std::pair<std::string, bool>> outcomes;
    double probability = 0;
    double fidelity = 0;
    double purity = 0;
    bool pass = false;
};

struct VerificationReport {
    bool pass = false;
    std::size_t branches = 0;  // complete outcome assignments
    std::size_t verified = 0;
    std::size_t excluded = 0;
    double min_fidelity = 1;
    double total_probability = 0;
    std::optional<BranchResult> witness;  // first failing branch
    std::vector<BranchResult> results;
};

inline std::string format_outcomes(const std::vector<std::pair<std::string, bool>> &outcomes) {
    std::string out;
    for (const auto &[var, bit] : outcomes) {
        out += (out.empty() ? "" : " ") + var + "=" + (bit ? "1" : "0");
    }
    return out.empty() ? "(no measurements)" : out;
}

/// Runs the protocol on the reference state for every outcome assignment and
/// checks that the reference and the target end in the Bell pair (|00>+|11>)/sqrt2
/// as a pure factor.
inline VerificationReport enumerate_and_verify(const CodeSpec &code, const Protocol &p,
                                               const SimulationOptions &opt = {}) {
    if (p.n != code.n) {
        throw DimensionError("protocol and code sizes differ");
    }
    check_oracle_limit(code.n + 1, opt.oracle_limit);
    VerificationReport report;
    report.pass = true;
    const std::size_t r = code.n;
    const double s = 1 / std::sqrt(2.0);
    Eigen::Vector4cd bell(s, 0, 0, s);  // index bit0 = R, bit1 = target
    for_each_branch(
        p, reference_state_vector(code, opt.oracle_limit),
        [&](const ExecutionState &st) {
            Eigen::Matrix4cd rho = reduced_pair(st.state, r, p.target);
            BranchResult b;
            b.outcomes = st.outcomes;
            b.probability = st.probability;
            b.fidelity = std::sqrt(std::max(0.0, (bell.adjoint() * rho * bell)(0, 0).real()));
            b.purity = (rho * rho).trace().real();
            b.pass = b.fidelity >= 1 - opt.tolerance && b.purity >= 1 - opt.tolerance;
            report.branches++;
            report.verified++;
            report.total_probability += b.probability;
            report.min_fidelity = std::min(report.min_fidelity, b.fidelity);
            report.results.push_back(std::move(b));
        },
        [&](const ExecutionState &, std::size_t count) {
            report.branches += count;
            report.excluded += count;
        },
        opt);
    // Report branches in lexicographic order of the variable assignment.
    auto key = [](const BranchResult &b) {
        return std::map<std::string, bool>(b.outcomes.begin(), b.outcomes.end());
    };
    std::stable_sort(report.results.begin(), report.results.end(),
                     [&](const BranchResult &a, const BranchResult &b) { return key(a) < key(b); });
    for (const auto &b : report.results) {
        if (!b.pass) {
            report.pass = false;
            report.witness = b;
            break;
        }
    }
    if (std::abs(report.total_probability - 1) > opt.tolerance) {
        report.pass = false;
    }
    return report;
}

struct DecodingCheck {
    Eigen::Matrix2cd input;
    Eigen::Matrix2cd output;
    double trace_distance;
};

struct DecodingReport {
    bool pass = true;
    std::vector<DecodingCheck> checks;
};

/// |0>, |1>, |+>, |+i> as density matrices.
inline std::vector<Eigen::Matrix2cd> default_decoding_inputs() {
    std::vector<Eigen::Matrix2cd> out;
    const double s = 1 / std::sqrt(2.0);
    for (auto v : {Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1), Eigen::Vector2cd(s, s),
                   Eigen::Vector2cd(s, cplx(0, s))}) {
        out.push_back(v * v.adjoint());
    }
    return out;
}

inline double trace_distance(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Encodes each input density matrix into the code, runs every branch, and
/// compares the probability-weighted state of the target with the input.
inline DecodingReport verify_decoding_map(const CodeSpec &code, const Protocol &p,
                                          const std::vector<Eigen::Matrix2cd> &inputs = default_decoding_inputs(),
                                          const SimulationOptions &opt = {}) {
    check_oracle_limit(code.n, opt.oracle_limit);
    DecodingReport report;
    for (const auto &rho : inputs) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
        Eigen::Matrix2cd output = Eigen::Matrix2cd::Zero();
        for (int k = 0; k < 2; k++) {
            double weight = es.eigenvalues()(k);
            if (weight < 1e-15) {
                continue;
            }
            Eigen::Vector2cd v = es.eigenvectors().col(k);
            for_each_branch(
                p, logical_state_vector(code, v(0), v(1), opt.oracle_limit),
                [&](const ExecutionState &st) {
                    output += weight * st.probability * reduced_single(st.state, p.target);
                },
                [](const ExecutionState &, std::size_t) {}, opt);
        }
        double d = trace_distance(rho, output);
        report.checks.push_back({rho, output, d});
        if (d > opt.tolerance) {
            report.pass = false;
        }
    }
    return report;
}

struct LocalityViolation {
    std::size_t index;  // 0-based instruction index
    std::string kind;
    std::string detail;
};

/// Static checks: the reference never acts, every variable is measured once
/// before use, and each party only reads variables it has measured or received.
inline std::vector<LocalityViolation> locality_audit(const Protocol &p) {
    std::vector<LocalityViolation> out;
    std::map<std::size_t, std::set<std::string>> known;
    std::set<std::string> written;
    auto need = [&](std::size_t i, std::size_t party, const std::string &var) {
        if (!written.count(var)) {
            out.push_back({i, "unwritten-variable", var + " is read before any measurement writes it"});
        } else if (!known[party].count(var)) {
            out.push_back({i, "unreceived-variable",
                           "party " + party_label(party, p.n) + " reads " + var + " without having received it"});
        }
    };
    for (std::size_t i = 0; i < p.instructions.size(); i++) {
        const Instruction &ins = p.instructions[i];
        std::size_t party = party_of(ins);
        if (party >= p.n) {
            out.push_back({i, party == p.n ? "reference-acts" : "party-out-of-range",
                           "instruction for party " + party_label(party, p.n)});
            continue;
        }
        if (auto *m = std::get_if<Measure>(&ins)) {
            if (!written.insert(m->var).second) {
                out.push_back({i, "variable-rewritten", m->var + " is measured twice"});
            }
            known[party].insert(m->var);
        } else if (auto *b = std::get_if<Broadcast>(&ins)) {
            need(i, party, b->var);
            for (std::size_t to : b->to) {
                if (to >= p.n) {
                    out.push_back({i, "message-to-reference", "message for party " + party_label(to, p.n)});
                } else {
                    known[to].insert(b->var);
                }
            }
        } else if (auto *c = std::get_if<ConditionalPauli>(&ins)) {
            for (const auto &v : c->parity_of) {
                need(i, party, v);
            }
        } else if (auto *u = std::get_if<ConditionalUnitary>(&ins)) {
            need(i, party, u->var);
        }
    }
    return out;
}

}  // namespace locc
