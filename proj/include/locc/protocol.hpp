#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "graph.hpp"
#include "unitary.hpp"

namespace locc {

// Parties are 0-based qubit indices of the code block; the reference is index n
// and never appears as an acting party. Outcome bit 0 is the +1 eigenvalue.

struct ApplyLocal {
    std::size_t party;
    SingleQubitUnitary unitary;
};

struct Measure {
    std::size_t party;
    PauliBasis basis;
    std::string var;
};

struct Broadcast {
    std::size_t party;
    std::string var;
    std::vector<std::size_t> to;
};

/// Applies `pauli` when the XOR of the listed variables is 1.
struct ConditionalPauli {
    std::size_t party;
    char pauli;
    std::vector<std::string> parity_of;
};

/// Applies `then_unitary` when var is 1, `else_unitary` when it is 0.
struct ConditionalUnitary {
    std::size_t party;
    std::string var;
    SingleQubitUnitary then_unitary;
    SingleQubitUnitary else_unitary;
};

using Instruction = std::variant<ApplyLocal, Measure, Broadcast, ConditionalPauli, ConditionalUnitary>;

inline std::size_t party_of(const Instruction &ins) {
    return std::visit([](const auto &i) { return i.party; }, ins);
}

/// True for instructions that act on the party's qubit.
inline bool is_quantum(const Instruction &ins) { return !std::holds_alternative<Broadcast>(ins); }

struct Protocol {
    std::size_t n = 0;
    std::size_t target = 0;
    /// Parties that act, plus the target. Sorted.
    std::vector<std::size_t> cooperating;
    std::vector<Instruction> instructions;
};

inline std::vector<std::size_t> acting_parties(const std::vector<Instruction> &instructions) {
    std::set<std::size_t> s;
    for (const auto &ins : instructions) {
        s.insert(party_of(ins));
    }
    return {s.begin(), s.end()};
}

inline std::vector<std::size_t> cooperating_set(const std::vector<Instruction> &instructions, std::size_t target) {
    std::set<std::size_t> s;
    for (const auto &ins : instructions) {
        s.insert(party_of(ins));
    }
    s.insert(target);
    return {s.begin(), s.end()};
}

inline std::string party_label(std::size_t party, std::size_t n) {
    return party == n ? std::string("R") : std::to_string(party + 1);
}

inline std::string describe(const Instruction &ins, std::size_t n) {
    std::ostringstream out;
    out << "party " << party_label(party_of(ins), n) << ": ";
    if (auto *a = std::get_if<ApplyLocal>(&ins)) {
        out << "apply " << a->unitary.to_word();
    } else if (auto *m = std::get_if<Measure>(&ins)) {
        out << "measure " << basis_letter(m->basis) << " -> " << m->var;
    } else if (auto *b = std::get_if<Broadcast>(&ins)) {
        out << "send " << b->var << " to {";
        for (std::size_t i = 0; i < b->to.size(); i++) {
            out << (i ? "," : "") << party_label(b->to[i], n);
        }
        out << "}";
    } else if (auto *c = std::get_if<ConditionalPauli>(&ins)) {
        out << "if ";
        for (std::size_t i = 0; i < c->parity_of.size(); i++) {
            out << (i ? " ^ " : "") << c->parity_of[i];
        }
        out << " apply " << c->pauli;
    } else if (auto *u = std::get_if<ConditionalUnitary>(&ins)) {
        out << "if " << u->var << " apply " << u->then_unitary.to_word() << " else " << u->else_unitary.to_word();
    }
    return out.str();
}

/// Human-readable listing, one numbered instruction per line.
inline std::string to_listing(const Protocol &p) {
    std::ostringstream out;
    out << "extract to party " << party_label(p.target, p.n) << " of " << p.n << "; cooperating {";
    for (std::size_t i = 0; i < p.cooperating.size(); i++) {
        out << (i ? "," : "") << party_label(p.cooperating[i], p.n);
    }
    out << "}\n";
    for (std::size_t i = 0; i < p.instructions.size(); i++) {
        out << "  " << (i + 1) << ". " << describe(p.instructions[i], p.n) << "\n";
    }
    return out.str();
}

namespace detail {

inline std::optional<Instruction> normalize_unitary(const Instruction &ins) {
    if (auto *a = std::get_if<ApplyLocal>(&ins)) {
        if (a->unitary.is_identity_up_to_phase()) {
            return std::nullopt;
        }
        return ins;
    }
    if (auto *u = std::get_if<ConditionalUnitary>(&ins)) {
        if (u->then_unitary.equal_up_to_phase(u->else_unitary)) {
            return normalize_unitary(ApplyLocal{u->party, u->else_unitary});
        }
        if (u->else_unitary.is_identity_up_to_phase()) {
            char p = u->then_unitary.as_pauli_up_to_phase();
            if (p != '\0') {
                return ConditionalPauli{u->party, p, {u->var}};
            }
        }
    }
    return ins;
}

/// Fuses `later` (acting after `earlier`) on the same party. Both must be ApplyLocal or ConditionalUnitary.
inline std::optional<Instruction> fuse(const Instruction &earlier, const Instruction &later) {
    auto *ea = std::get_if<ApplyLocal>(&earlier);
    auto *la = std::get_if<ApplyLocal>(&later);
    auto *eu = std::get_if<ConditionalUnitary>(&earlier);
    auto *lu = std::get_if<ConditionalUnitary>(&later);
    if (ea && la) {
        return ApplyLocal{la->party, la->unitary * ea->unitary};
    }
    if (ea && lu) {
        return ConditionalUnitary{lu->party, lu->var, lu->then_unitary * ea->unitary, lu->else_unitary * ea->unitary};
    }
    if (eu && la) {
        return ConditionalUnitary{eu->party, eu->var, la->unitary * eu->then_unitary, la->unitary * eu->else_unitary};
    }
    if (eu && lu && eu->var == lu->var) {
        return ConditionalUnitary{lu->party, lu->var, lu->then_unitary * eu->then_unitary,
                                  lu->else_unitary * eu->else_unitary};
    }
    return std::nullopt;
}

inline bool is_unitary_step(const Instruction &ins) {
    return std::holds_alternative<ApplyLocal>(ins) || std::holds_alternative<ConditionalUnitary>(ins);
}

/// One fusion sweep. Returns true if anything changed.
inline bool fuse_pass(std::vector<Instruction> &ins) {
    bool changed = false;
    std::vector<std::optional<Instruction>> slots(ins.begin(), ins.end());
    std::map<std::size_t, std::size_t> pending;  // party -> slot of its last unitary step
    for (std::size_t i = 0; i < slots.size(); i++) {
        const Instruction &cur = *slots[i];
        std::size_t party = party_of(cur);
        if (!is_unitary_step(cur)) {
            if (is_quantum(cur)) {
                pending.erase(party);
            }
            continue;
        }
        auto it = pending.find(party);
        if (it != pending.end()) {
            if (auto fused = fuse(*slots[it->second], cur)) {
                slots[it->second].reset();
                slots[i] = *fused;
                changed = true;
            }
        }
        pending[party] = i;
    }
    std::vector<Instruction> out;
    for (auto &s : slots) {
        if (!s) {
            continue;
        }
        auto norm = normalize_unitary(*s);
        if (!norm) {
            changed = true;
            continue;
        }
        if (norm->index() != s->index()) {
            changed = true;
        }
        out.push_back(*norm);
    }
    ins = std::move(out);
    return changed;
}

/// Absorbs "apply U; measure B" into "measure U^dag B U" when the sign is +1 and
/// the measured qubit is not touched again.
inline bool fold_pass(std::vector<Instruction> &ins) {
    for (std::size_t i = 0; i < ins.size(); i++) {
        auto *a = std::get_if<ApplyLocal>(&ins[i]);
        if (!a) {
            continue;
        }
        std::size_t next = i + 1;
        while (next < ins.size() && (party_of(ins[next]) != a->party || !is_quantum(ins[next]))) {
            next++;
        }
        if (next == ins.size()) {
            continue;
        }
        auto *m = std::get_if<Measure>(&ins[next]);
        if (!m) {
            continue;
        }
        bool touched_later = false;
        for (std::size_t k = next + 1; k < ins.size(); k++) {
            touched_later |= party_of(ins[k]) == a->party && is_quantum(ins[k]);
        }
        if (touched_later) {
            continue;
        }
        SignedPauli img = a->unitary.dagger().conjugate_pauli(basis_letter(m->basis));
        if (img.sign < 0) {
            continue;
        }
        m->basis = img.letter == 'X' ? PauliBasis::X : (img.letter == 'Y' ? PauliBasis::Y : PauliBasis::Z);
        ins.erase(ins.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
    }
    return false;
}

}  // namespace detail

/// Peephole simplification to a fixed point: fuse adjacent local unitaries of a
/// party, drop identities, turn Pauli-valued conditionals into ConditionalPauli,
/// and absorb a unitary into the following measurement basis.
inline std::vector<Instruction> simplify(std::vector<Instruction> ins) {
    while (detail::fuse_pass(ins) || detail::fold_pass(ins)) {
    }
    return ins;
}

}  // namespace locc
