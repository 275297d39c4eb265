#pragma once

#include <cctype>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "pauli.hpp"
#include "protocol.hpp"
#include "simulator.hpp"
#include "stabilizer.hpp"

namespace locc {

namespace detail {

inline std::string_view trim(std::string_view s, std::size_t &offset) {
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) {
        b++;
    }
    std::size_t e = s.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        e--;
    }
    offset += b;
    return s.substr(b, e - b);
}

}  // namespace detail

/// Parses the .stab text format:
///
///     # comment
///     qubits: 5
///     generator: XZZXI
///     logical_x: XXXXX     (optional, together with logical_z)
///     logical_z: ZZZZZ
///
/// Missing logicals are derived with standard_form_logicals.
inline CodeSpec parse_stab(std::string_view text) {
    std::optional<std::size_t> n;
    std::size_t qubits_line = 0;
    std::vector<PauliString> gens;
    std::optional<PauliString> lx, lz;
    std::size_t lx_line = 0, lz_line = 0;
    std::size_t line_no = 0;
    std::size_t last_line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::size_t col = 0;
        std::string_view body = detail::trim(line, col);
        if (body.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        last_line = line_no;
        std::size_t colon = body.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("expected 'key: value'", line_no, col + 1);
        }
        std::size_t key_col = col;
        std::string_view key = detail::trim(body.substr(0, colon), key_col);
        std::size_t value_col = col + colon + 1;
        std::string_view value = detail::trim(body.substr(colon + 1), value_col);
        if (key == "qubits") {
            if (n) {
                throw ParseError("duplicate qubits line", line_no, key_col + 1);
            }
            std::size_t v = 0;
            if (value.empty()) {
                throw ParseError("qubit count must be a positive integer", line_no, value_col + 1);
            }
            for (std::size_t i = 0; i < value.size(); i++) {
                if (!std::isdigit(static_cast<unsigned char>(value[i])) || v > 1'000'000) {
                    throw ParseError("qubit count must be a positive integer", line_no, value_col + i + 1);
                }
                v = v * 10 + static_cast<std::size_t>(value[i] - '0');
            }
            if (v == 0) {
                throw ParseError("qubit count must be a positive integer", line_no, value_col + 1);
            }
            n = v;
            qubits_line = line_no;
            continue;
        }
        if (key != "generator" && key != "logical_x" && key != "logical_z") {
            throw ParseError("unknown key '" + std::string(key) + "'", line_no, key_col + 1);
        }
        if (!n) {
            throw ParseError("qubits line must come before Pauli strings", line_no, key_col + 1);
        }
        PauliString p;
        try {
            p = PauliString::parse(value);
        } catch (const ParseError &e) {
            std::string what = e.what();
            std::size_t strip = what.find(": ");
            throw ParseError(strip == std::string::npos ? what : what.substr(strip + 2), line_no,
                             value_col + e.column());
        }
        if (p.size() != *n) {
            throw ParseError("Pauli string has length " + std::to_string(p.size()) + ", expected " +
                                 std::to_string(*n),
                             line_no, value_col + 1);
        }
        if (!p.is_hermitian()) {
            throw ParseError("Pauli string must have sign + or -", line_no, value_col + 1);
        }
        if (key == "generator") {
            gens.push_back(std::move(p));
        } else if (key == "logical_x") {
            if (lx) {
                throw ParseError("duplicate logical_x line", line_no, key_col + 1);
            }
            lx = std::move(p);
            lx_line = line_no;
        } else {
            if (lz) {
                throw ParseError("duplicate logical_z line", line_no, key_col + 1);
            }
            lz = std::move(p);
            lz_line = line_no;
        }
        if (end == text.size()) {
            break;
        }
    }
    if (!n) {
        throw ParseError("missing qubits line", line_no == 0 ? 1 : line_no, 1);
    }
    if (gens.size() + 1 != *n) {
        throw ParseError("expected " + std::to_string(*n - 1) + " generators for " + std::to_string(*n) +
                             " qubits, found " + std::to_string(gens.size()),
                         gens.empty() ? qubits_line : last_line, 1);
    }
    if (lx.has_value() != lz.has_value()) {
        throw ParseError("logical_x and logical_z must be given together", lx ? lx_line : lz_line, 1);
    }
    CodeSpec code;
    code.n = *n;
    code.generators = std::move(gens);
    if (lx) {
        code.logical_x = *lx;
        code.logical_z = *lz;
    } else if (code.n == 1) {
        code.logical_x = PauliString::parse("X");
        code.logical_z = PauliString::parse("Z");
    } else {
        auto [x, z] = standard_form_logicals(code.generators);
        code.logical_x = x;
        code.logical_z = z;
    }
    validate_code(code);
    return code;
}

inline std::string serialize_stab(const CodeSpec &code) {
    std::ostringstream out;
    out << "qubits: " << code.n << "\n";
    for (const auto &g : code.generators) {
        out << "generator: " << g.to_string() << "\n";
    }
    out << "logical_x: " << code.logical_x.to_string() << "\n";
    out << "logical_z: " << code.logical_z.to_string() << "\n";
    return out.str();
}

constexpr int protocol_json_version = 1;

inline nlohmann::ordered_json protocol_to_json(const Protocol &p) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["version"] = protocol_json_version;
    j["n"] = p.n;
    j["target"] = p.target + 1;
    ordered_json coop = ordered_json::array();
    for (std::size_t c : p.cooperating) {
        coop.push_back(c + 1);
    }
    j["cooperating"] = coop;
    ordered_json list = ordered_json::array();
    for (const auto &ins : p.instructions) {
        ordered_json o;
        if (auto *a = std::get_if<ApplyLocal>(&ins)) {
            o["op"] = "apply";
            o["party"] = a->party + 1;
            o["unitary"] = a->unitary.to_word();
        } else if (auto *m = std::get_if<Measure>(&ins)) {
            o["op"] = "measure";
            o["party"] = m->party + 1;
            o["basis"] = std::string(1, basis_letter(m->basis));
            o["var"] = m->var;
        } else if (auto *b = std::get_if<Broadcast>(&ins)) {
            o["op"] = "broadcast";
            o["party"] = b->party + 1;
            o["var"] = b->var;
            ordered_json to = ordered_json::array();
            for (std::size_t t : b->to) {
                to.push_back(t + 1);
            }
            o["to"] = to;
        } else if (auto *c = std::get_if<ConditionalPauli>(&ins)) {
            o["op"] = "cond_pauli";
            o["party"] = c->party + 1;
            o["unitary"] = std::string(1, c->pauli);
            o["parity_of"] = c->parity_of;
        } else if (auto *u = std::get_if<ConditionalUnitary>(&ins)) {
            o["op"] = "cond_unitary";
            o["party"] = u->party + 1;
            o["var"] = u->var;
            o["then"] = u->then_unitary.to_word();
            o["else"] = u->else_unitary.to_word();
        }
        list.push_back(std::move(o));
    }
    j["instructions"] = list;
    return j;
}

inline std::string export_protocol_json(const Protocol &p) { return protocol_to_json(p).dump(2) + "\n"; }

/// Inverse of export_protocol_json. Throws ParseError on malformed JSON or schema violations.
inline Protocol import_protocol_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("protocol JSON: ") + e.what(), 0, 0);
    }
    auto fail = [](const std::string &what) -> void { throw ParseError("protocol JSON: " + what, 0, 0); };
    auto get_party = [&](const nlohmann::json &o, const char *key, std::size_t n) -> std::size_t {
        if (!o.contains(key) || !o[key].is_number_unsigned()) {
            fail(std::string("missing or invalid '") + key + "'");
        }
        std::size_t v = o[key].get<std::size_t>();
        if (v == 0 || v > n) {
            fail(std::string("'") + key + "' out of range");
        }
        return v - 1;
    };
    auto get_string = [&](const nlohmann::json &o, const char *key) -> std::string {
        if (!o.contains(key) || !o[key].is_string()) {
            fail(std::string("missing or invalid '") + key + "'");
        }
        return o[key].get<std::string>();
    };
    auto get_word = [&](const nlohmann::json &o, const char *key) {
        try {
            return SingleQubitUnitary::parse_word(get_string(o, key));
        } catch (const ParseError &e) {
            throw ParseError(std::string("protocol JSON: '") + key + "': " + e.what(), 0, 0);
        }
    };
    if (!j.is_object()) {
        fail("top level must be an object");
    }
    if (!j.contains("version") || j["version"] != protocol_json_version) {
        fail("unsupported version");
    }
    if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0) {
        fail("missing or invalid 'n'");
    }
    Protocol p;
    p.n = j["n"].get<std::size_t>();
    p.target = get_party(j, "target", p.n);
    if (!j.contains("instructions") || !j["instructions"].is_array()) {
        fail("missing 'instructions' array");
    }
    for (const auto &o : j["instructions"]) {
        if (!o.is_object()) {
            fail("instruction must be an object");
        }
        std::string op = get_string(o, "op");
        std::size_t party = get_party(o, "party", p.n);
        if (op == "apply") {
            p.instructions.push_back(ApplyLocal{party, get_word(o, "unitary")});
        } else if (op == "measure") {
            std::string b = get_string(o, "basis");
            if (b != "X" && b != "Y" && b != "Z") {
                fail("basis must be X, Y or Z");
            }
            PauliBasis basis = b == "X" ? PauliBasis::X : (b == "Y" ? PauliBasis::Y : PauliBasis::Z);
            p.instructions.push_back(Measure{party, basis, get_string(o, "var")});
        } else if (op == "broadcast") {
            if (!o.contains("to") || !o["to"].is_array()) {
                fail("broadcast needs a 'to' array");
            }
            std::vector<std::size_t> to;
            for (const auto &t : o["to"]) {
                if (!t.is_number_unsigned() || t.get<std::size_t>() == 0 || t.get<std::size_t>() > p.n) {
                    fail("broadcast recipient out of range");
                }
                to.push_back(t.get<std::size_t>() - 1);
            }
            p.instructions.push_back(Broadcast{party, get_string(o, "var"), to});
        } else if (op == "cond_pauli") {
            std::string u = get_string(o, "unitary");
            if (u != "X" && u != "Y" && u != "Z") {
                fail("cond_pauli unitary must be X, Y or Z");
            }
            if (!o.contains("parity_of") || !o["parity_of"].is_array()) {
                fail("cond_pauli needs a 'parity_of' array");
            }
            std::vector<std::string> vars;
            for (const auto &v : o["parity_of"]) {
                if (!v.is_string()) {
                    fail("parity_of entries must be strings");
                }
                vars.push_back(v.get<std::string>());
            }
            p.instructions.push_back(ConditionalPauli{party, u[0], vars});
        } else if (op == "cond_unitary") {
            p.instructions.push_back(
                ConditionalUnitary{party, get_string(o, "var"), get_word(o, "then"), get_word(o, "else")});
        } else {
            fail("unknown op '" + op + "'");
        }
    }
    p.cooperating = cooperating_set(p.instructions, p.target);
    if (j.contains("cooperating")) {
        std::vector<std::size_t> listed;
        for (const auto &c : j["cooperating"]) {
            if (!c.is_number_unsigned()) {
                fail("cooperating entries must be party numbers");
            }
            listed.push_back(c.get<std::size_t>() - 1);
        }
        if (listed != p.cooperating) {
            fail("'cooperating' does not match the instruction parties");
        }
    }
    return p;
}

inline nlohmann::ordered_json outcomes_to_json(const std::vector<std::pair<std::string, bool>> &outcomes) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto &[var, bit] : outcomes) {
        o[var] = bit ? 1 : 0;
    }
    return o;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport &r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["branches"] = r.branches;
    j["verified"] = r.verified;
    j["excluded"] = r.excluded;
    j["min_fidelity"] = r.min_fidelity;
    j["total_probability"] = r.total_probability;
    if (r.witness) {
        j["witness"] = {{"outcomes", outcomes_to_json(r.witness->outcomes)},
                        {"probability", r.witness->probability},
                        {"fidelity", r.witness->fidelity}};
    } else {
        j["witness"] = nullptr;
    }
    ordered_json list = ordered_json::array();
    for (const auto &b : r.results) {
        list.push_back({{"outcomes", outcomes_to_json(b.outcomes)},
                        {"probability", b.probability},
                        {"fidelity", b.fidelity},
                        {"pass", b.pass}});
    }
    j["results"] = list;
    return j;
}

}  // namespace locc
