#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "hierarchy.hpp"
#include "io.hpp"
#include "random.hpp"
#include "simulator.hpp"
#include "synthesis.hpp"

namespace locc {

namespace exit_code {
constexpr int ok = 0;
constexpr int infeasible = 1;
constexpr int verification_failed = 2;
constexpr int usage = 64;
constexpr int parse_error = 65;
constexpr int internal = 70;
}  // namespace exit_code

namespace cli_detail {

/// Bad command-line input detected after argument parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Writes to `path`, or to `out` when path is "-".
inline void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw UsageError("cannot write " + path);
    }
}

inline CodeSpec load_code(const std::string &path) {
    try {
        return parse_stab(read_file(path));
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.what(), 0, 0);
    }
}

/// "4,5,R" -> {3, 4, n}.
inline std::vector<std::size_t> parse_party_list(const std::string &text, std::size_t n) {
    std::vector<std::size_t> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        if (item == "R" || item == "r") {
            out.push_back(n);
            continue;
        }
        std::size_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoul(item, &used);
            if (used != item.size()) {
                v = 0;
            }
        } catch (const std::exception &) {
            v = 0;
        }
        if (v == 0 || v > n) {
            throw UsageError("party '" + item + "' is not in 1.." + std::to_string(n) + " or R");
        }
        out.push_back(v - 1);
    }
    return out;
}

inline SynthesisOptions synthesis_options(const std::string &hadamard, std::size_t n, bool simplify_output = true) {
    SynthesisOptions opt;
    opt.simplify = simplify_output;
    if (!hadamard.empty()) {
        opt.conversion.prefer_hadamard.assign(n + 1, false);
        for (std::size_t v : parse_party_list(hadamard, n)) {
            opt.conversion.prefer_hadamard[v] = true;
        }
    }
    return opt;
}

inline std::size_t target_index(std::size_t target, std::size_t n) {
    if (target == 0 || target > n) {
        throw UsageError("--target must be in 1.." + std::to_string(n));
    }
    return target - 1;
}

inline std::string set_string(const std::vector<std::size_t> &parties, std::size_t n) {
    std::string s = "{";
    for (std::size_t i = 0; i < parties.size(); i++) {
        s += (i ? "," : "") + party_label(parties[i], n);
    }
    return s + "}";
}

inline std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

inline std::string scientific(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(1) << v;
    return s.str();
}

inline void print_graph(const GraphStateDecomposition &d, std::size_t n, std::ostream &out) {
    out << "graph on parties 1.." << n << " and reference R: " << d.graph.edge_count() << " edges\n";
    out << "edges:";
    for (auto [u, v] : d.graph.edges()) {
        out << " " << party_label(u, n) << "-" << party_label(v, n);
    }
    out << "\nlocal Clifford layer (state = layer |G>):";
    if (d.layer.is_identity()) {
        out << " identity";
    }
    out << "\n";
    for (std::size_t q = 0; q <= n; q++) {
        if (!d.layer.get(q).is_identity()) {
            out << "  " << party_label(q, n) << ": " << d.layer.get(q).to_word() << "\n";
        }
    }
}

inline void print_infeasible(const Synthesis &s, std::size_t n, std::ostream &out) {
    out << "infeasible: party " << party_label(s.feasibility.target, n)
        << " is not connected to R in the graph state\n";
    out << "witness: parties " << set_string(s.feasibility.witness, n)
        << " hold a state that factors off the reference\n";
}

struct VerifyOutcome {
    bool pass = false;
    std::string summary;
};

/// Exhaustive verification plus decoding-map and locality checks.
inline VerifyOutcome run_verification(const CodeSpec &code, const Protocol &p, const SimulationOptions &opt,
                                      std::ostream &out, VerificationReport *report_out = nullptr) {
    VerifyOutcome result;
    auto violations = locality_audit(p);
    for (const auto &v : violations) {
        out << "locality violation at instruction " << (v.index + 1) << " (" << v.kind << "): " << v.detail << "\n";
    }
    if (!violations.empty()) {
        result.summary = "fail: protocol is not local";
        return result;
    }
    out << "locality audit: ok\n";
    VerificationReport report = enumerate_and_verify(code, p, opt);
    out << "branches: " << report.branches << " (" << report.verified << " verified, " << report.excluded
        << " excluded)\n";
    out << "min fidelity: " << fixed(report.min_fidelity, 9) << "\n";
    out << "total probability: " << fixed(report.total_probability, 9) << "\n";
    DecodingReport decoding = verify_decoding_map(code, p, default_decoding_inputs(), opt);
    double worst = 0;
    for (const auto &c : decoding.checks) {
        worst = std::max(worst, c.trace_distance);
    }
    out << "decoding map: " << (decoding.pass ? "pass" : "fail") << " (max trace distance " << scientific(worst)
        << ")\n";
    result.pass = report.pass && decoding.pass;
    if (result.pass) {
        result.summary = "all " + std::to_string(report.verified) + " branches pass";
    } else if (report.witness) {
        result.summary = "fail: branch " + format_outcomes(report.witness->outcomes) + " has fidelity " +
                         fixed(report.witness->fidelity, 9);
    } else {
        result.summary = "fail: decoding map differs from the identity";
    }
    if (report_out) {
        *report_out = std::move(report);
    }
    return result;
}

inline int run_demo_code(const CodeSpec &code, const SynthesisOptions &sopt, const std::vector<std::size_t> &targets,
                         const SimulationOptions &opt, std::ostream &out) {
    bool all_pass = true;
    for (std::size_t t : targets) {
        Synthesis s = synthesize_extraction(code, t, sopt);
        if (!s.protocol) {
            print_infeasible(s, code.n, out);
            all_pass = false;
            continue;
        }
        out << to_listing(*s.protocol);
        VerifyOutcome v = run_verification(code, *s.protocol, opt, out);
        out << "verdict: " << v.summary << "\n";
        all_pass &= v.pass;
    }
    return all_pass ? exit_code::ok : exit_code::verification_failed;
}

}  // namespace cli_detail

/// Entry point of the locc-extract tool. Writes normal output to `out` and
/// diagnostics to `err`; returns the process exit code.
inline int cmd_dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    using namespace cli_detail;
    CLI::App app{"Synthesise and verify LOCC protocols that extract an encoded qubit to one party"};
    app.name("locc-extract");
    app.require_subcommand(1);

    std::string file;
    std::size_t target = 0;
    std::string hadamard;
    std::size_t oracle_limit = default_oracle_limit;
    auto add_file = [&](CLI::App *sub) { sub->add_option("file", file, "stabilizer code file (.stab)")->required(); };
    auto add_frame = [&](CLI::App *sub) {
        sub->add_option("--hadamard", hadamard, "parties whose graph column prefers a Hadamard pivot, e.g. 4,5,R");
    };

    CLI::App *graph_cmd = app.add_subcommand("graph", "print the graph state of the reference state");
    add_file(graph_cmd);
    add_frame(graph_cmd);
    std::string dot_path;
    graph_cmd->add_option("--dot", dot_path, "write Graphviz DOT to this path ('-' for stdout)");

    CLI::App *synth_cmd = app.add_subcommand("synth", "synthesise an extraction protocol");
    add_file(synth_cmd);
    add_frame(synth_cmd);
    synth_cmd->add_option("--target,-t", target, "receiving party (1-based)")->required();
    std::string json_path;
    synth_cmd->add_option("--json", json_path, "write the protocol as JSON to this path ('-' for stdout)");
    bool no_simplify = false;
    synth_cmd->add_flag("--no-simplify", no_simplify, "keep the unsimplified instruction list");

    CLI::App *verify_cmd = app.add_subcommand("verify", "synthesise and verify over every measurement branch");
    add_file(verify_cmd);
    add_frame(verify_cmd);
    verify_cmd->add_option("--target,-t", target, "receiving party (1-based)")->required();
    std::string protocol_path;
    verify_cmd->add_option("--protocol", protocol_path, "verify this protocol JSON instead of synthesising one");
    std::string report_path;
    verify_cmd->add_option("--json", report_path, "write the verification report as JSON ('-' for stdout)");
    verify_cmd->add_option("--oracle-limit", oracle_limit, "largest statevector size in qubits");
    verify_cmd->add_flag("--no-simplify", no_simplify, "verify the unsimplified instruction list");

    CLI::App *hierarchy_cmd = app.add_subcommand("hierarchy", "required cooperating parties per target on a tree");
    add_file(hierarchy_cmd);
    add_frame(hierarchy_cmd);

    CLI::App *demo_cmd = app.add_subcommand("demo", "run a built-in example end to end");
    std::string demo_name;
    std::size_t demo_size = 4;
    demo_cmd->add_option("name", demo_name, "five-qubit | repetition | line5 | ghz")
        ->required()
        ->check(CLI::IsMember({"five-qubit", "repetition", "line5", "ghz"}));
    demo_cmd->add_option("size", demo_size, "number of qubits for ghz")->check(CLI::Range(2, 12));
    demo_cmd->add_option("--oracle-limit", oracle_limit, "largest statevector size in qubits");

    CLI::App *random_cmd = app.add_subcommand("random", "print a random valid code as a .stab file");
    std::size_t qubits = 5;
    std::uint64_t seed = 1;
    double edge_probability = 0.5;
    random_cmd->add_option("--qubits,-n", qubits, "number of physical qubits")->check(CLI::Range(1, 4096));
    random_cmd->add_option("--seed,-s", seed, "random seed");
    random_cmd->add_option("--edge-probability", edge_probability, "edge density of the underlying graph")
        ->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? exit_code::ok : exit_code::usage;
    }

    SimulationOptions sim;
    sim.oracle_limit = oracle_limit;
    try {
        if (graph_cmd->parsed()) {
            CodeSpec code = load_code(file);
            auto opt = synthesis_options(hadamard, code.n);
            GraphStateDecomposition d = to_graph_state(reference_stabilizer(code), opt.conversion);
            print_graph(d, code.n, out);
            if (!dot_path.empty()) {
                write_output(dot_path, to_dot(d.graph, code.n), out);
            }
            return exit_code::ok;
        }
        if (synth_cmd->parsed()) {
            CodeSpec code = load_code(file);
            Synthesis s = synthesize_extraction(code, target_index(target, code.n),
                                                synthesis_options(hadamard, code.n, !no_simplify));
            if (!s.protocol) {
                print_infeasible(s, code.n, out);
                return exit_code::infeasible;
            }
            out << to_listing(*s.protocol);
            if (!json_path.empty()) {
                write_output(json_path, export_protocol_json(*s.protocol), out);
            }
            return exit_code::ok;
        }
        if (verify_cmd->parsed()) {
            CodeSpec code = load_code(file);
            std::size_t t = target_index(target, code.n);
            Protocol p;
            if (!protocol_path.empty()) {
                p = import_protocol_json(read_file(protocol_path));
                if (p.n != code.n || p.target != t) {
                    throw UsageError("protocol is for party " + std::to_string(p.target + 1) + " of " +
                                     std::to_string(p.n) + ", not party " + std::to_string(target) + " of " +
                                     std::to_string(code.n));
                }
            } else {
                Synthesis s = synthesize_extraction(code, t, synthesis_options(hadamard, code.n, !no_simplify));
                if (!s.protocol) {
                    print_infeasible(s, code.n, out);
                    return exit_code::infeasible;
                }
                p = *s.protocol;
            }
            out << to_listing(p);
            VerificationReport report;
            VerifyOutcome v = run_verification(code, p, sim, out, &report);
            out << "verdict: " << v.summary << "\n";
            if (!report_path.empty()) {
                write_output(report_path, report_to_json(report).dump(2) + "\n", out);
            }
            return v.pass ? exit_code::ok : exit_code::verification_failed;
        }
        if (hierarchy_cmd->parsed()) {
            CodeSpec code = load_code(file);
            auto opt = synthesis_options(hadamard, code.n);
            GraphStateDecomposition d = to_graph_state(reference_stabilizer(code), opt.conversion);
            out << "edges:";
            for (auto [u, v] : d.graph.edges()) {
                out << " " << party_label(u, code.n) << "-" << party_label(v, code.n);
            }
            out << "\n" << to_table(hierarchy_report(d.graph));
            return exit_code::ok;
        }
        if (demo_cmd->parsed()) {
            if (demo_name == "five-qubit") {
                CodeSpec code = five_qubit_code();
                SynthesisOptions opt = synthesis_options("4,5,R", code.n);
                out << "five-qubit code XZZXI, IXZZX, XIXZZ, ZXIXZ; extracting to party 1\n";
                print_graph(to_graph_state(reference_stabilizer(code), opt.conversion), code.n, out);
                return run_demo_code(code, opt, {0}, sim, out);
            }
            if (demo_name == "repetition") {
                out << "two-qubit repetition code ZZ; extracting to party 1\n";
                return run_demo_code(repetition_code(), {}, {0}, sim, out);
            }
            CodeSpec code = demo_name == "line5" ? line_code(4) : ghz_code(demo_size);
            GraphStateDecomposition d = to_graph_state(reference_stabilizer(code));
            out << (demo_name == "line5" ? "line R-1-2-3-4" : "GHZ code on " + std::to_string(code.n) + " qubits")
                << "\n";
            print_graph(d, code.n, out);
            out << to_table(hierarchy_report(d.graph));
            std::vector<std::size_t> targets(code.n);
            for (std::size_t t = 0; t < code.n; t++) {
                targets[t] = t;
            }
            return run_demo_code(code, {}, targets, sim, out);
        }
        if (random_cmd->parsed()) {
            Rng rng(seed);
            out << "# random code, seed " << seed << "\n" << serialize_stab(random_code(qubits, rng, edge_probability));
            return exit_code::ok;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::parse_error;
    } catch (const InvalidCode &e) {
        err << "invalid code: " << e.what() << "\n";
        return exit_code::parse_error;
    } catch (const InvalidTableau &e) {
        err << "invalid code: " << e.what() << "\n";
        return exit_code::parse_error;
    } catch (const UnsupportedTopology &e) {
        err << "unsupported: " << e.what() << "\n";
        return exit_code::infeasible;
    } catch (const OracleLimitError &e) {
        err << "error: " << e.what() << " (raise --oracle-limit)\n";
        return exit_code::usage;
    } catch (const ProtocolOrderError &e) {
        err << "protocol error: " << e.what() << "\n";
        return exit_code::verification_failed;
    } catch (const InvalidOperand &e) {
        err << "invalid protocol: " << e.what() << "\n";
        return exit_code::verification_failed;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
    return exit_code::usage;
}

inline int cmd_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"locc-extract"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return cmd_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace locc
