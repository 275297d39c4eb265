// Acceptance checks: prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "locc/catalog.hpp"
#include "locc/hierarchy.hpp"
#include "locc/oracle.hpp"
#include "locc/random.hpp"
#include "locc/simulator.hpp"
#include "locc/synthesis.hpp"

using namespace locc;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v, int digits = 3) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

/// Distance between a and b after removing the best global phase.
double phase_distance(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx ip = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        ip += std::conj(b[i]) * a[i];
    }
    cplx phase = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1);
    double d = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        d = std::max(d, std::abs(a[i] - phase * b[i]));
    }
    return d;
}

double branch_norm(const std::vector<cplx> &v) {
    double s = 0;
    for (auto c : v) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------

Verdict five_qubit_end_to_end() {
    Verdict v;
    CodeSpec code = five_qubit_code();

    auto start = Clock::now();
    Synthesis s = synthesize_extraction(code, 0);
    VerificationReport report = enumerate_and_verify(code, *s.protocol);
    double elapsed = seconds_since(start);
    v.require(report.pass, "default frame: verification failed");
    v.require(report.verified == 16 && report.excluded == 0,
              "default frame: expected 16 nonzero branches, got " + std::to_string(report.verified));
    v.require(report.min_fidelity >= 1 - 1e-9, "default frame: min fidelity " + num(report.min_fidelity, 12));
    v.require(elapsed < 1.0, "runtime " + num(elapsed) + " s");

    // Frame with Hadamard pivots on 4, 5 and R, where parties 4 and 5 undo an H layer.
    SynthesisOptions opt;
    opt.conversion.prefer_hadamard = {false, false, false, true, true, true};
    Synthesis hs = synthesize_extraction(code, 0, opt);
    VerificationReport hreport = enumerate_and_verify(code, *hs.protocol);
    v.require(hreport.pass && hreport.verified == 16, "Hadamard frame: verification failed");
    v.require(hs.path == std::vector<std::size_t>{0, 1, 5}, "Hadamard frame: path is not 1-2-R");

    opt.simplify = false;
    Synthesis us = synthesize_extraction(code, 0, opt);
    const Protocol &p = *us.protocol;
    const std::size_t r = code.n;
    const std::map<std::string, bool> forced{{"m3", true}, {"m4", false}, {"m5", false}, {"x2", false}};

    // m_l counts the outcome-1 parties among {3,4,5} adjacent to l.
    auto count = [&](std::size_t l) {
        int c = 0;
        for (std::size_t u : {2u, 3u, 4u}) {
            c += us.decomposition.graph.has_edge(u, l) && forced.at("m" + std::to_string(u + 1));
        }
        return c;
    };
    v.require(count(0) == 1 && count(1) == 1 && count(r) == 0,
              "counts m1,m2,mR = " + std::to_string(count(0)) + "," + std::to_string(count(1)) + "," +
                  std::to_string(count(r)));

    ExecutionState st;
    st.state = reference_state_vector(code);
    std::size_t last_z = 0, first_x = 0;
    for (std::size_t i = 0; i < p.instructions.size(); i++) {
        if (auto *m = std::get_if<Measure>(&p.instructions[i])) {
            if (m->basis == PauliBasis::Z) {
                last_z = i;
            } else if (first_x == 0) {
                first_x = i;
            }
        }
    }
    v.require(first_x > last_z, "Z measurements do not precede the X measurement");

    // Parities read by the Z corrections on parties 1 and 2, and by the final one on 1.
    std::vector<std::pair<std::size_t, bool>> parities;
    auto slice_r12 = [&](const StateVector &sv) {
        std::vector<cplx> out(8);
        for (std::size_t rb = 0; rb < 2; rb++) {
            for (std::size_t a = 0; a < 2; a++) {
                for (std::size_t b = 0; b < 2; b++) {
                    std::size_t idx = a | (b << 1) | (1u << 2) | (rb << r);
                    out[rb * 4 + a * 2 + b] = sv[idx];
                }
            }
        }
        return out;
    };
    const double h = 0.5;
    const std::vector<cplx> after_z{0, h, 0, h, h, 0, -h, 0};    // |ab> = |q1 q2>
    const std::vector<cplx> after_fix{0, -h, 0, h, h, 0, h, 0};
    const double s2 = 1 / std::sqrt(2.0);
    const std::vector<cplx> after_x{-h, h, h, h};  // index 2 * R + q1
    for (std::size_t i = 0; i < p.instructions.size(); i++) {
        const Instruction &ins = p.instructions[i];
        bool outcome = false;
        if (auto *m = std::get_if<Measure>(&ins)) {
            outcome = forced.at(m->var);
        }
        if (auto *c = std::get_if<ConditionalPauli>(&ins)) {
            bool parity = false;
            for (const auto &var : c->parity_of) {
                parity ^= forced.at(var);
            }
            parities.emplace_back(c->party, parity);
        }
        if (!execute_instruction(st, ins, code.n, outcome)) {
            v.require(false, "forced branch has zero probability");
            return v;
        }
        if (i == last_z) {
            auto slice = slice_r12(st.state);
            v.require(std::abs(branch_norm(slice) - 1) < 1e-9, "state after Z measurements is not a product");
            double d = phase_distance(slice, after_z);
            v.require(d < 1e-9, "state after Z measurements differs by " + num(d));
        }
        if (i + 1 == first_x) {
            double d = phase_distance(slice_r12(st.state), after_fix);
            v.require(d < 1e-9, "state after Z corrections differs by " + num(d));
        }
        if (i == first_x) {
            // Party 2 now holds |+>; read off the (R,1) factor.
            std::vector<cplx> out(4);
            for (std::size_t rb = 0; rb < 2; rb++) {
                for (std::size_t a = 0; a < 2; a++) {
                    for (std::size_t b = 0; b < 2; b++) {
                        out[rb * 2 + a] += s2 * st.state[a | (b << 1) | (1u << 2) | (rb << r)];
                    }
                }
            }
            v.require(std::abs(branch_norm(out) - 1) < 1e-9, "party 2 is not in |+> after its X measurement");
            double d = phase_distance(out, after_x);
            v.require(d < 1e-9, "state after the X measurement differs by " + num(d));
        }
    }
    // Corrections before the X measurement act on 1 and 2; the one after it carries m_R.
    bool m1 = false, m2 = false, mr = true;
    int seen_after = 0;
    for (std::size_t i = 0, k = 0; i < p.instructions.size(); i++) {
        if (!std::holds_alternative<ConditionalPauli>(p.instructions[i])) {
            continue;
        }
        auto [party, parity] = parities[k++];
        if (i < first_x) {
            (party == 0 ? m1 : m2) = parity;
        } else {
            mr = parity;
            seen_after++;
        }
    }
    if (seen_after == 0) {
        mr = false;  // no neighbour of R among {3,4,5}: no correction emitted
    }
    v.require(m1 && m2 && !mr, "protocol parities differ from m1=1, m2=1, mR=0");
    Eigen::Matrix4cd rho = reduced_pair(st.state, r, 0);
    Eigen::Vector4cd bell(s2, 0, 0, s2);
    double fid = std::sqrt((bell.adjoint() * rho * bell)(0, 0).real());
    v.require(fid >= 1 - 1e-9, "forced branch final fidelity " + num(fid, 12));
    if (v.pass) {
        v.detail = "16/16 branches in " + num(elapsed * 1000) + " ms; intermediate states and parities 1,1,0 match";
    }
    return v;
}

Verdict repetition_code_protocol() {
    Verdict v;
    CodeSpec code = repetition_code();
    Synthesis s = synthesize_extraction(code, 0);
    const auto &ins = s.protocol->instructions;
    v.require(ins.size() == 3, "expected 3 instructions, got " + std::to_string(ins.size()));
    if (!v.pass) {
        return v;
    }
    auto *m = std::get_if<Measure>(&ins[0]);
    auto *b = std::get_if<Broadcast>(&ins[1]);
    auto *c = std::get_if<ConditionalPauli>(&ins[2]);
    v.require(m && m->party == 1 && m->basis == PauliBasis::X, "first instruction is not an X measurement by 2");
    v.require(b && b->party == 1 && b->to == std::vector<std::size_t>{0} && m && b->var == m->var,
              "second instruction is not a broadcast to 1");
    v.require(c && c->party == 0 && c->pauli == 'Z' && m && c->parity_of == std::vector<std::string>{m->var},
              "third instruction is not a conditional Z on 1");
    VerificationReport report = enumerate_and_verify(code, *s.protocol);
    v.require(report.pass && report.verified == 2, "branch verification failed");
    DecodingReport decoding = verify_decoding_map(code, *s.protocol);
    double worst = 0;
    for (const auto &chk : decoding.checks) {
        worst = std::max(worst, chk.trace_distance);
    }
    v.require(decoding.pass && decoding.checks.size() == 4 && worst <= 1e-9,
              "decoding map trace distance " + num(worst));
    if (v.pass) {
        v.detail = "measure X / broadcast / conditional Z; 2/2 branches; max trace distance " + num(worst, 2);
    }
    return v;
}

std::vector<CodeSpec> random_corpus() {
    std::vector<CodeSpec> out;
    for (std::size_t i = 0; i < 500; i++) {
        Rng rng(0xacce55 + i);
        std::size_t n = 2 + i % 5;
        double p = 0.15 + 0.1 * static_cast<double>(i % 7);
        out.push_back(random_code(n, rng, p));
    }
    return out;
}

Verdict feasibility_both_directions(const std::vector<CodeSpec> &corpus) {
    Verdict v;
    std::size_t feasible = 0, infeasible = 0;
    for (std::size_t i = 0; i < corpus.size() && v.pass; i++) {
        const CodeSpec &code = corpus[i];
        std::vector<std::size_t> targets = feasible_targets(code);
        StateVector ref = reference_state_vector(code);
        for (std::size_t j = 0; j < code.n; j++) {
            Synthesis s = synthesize_extraction(code, j);
            bool listed = std::binary_search(targets.begin(), targets.end(), j);
            v.require(listed == s.protocol.has_value(), "code " + std::to_string(i) + ": feasibility disagreement");
            if (s.protocol) {
                feasible++;
                VerificationReport report = enumerate_and_verify(code, *s.protocol);
                v.require(report.pass, "code " + std::to_string(i) + " target " + std::to_string(j + 1) +
                                           ": verification failed");
                v.require(locality_audit(*s.protocol).empty(), "code " + std::to_string(i) + ": locality violation");
            } else {
                infeasible++;
                const auto &w = s.feasibility.witness;
                bool has_j = std::find(w.begin(), w.end(), j) != w.end();
                bool has_r = std::find(w.begin(), w.end(), code.n) != w.end();
                v.require(has_j && !has_r, "code " + std::to_string(i) + ": malformed witness");
                std::size_t rank_w = schmidt_rank(ref, w);
                std::size_t rank_r = schmidt_rank(ref, {code.n});
                v.require(rank_w == 1 && rank_r == 2, "code " + std::to_string(i) + " target " +
                                                          std::to_string(j + 1) + ": witness Schmidt ranks " +
                                                          std::to_string(rank_w) + "/" + std::to_string(rank_r));
            }
        }
    }
    if (v.pass) {
        v.detail = std::to_string(feasible) + " feasible targets verified, " + std::to_string(infeasible) +
                   " infeasible targets with product witnesses";
    }
    return v;
}

Verdict nonempty_targets(const std::vector<CodeSpec> &corpus) {
    Verdict v;
    std::size_t smallest = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < corpus.size(); i++) {
        std::size_t k = feasible_targets(corpus[i]).size();
        smallest = std::min(smallest, k);
        v.require(k > 0, "code " + std::to_string(i) + " has no feasible target");
    }
    if (v.pass) {
        v.detail = "all " + std::to_string(corpus.size()) + " codes have a target (minimum " +
                   std::to_string(smallest) + ")";
    }
    return v;
}

std::vector<Graph> random_trees() {
    std::vector<Graph> out;
    Rng rng(0x7eee);
    for (int i = 0; i < 200; i++) {
        std::size_t parties = 1 + static_cast<std::size_t>(i % 8);
        out.push_back(random_tree(parties + 1, rng));
    }
    return out;
}

Verdict hierarchy_tables(const std::vector<Graph> &trees) {
    Verdict v;
    HierarchyReport line = hierarchy_report(line_code(4));
    std::map<std::size_t, std::size_t> sizes;
    for (const auto &e : line.entries) {
        sizes[e.party + 1] = e.required.size();
    }
    v.require(sizes == std::map<std::size_t, std::size_t>{{1, 2}, {2, 3}, {3, 4}, {4, 4}}, "line-5 sizes differ");
    for (std::size_t n : {3u, 4u, 5u}) {
        Graph star(n + 1);
        for (std::size_t k = 0; k < n; k++) {
            star.add_edge(k, n);
        }
        for (const HierarchyReport &rep : {hierarchy_report(ghz_code(n)), hierarchy_report(star)}) {
            for (const auto &e : rep.entries) {
                v.require(e.required.size() == n, "GHZ n=" + std::to_string(n) + " target " +
                                                      std::to_string(e.party + 1) + " needs " +
                                                      std::to_string(e.required.size()));
            }
        }
    }
    std::size_t checked = 0;
    for (const Graph &tree : trees) {
        CodeSpec code = code_from_graph(tree);
        for (std::size_t j = 0; j < code.n; j++) {
            Synthesis s = synthesize_extraction(code, j);
            v.require(s.decomposition.graph == tree, "graph conversion changed a tree");
            v.require(s.protocol.has_value(), "tree target infeasible");
            if (!s.protocol) {
                continue;
            }
            v.require(s.protocol->cooperating == minimal_cooperating_set(tree, j),
                      "tree with " + std::to_string(code.n) + " parties, target " + std::to_string(j + 1) +
                          ": synthesized set differs from the minimal set");
            checked++;
        }
    }
    if (v.pass) {
        v.detail = "line-5 sizes 2,3,4,4; GHZ n=3,4,5 need n; " + std::to_string(checked) +
                   " tree targets match the minimal set";
    }
    return v;
}

Verdict necessity(const std::vector<Graph> &trees) {
    Verdict v;
    Rng rng(0x5eb7);
    std::size_t deletions = 0, subtrees = 0;
    for (const Graph &tree : trees) {
        const std::size_t r = tree.size() - 1;
        for (std::size_t j = 0; j < r; j++) {
            std::vector<std::size_t> path = *bfs_path(tree, j, r);
            std::vector<bool> on_path(tree.size(), false);
            for (std::size_t x : path) {
                on_path[x] = true;
            }
            for (std::size_t x : path) {
                if (x == j || x == r) {
                    continue;
                }
                auto comp = component_of(delete_vertex(tree, x), j);
                v.require(!std::binary_search(comp.begin(), comp.end(), r), "deleting a path vertex kept R and j connected");
                deletions++;
            }
            for (std::size_t anchor : path) {
                for (std::size_t u : tree.neighbors(anchor)) {
                    if (on_path[u]) {
                        continue;
                    }
                    // The subtree hanging from u, away from the path.
                    Graph cut = tree;
                    cut.remove_edge(u, anchor);
                    std::vector<std::size_t> hanging = component_of(cut, u);
                    Graph g = tree;
                    StateVector phys = graph_state_vector(tree);
                    for (std::size_t w : hanging) {
                        if (w == u) {
                            continue;
                        }
                        bool minus = rng() & 1;
                        g = measure_pauli(g, w, PauliBasis::Z, minus).graph;
                        detail::project_qubit(phys, w, detail::eigenvector(PauliBasis::Z, minus));
                    }
                    bool minus = rng() & 1;
                    MeasurementRewrite rw = measure_pauli(g, u, PauliBasis::X, minus, anchor);
                    detail::project_qubit(phys, u, detail::eigenvector(PauliBasis::X, minus));
                    phys.normalize();
                    auto comp = component_of(rw.graph, j);
                    v.require(!std::binary_search(comp.begin(), comp.end(), r),
                              "measuring out a hanging subtree kept R and j connected");
                    // The live component of j factors off the rest on the oracle as well.
                    v.require(schmidt_rank(phys, comp) == 1, "oracle: j's component is entangled with R");
                    subtrees++;
                }
            }
        }
    }
    if (v.pass) {
        v.detail = std::to_string(deletions) + " path deletions and " + std::to_string(subtrees) +
                   " subtree measurements separate R from j";
    }
    return v;
}

Verdict rewrite_oracle_equivalence() {
    Verdict v;
    Rng rng(0x9a11);
    double worst = 0;
    const cplx omega = std::polar(1.0, M_PI / 4);
    for (int trial = 0; trial < 1000 && v.pass; trial++) {
        std::size_t n = 1 + rng() % 8;
        Graph g = random_graph(n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100, rng);
        std::size_t j = rng() % n;
        PauliBasis basis = static_cast<PauliBasis>(rng() % 3);
        bool minus = rng() & 1;
        std::optional<std::size_t> special;
        auto nj = g.neighbors(j);
        if (basis == PauliBasis::X && !nj.empty()) {
            special = nj[rng() % nj.size()];
        }
        MeasurementRewrite rw = measure_pauli(g, j, basis, minus, special);
        StateVector lhs = graph_state_vector(g);
        detail::project_qubit(lhs, j, detail::eigenvector(basis, minus));
        StateVector rhs = graph_state_vector(rw.graph);
        auto e = detail::eigenvector(basis, minus);
        rhs.apply(j, std::array<cplx, 4>{e[0], 0, e[1], 0});
        rhs.apply(rw.byproduct);
        cplx scale = std::sqrt(rw.probability) * std::pow(omega, rw.phase_eighths);
        double d = 0;
        for (std::size_t i = 0; i < lhs.dim(); i++) {
            d = std::max(d, std::abs(lhs[i] - scale * rhs[i]));
        }
        worst = std::max(worst, d);
        v.require(d <= 1e-12, "case " + std::to_string(trial) + " differs by " + num(d));
    }
    if (v.pass) {
        v.detail = "1000 cases, max amplitude error " + num(worst, 2);
    }
    return v;
}

Verdict cut_rank_law() {
    Verdict v;
    Rng rng(0xc07);
    for (int trial = 0; trial < 300 && v.pass; trial++) {
        std::size_t n = 2 + rng() % 7;
        Graph g = random_graph(n, static_cast<double>(rng() % 100) / 100, rng);
        std::vector<std::size_t> part;
        while (part.empty() || part.size() == n) {
            part.clear();
            for (std::size_t q = 0; q < n; q++) {
                if (rng() & 1) {
                    part.push_back(q);
                }
            }
        }
        std::size_t expected = std::size_t{1} << cut_rank(g, part);
        std::size_t actual = schmidt_rank(graph_state_vector(g), part);
        v.require(expected == actual, "trial " + std::to_string(trial) + ": 2^cut_rank " + std::to_string(expected) +
                                          " vs Schmidt rank " + std::to_string(actual));
    }
    if (v.pass) {
        v.detail = "300 random cuts agree";
    }
    return v;
}

Verdict synthesis_scaling() {
    Verdict v;
    std::vector<double> xs, ys;
    std::ostringstream timings;
    double t512 = 0, t1024 = 0;
    for (std::size_t n : {128u, 256u, 512u, 1024u}) {
        Rng rng(0x5ca1e + n);
        CodeSpec code = random_code(n, rng, 0.5);
        std::size_t target = feasible_targets(code).front();
        double best = 1e9;
        int reps = n <= 256 ? 3 : 1;
        for (int rep = 0; rep < reps; rep++) {
            auto start = Clock::now();
            Synthesis s = synthesize_extraction(code, target);
            double t = seconds_since(start);
            v.require(s.protocol.has_value(), "n=" + std::to_string(n) + ": no protocol");
            best = std::min(best, t);
        }
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(std::max(best, 1e-6)));
        timings << (timings.tellp() > 0 ? ", " : "") << "n=" << n << " " << num(best) << " s";
        if (n == 512) t512 = best;
        if (n == 1024) t1024 = best;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); i++) {
        mx += xs[i] / xs.size();
        my += ys[i] / ys.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); i++) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = sxy / sxx;
    v.require(t512 < 2.0, "n=512 took " + num(t512) + " s");
    v.require(t1024 < 15.0, "n=1024 took " + num(t1024) + " s");
    v.require(slope <= 3.5, "log-log slope " + num(slope));
    v.detail = timings.str() + "; slope " + num(slope) + (v.pass ? "" : "; " + v.detail);
    return v;
}

}  // namespace

int main() {
    std::vector<CodeSpec> corpus = random_corpus();
    std::vector<Graph> trees = random_trees();
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"five-qubit code end to end", five_qubit_end_to_end},
        {"repetition code protocol", repetition_code_protocol},
        {"feasibility in both directions on 500 random codes", [&] { return feasibility_both_directions(corpus); }},
        {"every code has a feasible target", [&] { return nonempty_targets(corpus); }},
        {"cooperation hierarchy tables", [&] { return hierarchy_tables(trees); }},
        {"necessity on random trees", [&] { return necessity(trees); }},
        {"measurement rewrites match the statevector", rewrite_oracle_equivalence},
        {"cut rank equals log Schmidt rank", cut_rank_law},
        {"synthesis scaling", synthesis_scaling},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); k++) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception &e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += !v.pass;
        std::cout << (v.pass ? "[PASS]" : "[FAIL]") << " criterion " << (k + 1) << ": " << criteria[k].first << " - "
                  << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
