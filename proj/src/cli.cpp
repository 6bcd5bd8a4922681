#include "qsmt/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "qsmt/oracle.hpp"
#include "qsmt/report.hpp"
#include "qsmt/solver.hpp"

namespace qsmt {

namespace {

struct CliConfig {
    std::string command;
    std::string input;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    unsigned iterations = 0; // 0: planner decides
    std::string layout;      // empty: engine default
    std::string engine = "auto";
    std::string format = "table";
    std::string k_range = "1..8";
    std::string out;
    std::string circuit = "oracle";
    bool decompose_mcx = false;
    bool no_addition = false;
    std::size_t dense_limit = kDefaultDenseLimit;
    long corrupt_gate = -1;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

BVProblem load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read input file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_problem(text.str());
}

SolveOptions solve_options(const CliConfig &cfg) {
    SolveOptions o;
    if (!cfg.layout.empty()) {
        o.layout = parse_layout(cfg.layout);
    }
    o.engine = parse_engine(cfg.engine);
    o.shots = cfg.shots;
    o.seed = cfg.seed;
    if (cfg.iterations > 0) {
        o.iterations = cfg.iterations;
    }
    o.addition_qubit = !cfg.no_addition;
    o.dense_limit = cfg.dense_limit;
    return o;
}

OracleOptions oracle_options(const CliConfig &cfg) {
    return {cfg.layout.empty() ? LayoutMode::paper : parse_layout(cfg.layout), !cfg.no_addition};
}

bool json_format(const CliConfig &cfg) { return cfg.format == "json"; }

int cmd_solve(const CliConfig &cfg, std::ostream &out) {
    const BVProblem problem = load(cfg.input);
    const SolveReport report = solve(problem, solve_options(cfg));
    out << (json_format(cfg) ? dump(solve_json(report)) : solve_table(report));
    return report.sat() ? exit_code::ok : exit_code::unsat;
}

Json problem_json(const BVProblem &p) {
    Json vars = Json::array();
    for (const auto &v : p.bv_vars) {
        vars.push_back({{"name", v.name}, {"width", v.width}});
    }
    return {{"booleans", p.bool_names},
            {"bv_vars", vars},
            {"width", p.width},
            {"clauses", p.skeleton.clauses.size()},
            {"atoms", p.atom_count()},
            {"search_bits", p.assignment_bits()}};
}

int cmd_inspect(const CliConfig &cfg, std::ostream &out) {
    const BVProblem problem = load(cfg.input);
    const OracleOptions opts = oracle_options(cfg);
    const Oracle oracle = build_oracle(problem, opts);
    if (json_format(cfg)) {
        out << dump({{"spec_version", kSpecVersion},
                     {"command", "inspect"},
                     {"problem", problem_json(problem)},
                     {"layout", layout_json(stats(oracle.circuit), opts.layout)}});
    } else {
        out << layout_table(oracle.circuit, opts.layout);
    }
    return exit_code::ok;
}

std::pair<unsigned, unsigned> parse_k_range(const std::string &text) {
    static const std::regex re(R"((\d+)\.\.(\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw UsageError("--k-range expects A..B, got '" + text + "'");
    }
    const auto a = static_cast<unsigned>(std::stoul(m[1]));
    const auto b = static_cast<unsigned>(std::stoul(m[2]));
    if (a > b || b > 10000) {
        throw UsageError("--k-range bounds out of order or too large: '" + text + "'");
    }
    return {a, b};
}

int cmd_sweep(const CliConfig &cfg, std::ostream &out) {
    const auto [k_first, k_last] = parse_k_range(cfg.k_range);
    const BVProblem problem = load(cfg.input);
    const OracleOptions opts = oracle_options(cfg);
    const SolutionSet truth = enumerate_solutions(problem);
    const std::size_t bits = problem.assignment_bits() + (opts.addition_qubit ? 1 : 0);
    const IterationPlan plan = plan_iterations(std::uint64_t{1} << bits, truth.count());
    if (plan.unsat()) {
        out << (json_format(cfg) ? dump({{"spec_version", kSpecVersion},
                                          {"command", "sweep"},
                                          {"status", "UNSAT"},
                                          {"plan", plan_json(plan)},
                                          {"curve", Json::array()},
                                          {"argmax", nullptr}})
                                 : std::string("UNSAT\n"));
        return exit_code::unsat;
    }
    const Oracle oracle = build_oracle(problem, opts);
    const EffectiveOracle table =
        extract_effective_oracle(oracle.circuit, oracle.layout.search.qubits);
    const auto closed = success_probability(plan, k_first, k_last);

    std::vector<double> exact;
    unsigned argmax = k_first;
    double best = -1.0;
    for (unsigned k = k_first; k <= k_last; ++k) {
        const auto probs = grover_effective(table, k);
        double p = 0.0;
        for (const auto v : truth.indices) {
            p += probs[v];
        }
        exact.push_back(p);
        if (p > best) {
            best = p;
            argmax = k;
        }
    }

    if (json_format(cfg)) {
        Json curve = Json::array();
        for (std::size_t i = 0; i < exact.size(); ++i) {
            curve.push_back(
                {{"k", closed[i].first}, {"exact", exact[i]}, {"closed_form", closed[i].second}});
        }
        out << dump({{"spec_version", kSpecVersion},
                     {"command", "sweep"},
                     {"status", "SAT"},
                     {"plan", plan_json(plan)},
                     {"curve", curve},
                     {"argmax", argmax}});
    } else {
        out << "N=" << plan.N << " M=" << plan.M << " planned k=" << plan.k << "\n\n";
        out << std::left << std::setw(6) << "k" << std::setw(14) << "probability"
            << "closed form\n";
        for (std::size_t i = 0; i < exact.size(); ++i) {
            out << std::left << std::setw(6) << closed[i].first << std::fixed
                << std::setprecision(9) << std::setw(14) << exact[i] << closed[i].second
                << (closed[i].first == argmax ? "  <- argmax" : "") << "\n";
        }
    }
    return exit_code::ok;
}

int cmd_verify(const CliConfig &cfg, std::ostream &out) {
    const BVProblem problem = load(cfg.input);
    Oracle oracle = build_oracle(problem, oracle_options(cfg));
    if (cfg.corrupt_gate >= 0) {
        auto gates = oracle.circuit.gates();
        const auto index = static_cast<std::size_t>(cfg.corrupt_gate);
        if (index >= gates.size()) {
            throw UsageError("--corrupt-gate " + std::to_string(index) + " out of range (" +
                             std::to_string(gates.size()) + " gates)");
        }
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(index));
        oracle.circuit.set_gates(std::move(gates));
    }
    const VerifyResult r = verify_oracle(problem, oracle.circuit, oracle.layout);
    if (json_format(cfg)) {
        Json j = {{"spec_version", kSpecVersion},
                  {"command", "verify"},
                  {"result", r.pass ? "PASS" : "FAIL"},
                  {"marked", r.marked},
                  {"classical", r.classical}};
        if (r.counterexample) {
            j["counterexample"] = {{"basis_state", *r.counterexample}, {"detail", r.detail}};
        } else {
            j["counterexample"] = nullptr;
        }
        out << dump(j);
    } else {
        out << (r.pass ? "PASS" : "FAIL") << ": " << r.marked << " marked, " << r.classical
            << " classical\n";
        if (!r.pass) {
            out << "counterexample: " << r.detail << "\n";
        }
    }
    return r.pass ? exit_code::ok : exit_code::verify_fail;
}

int cmd_export(const CliConfig &cfg, std::ostream &out) {
    const BVProblem problem = load(cfg.input);
    const Oracle oracle = build_oracle(problem, oracle_options(cfg));
    Circuit circuit = oracle.circuit;
    if (cfg.circuit == "grover") {
        unsigned k = cfg.iterations;
        if (k == 0) {
            const SolutionSet truth = enumerate_solutions(problem);
            k = plan_iterations(std::uint64_t{1} << oracle.layout.search.size(), truth.count()).k;
        }
        circuit = build_grover_circuit(oracle, k);
    }
    const std::string text = export_qasm(circuit, {cfg.decompose_mcx});
    if (cfg.out.empty()) {
        out << text;
        return exit_code::ok;
    }
    std::ofstream file(cfg.out);
    if (!file || !(file << text)) {
        throw UsageError("cannot write '" + cfg.out + "'");
    }
    out << "wrote " << cfg.out << " (" << circuit.qubit_count() << " qubits, "
        << circuit.gate_count() << " gates)\n";
    return exit_code::ok;
}

void common_options(CLI::App *sub, CliConfig &cfg) {
    sub->add_option("--input,-i", cfg.input, "problem file")->required();
    sub->add_option("--layout", cfg.layout, "qubit layout")
        ->check(CLI::IsMember({"paper", "compact"}));
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_flag("--no-addition-qubit", cfg.no_addition,
                  "leave the search space undoubled");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CliConfig cfg;
    CLI::App app{"Grover-based SMT solver for fixed-width bit-vectors", "qsmt"};
    app.require_subcommand(1);

    auto *solve_cmd = app.add_subcommand("solve", "run Grover search and report solutions");
    auto *inspect_cmd = app.add_subcommand("inspect", "qubit and gate accounting of the oracle");
    auto *sweep_cmd = app.add_subcommand("sweep", "success probability over iteration counts");
    auto *verify_cmd = app.add_subcommand("verify", "oracle phase table against brute force");
    auto *export_cmd = app.add_subcommand("export", "write the oracle or Grover circuit as QASM");
    for (auto *sub : {solve_cmd, inspect_cmd, sweep_cmd, verify_cmd, export_cmd}) {
        common_options(sub, cfg);
    }
    for (auto *sub : {solve_cmd, export_cmd}) {
        sub->add_option("--iterations,-k", cfg.iterations, "Grover iterations")
            ->check(CLI::Range(1U, 100000U));
    }
    solve_cmd->add_option("--shots", cfg.shots, "measurement shots")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    solve_cmd->add_option("--seed", cfg.seed, "sampling seed");
    solve_cmd->add_option("--engine", cfg.engine, "simulation engine")
        ->check(CLI::IsMember({"auto", "dense", "effective"}));
    solve_cmd->add_option("--dense-limit", cfg.dense_limit, "max qubits for the dense engine");
    sweep_cmd->add_option("--k-range", cfg.k_range, "iteration range A..B");
    verify_cmd->add_option("--corrupt-gate", cfg.corrupt_gate)->group("");
    export_cmd->add_option("--out,-o", cfg.out, "output path (default stdout)");
    export_cmd->add_option("--circuit", cfg.circuit, "what to export")
        ->check(CLI::IsMember({"oracle", "grover"}));
    export_cmd->add_flag("--decompose-mcx", cfg.decompose_mcx,
                         "rewrite wide MCX gates as Toffoli chains");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::parse;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(cfg, out);
        }
        if (inspect_cmd->parsed()) {
            return cmd_inspect(cfg, out);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(cfg, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(cfg, out);
        }
        return cmd_export(cfg, out);
    } catch (const ParseError &e) {
        err << cfg.input << ":" << e.what() << "\n";
        return exit_code::parse;
    } catch (const FormulaError &e) {
        err << cfg.input << ": " << e.what() << "\n";
        return exit_code::parse;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const RestitutionError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::verify_fail;
    } catch (const std::exception &e) {
        // budget, planning, dense limit, and anything the builders reject
        err << "error: " << e.what() << "\n";
        return exit_code::budget;
    }
}

} // namespace qsmt
