#include "qsmt/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

namespace qsmt {

SolutionSet enumerate_solutions(const BVProblem &problem) {
    const std::size_t bits = problem.assignment_bits();
    if (bits > kEnumerationBudget) {
        throw BudgetError("enumeration budget exceeded: " + std::to_string(bits) +
                          " search bits, limit " + std::to_string(kEnumerationBudget));
    }
    SolutionSet out;
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t v = 0; v < total; ++v) {
        Assignment a = decode_assignment(problem, v);
        if (eval_formula(problem, a)) {
            out.indices.push_back(v);
            out.assignments.push_back(std::move(a));
        }
    }
    return out;
}

double IterationPlan::closed_form() const {
    if (M == 0 || N == 0) {
        return 0.0;
    }
    const double theta = std::asin(std::sqrt(static_cast<double>(M) / static_cast<double>(N)));
    const double s = std::sin((2.0 * k + 1.0) * theta);
    return s * s;
}

IterationPlan plan_iterations(std::uint64_t N, std::uint64_t M,
                              std::optional<unsigned> override_k) {
    if (N == 0 || (N & (N - 1)) != 0) {
        throw PlanError("search space size must be a power of two, got " + std::to_string(N));
    }
    if (M > N) {
        throw PlanError("more solutions (" + std::to_string(M) + ") than search states (" +
                        std::to_string(N) + ")");
    }
    IterationPlan plan{N, M, 0, override_k.has_value()};
    if (M == 0) {
        return plan;
    }
    if (2 * M >= N) {
        throw PlanError("solutions make up " + std::to_string(M) + "/" + std::to_string(N) +
                        " of the search space; Grover search needs less than half");
    }
    if (override_k) {
        plan.k = *override_k;
    } else {
        const double ratio = static_cast<double>(N) / static_cast<double>(M);
        const auto k = static_cast<unsigned>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
        plan.k = std::max(1U, k);
    }
    return plan;
}

std::vector<std::pair<unsigned, double>> success_probability(const IterationPlan &plan,
                                                             unsigned k_first, unsigned k_last) {
    std::vector<std::pair<unsigned, double>> out;
    for (unsigned k = k_first; k <= k_last; ++k) {
        IterationPlan p = plan;
        p.k = k;
        out.emplace_back(k, p.closed_form());
    }
    return out;
}

std::string_view engine_name(Engine engine) {
    switch (engine) {
    case Engine::automatic:
        return "auto";
    case Engine::dense:
        return "dense";
    case Engine::effective:
        return "effective";
    }
    return "?";
}

Engine parse_engine(std::string_view name) {
    if (name == "auto") {
        return Engine::automatic;
    }
    if (name == "dense") {
        return Engine::dense;
    }
    if (name == "effective") {
        return Engine::effective;
    }
    throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

LayoutMode parse_layout(std::string_view name) {
    if (name == "paper") {
        return LayoutMode::paper;
    }
    if (name == "compact") {
        return LayoutMode::compact;
    }
    throw std::invalid_argument("unknown layout '" + std::string(name) + "'");
}

std::vector<double> grover_effective(const EffectiveOracle &oracle, unsigned k) {
    const std::size_t n = oracle.phases.size();
    std::vector<double> amp(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (unsigned it = 0; it < k; ++it) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            amp[i] *= oracle.phases[i];
            sum += amp[i];
        }
        const double twice_mean = 2.0 * sum / static_cast<double>(n);
        for (auto &a : amp) {
            a = twice_mean - a;
        }
    }
    for (auto &a : amp) {
        a *= a;
    }
    return amp;
}

namespace {

OracleOptions oracle_options(const SolveOptions &options, LayoutMode fallback) {
    return {options.layout.value_or(fallback), options.addition_qubit};
}

} // namespace

GroverRun run_grover_effective(const BVProblem &problem, const IterationPlan &plan,
                               const SolveOptions &options) {
    const Oracle oracle = build_oracle(problem, oracle_options(options, LayoutMode::paper));
    const EffectiveOracle table = extract_effective_oracle(oracle.circuit, oracle.layout.search.qubits);
    return {grover_effective(table, plan.k), oracle.layout.search.size(), stats(oracle.circuit)};
}

Circuit build_grover_circuit(const Oracle &oracle, unsigned k) {
    const auto &search = oracle.layout.search.qubits;
    Circuit c = oracle.circuit;
    c.set_gates({});
    for (const auto q : search) {
        c.append(Gate::H(q));
    }
    const Circuit diffuser = build_diffuser(c.qubit_count(), search);
    for (unsigned it = 0; it < k; ++it) {
        c.append(oracle.circuit);
        c.append(diffuser);
    }
    return c;
}

GroverRun run_grover_dense(const BVProblem &problem, const IterationPlan &plan,
                           const SolveOptions &options) {
    const Oracle oracle = build_oracle(problem, oracle_options(options, LayoutMode::compact));
    if (oracle.circuit.qubit_count() > options.dense_limit) {
        throw DenseLimitError(oracle.circuit.qubit_count(), options.dense_limit);
    }
    const Circuit full = build_grover_circuit(oracle, plan.k);
    const StateVector out =
        dense_run(StateVector(full.qubit_count()), full, options.dense_limit);
    return {marginal_probabilities(out, oracle.layout.search.qubits), oracle.layout.search.size(),
            stats(oracle.circuit)};
}

VerifyResult verify_oracle(const BVProblem &problem, const Circuit &circuit,
                           const OracleLayout &layout) {
    const SolutionSet truth = enumerate_solutions(problem);
    const std::size_t bits = layout.search.size();
    VerifyResult result;
    result.classical = truth.count();
    const auto describe = [&](std::uint64_t v) {
        const std::uint64_t low = v & ((std::uint64_t{1} << problem.assignment_bits()) - 1);
        std::string s = bits_to_string(v, bits) + " " +
                        describe_assignment(problem, decode_assignment(problem, low));
        if (layout.addition) {
            s += low == v ? " add=0" : " add=1";
        }
        return s;
    };
    EffectiveOracle table;
    try {
        table = extract_effective_oracle(circuit, layout.search.qubits);
    } catch (const RestitutionError &e) {
        result.counterexample = e.basis_state();
        result.detail = std::string(e.what()) + ": " + describe(e.basis_state());
        return result;
    }
    result.marked = table.marked_count();
    const std::set<std::uint64_t> expected(truth.indices.begin(), truth.indices.end());
    for (std::uint64_t v = 0; v < table.phases.size(); ++v) {
        const bool want = expected.count(v) != 0;
        if ((table.phases[v] == -1) != want) {
            result.counterexample = v;
            result.detail = std::string(want ? "solution not marked: " : "non-solution marked: ") +
                            describe(v);
            return result;
        }
    }
    result.pass = true;
    return result;
}

SolveReport solve(const BVProblem &problem, const SolveOptions &options) {
    const auto start = std::chrono::steady_clock::now();
    problem.validate();
    const SolutionSet truth = enumerate_solutions(problem);
    const std::size_t bits = problem.assignment_bits() + (options.addition_qubit ? 1 : 0);

    SolveReport report;
    report.plan = plan_iterations(std::uint64_t{1} << bits, truth.count(), options.iterations);
    report.engine = options.engine == Engine::dense ? Engine::dense : Engine::effective;
    report.layout = options.layout.value_or(report.engine == Engine::dense ? LayoutMode::compact
                                                                           : LayoutMode::paper);
    report.search_bits = bits;
    report.shots = options.shots;
    report.seed = options.seed;

    if (report.plan.unsat()) {
        report.layout_stats =
            stats(build_oracle(problem, {report.layout, options.addition_qubit}).circuit);
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

    const GroverRun run = report.engine == Engine::dense
                              ? run_grover_dense(problem, report.plan, options)
                              : run_grover_effective(problem, report.plan, options);
    report.layout_stats = run.layout_stats;
    report.probabilities = run.probabilities;
    report.counts = sample_distribution(report.probabilities, bits, options.shots, options.seed);

    const std::set<std::uint64_t> solution_indices(truth.indices.begin(), truth.indices.end());
    const std::size_t assignment_bits = problem.assignment_bits();
    std::uint64_t hits = 0;
    for (const std::uint64_t v : solution_indices) {
        report.exact_probability += report.probabilities[v];
    }
    for (const auto &[key, count] : report.counts.counts) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < key.size(); ++j) {
            v |= std::uint64_t{key[j] == '1'} << j;
        }
        if (solution_indices.count(v) != 0) {
            hits += count;
        }
    }
    report.sampled_probability = static_cast<double>(hits) / static_cast<double>(options.shots);

    // Candidates are strings amplified above twice the uniform baseline; each
    // is re-checked classically before it is called a solution.
    const double threshold = 2.0 / static_cast<double>(report.probabilities.size());
    for (std::uint64_t v = 0; v < report.probabilities.size(); ++v) {
        if (report.probabilities[v] <= threshold) {
            continue;
        }
        const std::string full = bits_to_string(v, bits);
        const std::uint64_t low = v & ((std::uint64_t{1} << assignment_bits) - 1);
        const Assignment a = decode_assignment(problem, low);
        SolutionRow row;
        row.index = v;
        row.bitstring = full.substr(0, assignment_bits);
        row.assignment = describe_assignment(problem, a);
        row.probability = report.probabilities[v];
        const auto it = report.counts.counts.find(full);
        row.count = it == report.counts.counts.end() ? 0 : it->second;
        row.verified = low == v && eval_formula(problem, a);
        (row.verified ? report.solutions : report.rejected).push_back(std::move(row));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace qsmt
