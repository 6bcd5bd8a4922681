#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsmt/circuit.hpp"
#include "qsmt/formula.hpp"
#include "qsmt/oracle.hpp"
#include "qsmt/simkernel.hpp"

namespace qsmt {

inline constexpr std::size_t kEnumerationBudget = 28;

class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PlanError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SolutionSet {
    std::vector<Assignment> assignments;
    std::vector<std::uint64_t> indices; // search-order encoding, addition qubit excluded

    std::size_t count() const { return assignments.size(); }
};

/// Brute force over every assignment. Throws BudgetError above kEnumerationBudget bits.
SolutionSet enumerate_solutions(const BVProblem &problem);

struct IterationPlan {
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    unsigned k = 0;
    bool forced = false;

    bool unsat() const { return M == 0; }
    /// Ideal aggregate solution probability after k iterations.
    double closed_form() const;
};

/**
 * k = max(1, floor(pi/4 * sqrt(N/M))) unless overridden. M = 0 yields an
 * UNSAT plan. Fails when M > N or M/N >= 1/2, where amplification stops
 * helping.
 */
IterationPlan plan_iterations(std::uint64_t N, std::uint64_t M,
                              std::optional<unsigned> override_k = std::nullopt);

/// sin^2((2k+1) asin(sqrt(M/N))) for each k in [k_first, k_last].
std::vector<std::pair<unsigned, double>> success_probability(const IterationPlan &plan,
                                                             unsigned k_first, unsigned k_last);

enum class Engine { automatic, dense, effective };

std::string_view engine_name(Engine engine);
Engine parse_engine(std::string_view name);
LayoutMode parse_layout(std::string_view name);

struct SolveOptions {
    std::optional<LayoutMode> layout; // default: paper for effective, compact for dense
    Engine engine = Engine::automatic;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    std::optional<unsigned> iterations;
    bool addition_qubit = true;
    std::size_t dense_limit = kDefaultDenseLimit;
};

struct SolutionRow {
    std::uint64_t index = 0;  // search register value
    std::string bitstring;    // presentation order, addition qubit dropped
    std::string assignment;
    double probability = 0.0;
    std::uint64_t count = 0;
    bool verified = false;
};

struct SolveReport {
    IterationPlan plan;
    Engine engine = Engine::effective; // resolved
    LayoutMode layout = LayoutMode::paper;
    LayoutReport layout_stats;
    std::size_t search_bits = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    std::vector<SolutionRow> solutions; // verified candidates
    std::vector<SolutionRow> rejected;  // above the candidate threshold but not solutions
    std::vector<double> probabilities;  // per search value; empty when UNSAT
    MeasurementCounts counts;
    double exact_probability = 0.0;   // total mass on true solutions
    double sampled_probability = 0.0; // fraction of shots landing on true solutions
    double wall_seconds = 0.0;

    bool sat() const { return !plan.unsat(); }
};

struct GroverRun {
    std::vector<double> probabilities; // per search value
    std::size_t search_bits = 0;
    LayoutReport layout_stats;
};

/// Uniform start, then k rounds of (phase table, a <- 2*mean - a).
std::vector<double> grover_effective(const EffectiveOracle &oracle, unsigned k);

GroverRun run_grover_effective(const BVProblem &problem, const IterationPlan &plan,
                               const SolveOptions &options = {});

/// Full circuit: H layer on the search register, then k x (oracle, diffuser).
Circuit build_grover_circuit(const Oracle &oracle, unsigned k);

GroverRun run_grover_dense(const BVProblem &problem, const IterationPlan &plan,
                           const SolveOptions &options = {});

struct VerifyResult {
    bool pass = false;
    std::size_t marked = 0;    // oracle entries with phase -1
    std::size_t classical = 0; // enumerated solutions
    std::optional<std::uint64_t> counterexample; // search value
    std::string detail;
};

/// Oracle phase table against classical enumeration, including the
/// addition-qubit-set half, which must be unmarked.
VerifyResult verify_oracle(const BVProblem &problem, const Circuit &circuit,
                           const OracleLayout &layout);

/// Enumerate, plan, run the chosen engine, sample and verify. UNSAT skips the run.
SolveReport solve(const BVProblem &problem, const SolveOptions &options = {});

} // namespace qsmt
