#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmt/circuit.hpp"
#include "qsmt/formula.hpp"

namespace qsmt {

class OracleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * paper: one register per role, every atom gets its own output bit, nothing
 * is reused. compact: a single scratch qubit serves every gadget that
 * returns its ancilla to 0 (clause ancilla, adder carry, comparator
 * ancilla, SMT flag), and < / > atoms read the comparator output directly.
 */
enum class LayoutMode { paper, compact };

std::string_view layout_name(LayoutMode mode);

struct OracleOptions {
    LayoutMode layout = LayoutMode::paper;
    bool addition_qubit = true;
};

/// Accounting groups used in register tables.
namespace group {
inline constexpr const char *smt = "SMT";
inline constexpr const char *sat = "SAT";
inline constexpr const char *adder = "Adder";
inline constexpr const char *bitwise_xor = "Bitwise XOR";
inline constexpr const char *bitwise_and = "Bitwise AND";
inline constexpr const char *bitwise_or = "Bitwise OR";
inline constexpr const char *constant = "Constant";
inline constexpr const char *comparator = "Comparator";
} // namespace group

/**
 * Where everything lives in an oracle circuit. The role registers are
 * views: in the compact layout several of them share the scratch qubit.
 */
struct OracleLayout {
    LayoutMode mode = LayoutMode::paper;
    Register search; // presentation order: booleans, BV bits MSB-first, addition qubit
    std::vector<QubitId> bool_qubits;
    std::vector<std::vector<QubitId>> bv_qubits; // per variable, MSB first
    std::optional<QubitId> addition;
    Register clause_ancillas;
    Register clause_outputs; // q_o(C) per clause, then conjunction outputs
    Register arith_outputs;
    Register comparator_outputs;
    Register comparator_internals;
    std::vector<std::optional<QubitId>> atom_bits; // indexed by boolean variable
    QubitId sat_output;
    QubitId smt_flag;
};

struct Oracle {
    Circuit circuit;
    OracleLayout layout;
};

/**
 * Computes q_o = l1 v l2 v l3 into a fresh `output`, restoring `ancilla`
 * and every variable qubit. `vars[i]` is the qubit of boolean i; zero
 * literals read `zero`, which must hold 0.
 */
Circuit build_clause_circuit(std::size_t qubit_count, const Clause &clause,
                             std::span<const QubitId> vars, std::optional<QubitId> zero,
                             QubitId ancilla, QubitId output);

struct SatQubits {
    std::vector<QubitId> clause_ancillas;     // one shared, or one per clause
    std::vector<QubitId> clause_outputs;      // one per clause
    std::vector<QubitId> conjunction_outputs; // one per conjunction node (clauses - 1)
};

struct SatCircuit {
    Circuit circuit;
    QubitId output;
};

/// Left-deep conjunction of clause circuits: ((C1 ^ C2) ^ C3) ...
SatCircuit build_sat_circuit(std::size_t qubit_count, const CnfFormula &formula,
                             std::span<const QubitId> vars, std::optional<QubitId> zero,
                             const SatQubits &qubits);

// Word operands are LSB first.

/// sum = (a + b) mod 2^n; operands restored, carry returns to 0.
Circuit build_adder(std::size_t qubit_count, std::span<const QubitId> a,
                    std::span<const QubitId> b, std::span<const QubitId> sum, QubitId carry);

Circuit build_bitwise(std::size_t qubit_count, BinaryOp op, std::span<const QubitId> a,
                      std::span<const QubitId> b, std::span<const QubitId> out);

Circuit build_constant(std::size_t qubit_count, std::uint64_t value,
                       std::span<const QubitId> out);

/// Comparator input: a quantum word, or a classical constant folded into the gadgets.
struct WordOperand {
    std::vector<QubitId> qubits;          // LSB first
    std::optional<std::uint64_t> value;   // set for classical operands
    std::size_t width = 0;

    static WordOperand quantum(std::vector<QubitId> qubits);
    static WordOperand classical(std::uint64_t value, std::size_t width);
};

inline std::size_t comparator_internal_count(std::size_t width) { return 2 * (width - 1); }

/**
 * (o1, o2) = (1,0) if lhs > rhs, (0,1) if lhs < rhs, (0,0) if equal.
 * Cascades LSB to MSB: each level holds a (greater, less) pair for the
 * suffix seen so far; the last level is (o1, o2). `internals` receives
 * the lower levels and stays computed; `ancilla` returns to 0.
 */
Circuit build_comparator(std::size_t qubit_count, const WordOperand &lhs,
                         const WordOperand &rhs, QubitId o1, QubitId o2,
                         std::span<const QubitId> internals, QubitId ancilla);

Circuit build_comparator(std::size_t qubit_count, std::span<const QubitId> lhs,
                         std::span<const QubitId> rhs, QubitId o1, QubitId o2,
                         std::span<const QubitId> internals, QubitId ancilla);

/// atom_out may alias o2 (for <) or o1 (for >), in which case no gate is needed.
Circuit build_atom_circuit(std::size_t qubit_count, Relation rel, QubitId o1, QubitId o2,
                           QubitId atom_out);

/// vb becomes 1 iff it agreed with the atom bit.
Circuit build_consistency_extractor(std::size_t qubit_count, QubitId atom, QubitId vb);

/// Phase flip on states where every consistency bit, the skeleton output are 1
/// and the addition qubit (if any) is 0. q_smt starts and ends at 0.
Circuit build_solution_inverter(std::size_t qubit_count, std::span<const QubitId> consistency,
                                QubitId skeleton_output, std::optional<QubitId> addition,
                                QubitId q_smt);

Oracle build_oracle(const BVProblem &problem, const OracleOptions &options = {});

/// Inversion about the mean over `search`, up to a global phase.
Circuit build_diffuser(std::size_t qubit_count, std::span<const QubitId> search);

} // namespace qsmt
