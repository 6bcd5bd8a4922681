#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsmt {

class CircuitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QubitId {
    std::uint32_t index = 0;

    friend auto operator<=>(const QubitId &, const QubitId &) = default;
};

inline QubitId qubit(std::size_t index) { return QubitId{static_cast<std::uint32_t>(index)}; }

enum class GateKind { x, z, h, cnot, ccnot, mcx };

std::string_view gate_name(GateKind kind);

/**
 * One gate of the reversible gate set. Every gate in the set is its own
 * inverse. Controls are empty for X, Z and H; CNOT has one, CCNOT two,
 * MCX one or more.
 */
struct Gate {
    GateKind kind = GateKind::x;
    std::vector<QubitId> controls;
    QubitId target;

    static Gate X(QubitId t) { return {GateKind::x, {}, t}; }
    static Gate Z(QubitId t) { return {GateKind::z, {}, t}; }
    static Gate H(QubitId t) { return {GateKind::h, {}, t}; }
    static Gate CNOT(QubitId c, QubitId t) { return {GateKind::cnot, {c}, t}; }
    static Gate CCNOT(QubitId c1, QubitId c2, QubitId t) { return {GateKind::ccnot, {c1, c2}, t}; }
    static Gate MCX(std::vector<QubitId> controls, QubitId t) {
        return {GateKind::mcx, std::move(controls), t};
    }
    /// Smallest gate kind for the given number of controls (X, CNOT, CCNOT or MCX).
    static Gate controlled_x(std::vector<QubitId> controls, QubitId t);

    friend bool operator==(const Gate &, const Gate &) = default;
};

enum class RegisterRole { search, ancilla, output, flag };

std::string_view role_name(RegisterRole role);

/// A named, ordered group of qubits. `group` is the accounting category.
struct Register {
    std::string name;
    std::vector<QubitId> qubits;
    RegisterRole role = RegisterRole::ancilla;
    std::string group;

    std::size_t size() const { return qubits.size(); }
    QubitId operator[](std::size_t i) const { return qubits.at(i); }

    friend bool operator==(const Register &, const Register &) = default;
};

struct LayoutReport {
    std::size_t total_qubits = 0;
    std::size_t gate_count = 0;
    std::vector<std::pair<std::string, std::size_t>> register_qubits; // circuit order
    std::map<std::string, std::size_t> group_qubits;
    std::map<std::string, std::size_t> gate_counts; // by gate name
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t qubit_count) : qubit_count_(qubit_count) {}

    std::size_t qubit_count() const { return qubit_count_; }
    std::size_t gate_count() const { return gates_.size(); }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<Register> &registers() const { return registers_; }
    const Register *find_register(std::string_view name) const;

    /// Allocates `size` fresh qubits at the end of the circuit as a new register.
    const Register &add_register(std::string name, std::size_t size, RegisterRole role,
                                 std::string group);

    /// Validates qubit range and distinctness, then appends.
    Circuit &append(Gate gate);
    /// Appends every gate of `other`, which may use fewer qubits than this circuit.
    Circuit &append(const Circuit &other);

    /// Replaces the gate list; used by verification hooks that mutate a circuit.
    void set_gates(std::vector<Gate> gates);

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    void check(const Gate &gate) const;

    std::size_t qubit_count_ = 0;
    std::vector<Gate> gates_;
    std::vector<Register> registers_;
};

/// Reverse circuit: gate order reversed, each gate is self-inverse.
Circuit inverse(const Circuit &c);

/// Gates of `a` then gates of `b`. A zero-qubit gate-free circuit is an identity element.
Circuit concat(const Circuit &a, const Circuit &b);

LayoutReport stats(const Circuit &c);

struct QasmOptions {
    /// Rewrite MCX gates with three or more controls as Toffoli V-chains over
    /// an extra zero-initialised `anc` register.
    bool decompose_mcx = false;
};

std::string export_qasm(const Circuit &c, const QasmOptions &options = {});

/// Reads back the subset emitted by export_qasm. An `anc` register is
/// appended after `q`.
Circuit parse_qasm(std::string_view text);

} // namespace qsmt
