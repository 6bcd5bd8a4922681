#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmt/circuit.hpp"

namespace qsmt {

inline constexpr std::size_t kDefaultDenseLimit = 26;

class DenseLimitError : public std::runtime_error {
  public:
    DenseLimitError(std::size_t qubits, std::size_t limit);
};

class NonClassicalGateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an oracle leaves a non-search qubit dirty or changes a search qubit.
class RestitutionError : public std::runtime_error {
  public:
    RestitutionError(std::uint64_t basis_state, QubitId qubit, const std::string &what);

    std::uint64_t basis_state() const { return basis_state_; }
    QubitId qubit() const { return qubit_; }

  private:
    std::uint64_t basis_state_;
    QubitId qubit_;
};

/// Dense state over n qubits. Amplitude index bit i is qubit i (little-endian).
class StateVector {
  public:
    using Complex = std::complex<double>;

    explicit StateVector(std::size_t qubit_count, std::uint64_t basis_state = 0);
    StateVector(std::size_t qubit_count, std::vector<Complex> amplitudes);

    std::size_t qubit_count() const { return qubit_count_; }
    std::size_t size() const { return amplitudes_.size(); }
    const std::vector<Complex> &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }
    double norm() const;

    void apply(const Gate &gate);

  private:
    std::size_t qubit_count_;
    std::vector<Complex> amplitudes_;
};

void dense_apply(StateVector &state, const Gate &gate);

/// Applies every gate in order. Fails with DenseLimitError above `dense_limit` qubits.
StateVector dense_run(StateVector state, const Circuit &circuit,
                      std::size_t dense_limit = kDefaultDenseLimit);

/// Computational basis state with a ±1 phase, for H-free circuits.
class PhasedBitstring {
  public:
    explicit PhasedBitstring(std::size_t size = 0) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool get(QubitId q) const { return (words_[q.index / 64] >> (q.index % 64)) & 1U; }
    void set(QubitId q, bool value);
    void flip(QubitId q) { words_[q.index / 64] ^= std::uint64_t{1} << (q.index % 64); }
    int phase() const { return phase_; }
    void negate_phase() { phase_ = -phase_; }

    /// Loads `value` into `qubits`; bit j of value goes to qubits[j].
    void load(std::span<const QubitId> qubits, std::uint64_t value);
    std::uint64_t read(std::span<const QubitId> qubits) const;

    friend bool operator==(const PhasedBitstring &, const PhasedBitstring &) = default;

  private:
    std::size_t size_;
    std::vector<std::uint64_t> words_;
    int phase_ = 1;
};

void bitstring_apply(PhasedBitstring &state, const Gate &gate);
PhasedBitstring bitstring_run(PhasedBitstring state, const Circuit &circuit);

/// Diagonal ±1 action of an oracle on its search register.
struct EffectiveOracle {
    std::vector<std::int8_t> phases; // index bit j = search qubit j

    std::size_t search_bits() const;
    std::size_t marked_count() const;
};

/**
 * Runs the circuit on every search basis state with all other qubits at 0,
 * recording the phase. Throws RestitutionError if any non-search qubit ends
 * nonzero or a search qubit changes.
 */
EffectiveOracle extract_effective_oracle(const Circuit &circuit, std::span<const QubitId> search);

struct MeasurementCounts {
    std::map<std::string, std::uint64_t> counts; // char j = register qubit j
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

/// Probability of each value of `reg` (bit j = reg[j]).
std::vector<double> marginal_probabilities(const StateVector &state,
                                           std::span<const QubitId> reg);

/// Draws `shots` samples from a distribution over `bits`-bit strings.
MeasurementCounts sample_distribution(std::span<const double> probabilities, std::size_t bits,
                                      std::uint64_t shots, std::uint64_t seed);

MeasurementCounts sample(const StateVector &state, std::span<const QubitId> reg,
                         std::uint64_t shots, std::uint64_t seed);

/// Bit j of `value` as character j.
std::string bits_to_string(std::uint64_t value, std::size_t bits);

} // namespace qsmt
