#include "qsmt/simkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qsmt {

DenseLimitError::DenseLimitError(std::size_t qubits, std::size_t limit)
    : std::runtime_error("dense limit exceeded: circuit has " + std::to_string(qubits) +
                         " qubits, dense engine allows " + std::to_string(limit) +
                         "; use the effective engine (--engine effective) instead") {}

RestitutionError::RestitutionError(std::uint64_t basis_state, QubitId qubit,
                                   const std::string &what)
    : std::runtime_error(what + " (basis state " + std::to_string(basis_state) + ", qubit " +
                         std::to_string(qubit.index) + ")"),
      basis_state_(basis_state), qubit_(qubit) {}

StateVector::StateVector(std::size_t qubit_count, std::uint64_t basis_state)
    : qubit_count_(qubit_count) {
    if (qubit_count >= 40) {
        throw std::invalid_argument("state vector too large");
    }
    amplitudes_.assign(std::size_t{1} << qubit_count, Complex{0.0, 0.0});
    if (basis_state >= amplitudes_.size()) {
        throw std::invalid_argument("basis state out of range");
    }
    amplitudes_[basis_state] = 1.0;
}

StateVector::StateVector(std::size_t qubit_count, std::vector<Complex> amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << qubit_count)) {
        throw std::invalid_argument("amplitude count does not match qubit count");
    }
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto &a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void StateVector::apply(const Gate &gate) {
    const auto check = [&](QubitId q) {
        if (q.index >= qubit_count_) {
            throw CircuitError("qubit " + std::to_string(q.index) + " out of range for a " +
                               std::to_string(qubit_count_) + "-qubit state");
        }
    };
    check(gate.target);
    std::size_t control_mask = 0;
    for (const auto &c : gate.controls) {
        check(c);
        control_mask |= std::size_t{1} << c.index;
    }
    const std::size_t t = gate.target.index;
    const std::size_t target_bit = std::size_t{1} << t;
    const std::size_t low_mask = target_bit - 1;
    const std::size_t half = amplitudes_.size() / 2;

    switch (gate.kind) {
    case GateKind::x:
    case GateKind::cnot:
    case GateKind::ccnot:
    case GateKind::mcx:
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t i0 = ((i >> t) << (t + 1)) | (i & low_mask);
            if ((i0 & control_mask) == control_mask) {
                std::swap(amplitudes_[i0], amplitudes_[i0 | target_bit]);
            }
        }
        break;
    case GateKind::z:
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t i1 = ((i >> t) << (t + 1)) | (i & low_mask) | target_bit;
            amplitudes_[i1] = -amplitudes_[i1];
        }
        break;
    case GateKind::h: {
        const double r = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t i0 = ((i >> t) << (t + 1)) | (i & low_mask);
            const Complex a0 = amplitudes_[i0];
            const Complex a1 = amplitudes_[i0 | target_bit];
            amplitudes_[i0] = r * (a0 + a1);
            amplitudes_[i0 | target_bit] = r * (a0 - a1);
        }
        break;
    }
    }
}

void dense_apply(StateVector &state, const Gate &gate) { state.apply(gate); }

StateVector dense_run(StateVector state, const Circuit &circuit, std::size_t dense_limit) {
    if (circuit.qubit_count() > dense_limit || state.qubit_count() > dense_limit) {
        throw DenseLimitError(std::max(circuit.qubit_count(), state.qubit_count()), dense_limit);
    }
    if (circuit.qubit_count() != state.qubit_count()) {
        throw CircuitError("state has " + std::to_string(state.qubit_count()) +
                           " qubits but circuit has " + std::to_string(circuit.qubit_count()));
    }
    for (const auto &g : circuit.gates()) {
        state.apply(g);
    }
    return state;
}

void PhasedBitstring::set(QubitId q, bool value) {
    if (get(q) != value) {
        flip(q);
    }
}

void PhasedBitstring::load(std::span<const QubitId> qubits, std::uint64_t value) {
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        set(qubits[j], (value >> j) & 1U);
    }
}

std::uint64_t PhasedBitstring::read(std::span<const QubitId> qubits) const {
    std::uint64_t value = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        value |= std::uint64_t{get(qubits[j])} << j;
    }
    return value;
}

void bitstring_apply(PhasedBitstring &state, const Gate &gate) {
    if (gate.target.index >= state.size()) {
        throw CircuitError("qubit " + std::to_string(gate.target.index) + " out of range");
    }
    bool active = true;
    for (const auto &c : gate.controls) {
        if (c.index >= state.size()) {
            throw CircuitError("qubit " + std::to_string(c.index) + " out of range");
        }
        active = active && state.get(c);
    }
    switch (gate.kind) {
    case GateKind::h:
        throw NonClassicalGateError("non-classical gate: the bitstring engine cannot apply H");
    case GateKind::z:
        if (active && state.get(gate.target)) {
            state.negate_phase();
        }
        break;
    default:
        if (active) {
            state.flip(gate.target);
        }
        break;
    }
}

PhasedBitstring bitstring_run(PhasedBitstring state, const Circuit &circuit) {
    for (const auto &g : circuit.gates()) {
        bitstring_apply(state, g);
    }
    return state;
}

std::size_t EffectiveOracle::search_bits() const {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < phases.size()) {
        ++bits;
    }
    return bits;
}

std::size_t EffectiveOracle::marked_count() const {
    return static_cast<std::size_t>(std::count(phases.begin(), phases.end(), std::int8_t{-1}));
}

EffectiveOracle extract_effective_oracle(const Circuit &circuit,
                                         std::span<const QubitId> search) {
    if (search.size() > 28) {
        throw std::invalid_argument("search register too wide for effective extraction");
    }
    for (const auto &g : circuit.gates()) {
        if (g.kind == GateKind::h) {
            throw NonClassicalGateError("non-classical gate: oracle contains an H gate");
        }
    }
    const std::uint64_t states = std::uint64_t{1} << search.size();
    EffectiveOracle oracle;
    oracle.phases.resize(states);
    for (std::uint64_t v = 0; v < states; ++v) {
        PhasedBitstring expected(circuit.qubit_count());
        expected.load(search, v);
        const PhasedBitstring out = bitstring_run(expected, circuit);
        for (std::size_t q = 0; q < circuit.qubit_count(); ++q) {
            const QubitId id = qubit(q);
            if (out.get(id) != expected.get(id)) {
                const bool is_search = std::find(search.begin(), search.end(), id) != search.end();
                throw RestitutionError(v, id,
                                       is_search ? "oracle changed a search qubit"
                                                 : "ancilla not restored to 0");
            }
        }
        oracle.phases[v] = static_cast<std::int8_t>(out.phase());
    }
    return oracle;
}

std::vector<double> marginal_probabilities(const StateVector &state,
                                           std::span<const QubitId> reg) {
    std::vector<double> probs(std::size_t{1} << reg.size(), 0.0);
    const auto &amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        std::size_t key = 0;
        for (std::size_t j = 0; j < reg.size(); ++j) {
            key |= ((i >> reg[j].index) & 1U) << j;
        }
        probs[key] += p;
    }
    return probs;
}

std::string bits_to_string(std::uint64_t value, std::size_t bits) {
    std::string out(bits, '0');
    for (std::size_t j = 0; j < bits; ++j) {
        out[j] = ((value >> j) & 1U) ? '1' : '0';
    }
    return out;
}

MeasurementCounts sample_distribution(std::span<const double> probabilities, std::size_t bits,
                                      std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    std::vector<double> cdf(probabilities.size());
    std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
    const double total = cdf.empty() ? 0.0 : cdf.back();
    if (!(total > 0.0)) {
        throw std::invalid_argument("distribution has zero mass");
    }

    // Inverse-CDF on 53-bit uniforms keeps draws identical across standard libraries.
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> hits(probabilities.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            it = std::prev(cdf.end());
        }
        std::size_t index = static_cast<std::size_t>(it - cdf.begin());
        while (probabilities[index] == 0.0 && index > 0) {
            --index; // u landed exactly on a flat step
        }
        ++hits[index];
    }

    MeasurementCounts counts;
    counts.shots = shots;
    counts.seed = seed;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (hits[i] > 0) {
            counts.counts[bits_to_string(i, bits)] = hits[i];
        }
    }
    return counts;
}

MeasurementCounts sample(const StateVector &state, std::span<const QubitId> reg,
                         std::uint64_t shots, std::uint64_t seed) {
    const auto probs = marginal_probabilities(state, reg);
    return sample_distribution(probs, reg.size(), shots, seed);
}

} // namespace qsmt
