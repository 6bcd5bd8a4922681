#include "qsmt/oracle.hpp"

#include <algorithm>
#include <map>

namespace qsmt {

std::string_view layout_name(LayoutMode mode) {
    return mode == LayoutMode::paper ? "paper" : "compact";
}

namespace {

std::uint64_t word_mask(std::size_t width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void require_width(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw OracleError(std::string("width mismatch in ") + what + ": " + std::to_string(a) +
                          " vs " + std::to_string(b));
    }
}

} // namespace

Circuit build_clause_circuit(std::size_t qubit_count, const Clause &clause,
                             std::span<const QubitId> vars, std::optional<QubitId> zero,
                             QubitId ancilla, QubitId output) {
    // Each wire carries a literal's variable; Q is X unless the literal is negated,
    // so after Q the wire holds the literal's negation.
    struct Wire {
        QubitId qubit;
        bool flip;
    };
    std::vector<Wire> wires;
    bool tautology = false;
    for (const auto &lit : clause.literals) {
        Wire w{};
        if (lit.kind == Literal::Kind::zero) {
            if (!zero) {
                throw OracleError("clause uses a zero literal but no constant-0 qubit was given");
            }
            w = {*zero, true};
        } else {
            if (lit.var >= vars.size()) {
                throw OracleError("clause literal has no qubit");
            }
            w = {vars[lit.var], lit.kind == Literal::Kind::pos};
        }
        const auto same = std::find_if(wires.begin(), wires.end(),
                                       [&](const Wire &o) { return o.qubit == w.qubit; });
        if (same == wires.end()) {
            wires.push_back(w);
        } else if (same->flip != w.flip) {
            tautology = true; // v or not v
        }
    }

    Circuit c(qubit_count);
    if (tautology) {
        c.append(Gate::X(output));
        return c;
    }
    Circuit q_layer(qubit_count);
    for (const auto &w : wires) {
        if (w.flip) {
            q_layer.append(Gate::X(w.qubit));
        }
    }
    c.append(q_layer);
    switch (wires.size()) {
    case 1:
        c.append(Gate::CNOT(wires[0].qubit, output));
        c.append(Gate::X(output));
        break;
    case 2:
        c.append(Gate::CCNOT(wires[0].qubit, wires[1].qubit, output));
        c.append(Gate::X(output));
        break;
    default:
        c.append(Gate::CCNOT(wires[0].qubit, wires[1].qubit, ancilla));
        c.append(Gate::CCNOT(wires[2].qubit, ancilla, output));
        c.append(Gate::X(output));
        c.append(Gate::CCNOT(wires[0].qubit, wires[1].qubit, ancilla));
        break;
    }
    c.append(q_layer);
    return c;
}

SatCircuit build_sat_circuit(std::size_t qubit_count, const CnfFormula &formula,
                             std::span<const QubitId> vars, std::optional<QubitId> zero,
                             const SatQubits &qubits) {
    const std::size_t k = formula.clauses.size();
    if (k == 0) {
        throw OracleError("formula has no clauses");
    }
    if (qubits.clause_ancillas.empty() ||
        (qubits.clause_ancillas.size() != 1 && qubits.clause_ancillas.size() < k)) {
        throw OracleError("insufficient clause ancillas");
    }
    if (qubits.clause_outputs.size() < k || qubits.conjunction_outputs.size() < k - 1) {
        throw OracleError("insufficient clause or conjunction output qubits");
    }
    SatCircuit out{Circuit(qubit_count), qubits.clause_outputs[0]};
    for (std::size_t j = 0; j < k; ++j) {
        const QubitId qa =
            qubits.clause_ancillas.size() == 1 ? qubits.clause_ancillas[0] : qubits.clause_ancillas[j];
        out.circuit.append(build_clause_circuit(qubit_count, formula.clauses[j], vars, zero, qa,
                                                qubits.clause_outputs[j]));
    }
    for (std::size_t j = 1; j < k; ++j) {
        const QubitId node = qubits.conjunction_outputs[j - 1];
        out.circuit.append(Gate::CCNOT(out.output, qubits.clause_outputs[j], node));
        out.output = node;
    }
    return out;
}

Circuit build_adder(std::size_t qubit_count, std::span<const QubitId> a,
                    std::span<const QubitId> b, std::span<const QubitId> sum, QubitId carry) {
    require_width(a.size(), b.size(), "adder operands");
    require_width(a.size(), sum.size(), "adder sum");
    const std::size_t n = a.size();
    Circuit c(qubit_count);
    // sum[i] holds the incoming carry c_i until its own sum bit is formed;
    // carry holds the propagate term a_i ^ b_i while it is needed.
    for (std::size_t i = 0; i < n; ++i) {
        const bool last = i + 1 == n;
        if (a[i] == b[i]) {
            // a_i + a_i: no sum contribution, generate = a_i, propagate = 0
            if (!last) {
                c.append(Gate::CNOT(a[i], sum[i + 1]));
            }
            continue;
        }
        if (!last) {
            c.append(Gate::CCNOT(a[i], b[i], sum[i + 1]));
        }
        c.append(Gate::CNOT(a[i], carry));
        c.append(Gate::CNOT(b[i], carry));
        if (!last && i > 0) { // c_0 = 0
            c.append(Gate::CCNOT(sum[i], carry, sum[i + 1]));
        }
        c.append(Gate::CNOT(carry, sum[i]));
        c.append(Gate::CNOT(a[i], carry));
        c.append(Gate::CNOT(b[i], carry));
    }
    return c;
}

Circuit build_bitwise(std::size_t qubit_count, BinaryOp op, std::span<const QubitId> a,
                      std::span<const QubitId> b, std::span<const QubitId> out) {
    require_width(a.size(), b.size(), "bitwise operands");
    require_width(a.size(), out.size(), "bitwise output");
    Circuit c(qubit_count);
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
        case BinaryOp::bit_xor:
            if (a[i] != b[i]) {
                c.append(Gate::CNOT(a[i], out[i]));
                c.append(Gate::CNOT(b[i], out[i]));
            }
            break;
        case BinaryOp::bit_and:
            if (a[i] == b[i]) {
                c.append(Gate::CNOT(a[i], out[i]));
            } else {
                c.append(Gate::CCNOT(a[i], b[i], out[i]));
            }
            break;
        case BinaryOp::bit_or:
            if (a[i] == b[i]) {
                c.append(Gate::CNOT(a[i], out[i]));
            } else {
                c.append(Gate::X(a[i]));
                c.append(Gate::X(b[i]));
                c.append(Gate::CCNOT(a[i], b[i], out[i]));
                c.append(Gate::X(a[i]));
                c.append(Gate::X(b[i]));
                c.append(Gate::X(out[i]));
            }
            break;
        default:
            throw OracleError("build_bitwise supports xor, and, or");
        }
    }
    return c;
}

Circuit build_constant(std::size_t qubit_count, std::uint64_t value,
                       std::span<const QubitId> out) {
    if (value > word_mask(out.size())) {
        throw OracleError("constant " + std::to_string(value) + " does not fit in " +
                          std::to_string(out.size()) + " bits");
    }
    Circuit c(qubit_count);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if ((value >> i) & 1U) {
            c.append(Gate::X(out[i]));
        }
    }
    return c;
}

WordOperand WordOperand::quantum(std::vector<QubitId> qubits) {
    WordOperand w;
    w.width = qubits.size();
    w.qubits = std::move(qubits);
    return w;
}

WordOperand WordOperand::classical(std::uint64_t value, std::size_t width) {
    if (value > word_mask(width)) {
        throw OracleError("classical operand does not fit its width");
    }
    WordOperand w;
    w.value = value;
    w.width = width;
    return w;
}

namespace {

// One bit of a comparator operand, possibly negated.
struct BitLit {
    std::optional<QubitId> qubit;
    bool value = false; // classical bit when qubit is empty
    bool negated = false;

    bool classical() const { return !qubit.has_value(); }
    bool classical_value() const { return value != negated; }
};

BitLit bit_of(const WordOperand &w, std::size_t i, bool negated) {
    BitLit b;
    b.negated = negated;
    if (w.value) {
        b.value = (*w.value >> i) & 1U;
    } else {
        b.qubit = w.qubits[i];
    }
    return b;
}

void emit_copy(Circuit &c, const BitLit &b, QubitId target) {
    if (b.classical()) {
        if (b.classical_value()) {
            c.append(Gate::X(target));
        }
        return;
    }
    c.append(Gate::CNOT(*b.qubit, target));
    if (b.negated) {
        c.append(Gate::X(target));
    }
}

// target ^= x AND y
void emit_and(Circuit &c, const BitLit &x, const BitLit &y, QubitId target) {
    if (x.classical()) {
        if (x.classical_value()) {
            emit_copy(c, y, target);
        }
        return;
    }
    if (y.classical()) {
        if (y.classical_value()) {
            emit_copy(c, x, target);
        }
        return;
    }
    if (*x.qubit == *y.qubit) {
        if (x.negated == y.negated) {
            emit_copy(c, x, target);
        }
        return;
    }
    if (x.negated) {
        c.append(Gate::X(*x.qubit));
    }
    if (y.negated) {
        c.append(Gate::X(*y.qubit));
    }
    c.append(Gate::CCNOT(*x.qubit, *y.qubit, target));
    if (x.negated) {
        c.append(Gate::X(*x.qubit));
    }
    if (y.negated) {
        c.append(Gate::X(*y.qubit));
    }
}

// target ^= NOT (x XOR y)
void emit_equal(Circuit &c, const BitLit &x, const BitLit &y, QubitId target) {
    const bool same_qubit = !x.classical() && !y.classical() && *x.qubit == *y.qubit;
    if (!same_qubit) {
        emit_copy(c, x, target);
        emit_copy(c, y, target);
    }
    c.append(Gate::X(target));
}

} // namespace

Circuit build_comparator(std::size_t qubit_count, const WordOperand &lhs,
                         const WordOperand &rhs, QubitId o1, QubitId o2,
                         std::span<const QubitId> internals, QubitId ancilla) {
    require_width(lhs.width, rhs.width, "comparator operands");
    const std::size_t n = lhs.width;
    if (n == 0) {
        throw OracleError("comparator operands are empty");
    }
    if (internals.size() < comparator_internal_count(n)) {
        throw OracleError("insufficient comparator internals: need " +
                          std::to_string(comparator_internal_count(n)) + ", got " +
                          std::to_string(internals.size()));
    }
    Circuit c(qubit_count);
    std::pair<QubitId, QubitId> prev{};
    for (std::size_t i = 0; i < n; ++i) {
        const bool top = i + 1 == n;
        const std::pair<QubitId, QubitId> pair =
            top ? std::pair{o1, o2} : std::pair{internals[2 * i], internals[2 * i + 1]};
        // greater_i = x_i & !y_i, less_i = !x_i & y_i
        emit_and(c, bit_of(lhs, i, false), bit_of(rhs, i, true), pair.first);
        emit_and(c, bit_of(lhs, i, true), bit_of(rhs, i, false), pair.second);
        if (i > 0) {
            // equal bits defer to the lower-order verdict
            Circuit eq(qubit_count);
            emit_equal(eq, bit_of(lhs, i, false), bit_of(rhs, i, false), ancilla);
            c.append(eq);
            c.append(Gate::CCNOT(ancilla, prev.first, pair.first));
            c.append(Gate::CCNOT(ancilla, prev.second, pair.second));
            c.append(eq);
        }
        prev = pair;
    }
    return c;
}

Circuit build_comparator(std::size_t qubit_count, std::span<const QubitId> lhs,
                         std::span<const QubitId> rhs, QubitId o1, QubitId o2,
                         std::span<const QubitId> internals, QubitId ancilla) {
    return build_comparator(qubit_count,
                            WordOperand::quantum({lhs.begin(), lhs.end()}),
                            WordOperand::quantum({rhs.begin(), rhs.end()}), o1, o2, internals,
                            ancilla);
}

Circuit build_atom_circuit(std::size_t qubit_count, Relation rel, QubitId o1, QubitId o2,
                           QubitId atom_out) {
    Circuit c(qubit_count);
    const bool aliased = atom_out == o1 || atom_out == o2;
    if (aliased) {
        if ((rel == Relation::lt && atom_out == o2) || (rel == Relation::gt && atom_out == o1)) {
            return c;
        }
        throw OracleError("atom bit may only alias o2 for '<' or o1 for '>'");
    }
    switch (rel) {
    case Relation::lt:
        c.append(Gate::CNOT(o2, atom_out));
        break;
    case Relation::gt:
        c.append(Gate::CNOT(o1, atom_out));
        break;
    case Relation::eq:
        c.append(Gate::X(o1));
        c.append(Gate::X(o2));
        c.append(Gate::CCNOT(o1, o2, atom_out));
        c.append(Gate::X(o1));
        c.append(Gate::X(o2));
        break;
    case Relation::ne:
        c.append(Gate::CNOT(o1, atom_out));
        c.append(Gate::CNOT(o2, atom_out));
        break;
    case Relation::le:
        c.append(Gate::CNOT(o1, atom_out));
        c.append(Gate::X(atom_out));
        break;
    case Relation::ge:
        c.append(Gate::CNOT(o2, atom_out));
        c.append(Gate::X(atom_out));
        break;
    }
    return c;
}

Circuit build_consistency_extractor(std::size_t qubit_count, QubitId atom, QubitId vb) {
    Circuit c(qubit_count);
    c.append(Gate::CNOT(atom, vb));
    c.append(Gate::X(vb));
    return c;
}

Circuit build_solution_inverter(std::size_t qubit_count, std::span<const QubitId> consistency,
                                QubitId skeleton_output, std::optional<QubitId> addition,
                                QubitId q_smt) {
    std::vector<QubitId> controls(consistency.begin(), consistency.end());
    controls.push_back(skeleton_output);
    if (addition) {
        controls.push_back(*addition);
    }
    Circuit c(qubit_count);
    if (addition) {
        c.append(Gate::X(*addition));
    }
    c.append(Gate::controlled_x(controls, q_smt));
    c.append(Gate::Z(q_smt));
    c.append(Gate::controlled_x(controls, q_smt));
    if (addition) {
        c.append(Gate::X(*addition));
    }
    return c;
}

Circuit build_diffuser(std::size_t qubit_count, std::span<const QubitId> search) {
    if (search.empty()) {
        throw OracleError("diffuser needs a nonempty search register");
    }
    Circuit c(qubit_count);
    for (const auto q : search) {
        c.append(Gate::H(q));
    }
    for (const auto q : search) {
        c.append(Gate::X(q));
    }
    const QubitId target = search.back();
    if (search.size() == 1) {
        c.append(Gate::Z(target));
    } else {
        c.append(Gate::H(target));
        c.append(Gate::controlled_x({search.begin(), search.end() - 1}, target));
        c.append(Gate::H(target));
    }
    for (const auto q : search) {
        c.append(Gate::X(q));
    }
    for (const auto q : search) {
        c.append(Gate::H(q));
    }
    return c;
}

namespace {

class OracleBuilder {
  public:
    OracleBuilder(const BVProblem &problem, const OracleOptions &options)
        : p_(problem), opts_(options) {}

    Oracle build() {
        p_.validate();
        layout_.mode = opts_.layout;
        allocate_search();
        allocate_sat();
        emit_sat();
        emit_theory();
        emit_extractors();
        return assemble();
    }

  private:
    bool compact() const { return opts_.layout == LayoutMode::compact; }

    std::vector<QubitId> alloc(const std::string &name, std::size_t size, RegisterRole role,
                               const char *group) {
        return c_.add_register(name, size, role, group).qubits;
    }

    void emit(const Circuit &sub) {
        forward_.insert(forward_.end(), sub.gates().begin(), sub.gates().end());
    }

    void allocate_search() {
        const std::size_t bools = p_.bool_count();
        const std::size_t bits = p_.assignment_bits() + (opts_.addition_qubit ? 1 : 0);
        layout_.search = c_.add_register("search", bits, RegisterRole::search, group::smt);
        const auto &s = layout_.search.qubits;
        layout_.bool_qubits.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(bools));
        for (std::size_t v = 0; v < p_.bv_vars.size(); ++v) {
            const auto first = s.begin() + static_cast<std::ptrdiff_t>(bools + v * p_.width);
            layout_.bv_qubits.emplace_back(first, first + p_.width);
        }
        if (opts_.addition_qubit) {
            layout_.addition = s.back();
        }

        const bool needs_zero = std::any_of(
            p_.skeleton.clauses.begin(), p_.skeleton.clauses.end(), [](const Clause &cl) {
                return std::any_of(cl.literals.begin(), cl.literals.end(), [](const Literal &l) {
                    return l.kind == Literal::Kind::zero;
                });
            });
        if (needs_zero) {
            zero_ = alloc("zero", 1, RegisterRole::ancilla, group::smt)[0];
        }
        if (compact()) {
            scratch_ = alloc("scratch", 1, RegisterRole::ancilla, group::smt)[0];
        }
    }

    void allocate_sat() {
        const std::size_t k = p_.skeleton.clauses.size();
        if (compact()) {
            sat_.clause_ancillas = {*scratch_};
            layout_.clause_ancillas = {"scratch", {*scratch_}, RegisterRole::ancilla, group::smt};
        } else {
            sat_.clause_ancillas = alloc("clause_ancilla", k, RegisterRole::ancilla, group::smt);
            layout_.clause_ancillas = *c_.find_register("clause_ancilla");
        }
        sat_.clause_outputs = alloc("clause_output", k, RegisterRole::output, group::sat);
        if (k > 1) {
            sat_.conjunction_outputs =
                alloc("conjunction_output", k - 1, RegisterRole::output, group::sat);
        }
        layout_.clause_outputs = {"clause_outputs", sat_.clause_outputs, RegisterRole::output,
                                  group::sat};
        layout_.clause_outputs.qubits.insert(layout_.clause_outputs.qubits.end(),
                                             sat_.conjunction_outputs.begin(),
                                             sat_.conjunction_outputs.end());
    }

    void emit_sat() {
        const auto sat = build_sat_circuit(c_.qubit_count(), p_.skeleton, layout_.bool_qubits,
                                           zero_, sat_);
        emit(sat.circuit);
        layout_.sat_output = sat.output;
    }

    std::string key(const Expr &e) const { return to_text(e, p_) + "#" + std::to_string(e.width); }

    QubitId scratch_or(const std::string &name, const char *group) {
        if (compact()) {
            return *scratch_;
        }
        const auto q = alloc(name, 1, RegisterRole::ancilla, group)[0];
        note_arith(q, group);
        return q;
    }

    void note_arith(QubitId q, const char *group) {
        if (std::string(group) == group::comparator) {
            layout_.comparator_internals.qubits.push_back(q);
        } else {
            layout_.arith_outputs.qubits.push_back(q);
        }
    }

    // Qubits (LSB first) holding the value of `e`, computing it if needed.
    std::vector<QubitId> word(const Expr &e) {
        if (const auto *v = std::get_if<Expr::Var>(&e.node)) {
            const auto &msb_first = layout_.bv_qubits.at(v->index);
            return {msb_first.rbegin(), msb_first.rend()};
        }
        const std::string k = key(e);
        if (const auto it = words_.find(k); it != words_.end()) {
            return it->second;
        }
        std::vector<QubitId> out;
        const std::string id = std::to_string(next_id_++);
        if (const auto *cst = std::get_if<Expr::Const>(&e.node)) {
            out = alloc("const_" + id, e.width, RegisterRole::ancilla, group::constant);
            emit(build_constant(c_.qubit_count(), cst->value, out));
            for (const auto q : out) {
                note_arith(q, group::constant);
            }
        } else {
            const auto &b = std::get<Expr::Binary>(e.node);
            const auto lhs = word(*b.lhs);
            const auto rhs = word(*b.rhs);
            switch (b.op) {
            case BinaryOp::concat:
                out = rhs; // low bits come from the right operand
                out.insert(out.end(), lhs.begin(), lhs.end());
                break;
            case BinaryOp::add: {
                out = alloc("sum_" + id, e.width, RegisterRole::output, group::adder);
                for (const auto q : out) {
                    note_arith(q, group::adder);
                }
                const QubitId carry = scratch_or("carry_" + id, group::adder);
                emit(build_adder(c_.qubit_count(), lhs, rhs, out, carry));
                break;
            }
            default: {
                const char *grp = b.op == BinaryOp::bit_xor   ? group::bitwise_xor
                                  : b.op == BinaryOp::bit_and ? group::bitwise_and
                                                              : group::bitwise_or;
                const char *prefix = b.op == BinaryOp::bit_xor   ? "xor_"
                                     : b.op == BinaryOp::bit_and ? "and_"
                                                                 : "or_";
                out = alloc(prefix + id, e.width, RegisterRole::output, grp);
                for (const auto q : out) {
                    note_arith(q, grp);
                }
                emit(build_bitwise(c_.qubit_count(), b.op, lhs, rhs, out));
                break;
            }
            }
        }
        words_.emplace(k, out);
        return out;
    }

    WordOperand operand(const Expr &e) {
        if (const auto *cst = std::get_if<Expr::Const>(&e.node)) {
            return WordOperand::classical(cst->value, e.width);
        }
        return WordOperand::quantum(word(e));
    }

    std::pair<QubitId, QubitId> comparator(const Atom &atom) {
        const std::string k = key(*atom.lhs) + "|" + key(*atom.rhs);
        if (const auto it = comparators_.find(k); it != comparators_.end()) {
            return it->second;
        }
        const WordOperand lhs = operand(*atom.lhs);
        const WordOperand rhs = operand(*atom.rhs);
        const std::string id = std::to_string(next_id_++);
        const auto out = alloc("cmp_out_" + id, 2, RegisterRole::output, group::comparator);
        layout_.comparator_outputs.qubits.insert(layout_.comparator_outputs.qubits.end(),
                                                 out.begin(), out.end());
        std::vector<QubitId> internals;
        QubitId ancilla{};
        if (lhs.width > 1) {
            internals = alloc("cmp_internal_" + id, comparator_internal_count(lhs.width),
                              RegisterRole::ancilla, group::comparator);
            for (const auto q : internals) {
                note_arith(q, group::comparator);
            }
            ancilla = scratch_or("cmp_ancilla_" + id, group::comparator);
        }
        emit(build_comparator(c_.qubit_count(), lhs, rhs, out[0], out[1], internals, ancilla));
        comparators_.emplace(k, std::pair{out[0], out[1]});
        return {out[0], out[1]};
    }

    void emit_theory() {
        layout_.atom_bits.assign(p_.bool_count(), std::nullopt);
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < p_.atoms.size(); ++i) {
            if (p_.atoms[i]) {
                order.push_back(i);
            }
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return p_.atoms[a]->id < p_.atoms[b]->id; });
        for (const std::size_t var : order) {
            const Atom &atom = *p_.atoms[var];
            const auto [o1, o2] = comparator(atom);
            QubitId bit{};
            if (compact() && atom.rel == Relation::lt) {
                bit = o2;
            } else if (compact() && atom.rel == Relation::gt) {
                bit = o1;
            } else {
                bit = alloc("atom_" + p_.bool_names[var], 1, RegisterRole::output, group::smt)[0];
            }
            emit(build_atom_circuit(c_.qubit_count(), atom.rel, o1, o2, bit));
            layout_.atom_bits[var] = bit;
        }
    }

    void emit_extractors() {
        for (std::size_t var = 0; var < layout_.atom_bits.size(); ++var) {
            if (layout_.atom_bits[var]) {
                emit(build_consistency_extractor(c_.qubit_count(), *layout_.atom_bits[var],
                                                 layout_.bool_qubits[var]));
                consistency_.push_back(layout_.bool_qubits[var]);
            }
        }
    }

    Oracle assemble() {
        layout_.smt_flag =
            compact() ? *scratch_ : alloc("smt_flag", 1, RegisterRole::flag, group::smt)[0];
        layout_.arith_outputs.name = "arith_outputs";
        layout_.comparator_outputs.name = "comparator_outputs";
        layout_.comparator_internals.name = "comparator_internals";

        Circuit oracle = c_;
        for (const auto &g : forward_) {
            oracle.append(g);
        }
        oracle.append(build_solution_inverter(oracle.qubit_count(), consistency_,
                                              layout_.sat_output, layout_.addition,
                                              layout_.smt_flag));
        for (auto it = forward_.rbegin(); it != forward_.rend(); ++it) {
            oracle.append(*it);
        }
        return {std::move(oracle), std::move(layout_)};
    }

    const BVProblem &p_;
    OracleOptions opts_;
    Circuit c_;
    OracleLayout layout_;
    SatQubits sat_;
    std::optional<QubitId> zero_;
    std::optional<QubitId> scratch_;
    std::vector<Gate> forward_;
    std::vector<QubitId> consistency_;
    std::map<std::string, std::vector<QubitId>> words_;
    std::map<std::string, std::pair<QubitId, QubitId>> comparators_;
    std::size_t next_id_ = 0;
};

} // namespace

Oracle build_oracle(const BVProblem &problem, const OracleOptions &options) {
    return OracleBuilder(problem, options).build();
}

} // namespace qsmt
