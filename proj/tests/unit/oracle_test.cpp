#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "qsmt/oracle.hpp"
#include "qsmt/simkernel.hpp"
#include "test_support.hpp"

using namespace qsmt;
using qsmt::testing::load_fixture;

namespace {

std::vector<QubitId> qubits(std::size_t first, std::size_t count) {
    std::vector<QubitId> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(qubit(first + i));
    }
    return out;
}

// Runs `c` on a basis state given as (qubit, value) words; returns the final state.
PhasedBitstring run_on(const Circuit &c,
                       std::initializer_list<std::pair<std::vector<QubitId>, std::uint64_t>> words) {
    PhasedBitstring s(c.qubit_count());
    for (const auto &[reg, value] : words) {
        s.load(reg, value);
    }
    return bitstring_run(s, c);
}

bool all_zero_except(const PhasedBitstring &s, const std::vector<QubitId> &keep) {
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (std::find(keep.begin(), keep.end(), qubit(q)) == keep.end() && s.get(qubit(q))) {
            return false;
        }
    }
    return true;
}

Literal literal_for(int kind, std::size_t var) {
    switch (kind) {
    case 0: return Literal::positive(var);
    case 1: return Literal::negative(var);
    default: return Literal::zero();
    }
}

} // namespace

TEST(ClauseCircuit, AllPolarityPatternsAllInputs) {
    // qubits: vars 0..2, zero 3, ancilla 4, output 5
    const auto vars = qubits(0, 3);
    for (int pattern = 0; pattern < 27; ++pattern) {
        const Clause cl{{literal_for(pattern % 3, 0), literal_for(pattern / 3 % 3, 1),
                         literal_for(pattern / 9, 2)}};
        const Circuit c = build_clause_circuit(6, cl, vars, qubit(3), qubit(4), qubit(5));
        for (std::uint64_t v = 0; v < 8; ++v) {
            const PhasedBitstring out = run_on(c, {{vars, v}});
            const std::vector<bool> bools{(v & 1) != 0, (v & 2) != 0, (v & 4) != 0};
            EXPECT_EQ(out.get(qubit(5)), eval_clause(cl, bools)) << pattern << " " << v;
            EXPECT_FALSE(out.get(qubit(4)));
            EXPECT_FALSE(out.get(qubit(3)));
            EXPECT_EQ(out.read(vars), v);
            EXPECT_EQ(out.phase(), 1);
        }
    }
}

TEST(ClauseCircuit, RepeatedAndComplementaryVariables) {
    const auto vars = qubits(0, 2);
    for (int pattern = 0; pattern < 27; ++pattern) {
        // every literal drawn from {x, !x, y, !y, 0} over two variables
        const int k[] = {pattern % 3, pattern / 3 % 3, pattern / 9};
        const Clause cl{{literal_for(k[0], 0), literal_for(k[1], 0), literal_for(k[2] % 2, 1)}};
        const Circuit c = build_clause_circuit(5, cl, vars, qubit(2), qubit(3), qubit(4));
        for (std::uint64_t v = 0; v < 4; ++v) {
            const PhasedBitstring out = run_on(c, {{vars, v}});
            const std::vector<bool> bools{(v & 1) != 0, (v & 2) != 0};
            EXPECT_EQ(out.get(qubit(4)), eval_clause(cl, bools));
            EXPECT_TRUE(all_zero_except(out, {qubit(0), qubit(1), qubit(4)}));
            EXPECT_EQ(out.read(vars), v);
        }
    }
}

TEST(ClauseCircuit, QGatesFollowPolarity) {
    const Clause cl{{Literal::positive(0), Literal::negative(1), Literal::positive(2)}};
    const Circuit c = build_clause_circuit(5, cl, qubits(0, 3), std::nullopt, qubit(3), qubit(4));
    ASSERT_GE(c.gate_count(), 3u);
    // (X, I, X): the Q layer is X on x and z only, then the first Toffoli
    EXPECT_EQ(c.gates()[0], Gate::X(qubit(0)));
    EXPECT_EQ(c.gates()[1], Gate::X(qubit(2)));
    EXPECT_EQ(c.gates()[2].kind, GateKind::ccnot);
}

TEST(ClauseCircuit, AllFalseInput) {
    const Clause cl{{Literal::positive(0), Literal::positive(1), Literal::positive(2)}};
    const Circuit c = build_clause_circuit(5, cl, qubits(0, 3), std::nullopt, qubit(3), qubit(4));
    const PhasedBitstring out = run_on(c, {});
    EXPECT_TRUE(all_zero_except(out, {}));
}

TEST(ClauseCircuit, ZeroLiteralNeedsZeroQubit) {
    const Clause cl{{Literal::positive(0), Literal::zero(), Literal::zero()}};
    EXPECT_THROW(build_clause_circuit(3, cl, qubits(0, 1), std::nullopt, qubit(1), qubit(2)),
                 OracleError);
}

TEST(SatCircuit, RandomFormulasUpToFourClauses) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t vars_n = 1 + rng() % 4;
        const std::size_t k = 1 + rng() % 4;
        CnfFormula f;
        f.var_count = vars_n;
        for (std::size_t j = 0; j < k; ++j) {
            Clause cl;
            for (auto &lit : cl.literals) {
                const auto r = rng() % 7;
                lit = r == 6 ? Literal::zero()
                             : literal_for(static_cast<int>(r % 2), (r / 2) % vars_n);
            }
            f.clauses.push_back(cl);
        }
        const bool shared = trial % 2 == 0;
        std::size_t next = vars_n;
        const QubitId zero = qubit(next++);
        SatQubits q;
        q.clause_ancillas = qubits(next, shared ? 1 : k);
        next += q.clause_ancillas.size();
        q.clause_outputs = qubits(next, k);
        next += k;
        q.conjunction_outputs = qubits(next, k - 1);
        next += k - 1;
        const auto vars = qubits(0, vars_n);
        const SatCircuit sat = build_sat_circuit(next, f, vars, zero, q);
        for (std::uint64_t v = 0; v < (1u << vars_n); ++v) {
            const PhasedBitstring out = run_on(sat.circuit, {{vars, v}});
            std::vector<bool> bools;
            for (std::size_t i = 0; i < vars_n; ++i) {
                bools.push_back((v >> i) & 1U);
            }
            ASSERT_EQ(out.get(sat.output), eval_cnf(f, bools)) << trial;
            for (const auto a : q.clause_ancillas) {
                ASSERT_FALSE(out.get(a));
            }
            ASSERT_FALSE(out.get(zero));
            ASSERT_EQ(out.read(vars), v);
        }
    }
}

TEST(SatCircuit, TrichotomySkeletonAcceptsZeroOneOne) {
    const BVProblem p = load_fixture("trichotomy.smt");
    SatQubits q{qubits(3, 2), qubits(5, 2), qubits(7, 1)};
    const SatCircuit sat = build_sat_circuit(8, p.skeleton, qubits(0, 3), std::nullopt, q);
    // x=0, y=1, z=1
    EXPECT_TRUE(run_on(sat.circuit, {{qubits(0, 3), 0b110}}).get(sat.output));
}

TEST(SatCircuit, SingleClauseOutputIsClauseOutput) {
    CnfFormula f{{Clause{{Literal::positive(0), Literal::negative(1), Literal::zero()}}}, 2};
    SatQubits q{qubits(3, 1), qubits(4, 1), {}};
    const SatCircuit sat = build_sat_circuit(5, f, qubits(0, 2), qubit(2), q);
    EXPECT_EQ(sat.output, qubit(4));
}

TEST(SatCircuit, InsufficientQubits) {
    const BVProblem p = load_fixture("eval_formula.smt");
    SatQubits q{qubits(3, 1), qubits(4, 1), {}};
    EXPECT_THROW(build_sat_circuit(8, p.skeleton, qubits(0, 3), std::nullopt, q), OracleError);
}

namespace {

struct WordRig {
    std::size_t n;
    std::vector<QubitId> a, b, out;
    QubitId extra;
    std::size_t total;

    explicit WordRig(std::size_t width)
        : n(width), a(qubits(0, width)), b(qubits(width, width)), out(qubits(2 * width, width)),
          extra(qubit(3 * width)), total(3 * width + 1) {}
};

void check_binary(BinaryOp op, std::size_t n, std::uint64_t a, std::uint64_t b) {
    const WordRig r(n);
    const Circuit c = op == BinaryOp::add ? build_adder(r.total, r.a, r.b, r.out, r.extra)
                                          : build_bitwise(r.total, op, r.a, r.b, r.out);
    const PhasedBitstring s = run_on(c, {{r.a, a}, {r.b, b}});
    const std::uint64_t mask = (1u << n) - 1;
    std::uint64_t want = 0;
    switch (op) {
    case BinaryOp::add: want = (a + b) & mask; break;
    case BinaryOp::bit_xor: want = a ^ b; break;
    case BinaryOp::bit_and: want = a & b; break;
    default: want = a | b; break;
    }
    ASSERT_EQ(s.read(r.out), want) << a << " " << b;
    ASSERT_EQ(s.read(r.a), a);
    ASSERT_EQ(s.read(r.b), b);
    ASSERT_FALSE(s.get(r.extra));
    ASSERT_EQ(s.phase(), 1);
}

} // namespace

TEST(Arithmetic, AdderExamples) {
    check_binary(BinaryOp::add, 2, 1, 0);
    check_binary(BinaryOp::add, 2, 3, 2);
}

TEST(Arithmetic, ExhaustiveTwoBitRandomThreeBit) {
    std::mt19937_64 rng(12);
    for (const auto op : {BinaryOp::add, BinaryOp::bit_xor, BinaryOp::bit_and, BinaryOp::bit_or}) {
        for (std::uint64_t a = 0; a < 4; ++a) {
            for (std::uint64_t b = 0; b < 4; ++b) {
                check_binary(op, 2, a, b);
            }
        }
        for (int i = 0; i < 40; ++i) {
            check_binary(op, 3, rng() % 8, rng() % 8);
        }
        for (std::uint64_t a = 0; a < 2; ++a) {
            for (std::uint64_t b = 0; b < 2; ++b) {
                check_binary(op, 1, a, b);
            }
        }
    }
}

TEST(Arithmetic, WiderAdderExhaustive) {
    for (std::uint64_t a = 0; a < 32; ++a) {
        for (std::uint64_t b = 0; b < 32; ++b) {
            check_binary(BinaryOp::add, 5, a, b);
        }
    }
}

TEST(Arithmetic, AliasedOperands) {
    // a + a, a ^ a, a & a, a | a share the operand register
    const auto a = qubits(0, 3);
    const auto out = qubits(3, 3);
    for (const auto op : {BinaryOp::add, BinaryOp::bit_xor, BinaryOp::bit_and, BinaryOp::bit_or}) {
        const Circuit c = op == BinaryOp::add ? build_adder(7, a, a, out, qubit(6))
                                              : build_bitwise(7, op, a, a, out);
        for (std::uint64_t v = 0; v < 8; ++v) {
            const PhasedBitstring s = run_on(c, {{a, v}});
            const std::uint64_t want = op == BinaryOp::add       ? (2 * v) % 8
                                       : op == BinaryOp::bit_xor ? 0
                                                                 : v;
            EXPECT_EQ(s.read(out), want);
            EXPECT_EQ(s.read(a), v);
            EXPECT_FALSE(s.get(qubit(6)));
        }
    }
}

TEST(Arithmetic, WidthMismatch) {
    EXPECT_THROW(build_adder(8, qubits(0, 2), qubits(2, 3), qubits(5, 2), qubit(7)), OracleError);
    EXPECT_THROW(build_bitwise(8, BinaryOp::bit_xor, qubits(0, 2), qubits(2, 2), qubits(4, 3)),
                 OracleError);
    EXPECT_THROW(build_bitwise(6, BinaryOp::add, qubits(0, 2), qubits(2, 2), qubits(4, 2)),
                 OracleError);
}

TEST(Arithmetic, AndAnnihilator) {
    for (std::uint64_t b = 0; b < 4; ++b) {
        check_binary(BinaryOp::bit_and, 2, 0, b);
    }
}

TEST(Constant, Bits) {
    const auto out = qubits(0, 2);
    const Circuit one = build_constant(2, 1, out);
    const PhasedBitstring s = run_on(one, {});
    // MSB-first (0,1): the low qubit is set
    EXPECT_TRUE(s.get(out[0]));
    EXPECT_FALSE(s.get(out[1]));
    EXPECT_EQ(build_constant(2, 0, out).gate_count(), 0u);
    EXPECT_EQ(run_on(build_constant(2, 3, out), {}).read(out), 3u);
    EXPECT_THROW(build_constant(2, 4, out), OracleError);
}

namespace {

// Comparator rig: operands, outputs, internals, ancilla. Returns (o1, o2).
std::pair<bool, bool> compare(std::size_t n, std::uint64_t x, std::uint64_t y, bool x_classical,
                              bool y_classical) {
    const auto xs = qubits(0, n);
    const auto ys = qubits(n, n);
    const QubitId o1 = qubit(2 * n), o2 = qubit(2 * n + 1);
    const auto internals = qubits(2 * n + 2, comparator_internal_count(n));
    const QubitId anc = qubit(2 * n + 2 + internals.size());
    const std::size_t total = 2 * n + 3 + internals.size();
    const WordOperand lhs = x_classical ? WordOperand::classical(x, n) : WordOperand::quantum(xs);
    const WordOperand rhs = y_classical ? WordOperand::classical(y, n) : WordOperand::quantum(ys);
    const Circuit c = build_comparator(total, lhs, rhs, o1, o2, internals, anc);
    const PhasedBitstring s = run_on(c, {{xs, x_classical ? 0 : x}, {ys, y_classical ? 0 : y}});
    EXPECT_EQ(s.read(xs), x_classical ? 0 : x);
    EXPECT_EQ(s.read(ys), y_classical ? 0 : y);
    EXPECT_FALSE(s.get(anc));
    EXPECT_EQ(s.phase(), 1);
    // reverse pass clears the internals too
    const PhasedBitstring back = bitstring_run(s, inverse(c));
    EXPECT_TRUE(all_zero_except(back, x_classical ? std::vector<QubitId>{ys} : y_classical ? xs
                                                                                           : [&] {
                                                                                                 auto v = xs;
                                                                                                 v.insert(v.end(), ys.begin(), ys.end());
                                                                                                 return v;
                                                                                             }()));
    return {s.get(o1), s.get(o2)};
}

void expect_contract(std::size_t n, std::uint64_t x, std::uint64_t y, bool xc = false,
                     bool yc = false) {
    const auto [o1, o2] = compare(n, x, y, xc, yc);
    EXPECT_FALSE(o1 && o2) << "(1,1) reached";
    EXPECT_EQ(o1, x > y) << n << ": " << x << " vs " << y;
    EXPECT_EQ(o2, x < y) << n << ": " << x << " vs " << y;
}

} // namespace

TEST(Comparator, Examples) {
    EXPECT_EQ(compare(2, 2, 2, false, false), (std::pair{false, false}));
    EXPECT_EQ(compare(2, 0, 1, false, false), (std::pair{false, true}));
}

TEST(Comparator, ExhaustiveUpToThreeBits) {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t x = 0; x < (1u << n); ++x) {
            for (std::uint64_t y = 0; y < (1u << n); ++y) {
                expect_contract(n, x, y);
                expect_contract(n, x, y, true, false);
                expect_contract(n, x, y, false, true);
                expect_contract(n, x, y, true, true);
            }
        }
    }
}

TEST(Comparator, RandomFiveBits) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        expect_contract(5, rng() % 32, rng() % 32, false, i % 3 == 0);
    }
}

TEST(Comparator, SameOperandIsEqual) {
    const auto xs = qubits(0, 3);
    const Circuit c = build_comparator(10, xs, xs, qubit(3), qubit(4), qubits(5, 4), qubit(9));
    for (std::uint64_t v = 0; v < 8; ++v) {
        const PhasedBitstring s = run_on(c, {{xs, v}});
        EXPECT_FALSE(s.get(qubit(3)));
        EXPECT_FALSE(s.get(qubit(4)));
    }
}

TEST(Comparator, Errors) {
    EXPECT_THROW(build_comparator(9, qubits(0, 2), qubits(2, 3), qubit(5), qubit(6), qubits(7, 2),
                                  qubit(8)),
                 OracleError);
    EXPECT_THROW(build_comparator(8, qubits(0, 2), qubits(2, 2), qubit(4), qubit(5), qubits(6, 1),
                                  qubit(7)),
                 OracleError);
}

TEST(AtomCircuit, AllRelationsAllReachableStates) {
    const std::pair<Relation, bool (*)(int)> rels[] = {
        {Relation::lt, [](int cmp) { return cmp < 0; }},
        {Relation::gt, [](int cmp) { return cmp > 0; }},
        {Relation::eq, [](int cmp) { return cmp == 0; }},
        {Relation::ge, [](int cmp) { return cmp >= 0; }},
        {Relation::le, [](int cmp) { return cmp <= 0; }},
        {Relation::ne, [](int cmp) { return cmp != 0; }},
    };
    // (o1, o2) for greater, less, equal
    const std::pair<int, std::pair<bool, bool>> states[] = {
        {1, {true, false}}, {-1, {false, true}}, {0, {false, false}}};
    for (const auto &[rel, truth] : rels) {
        const Circuit c = build_atom_circuit(3, rel, qubit(0), qubit(1), qubit(2));
        for (const auto &[cmp, o] : states) {
            const std::uint64_t v = (o.first ? 1 : 0) | (o.second ? 2 : 0);
            const PhasedBitstring s = run_on(c, {{qubits(0, 2), v}});
            EXPECT_EQ(s.get(qubit(2)), truth(cmp));
            EXPECT_EQ(s.read(qubits(0, 2)), v);
        }
    }
}

TEST(AtomCircuit, Aliasing) {
    EXPECT_EQ(build_atom_circuit(2, Relation::lt, qubit(0), qubit(1), qubit(1)).gate_count(), 0u);
    EXPECT_EQ(build_atom_circuit(2, Relation::gt, qubit(0), qubit(1), qubit(0)).gate_count(), 0u);
    EXPECT_THROW(build_atom_circuit(2, Relation::eq, qubit(0), qubit(1), qubit(0)), OracleError);
}

TEST(ConsistencyExtractor, FourCases) {
    const Circuit c = build_consistency_extractor(2, qubit(0), qubit(1));
    for (int atom = 0; atom < 2; ++atom) {
        for (int vb = 0; vb < 2; ++vb) {
            const PhasedBitstring s =
                run_on(c, {{qubits(0, 1), static_cast<std::uint64_t>(atom)},
                           {qubits(1, 1), static_cast<std::uint64_t>(vb)}});
            EXPECT_EQ(s.get(qubit(1)), atom == vb);
            EXPECT_EQ(s.get(qubit(0)), atom == 1);
        }
    }
}

TEST(SolutionInverter, PhaseTable) {
    // consistency 0,1; skeleton 2; addition 3; flag 4
    const Circuit c =
        build_solution_inverter(5, qubits(0, 2), qubit(2), qubit(3), qubit(4));
    for (std::uint64_t v = 0; v < 16; ++v) {
        const PhasedBitstring s = run_on(c, {{qubits(0, 4), v}});
        const bool marked = (v & 0b0111) == 0b0111 && (v & 0b1000) == 0;
        EXPECT_EQ(s.phase(), marked ? -1 : 1) << v;
        EXPECT_EQ(s.read(qubits(0, 4)), v);
        EXPECT_FALSE(s.get(qubit(4)));
    }
    const Gate &mcx = c.gates()[1];
    EXPECT_EQ(mcx.controls.size(), 4u); // m + 1 controls plus the addition qubit
}

TEST(SolutionInverter, NoAdditionQubit) {
    const Circuit c = build_solution_inverter(2, {}, qubit(0), std::nullopt, qubit(1));
    EXPECT_EQ(run_on(c, {{qubits(0, 1), 1}}).phase(), -1);
    EXPECT_EQ(run_on(c, {}).phase(), 1);
}

namespace {

void expect_oracle_matches_formula(const BVProblem &p, LayoutMode mode) {
    const Oracle o = build_oracle(p, {mode, true});
    const EffectiveOracle table = extract_effective_oracle(o.circuit, o.layout.search.qubits);
    const std::size_t bits = p.assignment_bits();
    ASSERT_EQ(table.phases.size(), std::size_t{2} << bits);
    for (std::uint64_t v = 0; v < table.phases.size(); ++v) {
        const bool add = (v >> bits) & 1U;
        const bool want = !add && eval_formula(p, decode_assignment(p, v & ((1u << bits) - 1)));
        ASSERT_EQ(table.phases[v], want ? -1 : 1) << to_text(p) << " v=" << v;
    }
    const LayoutReport s = stats(o.circuit);
    std::size_t sum = 0;
    for (const auto &[g, n] : s.group_qubits) {
        sum += n;
    }
    EXPECT_EQ(sum, s.total_qubits);
}

} // namespace

TEST(Oracle, EvaluationFormulaMarksSixOf256) {
    const BVProblem p = load_fixture("eval_formula.smt");
    for (const auto mode : {LayoutMode::paper, LayoutMode::compact}) {
        const Oracle o = build_oracle(p, {mode, true});
        EXPECT_EQ(o.layout.search.size(), 8u);
        const EffectiveOracle t = extract_effective_oracle(o.circuit, o.layout.search.qubits);
        EXPECT_EQ(t.marked_count(), 6u);
        expect_oracle_matches_formula(p, mode);
    }
}

TEST(Oracle, TableRowIsMarkedOnFullCircuit) {
    const BVProblem p = load_fixture("eval_formula.smt");
    const Oracle o = build_oracle(p);
    // 0010001: (x,y,z)=(0,0,1) a=00 b=01, addition qubit 0
    std::uint64_t v = 0;
    const std::string row = "0010001";
    for (std::size_t j = 0; j < row.size(); ++j) {
        v |= std::uint64_t{row[j] == '1'} << j;
    }
    PhasedBitstring s(o.circuit.qubit_count());
    s.load(o.layout.search.qubits, v);
    const PhasedBitstring out = bitstring_run(s, o.circuit);
    EXPECT_EQ(out.phase(), -1);
    EXPECT_TRUE(all_zero_except(out, o.layout.search.qubits));
    EXPECT_EQ(out.read(o.layout.search.qubits), v);
}

TEST(Oracle, PaperLayoutAccounting) {
    const Oracle o = build_oracle(load_fixture("eval_formula.smt"));
    const LayoutReport s = stats(o.circuit);
    EXPECT_EQ(s.total_qubits, 32u);
    EXPECT_EQ(s.group_qubits.at(group::smt), 14u);
    EXPECT_EQ(s.group_qubits.at(group::sat), 3u);
    EXPECT_EQ(s.group_qubits.at(group::adder), 3u);
    EXPECT_EQ(s.group_qubits.at(group::bitwise_xor), 2u);
    EXPECT_EQ(s.group_qubits.at(group::comparator), 10u);
    EXPECT_EQ(o.layout.comparator_outputs.size(), 4u);
    EXPECT_EQ(o.layout.clause_ancillas.size(), 2u);
    EXPECT_EQ(o.layout.clause_outputs.size(), 3u);
}

TEST(Oracle, CompactLayoutIsSmaller) {
    const BVProblem p = load_fixture("eval_formula.smt");
    const Oracle o = build_oracle(p, {LayoutMode::compact, true});
    const std::size_t total = stats(o.circuit).total_qubits;
    EXPECT_LT(total, 32u);
    EXPECT_EQ(total, 25u);
}

TEST(Oracle, TrichotomyMarksSixteen) {
    const BVProblem p = load_fixture("trichotomy.smt");
    const Oracle o = build_oracle(p);
    EXPECT_EQ(extract_effective_oracle(o.circuit, o.layout.search.qubits).marked_count(), 16u);
    expect_oracle_matches_formula(p, LayoutMode::compact);
}

TEST(Oracle, PureSatHasNoComparators) {
    const BVProblem p = load_fixture("pure_sat.smt");
    const Oracle o = build_oracle(p);
    EXPECT_EQ(stats(o.circuit).group_qubits.count(group::comparator), 0u);
    EXPECT_EQ(o.layout.comparator_outputs.size(), 0u);
    const EffectiveOracle t = extract_effective_oracle(o.circuit, o.layout.search.qubits);
    EXPECT_EQ(t.marked_count(), 6u);
}

TEST(Oracle, EmptyClauseMarksNothing) {
    const BVProblem p = parse_problem("(problem (vars (a 1)) (cnf (clause 0) (clause x)) "
                                      "(atom x (= a 1)))");
    const Oracle o = build_oracle(p);
    EXPECT_EQ(extract_effective_oracle(o.circuit, o.layout.search.qubits).marked_count(), 0u);
}

TEST(Oracle, AppliedTwiceIsIdentity) {
    const Oracle o = build_oracle(load_fixture("eval_formula.smt"));
    const Circuit twice = concat(o.circuit, o.circuit);
    for (std::uint64_t v = 0; v < 256; ++v) {
        PhasedBitstring s(twice.qubit_count());
        s.load(o.layout.search.qubits, v);
        const PhasedBitstring out = bitstring_run(s, twice);
        ASSERT_EQ(out, s);
    }
}

TEST(Oracle, RandomProblemsMatchClassicalOracle) {
    std::mt19937_64 rng(2718);
    const char *rels[] = {"<", ">", "=", ">=", "<=", "!="};
    const char *ops[] = {"+", "^", "&", "|"};
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const unsigned w = 1 + static_cast<unsigned>(rng() % 3);
        const std::uint64_t limit = 1u << w;
        std::function<std::string(int)> expr = [&](int depth) -> std::string {
            const auto r = rng() % 6;
            if (depth == 0 || r < 2) {
                return r == 0 ? "a" : "b";
            }
            if (r == 2) {
                return std::to_string(rng() % limit);
            }
            return std::string("(") + ops[rng() % 4] + " " + expr(depth - 1) + " " +
                   expr(depth - 1) + ")";
        };
        const std::size_t nb = 1 + rng() % 3;
        std::string text = "(problem (vars (a " + std::to_string(w) + ") (b " +
                           std::to_string(w) + ")) (cnf";
        for (std::size_t j = 0, k = 1 + rng() % 3; j < k; ++j) {
            text += " (clause";
            for (std::size_t l = 0, m = 1 + rng() % 3; l < m; ++l) {
                const std::string name = "v" + std::to_string(rng() % nb);
                text += rng() % 2 ? " " + name : " (not " + name + ")";
            }
            text += ")";
        }
        text += ")";
        for (std::size_t i = 0; i < nb; ++i) {
            if (rng() % 4 == 0) {
                continue; // free boolean
            }
            std::string lhs = expr(2);
            std::string rhs = expr(2);
            if (rng() % 5 == 0) {
                lhs = "(++ a b)";
                rhs = "(++ " + expr(1) + " b)";
            }
            text += " (atom v" + std::to_string(i) + " (" + rels[rng() % 6] + " " + lhs + " " +
                    rhs + "))";
        }
        text += ")";
        BVProblem p;
        try {
            p = parse_problem(text);
        } catch (const FormulaError &) {
            continue; // e.g. a variable only mentioned by an atom, or constant-only atoms
        }
        expect_oracle_matches_formula(p, LayoutMode::paper);
        expect_oracle_matches_formula(p, LayoutMode::compact);
        ++checked;
    }
    EXPECT_GE(checked, 40);
}

TEST(Oracle, AdditionQubitDisabled) {
    const BVProblem p = load_fixture("eval_formula.smt");
    const Oracle o = build_oracle(p, {LayoutMode::paper, false});
    EXPECT_EQ(o.layout.search.size(), 7u);
    EXPECT_FALSE(o.layout.addition.has_value());
    EXPECT_EQ(extract_effective_oracle(o.circuit, o.layout.search.qubits).marked_count(), 6u);
}

TEST(Diffuser, OneQubitIsReflectionAboutPlus) {
    // 2|+><+| - I = X: the uniform axis is fixed, |0> goes to |1>
    const Circuit d = build_diffuser(1, qubits(0, 1));
    StateVector plus(1);
    plus.apply(Gate::H(qubit(0)));
    const StateVector out = dense_run(plus, d);
    EXPECT_NEAR(std::abs(out[0] - out[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out[0]), 1.0 / std::sqrt(2.0), 1e-12);
    const StateVector zero = dense_run(StateVector(1), d);
    EXPECT_NEAR(std::abs(zero[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(zero[1]), 1.0, 1e-12);
}

TEST(Diffuser, ThreeQubitMatrixIsInversionAboutMean) {
    const Circuit d = build_diffuser(3, qubits(0, 3));
    std::complex<double> phase = 0.0;
    for (std::uint64_t col = 0; col < 8; ++col) {
        const StateVector out = dense_run(StateVector(3, col), d);
        EXPECT_NEAR(out.norm(), 1.0, 1e-12);
        for (std::uint64_t row = 0; row < 8; ++row) {
            const double want = 2.0 / 8.0 - (row == col ? 1.0 : 0.0);
            if (phase == 0.0) {
                phase = out[row] / want; // fix the global phase from the first entry
            }
            EXPECT_NEAR(std::abs(out[row] - phase * want), 0.0, 1e-12) << row << "," << col;
        }
    }
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
}

TEST(Diffuser, EmptyRegister) {
    EXPECT_THROW(build_diffuser(1, {}), OracleError);
}
