#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qsmt {

enum class BinaryOp { add, bit_xor, bit_and, bit_or, concat };
enum class Relation { lt, gt, eq, ge, le, ne };

std::string_view symbol(BinaryOp op);
std::string_view symbol(Relation rel);

class FormulaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by the text parser. Line and column are 1-based.
class ParseError : public FormulaError {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

class EvalError : public FormulaError {
  public:
    using FormulaError::FormulaError;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/**
 * Bit-vector term. Widths are checked at construction: arithmetic and
 * bitwise operands must agree, concatenation adds widths, constants must
 * fit their width.
 */
struct Expr {
    struct Var {
        std::size_t index; // into BVProblem::bv_vars
    };
    struct Const {
        std::uint64_t value;
    };
    struct Binary {
        BinaryOp op;
        ExprPtr lhs;
        ExprPtr rhs;
    };

    std::variant<Var, Const, Binary> node;
    unsigned width = 0;

    static ExprPtr var(std::size_t index, unsigned width);
    static ExprPtr constant(std::uint64_t value, unsigned width);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

    bool is_constant() const { return std::holds_alternative<Const>(node); }
};

bool structurally_equal(const Expr &a, const Expr &b);

struct Atom {
    ExprPtr lhs;
    Relation rel = Relation::eq;
    ExprPtr rhs;
    std::size_t id = 0; // declaration order
};

struct Literal {
    enum class Kind { pos, neg, zero };

    Kind kind = Kind::zero;
    std::size_t var = 0;

    static Literal positive(std::size_t v) { return {Kind::pos, v}; }
    static Literal negative(std::size_t v) { return {Kind::neg, v}; }
    static Literal zero() { return {Kind::zero, 0}; }

    friend bool operator==(const Literal &, const Literal &) = default;
};

struct Clause {
    std::array<Literal, 3> literals;

    friend bool operator==(const Clause &, const Clause &) = default;
};

struct CnfFormula {
    std::vector<Clause> clauses;
    std::size_t var_count = 0;
};

struct BvVariable {
    std::string name;
    unsigned width = 0;
};

/**
 * A parsed instance: a 3-CNF skeleton over abstract booleans, the atom
 * bound to each boolean (if any), and the bit-vector variables.
 *
 * Search order (used for bit strings and the search register) is the
 * skeleton booleans first, then every bit-vector variable MSB-first.
 */
struct BVProblem {
    CnfFormula skeleton;
    std::vector<std::string> bool_names;
    std::vector<std::optional<Atom>> atoms; // indexed by boolean variable
    std::vector<BvVariable> bv_vars;
    unsigned width = 0; // common bit-vector width, 0 for pure SAT

    std::size_t atom_count() const;
    std::size_t bool_count() const { return skeleton.var_count; }
    std::size_t assignment_bits() const { return bool_count() + bv_vars.size() * width; }

    /// Checks every structural invariant; throws FormulaError on violation.
    void validate() const;
};

struct Assignment {
    std::vector<bool> bools;
    std::vector<std::uint64_t> bv;

    friend bool operator==(const Assignment &, const Assignment &) = default;
};

BVProblem parse_problem(std::string_view text);

/// Renders a problem in the input grammar; parse_problem(to_text(p)) rebuilds p.
std::string to_text(const BVProblem &problem);
std::string to_text(const Expr &expr, const BVProblem &problem);

std::uint64_t eval_expr(const Expr &expr, const Assignment &a);
bool eval_atom(const Atom &atom, const Assignment &a);
bool eval_literal(const Literal &lit, const std::vector<bool> &bools);
bool eval_clause(const Clause &clause, const std::vector<bool> &bools);
bool eval_cnf(const CnfFormula &cnf, const std::vector<bool> &bools);
bool eval_formula(const BVProblem &problem, const Assignment &a);

// Search-order encoding. Bit p of an index is presentation position p.
std::uint64_t encode_assignment(const BVProblem &problem, const Assignment &a);
Assignment decode_assignment(const BVProblem &problem, std::uint64_t index);
std::string assignment_bitstring(const BVProblem &problem, const Assignment &a);
/// e.g. "(x,y,z)=(0,0,1) a=01 b=00"
std::string describe_assignment(const BVProblem &problem, const Assignment &a);

} // namespace qsmt
