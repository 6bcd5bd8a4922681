#include "qsmt/formula.hpp"

#include <sstream>
#include <unordered_set>

namespace qsmt {

namespace {

std::uint64_t mask(unsigned width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

} // namespace

std::string_view symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::add:
        return "+";
    case BinaryOp::bit_xor:
        return "^";
    case BinaryOp::bit_and:
        return "&";
    case BinaryOp::bit_or:
        return "|";
    case BinaryOp::concat:
        return "++";
    }
    return "?";
}

std::string_view symbol(Relation rel) {
    switch (rel) {
    case Relation::lt:
        return "<";
    case Relation::gt:
        return ">";
    case Relation::eq:
        return "=";
    case Relation::ge:
        return ">=";
    case Relation::le:
        return "<=";
    case Relation::ne:
        return "!=";
    }
    return "?";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : FormulaError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

ExprPtr Expr::var(std::size_t index, unsigned width) {
    if (width == 0 || width > 64) {
        throw FormulaError("variable width must be in [1, 64]");
    }
    return std::make_shared<const Expr>(Expr{Var{index}, width});
}

ExprPtr Expr::constant(std::uint64_t value, unsigned width) {
    if (width == 0 || width > 64) {
        throw FormulaError("constant width must be in [1, 64]");
    }
    if (value > mask(width)) {
        throw FormulaError("constant " + std::to_string(value) + " does not fit in " +
                           std::to_string(width) + " bits");
    }
    return std::make_shared<const Expr>(Expr{Const{value}, width});
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    if (!lhs || !rhs) {
        throw FormulaError("null operand");
    }
    unsigned width = 0;
    if (op == BinaryOp::concat) {
        width = lhs->width + rhs->width;
        if (width > 64) {
            throw FormulaError("concatenation wider than 64 bits");
        }
    } else {
        if (lhs->width != rhs->width) {
            throw FormulaError("width mismatch: operator '" + std::string(symbol(op)) +
                               "' applied to " + std::to_string(lhs->width) + "-bit and " +
                               std::to_string(rhs->width) + "-bit operands");
        }
        width = lhs->width;
    }
    return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, width});
}

bool structurally_equal(const Expr &a, const Expr &b) {
    if (a.width != b.width || a.node.index() != b.node.index()) {
        return false;
    }
    if (const auto *va = std::get_if<Expr::Var>(&a.node)) {
        return va->index == std::get<Expr::Var>(b.node).index;
    }
    if (const auto *ca = std::get_if<Expr::Const>(&a.node)) {
        return ca->value == std::get<Expr::Const>(b.node).value;
    }
    const auto &ba = std::get<Expr::Binary>(a.node);
    const auto &bb = std::get<Expr::Binary>(b.node);
    return ba.op == bb.op && structurally_equal(*ba.lhs, *bb.lhs) &&
           structurally_equal(*ba.rhs, *bb.rhs);
}

std::size_t BVProblem::atom_count() const {
    std::size_t count = 0;
    for (const auto &atom : atoms) {
        count += atom.has_value() ? 1 : 0;
    }
    return count;
}

namespace {

void validate_expr(const Expr &expr, const BVProblem &p) {
    if (const auto *v = std::get_if<Expr::Var>(&expr.node)) {
        if (v->index >= p.bv_vars.size()) {
            throw FormulaError("expression references an undeclared variable");
        }
        if (expr.width != p.bv_vars[v->index].width) {
            throw FormulaError("variable '" + p.bv_vars[v->index].name + "' used with wrong width");
        }
    } else if (const auto *c = std::get_if<Expr::Const>(&expr.node)) {
        if (c->value > mask(expr.width)) {
            throw FormulaError("constant out of range");
        }
    } else {
        const auto &b = std::get<Expr::Binary>(expr.node);
        validate_expr(*b.lhs, p);
        validate_expr(*b.rhs, p);
        const unsigned expected = b.op == BinaryOp::concat ? b.lhs->width + b.rhs->width
                                                           : b.lhs->width;
        if (b.op != BinaryOp::concat && b.lhs->width != b.rhs->width) {
            throw FormulaError("width mismatch in binary expression");
        }
        if (expr.width != expected) {
            throw FormulaError("binary expression has inconsistent result width");
        }
    }
}

} // namespace

void BVProblem::validate() const {
    if (skeleton.var_count == 0) {
        throw FormulaError("problem has no boolean variables");
    }
    if (skeleton.clauses.empty()) {
        throw FormulaError("skeleton has no clauses");
    }
    if (bool_names.size() != skeleton.var_count || atoms.size() != skeleton.var_count) {
        throw FormulaError("boolean variable tables disagree with the skeleton");
    }
    for (const auto &clause : skeleton.clauses) {
        for (const auto &lit : clause.literals) {
            if (lit.kind != Literal::Kind::zero && lit.var >= skeleton.var_count) {
                throw FormulaError("literal references an unknown boolean variable");
            }
        }
    }
    std::unordered_set<std::string> names;
    for (const auto &v : bv_vars) {
        if (v.width != width) {
            throw FormulaError("width mismatch: variable '" + v.name + "' is " +
                               std::to_string(v.width) + " bits, problem width is " +
                               std::to_string(width));
        }
        if (!names.insert(v.name).second) {
            throw FormulaError("duplicate variable '" + v.name + "'");
        }
    }
    if (width > 32) {
        throw FormulaError("bit-vector width above 32 is not supported");
    }
    for (const auto &atom : atoms) {
        if (!atom) {
            continue;
        }
        validate_expr(*atom->lhs, *this);
        validate_expr(*atom->rhs, *this);
        if (atom->lhs->width != atom->rhs->width) {
            throw FormulaError("width mismatch between atom sides");
        }
    }
}

std::uint64_t eval_expr(const Expr &expr, const Assignment &a) {
    if (const auto *v = std::get_if<Expr::Var>(&expr.node)) {
        if (v->index >= a.bv.size()) {
            throw EvalError("unbound bit-vector variable #" + std::to_string(v->index));
        }
        return a.bv[v->index] & mask(expr.width);
    }
    if (const auto *c = std::get_if<Expr::Const>(&expr.node)) {
        return c->value;
    }
    const auto &b = std::get<Expr::Binary>(expr.node);
    const std::uint64_t lhs = eval_expr(*b.lhs, a);
    const std::uint64_t rhs = eval_expr(*b.rhs, a);
    switch (b.op) {
    case BinaryOp::add:
        return (lhs + rhs) & mask(expr.width);
    case BinaryOp::bit_xor:
        return lhs ^ rhs;
    case BinaryOp::bit_and:
        return lhs & rhs;
    case BinaryOp::bit_or:
        return lhs | rhs;
    case BinaryOp::concat:
        return (b.rhs->width >= 64 ? 0 : lhs << b.rhs->width) | rhs;
    }
    return 0;
}

bool eval_atom(const Atom &atom, const Assignment &a) {
    const std::uint64_t lhs = eval_expr(*atom.lhs, a);
    const std::uint64_t rhs = eval_expr(*atom.rhs, a);
    switch (atom.rel) {
    case Relation::lt:
        return lhs < rhs;
    case Relation::gt:
        return lhs > rhs;
    case Relation::eq:
        return lhs == rhs;
    case Relation::ge:
        return lhs >= rhs;
    case Relation::le:
        return lhs <= rhs;
    case Relation::ne:
        return lhs != rhs;
    }
    return false;
}

bool eval_literal(const Literal &lit, const std::vector<bool> &bools) {
    switch (lit.kind) {
    case Literal::Kind::zero:
        return false;
    case Literal::Kind::pos:
    case Literal::Kind::neg:
        if (lit.var >= bools.size()) {
            throw EvalError("unbound boolean variable #" + std::to_string(lit.var));
        }
        return lit.kind == Literal::Kind::pos ? bools[lit.var] : !bools[lit.var];
    }
    return false;
}

bool eval_clause(const Clause &clause, const std::vector<bool> &bools) {
    bool value = false;
    for (const auto &lit : clause.literals) {
        value = eval_literal(lit, bools) || value;
    }
    return value;
}

bool eval_cnf(const CnfFormula &cnf, const std::vector<bool> &bools) {
    bool value = true;
    for (const auto &clause : cnf.clauses) {
        value = eval_clause(clause, bools) && value;
    }
    return value;
}

bool eval_formula(const BVProblem &problem, const Assignment &a) {
    if (a.bools.size() < problem.bool_count()) {
        throw EvalError("assignment does not bind every boolean variable");
    }
    for (std::size_t i = 0; i < problem.atoms.size(); ++i) {
        if (problem.atoms[i] && a.bools[i] != eval_atom(*problem.atoms[i], a)) {
            return false;
        }
    }
    return eval_cnf(problem.skeleton, a.bools);
}

std::uint64_t encode_assignment(const BVProblem &problem, const Assignment &a) {
    std::uint64_t index = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < problem.bool_count(); ++i, ++pos) {
        if (a.bools.at(i)) {
            index |= std::uint64_t{1} << pos;
        }
    }
    for (std::size_t v = 0; v < problem.bv_vars.size(); ++v) {
        for (unsigned k = 0; k < problem.width; ++k, ++pos) {
            const unsigned bit = problem.width - 1 - k; // MSB first
            if ((a.bv.at(v) >> bit) & 1U) {
                index |= std::uint64_t{1} << pos;
            }
        }
    }
    return index;
}

Assignment decode_assignment(const BVProblem &problem, std::uint64_t index) {
    Assignment a;
    a.bools.resize(problem.bool_count());
    a.bv.assign(problem.bv_vars.size(), 0);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < problem.bool_count(); ++i, ++pos) {
        a.bools[i] = ((index >> pos) & 1U) != 0;
    }
    for (std::size_t v = 0; v < problem.bv_vars.size(); ++v) {
        for (unsigned k = 0; k < problem.width; ++k, ++pos) {
            a.bv[v] = (a.bv[v] << 1) | ((index >> pos) & 1U);
        }
    }
    return a;
}

std::string assignment_bitstring(const BVProblem &problem, const Assignment &a) {
    const std::uint64_t index = encode_assignment(problem, a);
    std::string out(problem.assignment_bits(), '0');
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p] = ((index >> p) & 1U) ? '1' : '0';
    }
    return out;
}

std::string describe_assignment(const BVProblem &problem, const Assignment &a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < problem.bool_count(); ++i) {
        os << (i ? "," : "") << problem.bool_names[i];
    }
    os << ")=(";
    for (std::size_t i = 0; i < problem.bool_count(); ++i) {
        os << (i ? "," : "") << (a.bools[i] ? 1 : 0);
    }
    os << ')';
    for (std::size_t v = 0; v < problem.bv_vars.size(); ++v) {
        os << ' ' << problem.bv_vars[v].name << '=';
        for (unsigned k = problem.width; k-- > 0;) {
            os << ((a.bv[v] >> k) & 1U);
        }
    }
    return os.str();
}

} // namespace qsmt
