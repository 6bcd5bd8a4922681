#include "qsmt/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_map>

namespace qsmt {

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Reader {
  public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_document() {
        skip_space();
        if (at_end()) {
            fail("expected '(problem', found end of input");
        }
        SExpr root = read();
        skip_space();
        if (!at_end()) {
            fail("unexpected trailing input after the problem form");
        }
        return root;
    }

  private:
    [[noreturn]] void fail(const std::string &message) const {
        throw ParseError(line_, column_, message);
    }

    bool at_end() const { return pos_ >= text_.size(); }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (!at_end()) {
            const char c = text_[pos_];
            if (c == ';') {
                while (!at_end() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip_space();
        SExpr node;
        node.line = line_;
        node.column = column_;
        if (at_end()) {
            fail("unexpected end of input, expected ')'");
        }
        const char c = text_[pos_];
        if (c == ')') {
            fail("unexpected ')'");
        }
        if (c == '(') {
            node.is_list = true;
            advance();
            for (;;) {
                skip_space();
                if (at_end()) {
                    fail("unexpected end of input, expected ')'");
                }
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                node.items.push_back(read());
            }
            return node;
        }
        while (!at_end()) {
            const char d = text_[pos_];
            if (d == '(' || d == ')' || d == ';' ||
                std::isspace(static_cast<unsigned char>(d))) {
                break;
            }
            node.atom.push_back(d);
            advance();
        }
        return node;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

[[noreturn]] void fail_at(const SExpr &at, const std::string &message) {
    throw ParseError(at.line, at.column, message);
}

bool is_identifier(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (const char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

bool is_number(const std::string &s) {
    if (s.empty()) {
        return false;
    }
    for (const char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::uint64_t to_number(const SExpr &at) {
    std::uint64_t value = 0;
    const auto *first = at.atom.data();
    const auto *last = first + at.atom.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        fail_at(at, "integer '" + at.atom + "' is out of range");
    }
    return value;
}

bool is_keyword(const SExpr &s, std::string_view word) {
    return s.is_list && !s.items.empty() && !s.items[0].is_list && s.items[0].atom == word;
}

std::string describe(const SExpr &s) {
    if (!s.is_list) {
        return "'" + s.atom + "'";
    }
    if (!s.items.empty() && !s.items[0].is_list) {
        return "'(" + s.items[0].atom + " ...)'";
    }
    return "a list";
}

std::optional<BinaryOp> lookup_op(const std::string &s) {
    static const std::map<std::string, BinaryOp, std::less<>> ops{
        {"+", BinaryOp::add},     {"^", BinaryOp::bit_xor}, {"&", BinaryOp::bit_and},
        {"|", BinaryOp::bit_or},  {"++", BinaryOp::concat},
    };
    const auto it = ops.find(s);
    return it == ops.end() ? std::nullopt : std::optional<BinaryOp>(it->second);
}

std::optional<Relation> lookup_rel(const std::string &s) {
    static const std::map<std::string, Relation, std::less<>> rels{
        {"<", Relation::lt},  {">", Relation::gt},  {"=", Relation::eq},
        {">=", Relation::ge}, {"<=", Relation::le}, {"!=", Relation::ne},
    };
    const auto it = rels.find(s);
    return it == rels.end() ? std::nullopt : std::optional<Relation>(it->second);
}

class Interpreter {
  public:
    BVProblem run(const SExpr &root) {
        if (!is_keyword(root, "problem")) {
            fail_at(root, "expected '(problem', found " + describe(root));
        }
        std::size_t i = 1;
        if (i >= root.items.size() || !is_keyword(root.items[i], "vars")) {
            fail_at(i < root.items.size() ? root.items[i] : root, "expected '(vars' section");
        }
        read_vars(root.items[i++]);
        if (i >= root.items.size() || !is_keyword(root.items[i], "cnf")) {
            fail_at(i < root.items.size() ? root.items[i] : root, "expected '(cnf' section");
        }
        read_cnf(root.items[i++]);
        for (; i < root.items.size(); ++i) {
            if (!is_keyword(root.items[i], "atom")) {
                fail_at(root.items[i], "expected '(atom', found " + describe(root.items[i]));
            }
            read_atom(root.items[i]);
        }

        problem_.skeleton.var_count = problem_.bool_names.size();
        problem_.atoms.resize(problem_.bool_names.size());
        for (auto &[var, atom] : pending_atoms_) {
            problem_.atoms[var] = std::move(atom);
        }
        try {
            problem_.validate();
        } catch (const ParseError &) {
            throw;
        } catch (const FormulaError &e) {
            fail_at(root, e.what());
        }
        return std::move(problem_);
    }

  private:
    void read_vars(const SExpr &vars) {
        std::optional<unsigned> width;
        for (std::size_t i = 1; i < vars.items.size(); ++i) {
            const SExpr &decl = vars.items[i];
            if (!decl.is_list || decl.items.size() != 2 || decl.items[0].is_list ||
                decl.items[1].is_list) {
                fail_at(decl, "expected '(name width)' variable declaration");
            }
            const std::string &name = decl.items[0].atom;
            if (!is_identifier(name)) {
                fail_at(decl.items[0], "invalid variable name '" + name + "'");
            }
            if (!is_number(decl.items[1].atom)) {
                fail_at(decl.items[1], "expected an integer width, found '" +
                                           decl.items[1].atom + "'");
            }
            const std::uint64_t w = to_number(decl.items[1]);
            if (w == 0 || w > 32) {
                fail_at(decl.items[1], "variable width must be in [1, 32]");
            }
            if (width && *width != w) {
                fail_at(decl, "width mismatch: '" + name + "' is " + std::to_string(w) +
                                  " bits but earlier variables are " + std::to_string(*width) +
                                  " bits");
            }
            width = static_cast<unsigned>(w);
            if (bv_index_.count(name)) {
                fail_at(decl.items[0], "duplicate variable '" + name + "'");
            }
            bv_index_[name] = problem_.bv_vars.size();
            problem_.bv_vars.push_back({name, static_cast<unsigned>(w)});
        }
        problem_.width = width.value_or(0);
    }

    std::size_t bool_var(const SExpr &at) {
        if (at.is_list || !is_identifier(at.atom)) {
            fail_at(at, "expected a boolean variable name, found " + describe(at));
        }
        if (bv_index_.count(at.atom)) {
            fail_at(at, "'" + at.atom + "' is a bit-vector variable, not a boolean");
        }
        const auto it = bool_index_.find(at.atom);
        if (it != bool_index_.end()) {
            return it->second;
        }
        const std::size_t index = problem_.bool_names.size();
        bool_index_[at.atom] = index;
        problem_.bool_names.push_back(at.atom);
        return index;
    }

    Literal read_literal(const SExpr &s) {
        if (!s.is_list && s.atom == "0") {
            return Literal::zero();
        }
        if (is_keyword(s, "not")) {
            if (s.items.size() != 2) {
                fail_at(s, "expected '(not name)'");
            }
            return Literal::negative(bool_var(s.items[1]));
        }
        return Literal::positive(bool_var(s));
    }

    void read_cnf(const SExpr &cnf) {
        if (cnf.items.size() < 2) {
            fail_at(cnf, "cnf section needs at least one clause");
        }
        for (std::size_t i = 1; i < cnf.items.size(); ++i) {
            const SExpr &c = cnf.items[i];
            if (!is_keyword(c, "clause")) {
                fail_at(c, "expected '(clause', found " + describe(c));
            }
            const std::size_t n = c.items.size() - 1;
            if (n == 0) {
                fail_at(c, "empty clause; write '(clause 0)' for constant false");
            }
            if (n > 3) {
                fail_at(c, "clause has " + std::to_string(n) +
                               " literals; at most 3 are supported");
            }
            Clause clause{{Literal::zero(), Literal::zero(), Literal::zero()}};
            for (std::size_t k = 0; k < n; ++k) {
                clause.literals[k] = read_literal(c.items[k + 1]);
            }
            problem_.skeleton.clauses.push_back(clause);
        }
    }

    // Width an expression has regardless of context; nullopt for bare constants.
    std::optional<unsigned> natural_width(const SExpr &s) {
        if (!s.is_list) {
            if (is_number(s.atom)) {
                return std::nullopt;
            }
            const auto it = bv_index_.find(s.atom);
            if (it == bv_index_.end()) {
                fail_at(s, "unknown variable '" + s.atom + "'");
            }
            return problem_.bv_vars[it->second].width;
        }
        const BinaryOp op = check_op(s);
        const auto lhs = natural_width(s.items[1]);
        const auto rhs = natural_width(s.items[2]);
        if (op == BinaryOp::concat) {
            if (lhs && rhs) {
                return *lhs + *rhs;
            }
            return std::nullopt;
        }
        return lhs ? lhs : rhs;
    }

    BinaryOp check_op(const SExpr &s) {
        if (s.items.empty() || s.items[0].is_list) {
            fail_at(s, "expected an operator application");
        }
        const auto op = lookup_op(s.items[0].atom);
        if (!op) {
            fail_at(s.items[0], "unsupported operator '" + s.items[0].atom + "'");
        }
        if (s.items.size() != 3) {
            fail_at(s, "operator '" + s.items[0].atom + "' takes exactly two operands");
        }
        return *op;
    }

    ExprPtr build(const SExpr &s, unsigned width) {
        try {
            if (!s.is_list) {
                if (is_number(s.atom)) {
                    return Expr::constant(to_number(s), width);
                }
                const std::size_t index = bv_index_.at(s.atom);
                const unsigned w = problem_.bv_vars[index].width;
                if (w != width) {
                    fail_at(s, "width mismatch: '" + s.atom + "' is " + std::to_string(w) +
                                   " bits where " + std::to_string(width) +
                                   " bits are required");
                }
                return Expr::var(index, w);
            }
            const BinaryOp op = check_op(s);
            if (op != BinaryOp::concat) {
                return Expr::binary(op, build(s.items[1], width), build(s.items[2], width));
            }
            auto lw = natural_width(s.items[1]);
            auto rw = natural_width(s.items[2]);
            if (!lw && !rw) {
                lw = problem_.width;
                rw = problem_.width;
            } else if (!lw) {
                lw = width > *rw ? width - *rw : 0;
            } else if (!rw) {
                rw = width > *lw ? width - *lw : 0;
            }
            if (*lw == 0 || *rw == 0 || *lw + *rw != width) {
                fail_at(s, "width mismatch: concatenation does not produce " +
                               std::to_string(width) + " bits");
            }
            return Expr::binary(op, build(s.items[1], *lw), build(s.items[2], *rw));
        } catch (const ParseError &) {
            throw;
        } catch (const FormulaError &e) {
            fail_at(s, e.what());
        }
    }

    void read_atom(const SExpr &s) {
        if (s.items.size() != 3) {
            fail_at(s, "expected '(atom name (rel expr expr))'");
        }
        const std::size_t var = bool_var(s.items[1]);
        if (pending_atoms_.count(var)) {
            fail_at(s.items[1], "boolean '" + s.items[1].atom + "' already has an atom");
        }
        const SExpr &body = s.items[2];
        if (!body.is_list || body.items.size() != 3 || body.items[0].is_list) {
            fail_at(body, "expected '(rel expr expr)'");
        }
        const auto rel = lookup_rel(body.items[0].atom);
        if (!rel) {
            fail_at(body.items[0], "unsupported relation '" + body.items[0].atom + "'");
        }
        const auto lw = natural_width(body.items[1]);
        const auto rw = natural_width(body.items[2]);
        const unsigned width = lw ? *lw : rw ? *rw : problem_.width;
        if (width == 0) {
            fail_at(body, "cannot infer a width for an atom over constants only");
        }
        Atom atom;
        atom.lhs = build(body.items[1], width);
        atom.rel = *rel;
        atom.rhs = build(body.items[2], width);
        atom.id = pending_atoms_.size();
        pending_atoms_.emplace(var, std::move(atom));
    }

    BVProblem problem_;
    std::unordered_map<std::string, std::size_t> bv_index_;
    std::unordered_map<std::string, std::size_t> bool_index_;
    std::map<std::size_t, Atom> pending_atoms_;
};

void print_literal(std::ostream &os, const Literal &lit, const BVProblem &p) {
    switch (lit.kind) {
    case Literal::Kind::zero:
        os << '0';
        break;
    case Literal::Kind::pos:
        os << p.bool_names[lit.var];
        break;
    case Literal::Kind::neg:
        os << "(not " << p.bool_names[lit.var] << ')';
        break;
    }
}

} // namespace

BVProblem parse_problem(std::string_view text) {
    Reader reader(text);
    const SExpr root = reader.read_document();
    return Interpreter{}.run(root);
}

std::string to_text(const Expr &expr, const BVProblem &problem) {
    if (const auto *v = std::get_if<Expr::Var>(&expr.node)) {
        return problem.bv_vars.at(v->index).name;
    }
    if (const auto *c = std::get_if<Expr::Const>(&expr.node)) {
        return std::to_string(c->value);
    }
    const auto &b = std::get<Expr::Binary>(expr.node);
    return "(" + std::string(symbol(b.op)) + " " + to_text(*b.lhs, problem) + " " +
           to_text(*b.rhs, problem) + ")";
}

std::string to_text(const BVProblem &problem) {
    std::ostringstream os;
    os << "(problem\n  (vars";
    for (const auto &v : problem.bv_vars) {
        os << " (" << v.name << ' ' << v.width << ')';
    }
    os << ")\n  (cnf";
    for (const auto &clause : problem.skeleton.clauses) {
        // trailing zero padding is implicit
        std::size_t used = 3;
        while (used > 1 && clause.literals[used - 1].kind == Literal::Kind::zero) {
            --used;
        }
        os << " (clause";
        for (std::size_t k = 0; k < used; ++k) {
            os << ' ';
            print_literal(os, clause.literals[k], problem);
        }
        os << ')';
    }
    os << ')';
    std::vector<std::pair<std::size_t, std::size_t>> order; // (atom id, bool var)
    for (std::size_t i = 0; i < problem.atoms.size(); ++i) {
        if (problem.atoms[i]) {
            order.emplace_back(problem.atoms[i]->id, i);
        }
    }
    std::sort(order.begin(), order.end());
    for (const auto &[id, var] : order) {
        const Atom &atom = *problem.atoms[var];
        os << "\n  (atom " << problem.bool_names[var] << " (" << symbol(atom.rel) << ' '
           << to_text(*atom.lhs, problem) << ' ' << to_text(*atom.rhs, problem) << "))";
    }
    os << ")\n";
    return os.str();
}

} // namespace qsmt
