#include "qsmt/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace qsmt {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::x:
        return "x";
    case GateKind::z:
        return "z";
    case GateKind::h:
        return "h";
    case GateKind::cnot:
        return "cx";
    case GateKind::ccnot:
        return "ccx";
    case GateKind::mcx:
        return "mcx";
    }
    return "?";
}

std::string_view role_name(RegisterRole role) {
    switch (role) {
    case RegisterRole::search:
        return "search";
    case RegisterRole::ancilla:
        return "ancilla";
    case RegisterRole::output:
        return "output";
    case RegisterRole::flag:
        return "flag";
    }
    return "?";
}

Gate Gate::controlled_x(std::vector<QubitId> controls, QubitId t) {
    switch (controls.size()) {
    case 0:
        return X(t);
    case 1:
        return CNOT(controls[0], t);
    case 2:
        return CCNOT(controls[0], controls[1], t);
    default:
        return MCX(std::move(controls), t);
    }
}

const Register *Circuit::find_register(std::string_view name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

const Register &Circuit::add_register(std::string name, std::size_t size, RegisterRole role,
                                      std::string group) {
    if (find_register(name) != nullptr) {
        throw CircuitError("duplicate register '" + name + "'");
    }
    Register reg{std::move(name), {}, role, std::move(group)};
    reg.qubits.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        reg.qubits.push_back(qubit(qubit_count_++));
    }
    registers_.push_back(std::move(reg));
    return registers_.back();
}

void Circuit::check(const Gate &gate) const {
    std::size_t expected = 0;
    switch (gate.kind) {
    case GateKind::x:
    case GateKind::z:
    case GateKind::h:
        expected = 0;
        break;
    case GateKind::cnot:
        expected = 1;
        break;
    case GateKind::ccnot:
        expected = 2;
        break;
    case GateKind::mcx:
        if (gate.controls.empty()) {
            throw CircuitError("mcx gate needs at least one control");
        }
        expected = gate.controls.size();
        break;
    }
    if (gate.controls.size() != expected) {
        throw CircuitError(std::string(gate_name(gate.kind)) + " gate has " +
                           std::to_string(gate.controls.size()) + " controls");
    }
    std::vector<std::uint32_t> used;
    used.reserve(gate.controls.size() + 1);
    for (const auto &c : gate.controls) {
        used.push_back(c.index);
    }
    used.push_back(gate.target.index);
    for (const auto q : used) {
        if (q >= qubit_count_) {
            throw CircuitError("qubit " + std::to_string(q) + " out of range for a " +
                               std::to_string(qubit_count_) + "-qubit circuit");
        }
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        throw CircuitError("duplicate qubit within a " + std::string(gate_name(gate.kind)) +
                           " gate");
    }
}

Circuit &Circuit::append(Gate gate) {
    check(gate);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.qubit_count_ > qubit_count_) {
        throw CircuitError("cannot append a " + std::to_string(other.qubit_count_) +
                           "-qubit circuit to a " + std::to_string(qubit_count_) +
                           "-qubit circuit");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

void Circuit::set_gates(std::vector<Gate> gates) {
    for (const auto &g : gates) {
        check(g);
    }
    gates_ = std::move(gates);
}

Circuit inverse(const Circuit &c) {
    Circuit out = c;
    std::vector<Gate> gates(c.gates().rbegin(), c.gates().rend());
    out.set_gates(std::move(gates));
    return out;
}

Circuit concat(const Circuit &a, const Circuit &b) {
    const auto is_identity = [](const Circuit &c) {
        return c.qubit_count() == 0 && c.gate_count() == 0;
    };
    if (is_identity(a)) {
        return b;
    }
    if (is_identity(b)) {
        return a;
    }
    if (a.qubit_count() != b.qubit_count()) {
        throw CircuitError("qubit-count mismatch in concat: " + std::to_string(a.qubit_count()) +
                           " vs " + std::to_string(b.qubit_count()));
    }
    if (!a.registers().empty() && !b.registers().empty() && a.registers() != b.registers()) {
        throw CircuitError("incompatible register tables in concat");
    }
    Circuit out = a.registers().empty() ? b : a;
    std::vector<Gate> gates = a.gates();
    gates.insert(gates.end(), b.gates().begin(), b.gates().end());
    out.set_gates(std::move(gates));
    return out;
}

LayoutReport stats(const Circuit &c) {
    LayoutReport report;
    report.total_qubits = c.qubit_count();
    report.gate_count = c.gate_count();
    for (const auto &r : c.registers()) {
        report.register_qubits.emplace_back(r.name, r.size());
        report.group_qubits[r.group] += r.size();
    }
    for (const auto &g : c.gates()) {
        report.gate_counts[std::string(gate_name(g.kind))] += 1;
    }
    return report;
}

namespace {

std::string ref(QubitId q) { return "q[" + std::to_string(q.index) + "]"; }

std::string anc(std::size_t i) { return "anc[" + std::to_string(i) + "]"; }

} // namespace

std::string export_qasm(const Circuit &c, const QasmOptions &options) {
    std::size_t ancillas = 0;
    if (options.decompose_mcx) {
        for (const auto &g : c.gates()) {
            if (g.kind == GateKind::mcx && g.controls.size() >= 3) {
                ancillas = std::max(ancillas, g.controls.size() - 2);
            }
        }
    }

    std::ostringstream os;
    os << "OPENQASM 3.0;\n";
    os << "include \"stdgates.inc\";\n";
    os << "qubit[" << c.qubit_count() << "] q;\n";
    if (ancillas > 0) {
        os << "qubit[" << ancillas << "] anc;\n";
    }
    for (const auto &r : c.registers()) {
        os << "// register " << r.name << " (" << role_name(r.role) << ", " << r.group << "):";
        for (const auto &q : r.qubits) {
            os << ' ' << ref(q);
        }
        os << '\n';
    }
    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::x:
        case GateKind::z:
        case GateKind::h:
            os << gate_name(g.kind) << ' ' << ref(g.target) << ";\n";
            break;
        case GateKind::cnot:
            os << "cx " << ref(g.controls[0]) << ", " << ref(g.target) << ";\n";
            break;
        case GateKind::ccnot:
            os << "ccx " << ref(g.controls[0]) << ", " << ref(g.controls[1]) << ", "
               << ref(g.target) << ";\n";
            break;
        case GateKind::mcx: {
            const auto &cs = g.controls;
            if (!options.decompose_mcx) {
                os << "ctrl(" << cs.size() << ") @ x";
                for (std::size_t i = 0; i < cs.size(); ++i) {
                    os << (i ? ", " : " ") << ref(cs[i]);
                }
                os << ", " << ref(g.target) << ";\n";
            } else if (cs.size() == 1) {
                os << "cx " << ref(cs[0]) << ", " << ref(g.target) << ";\n";
            } else if (cs.size() == 2) {
                os << "ccx " << ref(cs[0]) << ", " << ref(cs[1]) << ", " << ref(g.target)
                   << ";\n";
            } else {
                // V-chain: anc[i] holds the AND of controls 0..i+1
                std::vector<std::string> chain;
                chain.push_back("ccx " + ref(cs[0]) + ", " + ref(cs[1]) + ", " + anc(0) + ";");
                for (std::size_t i = 2; i + 1 < cs.size(); ++i) {
                    chain.push_back("ccx " + ref(cs[i]) + ", " + anc(i - 2) + ", " + anc(i - 1) +
                                    ";");
                }
                for (const auto &line : chain) {
                    os << line << '\n';
                }
                os << "ccx " << ref(cs.back()) << ", " << anc(cs.size() - 3) << ", "
                   << ref(g.target) << ";\n";
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                    os << *it << '\n';
                }
            }
            break;
        }
        }
    }
    return os.str();
}

namespace {

struct QasmReader {
    std::size_t q_size = 0;
    std::size_t anc_size = 0;
    std::size_t line_no = 0;

    [[noreturn]] void fail(const std::string &message) const {
        throw CircuitError("qasm line " + std::to_string(line_no) + ": " + message);
    }

    QubitId operand(std::string_view text) const {
        const auto open = text.find('[');
        const auto close = text.find(']');
        if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
            fail("malformed qubit reference '" + std::string(text) + "'");
        }
        const auto name = text.substr(0, open);
        std::size_t index = 0;
        const auto digits = text.substr(open + 1, close - open - 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
            fail("malformed qubit index '" + std::string(text) + "'");
        }
        if (name == "q" && index < q_size) {
            return qubit(index);
        }
        if (name == "anc" && index < anc_size) {
            return qubit(q_size + index);
        }
        fail("unknown qubit '" + std::string(text) + "'");
    }
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_operands(std::string_view s) {
    std::vector<std::string_view> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

} // namespace

Circuit parse_qasm(std::string_view text) {
    QasmReader reader;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::vector<Gate> gates;
    while (std::getline(in, raw)) {
        ++reader.line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.starts_with("//") || line.starts_with("OPENQASM") ||
            line.starts_with("include")) {
            continue;
        }
        if (!line.ends_with(';')) {
            reader.fail("missing ';'");
        }
        line = trim(line.substr(0, line.size() - 1));
        if (line.starts_with("qubit[")) {
            const auto close = line.find(']');
            std::size_t size = 0;
            const auto digits = line.substr(6, close - 6);
            std::from_chars(digits.data(), digits.data() + digits.size(), size);
            const auto name = trim(line.substr(close + 1));
            if (name == "q") {
                reader.q_size = size;
            } else if (name == "anc") {
                reader.anc_size = size;
            } else {
                reader.fail("unsupported register '" + std::string(name) + "'");
            }
            continue;
        }
        const auto space = line.find(' ');
        std::string_view head = line.substr(0, space);
        std::string_view rest = space == std::string_view::npos ? "" : line.substr(space + 1);
        if (head.starts_with("ctrl(")) {
            const auto at = line.find("@ x ");
            if (at == std::string_view::npos) {
                reader.fail("unsupported modifier");
            }
            rest = line.substr(at + 4);
            head = "mcx";
        }
        std::vector<QubitId> qs;
        for (const auto op : split_operands(rest)) {
            qs.push_back(reader.operand(op));
        }
        if (qs.empty()) {
            reader.fail("gate without operands");
        }
        const QubitId target = qs.back();
        qs.pop_back();
        if (head == "x" && qs.empty()) {
            gates.push_back(Gate::X(target));
        } else if (head == "z" && qs.empty()) {
            gates.push_back(Gate::Z(target));
        } else if (head == "h" && qs.empty()) {
            gates.push_back(Gate::H(target));
        } else if (head == "cx" && qs.size() == 1) {
            gates.push_back(Gate::CNOT(qs[0], target));
        } else if (head == "ccx" && qs.size() == 2) {
            gates.push_back(Gate::CCNOT(qs[0], qs[1], target));
        } else if (head == "mcx" && !qs.empty()) {
            gates.push_back(Gate::MCX(std::move(qs), target));
        } else {
            reader.fail("unsupported instruction '" + std::string(head) + "'");
        }
    }
    Circuit out(reader.q_size + reader.anc_size);
    out.set_gates(std::move(gates));
    return out;
}

} // namespace qsmt
