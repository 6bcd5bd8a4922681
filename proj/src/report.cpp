#include "qsmt/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qsmt {

Json layout_json(const LayoutReport &stats, LayoutMode mode) {
    Json registers = Json::array();
    for (const auto &[name, size] : stats.register_qubits) {
        registers.push_back({{"name", name}, {"qubits", size}});
    }
    Json groups = Json::object();
    for (const auto &[name, size] : stats.group_qubits) {
        groups[name] = size;
    }
    Json gates = Json::object();
    for (const auto &[name, count] : stats.gate_counts) {
        gates[name] = count;
    }
    return {{"mode", layout_name(mode)},
            {"total_qubits", stats.total_qubits},
            {"gate_count", stats.gate_count},
            {"groups", groups},
            {"registers", registers},
            {"gates", gates}};
}

Json plan_json(const IterationPlan &plan) {
    Json j = {{"N", plan.N}, {"M", plan.M}};
    if (plan.unsat()) {
        j["k"] = nullptr;
    } else {
        j["k"] = plan.k;
    }
    j["mode"] = plan.forced ? "forced" : "auto";
    return j;
}

namespace {

Json row_json(const SolutionRow &row) {
    return {{"bitstring", row.bitstring},
            {"assignment", row.assignment},
            {"probability", row.probability},
            {"count", row.count},
            {"verified", row.verified}};
}

} // namespace

Json solve_json(const SolveReport &report) {
    Json j = {{"spec_version", kSpecVersion},
              {"command", "solve"},
              {"status", report.sat() ? "SAT" : "UNSAT"},
              {"plan", plan_json(report.plan)},
              {"engine", engine_name(report.engine)},
              {"layout", layout_json(report.layout_stats, report.layout)},
              {"search_bits", report.search_bits},
              {"shots", report.shots},
              {"seed", report.seed}};
    Json rows = Json::array();
    for (const auto &r : report.solutions) {
        rows.push_back(row_json(r));
    }
    j["solutions"] = rows;
    Json rejected = Json::array();
    for (const auto &r : report.rejected) {
        rejected.push_back(row_json(r));
    }
    j["rejected_candidates"] = rejected;
    if (report.sat()) {
        const double p = report.exact_probability;
        j["aggregate"] = {
            {"exact", p},
            {"closed_form", report.plan.closed_form()},
            {"sampled", report.sampled_probability},
            {"sampling_sigma", std::sqrt(p * (1.0 - p) / static_cast<double>(report.shots))}};
        Json counts = Json::object();
        for (const auto &[key, count] : report.counts.counts) {
            counts[key] = count;
        }
        j["counts"] = counts;
    } else {
        j["aggregate"] = nullptr;
        j["counts"] = Json::object();
    }
    return j;
}

std::string solve_table(const SolveReport &report) {
    std::ostringstream os;
    if (!report.sat()) {
        os << "UNSAT\n";
        os << "N=" << report.plan.N << " M=0, no Grover run\n";
        return os.str();
    }
    os << "SAT\n";
    os << "plan: N=" << report.plan.N << " M=" << report.plan.M << " k=" << report.plan.k
       << (report.plan.forced ? " (forced)" : " (auto)") << "\n";
    os << "engine: " << engine_name(report.engine) << ", layout: " << layout_name(report.layout)
       << " (" << report.layout_stats.total_qubits << " qubits, "
       << report.layout_stats.gate_count << " gates per oracle)\n";
    os << "shots: " << report.shots << ", seed: " << report.seed << "\n\n";

    std::size_t width = std::string("Output bit-string").size();
    for (const auto &r : report.solutions) {
        width = std::max(width, r.bitstring.size());
    }
    os << std::left << std::setw(static_cast<int>(width) + 2) << "Output bit-string"
       << std::setw(8) << "Counts" << std::setw(13) << "Probability"
       << "Assignments\n";
    for (const auto &r : report.solutions) {
        std::ostringstream prob;
        prob << std::fixed << std::setprecision(6) << r.probability;
        os << std::left << std::setw(static_cast<int>(width) + 2) << r.bitstring << std::setw(8)
           << r.count << std::setw(13) << prob.str() << r.assignment << "\n";
    }
    for (const auto &r : report.rejected) {
        os << "rejected candidate " << r.bitstring << " p=" << r.probability << "\n";
    }
    os << "\naggregate solution probability: exact " << std::fixed << std::setprecision(6)
       << report.exact_probability << ", sampled " << report.sampled_probability << "\n";
    return os.str();
}

std::string layout_table(const Circuit &circuit, LayoutMode mode) {
    std::ostringstream os;
    os << "layout: " << layout_name(mode) << "\n\n";
    os << std::left << std::setw(24) << "register" << std::setw(14) << "group"
       << std::setw(10) << "role"
       << "qubits\n";
    for (const auto &r : circuit.registers()) {
        os << std::left << std::setw(24) << r.name << std::setw(14) << r.group << std::setw(10)
           << role_name(r.role) << r.size() << "\n";
    }
    const LayoutReport s = stats(circuit);
    os << "\n";
    for (const auto &[group, n] : s.group_qubits) {
        os << std::left << std::setw(24) << group << n << "\n";
    }
    os << std::left << std::setw(24) << "total" << s.total_qubits << "\n";
    os << "\ngates: " << s.gate_count;
    for (const auto &[name, n] : s.gate_counts) {
        os << " " << name << "=" << n;
    }
    os << "\n";
    return os.str();
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace qsmt
