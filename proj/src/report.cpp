#include "modewise/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "modewise/formula.hpp"

namespace modewise {
namespace {

std::string fmt_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

std::string key_of(const std::string& name, std::uint32_t arity) {
    return name + "/" + std::to_string(arity);
}

void dump_trace_text(std::ostream& out, const char* label,
                     const std::vector<PatternTable>& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << label << "[" << i << "]\n";
        for (const auto& [k, f] : trace[i].entries())
            out << "\t" << key_of(k.first, k.second) << "\t" << print_formula(f, 'x') << "\n";
    }
}

nlohmann::json trace_json(const std::vector<PatternTable>& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const PatternTable& t : trace) {
        nlohmann::json obj = nlohmann::json::object();
        for (const auto& [k, f] : t.entries()) obj[key_of(k.first, k.second)] = print_formula(f, 'x');
        arr.push_back(std::move(obj));
    }
    return arr;
}

}  // namespace

std::string report_text(const AbstractProgram& ap, const AnalysisResult& a,
                        const ReportOptions& opts) {
    std::ostringstream out;
    out << "predicate\tcall\tsuccess\n";
    for (const PredInfo& p : ap.preds) {
        if (p.wrapper) continue;
        out << key_of(p.name, p.arity) << "\t" << print_formula(a.calls.get(p.name, p.arity), 'x')
            << "\t" << print_formula(a.success.get(p.name, p.arity), 'x') << "\n";
    }
    out << "iterations\tlfp=" << a.lfp_iterations << "\tgfp=" << a.gfp_iterations << "\n";
    if (opts.timings) {
        double sum = opts.abs_ms + a.lfp_ms + a.gfp_ms;
        out << "timings_ms\tabs=" << fmt_ms(opts.abs_ms) << "\tlfp=" << fmt_ms(a.lfp_ms)
            << "\tgfp=" << fmt_ms(a.gfp_ms) << "\tsum=" << fmt_ms(sum) << "\n";
    }
    if (opts.dump_lfp) dump_trace_text(out, "lfp", a.lfp_trace);
    if (opts.dump_gfp) dump_trace_text(out, "gfp", a.gfp_trace);
    return out.str();
}

std::string report_json(const AbstractProgram& ap, const AnalysisResult& a,
                        const ReportOptions& opts) {
    nlohmann::json j;
    j["predicates"] = nlohmann::json::array();
    for (const PredInfo& p : ap.preds) {
        if (p.wrapper) continue;
        j["predicates"].push_back({{"name", p.name},
                                   {"arity", p.arity},
                                   {"call_mode", print_formula(a.calls.get(p.name, p.arity), 'x')},
                                   {"success_mode",
                                    print_formula(a.success.get(p.name, p.arity), 'x')}});
    }
    j["iterations"] = {{"lfp", a.lfp_iterations}, {"gfp", a.gfp_iterations}};
    double abs_ms = opts.timings ? opts.abs_ms : 0.0;
    double lfp_ms = opts.timings ? a.lfp_ms : 0.0;
    double gfp_ms = opts.timings ? a.gfp_ms : 0.0;
    j["timings_ms"] = {{"abs", abs_ms},
                       {"lfp", lfp_ms},
                       {"gfp", gfp_ms},
                       {"sum", abs_ms + lfp_ms + gfp_ms}};
    j["warnings"] = ap.warnings;
    if (opts.dump_lfp) j["lfp_trace"] = trace_json(a.lfp_trace);
    if (opts.dump_gfp) j["gfp_trace"] = trace_json(a.gfp_trace);
    return j.dump(2) + "\n";
}

}  // namespace modewise
