#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "modewise/normalize.hpp"
#include "modewise/report.hpp"
#include "modewise/sample.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;        // bad invocation, unreadable input, parse or abstraction error
constexpr int kExitCounterexample = 2;  // --check found a mode the interpreter refutes

bool readable(const std::string& path) { return static_cast<bool>(std::ifstream(path)); }

void print_sample_report(const char* label, const modewise::SampleReport& rep) {
    std::cerr << label << ": " << rep.queries_run << " queries, " << rep.answers_seen
              << " answers, " << rep.findings.size() << " findings\n";
    for (const std::string& s : rep.skipped) std::cerr << "  skipped " << s << "\n";
    for (const modewise::SampleFinding& f : rep.findings)
        std::cerr << "  " << f.pred << "/" << f.arity << " query " << f.query << ": " << f.detail
                  << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Call- and success-mode inference for logic programs"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    std::string builtins_path;
    bool dump_lfp = false, dump_gfp = false, lax = false, timings = false;
    std::size_t check_n = 0, max_depth = 128;
    std::uint64_t seed = 0;

    CLI::App* an = app.add_subcommand("analyze", "infer modes for every predicate in a program");
    an->add_option("file", file, "program to analyze")->required();
    an->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    an->add_flag("--dump-lfp", dump_lfp, "also print every success-table iterate");
    an->add_flag("--dump-gfp", dump_gfp, "also print every call-table iterate");
    an->add_option("--builtins", builtins_path, "load builtin modes from a table file");
    an->add_flag("--lax-builtins", lax, "treat unknown builtins as never-succeeding stubs");
    an->add_option("--check", check_n,
                   "cross-validate the tables by running N random queries per predicate");
    an->add_option("--seed", seed, "seed for --check query generation");
    an->add_option("--max-depth", max_depth, "interpreter depth bound for --check");
    an->add_flag("--timings", timings, "include wall-clock timings in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitAnalysis;
    }

    if (!readable(file)) {
        std::cerr << "error: cannot read " << file << "\n";
        return kExitAnalysis;
    }
    if (!builtins_path.empty() && !readable(builtins_path)) {
        std::cerr << "error: cannot read " << builtins_path << "\n";
        return kExitAnalysis;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        modewise::Program program = modewise::parse_program_file(file);
        modewise::BddManager mgr;
        modewise::BuiltinTable table = builtins_path.empty()
                                           ? modewise::BuiltinTable::defaults(mgr)
                                           : modewise::BuiltinTable::load_file(builtins_path, mgr);
        modewise::AbstractionOptions ao;
        ao.lax_builtins = lax;
        modewise::AbstractProgram ap =
            modewise::abstract_program(modewise::normalize(program), table, mgr, ao);
        double abs_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        modewise::AnalysisResult analysis = modewise::analyze(ap);

        for (const std::string& w : ap.warnings) std::cerr << "warning: " << w << "\n";

        modewise::ReportOptions ro;
        ro.dump_lfp = dump_lfp;
        ro.dump_gfp = dump_gfp;
        ro.timings = timings;
        ro.abs_ms = abs_ms;
        std::cout << (format == "json" ? modewise::report_json(ap, analysis, ro)
                                       : modewise::report_text(ap, analysis, ro));

        if (check_n > 0) {
            modewise::RuntimeProgram rp = modewise::RuntimeProgram::from_source(program, table);
            modewise::SampleOptions so;
            so.queries = check_n;
            so.seed = seed;
            so.max_depth = max_depth;
            modewise::SampleReport call = modewise::check_call_modes(rp, ap, analysis, so);
            modewise::SampleReport succ = modewise::check_success_modes(rp, ap, analysis, so);
            print_sample_report("check call modes", call);
            print_sample_report("check success modes", succ);
            if (!call.ok() || !succ.ok()) return kExitCounterexample;
        }
        return kExitOk;
    } catch (const modewise::ParseError& e) {
        std::cerr << file << ":" << e.line << ":" << e.col << ": error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const modewise::BuiltinFileError& e) {
        std::cerr << builtins_path << ":" << e.line << ": error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    }
}
