#pragma once

#include <string>

#include "modewise/abstraction.hpp"
#include "modewise/gfp.hpp"

namespace modewise {

struct ReportOptions {
    bool dump_lfp = false;  // append the success iterate trace
    bool dump_gfp = false;  // append the demand iterate trace
    bool timings = false;   // when off, timing fields stay zero for stable output
    double abs_ms = 0.0;    // frontend wall time, measured by the caller
};

// Tab-separated table of user predicates in definition order: one line per
// predicate with its call and success formulas over argument positions
// a1..an, then an iteration-count line. Dumps and timings append extra
// sections on request.
std::string report_text(const AbstractProgram& ap, const AnalysisResult& a,
                        const ReportOptions& opts = {});

// Same content as a JSON object: predicates, iterations, timings_ms,
// warnings, plus lfp_trace/gfp_trace arrays when dumps are requested.
std::string report_json(const AbstractProgram& ap, const AnalysisResult& a,
                        const ReportOptions& opts = {});

}  // namespace modewise
