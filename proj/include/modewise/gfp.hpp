#pragma once

#include <vector>

#include "modewise/lfp.hpp"

namespace modewise {

// Demand a clause places on its head arguments: walking the body right to
// left, each atom's exit demand is weakened through the atom's success
// pattern and met with its call pattern; the entry demand then passes
// through the clause constraint, is strengthened onto the head variables
// (universal projection) and lands in canonical positions.
struct ClauseDemandDetail {
    BoolFn head_demand;  // over canonical argument positions
    BoolFn entry;        // the demand at the clause neck, over clause variables
};

ClauseDemandDetail clause_demand_detail(const AbstractClause& c, const PatternTable& success,
                                        const PatternTable& calls, BddManager& m);

BoolFn clause_demand(const AbstractClause& c, const PatternTable& success,
                     const PatternTable& calls, BddManager& m);

struct GfpResult {
    PatternTable table;
    // Iterates starting with the all-top table and ending with the
    // confirming repeat; the count reported is the fixpoint's index.
    std::vector<PatternTable> trace;
    std::size_t iterations = 0;
};

// Greatest fixpoint by synchronous iteration from the all-top table: each
// round conjoins every clause's head demand into a copy of the previous
// table, reading call and success patterns from the previous state.
GfpResult gfp(const AbstractProgram& ap, const PatternTable& success);

// Chaotic iteration over a dependency worklist; reaches the same fixpoint.
PatternTable gfp_worklist(const AbstractProgram& ap, const PatternTable& success);

struct AnalysisResult {
    PatternTable success;
    PatternTable calls;
    std::vector<PatternTable> lfp_trace;
    std::vector<PatternTable> gfp_trace;
    std::size_t lfp_iterations = 0;
    std::size_t gfp_iterations = 0;
    double lfp_ms = 0.0;
    double gfp_ms = 0.0;
};

// Success analysis first, then demand analysis against it.
AnalysisResult analyze(const AbstractProgram& ap);

}  // namespace modewise
