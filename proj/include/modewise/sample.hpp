#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modewise/abstraction.hpp"
#include "modewise/gfp.hpp"
#include "modewise/interp.hpp"

namespace modewise {

// Randomized cross-validation of inferred mode tables against the concrete
// interpreter. Queries are built per predicate: a random admissible set of
// argument positions is filled with random ground terms drawn from the
// program's own signature, the rest stay free.

struct SampleOptions {
    std::uint64_t seed = 0;
    std::size_t queries = 100;      // queries per predicate
    std::size_t max_solutions = 4;  // answers harvested per query
    std::size_t max_depth = 128;
    std::size_t max_steps = 2'000;  // violations and answers both surface early
    int term_depth = 3;  // nesting bound for generated ground terms
};

struct SampleFinding {
    std::string pred;
    std::uint32_t arity = 0;
    std::string query;  // printed goal that exposed the problem
    std::string detail;
};

struct SampleReport {
    std::size_t queries_run = 0;
    std::size_t answers_seen = 0;
    std::map<std::string, std::size_t> per_pred_answers;  // "name/arity"
    std::vector<SampleFinding> findings;
    std::vector<std::string> skipped;  // preds with no admissible instantiation

    bool ok() const { return findings.empty(); }
};

// Grounding any position set admissible for the inferred call mode must
// satisfy every entry check met during execution; a run that aborts on a
// violated mode is a finding.
SampleReport check_call_modes(const RuntimeProgram& rp, const AbstractProgram& ap,
                              const AnalysisResult& analysis, const SampleOptions& opts = {});

// Every harvested answer's groundness must satisfy the predicate's success
// formula. Queries follow the call modes (outputs stay free) but run with
// entry checks off, so predicates with unsatisfiable call modes still get
// exercised with arbitrary instantiations.
SampleReport check_success_modes(const RuntimeProgram& rp, const AbstractProgram& ap,
                                 const AnalysisResult& analysis, const SampleOptions& opts = {});

}  // namespace modewise
