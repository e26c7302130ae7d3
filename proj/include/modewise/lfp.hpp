#pragma once

#include <vector>

#include "modewise/abstraction.hpp"
#include "modewise/pattern_table.hpp"

namespace modewise {

// Success pattern one clause contributes under the given table: the clause
// constraint meets every body atom's success pattern (renamed to the atom's
// arguments), projected up onto the head and put in canonical positions.
// Clause assertions play no role here.
BoolFn clause_success(const AbstractClause& c, const PatternTable& success, BddManager& m);

struct LfpResult {
    PatternTable table;
    // Every computed iterate including the confirming one; the count
    // reported is the trace length.
    std::vector<PatternTable> trace;
    std::size_t iterations = 0;
};

// Least fixpoint by synchronous iteration from the empty table: each round
// rebuilds every predicate's entry as the join of its clause contributions
// read from the previous table.
LfpResult lfp(const AbstractProgram& ap);

// Chaotic iteration over a dependency worklist; reaches the same fixpoint.
PatternTable lfp_worklist(const AbstractProgram& ap);

}  // namespace modewise
