#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modewise/parser.hpp"

namespace modewise {

struct NormAtom {
    std::string pred;
    std::vector<std::uint32_t> args;  // clause-local variable ids

    std::uint32_t arity() const { return static_cast<std::uint32_t>(args.size()); }
};

// Normal form: the head and every body atom carry distinct variables only;
// all bindings live in `eqns` at the neck, each a variable equated with a
// flat term (variable, constant, or compound whose arguments are variables).
struct NormClause {
    NormAtom head;
    std::vector<std::pair<std::uint32_t, Term>> eqns;
    std::vector<NormAtom> body;
    std::uint32_t nvars = 0;
    std::vector<std::string> var_names;
    int line = 0;
};

struct NormProgram {
    std::vector<NormClause> clauses;
    std::vector<Directive> directives;
};

NormClause normalize_clause(const SourceClause& c);
NormProgram normalize(const Program& p);

// Structural well-formedness of the normal form (used by tests and debug
// checks): distinct argument variables, flat equation right-hand sides.
bool is_normal(const NormClause& c);

}  // namespace modewise
