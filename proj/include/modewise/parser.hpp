#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modewise/term.hpp"

namespace modewise {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg), line(l), col(c) {}
};

// One body goal: either a predicate call or an explicit equation.
struct Goal {
    enum class Kind : std::uint8_t { call, equation };
    Kind kind = Kind::call;
    Term a;  // the called atom, or the equation's left side
    Term b;  // the equation's right side
    int line = 0, col = 0;
};

// Clause as read, with clause-local variable ids assigned in first-occurrence
// order; '_' is fresh at every occurrence.
struct SourceClause {
    Term head;
    std::vector<Goal> body;
    std::uint32_t nvars = 0;
    std::vector<std::string> var_names;
    int line = 0;
};

struct Directive {
    Term goal;
    std::uint32_t nvars = 0;
    std::vector<std::string> var_names;
    int line = 0;
};

struct Program {
    std::vector<SourceClause> clauses;
    std::vector<Directive> directives;
};

// Parses the declarative subset: clauses, facts, directives, '%' and '/* */'
// comments. Disjunction, if-then-else, negation as failure, DCG rules,
// strings, floats and variable goals raise a ParseError naming the construct.
Program parse_program(std::string_view src);
Program parse_program_file(const std::string& path);

}  // namespace modewise
