#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modewise/abstraction.hpp"
#include "modewise/parser.hpp"

namespace modewise {

struct InterpError : std::runtime_error {
    explicit InterpError(const std::string& msg) : std::runtime_error(msg) {}
};

// Variable bindings with lazy dereferencing: a binding may mention variables
// that are themselves bound, so readers go through walk/resolve. Bindings
// live in a dense slot array indexed by variable id and are trailed, so
// backtracking undoes to a mark instead of copying. The slots form a deque:
// growth must not move them, because unification holds references into the
// array while it binds.
class Substitution {
public:
    bool bound(std::uint32_t v) const { return v < slots_.size() && slots_[v].used; }
    void bind(std::uint32_t v, Term t) {
        if (bound(v)) return;  // first binding wins
        if (v >= slots_.size()) slots_.resize(v + 1);
        slots_[v].used = true;
        slots_[v].term = std::move(t);
        trail_.push_back(v);
    }

    // Backtracking protocol: take a mark, bind freely, undo to the mark.
    std::size_t mark() const { return trail_.size(); }
    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            Slot& sl = slots_[trail_.back()];
            sl.used = false;
            sl.term = Term();
            trail_.pop_back();
        }
    }

    // Follows the chain while the term is a bound variable.
    Term walk(const Term& t) const;
    // Like walk but without copying; the reference is valid until the next
    // bind or undo.
    const Term& walk_ref(const Term& t) const;
    // Deep application: no bound variable survives in the result.
    Term resolve(const Term& t) const;

    std::size_t size() const { return trail_.size(); }

private:
    struct Slot {
        bool used = false;
        Term term;
    };
    std::deque<Slot> slots_;
    std::vector<std::uint32_t> trail_;
};

// Sound unification (with occurs check). Extends s on success; on failure s
// may hold partial bindings, so callers backtrack with mark/undo.
bool unify(const Term& a, const Term& b, Substitution& s);

struct Query {
    std::vector<Goal> goals;
    std::uint32_t nvars = 0;
    std::vector<std::string> var_names;
};

// Parses a comma-separated goal sequence, full operator syntax, no trailing
// period: "pt([1,2],M,L,H)" or "X = [1|T], qs(T, S, [])".
Query parse_query(std::string_view text);

struct RuntimeClause {
    Term head;
    std::vector<Goal> goals;
    std::uint32_t nvars = 0;
    int line = 0;
};

// Executable form of a program: indexed clauses, the builtin contracts (for
// entry checks and native dispatch) and the entry modes declared by
// assertion directives, all over a manager owned here.
class RuntimeProgram {
public:
    struct BuiltinModes {
        BoolFn required;
        BoolFn success;
    };

    static RuntimeProgram from_source(const Program& p, const BuiltinTable& builtins);
    static RuntimeProgram from_normalized(const NormProgram& np, const BuiltinTable& builtins);

    BddManager& manager() const { return *mgr_; }

    bool defined(const std::string& name, std::uint32_t arity) const {
        return clauses_.count({name, arity}) != 0;
    }
    const std::vector<RuntimeClause>& clauses_of(const std::string& name,
                                                 std::uint32_t arity) const;
    const BuiltinModes* builtin(const std::string& name, std::uint32_t arity) const;
    // A non-program predicate handled as a builtin: in the active table, or
    // symbolically named, or part of the stock vocabulary.
    bool builtin_like(const std::string& name, std::uint32_t arity) const;
    // Entry mode from assertion directives; top when none was declared.
    BoolFn assertion_mode(const std::string& name, std::uint32_t arity) const;

private:
    RuntimeProgram() = default;
    void finish(const std::vector<Directive>& ds, const BuiltinTable& builtins);

    std::unique_ptr<BddManager> mgr_;
    std::map<std::pair<std::string, std::uint32_t>, std::vector<RuntimeClause>> clauses_;
    std::map<std::pair<std::string, std::uint32_t>, BuiltinModes> builtins_;
    std::map<std::pair<std::string, std::uint32_t>, BoolFn> modes_;
};

enum class RunStatus : std::uint8_t { success, exhausted, depth_limit, step_limit, error };

// A call whose arguments cannot be shown to satisfy the predicate's entry
// mode at the moment of the call.
struct CallViolation {
    std::string pred;
    std::uint32_t arity = 0;
    Term call;                   // instantiated offending call
    std::string required;        // printed entry mode, over a1..aN
    std::vector<Term> ancestors; // enclosing calls, outermost first
    int line = 0;
};

struct Answer {
    std::vector<Term> goals;               // query goals, instantiated
    std::map<std::string, Term> bindings;  // named query variables
};

struct InterpOptions {
    std::size_t max_depth = 128;      // user-predicate call depth bound
    std::size_t max_solutions = 1;
    std::size_t max_steps = 1'000'000;
    bool check_assertions = true;
};

struct RunResult {
    RunStatus status = RunStatus::exhausted;
    std::vector<Answer> answers;
    std::optional<CallViolation> violation;
    std::size_t steps = 0;
    bool depth_cut = false;  // some branch was pruned by the depth bound
};

// Depth-first resolution over the clause order. A violated entry mode stops
// the whole run (status error) even after earlier answers; otherwise the
// run succeeds once max_solutions answers are in, and reports how the
// search space was exhausted if none were found.
RunResult run(const RuntimeProgram& rp, const Query& q, const InterpOptions& opts = {});

// First-occurrence renumbering of variables, so structurally equal terms
// compare equal no matter how their variables were allocated.
Term canonical_vars(const Term& t);

}  // namespace modewise
