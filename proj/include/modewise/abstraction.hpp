#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modewise/bdd.hpp"
#include "modewise/normalize.hpp"

namespace modewise {

// Groundness contract of one builtin: `required` must hold of the store
// when the call is reached (lower approximation, else the run is unsafe);
// `success` holds of the store whenever the call succeeds (upper
// approximation). Both range over argument positions a1..aN.
struct BuiltinSpec {
    std::string name;
    std::uint32_t arity = 0;
    BoolFn required;
    BoolFn success;
};

struct BuiltinFileError : std::runtime_error {
    int line;
    BuiltinFileError(const std::string& msg, int l) : std::runtime_error(msg), line(l) {}
};

class BuiltinTable {
public:
    explicit BuiltinTable(BddManager& m) : mgr_(&m) {}

    static BuiltinTable defaults(BddManager& m);
    static BuiltinTable load_text(std::string_view text, BddManager& m);
    static BuiltinTable load_file(const std::string& path, BddManager& m);

    // True when name/arity belongs to the stock builtin vocabulary,
    // independent of what the active table contains.
    static bool stock_name(const std::string& name, std::uint32_t arity);

    const BuiltinSpec* find(const std::string& name, std::uint32_t arity) const;
    void set(BuiltinSpec s);
    std::size_t size() const { return map_.size(); }

    const std::map<std::pair<std::string, std::uint32_t>, BuiltinSpec>& entries() const {
        return map_;
    }

    // Canonical file form; load_text(serialize()) reproduces the table and
    // serialize() of the result is byte-identical.
    std::string serialize() const;

    BddManager& manager() const { return *mgr_; }

private:
    BddManager* mgr_;
    std::map<std::pair<std::string, std::uint32_t>, BuiltinSpec> map_;
};

// x equated with a term abstracts to x <-> (conjunction of the term's
// variables); for a constant the conjunction is empty and this is just x.
BoolFn abstract_equation(VarId lhs, const Term& rhs, BddManager& m);

struct AbstractAtom {
    std::string pred;
    std::vector<VarId> args;

    std::uint32_t arity() const { return static_cast<std::uint32_t>(args.size()); }
};

// Clause with its store described by two formulas over clause variables:
// `assertion` (d) is demanded of callers, `constraint` (f) is guaranteed to
// callers. Builtin calls appear as primed wrapper predicates whose single
// bodyless clause carries the builtin's contract.
struct AbstractClause {
    AbstractAtom head;
    BoolFn assertion;
    BoolFn constraint;
    std::vector<AbstractAtom> body;
    std::uint32_t nvars = 0;
    std::vector<std::string> var_names;
    int line = 0;
    bool wrapper = false;
};

struct PredInfo {
    std::string name;
    std::uint32_t arity = 0;
    std::vector<std::size_t> clauses;  // indices into AbstractProgram::clauses
    bool wrapper = false;
};

struct AbstractProgram {
    BddManager* mgr = nullptr;
    std::vector<AbstractClause> clauses;
    std::vector<PredInfo> preds;  // user predicates first, wrappers appended
    std::map<std::pair<std::string, std::uint32_t>, std::size_t> pred_index;
    std::vector<std::string> warnings;
    std::uint32_t max_arity = 0;

    const PredInfo* find(const std::string& name, std::uint32_t arity) const {
        auto it = pred_index.find({name, arity});
        return it == pred_index.end() ? nullptr : &preds[it->second];
    }
};

struct AbstractionError : std::runtime_error {
    explicit AbstractionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AbstractionOptions {
    // With lax_builtins, an unknown builtin becomes a wrapper with
    // required = false and success = false instead of a hard error.
    bool lax_builtins = false;
};

AbstractProgram abstract_program(const NormProgram& np, const BuiltinTable& builtins,
                                 BddManager& m, const AbstractionOptions& opts = {});

// Per-predicate entry assertion over argument positions (conjunction across
// the predicate's clauses); wrappers report their builtin's required mode.
std::map<std::pair<std::string, std::uint32_t>, BoolFn> predicate_assertions(
    const AbstractProgram& ap);

// One assertion directive, decoded: predicate key plus its declared entry
// mode over argument positions. Returns nothing for non-assertion
// directives; malformed assertions throw.
struct DirectiveMode {
    std::string name;
    std::uint32_t arity = 0;
    BoolFn mode;
};
std::optional<DirectiveMode> directive_mode(const Directive& d, BddManager& m);

// All assertion directives folded into a per-predicate map (repeats
// conjoin). Targets are not checked against any program.
std::map<std::pair<std::string, std::uint32_t>, BoolFn> directive_assertions(
    const std::vector<Directive>& ds, BddManager& m);

}  // namespace modewise
