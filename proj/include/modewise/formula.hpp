#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "modewise/bdd.hpp"

namespace modewise {

struct FormulaError : std::runtime_error {
    std::size_t pos;  // byte offset into the parsed text
    FormulaError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg), pos(p) {}
};

// Maps variable names to VarIds. Two flavours: positional (`x1`..`xN`
// mapping to VarId 0..N-1, likewise `a1`..`aN`) and free interning, where
// names get ids in first-occurrence order (used for clause variables).
class VarNames {
public:
    VarNames() = default;
    explicit VarNames(char positional_prefix) : prefix_(positional_prefix) {}

    bool positional() const { return prefix_.has_value(); }

    VarId intern(std::string_view name);
    std::optional<VarId> lookup(std::string_view name) const;
    std::string name(VarId v) const;
    std::size_t size() const { return names_.size(); }

private:
    std::optional<char> prefix_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> ids_;
};

// Formula syntax, loosest to tightest: `<=>`, `=>` (right-assoc), `|`, `&`,
// prefix `~`, atoms `true` / `false` / variable / parenthesised formula.
BoolFn parse_formula(std::string_view text, BddManager& m, VarNames& names);
BoolFn parse_formula(std::string_view text, BddManager& m, char prefix = 'x');

// Canonical printing: irredundant sum of products over the manager's
// variable order, literals sorted by VarId within a cube, cubes sorted
// lexicographically. Parsing the result back yields an equivalent function.
std::string print_formula(BoolFn f, const VarNames& names);
std::string print_formula(BoolFn f, char prefix = 'x');

}  // namespace modewise
