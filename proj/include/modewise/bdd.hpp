#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace modewise {

using VarId = std::uint32_t;

// Simultaneous renaming, applied in one step: every pair (from, to) maps
// occurrences of `from` to `to`. Must be injective in both components.
using Renaming = std::vector<std::pair<VarId, VarId>>;

class BddManager;

// Handle to a reduced ordered BDD node owned by one manager. Handles built
// in the same manager are canonical: semantic equality is handle equality.
struct BoolFn {
    BddManager* mgr = nullptr;
    std::uint32_t node = 0;

    friend bool operator==(const BoolFn&, const BoolFn&) = default;
};

// Shared-node BDD store with a unique table and an ite cache. Variables get
// levels in first-registration order; one manager per analysis run.
class BddManager {
public:
    BddManager();

    BddManager(const BddManager&) = delete;
    BddManager& operator=(const BddManager&) = delete;

    BoolFn top() { return {this, 1}; }
    BoolFn bot() { return {this, 0}; }
    BoolFn var(VarId v) { return {this, var_node(v)}; }

    // Registers v (assigning the next level) if unseen.
    std::uint32_t var_node(VarId v);
    bool knows_var(VarId v) const { return var_level_.count(v) != 0; }

    std::uint32_t ite(std::uint32_t f, std::uint32_t g, std::uint32_t h);

    std::uint32_t b_not(std::uint32_t f) { return ite(f, 0, 1); }
    std::uint32_t b_and(std::uint32_t f, std::uint32_t g) { return ite(f, g, 0); }
    std::uint32_t b_or(std::uint32_t f, std::uint32_t g) { return ite(f, 1, g); }
    std::uint32_t b_implies(std::uint32_t f, std::uint32_t g) { return ite(f, g, 1); }
    std::uint32_t b_iff(std::uint32_t f, std::uint32_t g) { return ite(f, g, b_not(g)); }

    // Cofactor of f with v fixed to b; identity when v is unregistered.
    std::uint32_t cofactor(std::uint32_t f, VarId v, bool b);

    // f evaluated at the all-true point; characterises membership in Pos.
    bool true_at_ones(std::uint32_t f) const;

    std::vector<VarId> support_of(std::uint32_t f) const;

    std::uint32_t rename_node(std::uint32_t f, const Renaming& r);

    // Rebuilds a handle from another manager in this one (same VarIds).
    BoolFn import(BoolFn f);

    bool eval(std::uint32_t f, std::span<const bool> assignment) const;

    std::size_t node_count() const { return nodes_.size(); }

    struct Node {
        std::uint32_t level;  // kTermLevel for the two terminals
        std::uint32_t lo, hi;
    };
    static constexpr std::uint32_t kTermLevel = 0xffffffffu;

    const Node& node(std::uint32_t id) const { return nodes_[id]; }
    VarId level_var(std::uint32_t level) const { return level_var_[level]; }

private:
    struct Key {
        std::uint32_t a, b, c;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = k.a;
            h = h * 0x9e3779b97f4a7c15ull + k.b;
            h = (h ^ (h >> 29)) * 0xbf58476d1ce4e5b9ull + k.c;
            return static_cast<std::size_t>(h ^ (h >> 32));
        }
    };

    std::uint32_t mk_node(std::uint32_t level, std::uint32_t lo, std::uint32_t hi);
    std::uint32_t level_of(std::uint32_t f) const { return nodes_[f].level; }

    std::vector<Node> nodes_;
    std::unordered_map<Key, std::uint32_t, KeyHash> unique_;
    std::unordered_map<Key, std::uint32_t, KeyHash> ite_cache_;
    std::unordered_map<VarId, std::uint32_t> var_level_;
    std::vector<VarId> level_var_;
};

// =====================================================================
// Pos-domain operations. All functions require their operands to live in
// one manager; mixing managers is a logic error.
// =====================================================================

enum class Quant { exists, forall };

BoolFn mk_true(BddManager& m);
BoolFn mk_false(BddManager& m);
BoolFn mk_var(BddManager& m, VarId v);

BoolFn conj(BoolFn f, BoolFn g);
BoolFn disj(BoolFn f, BoolFn g);
BoolFn neg(BoolFn f);
BoolFn implies(BoolFn f, BoolFn g);
BoolFn iff(BoolFn f, BoolFn g);

// Weakest h with conj(f, h) entailing g; coincides with classical f => g.
BoolFn pseudo_complement(BoolFn f, BoolFn g);

// Cofactor f[v := b]. May leave Pos; never stored in pattern tables.
BoolFn restrict(BoolFn f, VarId v, bool b);

// Schroeder elimination: disjunction of both cofactors. Preserves Pos.
BoolFn exists(BoolFn f, VarId v);

// Conjunction of both cofactors when that lands in Pos, else bottom.
BoolFn forall(BoolFn f, VarId v);

BoolFn exists_set(BoolFn f, std::span<const VarId> vs);
BoolFn forall_set(BoolFn f, std::span<const VarId> vs);

// Eliminates support(f) \ keep, ascending VarId order (order-independent).
BoolFn project_onto(BoolFn f, std::span<const VarId> keep, Quant q);

// Simultaneous variable renaming; throws std::invalid_argument when r is
// not injective or a target collides with an unrenamed support variable.
BoolFn rename(BoolFn f, const Renaming& r);

bool entails(BoolFn f, BoolFn g);  // f |= g, decided as conj(f, g) == f
bool equiv(BoolFn f, BoolFn g);

// True for members of Pos: f(1, ..., 1) = 1. Bottom is not a member.
bool in_pos(BoolFn f);

std::vector<VarId> support(BoolFn f);

// Semantic evaluation at a point; assignment is indexed by VarId and must
// cover support(f), otherwise throws std::out_of_range.
bool reference_eval(BoolFn f, std::span<const bool> assignment);

}  // namespace modewise
