#include "modewise/bdd.hpp"

#include <algorithm>
#include <cassert>

namespace modewise {

BddManager::BddManager() {
    nodes_.push_back({kTermLevel, 0, 0});  // 0 = false terminal
    nodes_.push_back({kTermLevel, 1, 1});  // 1 = true terminal
}

std::uint32_t BddManager::var_node(VarId v) {
    auto it = var_level_.find(v);
    std::uint32_t level;
    if (it == var_level_.end()) {
        level = static_cast<std::uint32_t>(level_var_.size());
        var_level_.emplace(v, level);
        level_var_.push_back(v);
    } else {
        level = it->second;
    }
    return mk_node(level, 0, 1);
}

std::uint32_t BddManager::mk_node(std::uint32_t level, std::uint32_t lo, std::uint32_t hi) {
    if (lo == hi) return lo;
    Key k{level, lo, hi};
    auto it = unique_.find(k);
    if (it != unique_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({level, lo, hi});
    unique_.emplace(k, id);
    return id;
}

std::uint32_t BddManager::ite(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
    if (f == 1) return g;
    if (f == 0) return h;
    if (g == h) return g;
    if (g == 1 && h == 0) return f;

    Key k{f, g, h};
    auto it = ite_cache_.find(k);
    if (it != ite_cache_.end()) return it->second;

    std::uint32_t m = std::min({level_of(f), level_of(g), level_of(h)});
    auto split = [&](std::uint32_t n, bool hi) {
        const Node& nd = nodes_[n];
        return nd.level == m ? (hi ? nd.hi : nd.lo) : n;
    };
    std::uint32_t lo = ite(split(f, false), split(g, false), split(h, false));
    std::uint32_t hi = ite(split(f, true), split(g, true), split(h, true));
    std::uint32_t r = mk_node(m, lo, hi);
    ite_cache_.emplace(k, r);
    return r;
}

std::uint32_t BddManager::cofactor(std::uint32_t f, VarId v, bool b) {
    auto it = var_level_.find(v);
    if (it == var_level_.end()) return f;
    std::uint32_t target = it->second;

    std::unordered_map<std::uint32_t, std::uint32_t> memo;
    auto go = [&](auto&& self, std::uint32_t n) -> std::uint32_t {
        const Node& nd = nodes_[n];
        if (nd.level == kTermLevel || nd.level > target) return n;
        auto m = memo.find(n);
        if (m != memo.end()) return m->second;
        std::uint32_t r;
        if (nd.level == target) {
            r = b ? nd.hi : nd.lo;
        } else {
            r = mk_node(nd.level, self(self, nd.lo), self(self, nd.hi));
        }
        memo.emplace(n, r);
        return r;
    };
    return go(go, f);
}

bool BddManager::true_at_ones(std::uint32_t f) const {
    while (nodes_[f].level != kTermLevel) f = nodes_[f].hi;
    return f == 1;
}

std::vector<VarId> BddManager::support_of(std::uint32_t f) const {
    std::vector<bool> seen_level(level_var_.size(), false);
    std::vector<std::uint32_t> stack{f};
    std::unordered_map<std::uint32_t, bool> visited;
    while (!stack.empty()) {
        std::uint32_t n = stack.back();
        stack.pop_back();
        const Node& nd = nodes_[n];
        if (nd.level == kTermLevel || visited.count(n)) continue;
        visited.emplace(n, true);
        seen_level[nd.level] = true;
        stack.push_back(nd.lo);
        stack.push_back(nd.hi);
    }
    std::vector<VarId> out;
    for (std::uint32_t lvl = 0; lvl < seen_level.size(); ++lvl)
        if (seen_level[lvl]) out.push_back(level_var_[lvl]);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint32_t BddManager::rename_node(std::uint32_t f, const Renaming& r) {
    std::unordered_map<VarId, VarId> map;
    for (const auto& [from, to] : r) {
        if (!map.emplace(from, to).second)
            throw std::invalid_argument("rename: duplicate source variable");
    }
    {
        std::unordered_map<VarId, VarId> targets;
        for (const auto& [from, to] : r)
            if (!targets.emplace(to, from).second)
                throw std::invalid_argument("rename: renaming is not injective");
        for (VarId v : support_of(f))
            if (!map.count(v) && targets.count(v) && targets[v] != v)
                throw std::invalid_argument("rename: target collides with unrenamed variable");
    }

    std::unordered_map<std::uint32_t, std::uint32_t> memo;
    auto go = [&](auto&& self, std::uint32_t n) -> std::uint32_t {
        const Node& nd = nodes_[n];
        if (nd.level == kTermLevel) return n;
        auto m = memo.find(n);
        if (m != memo.end()) return m->second;
        VarId v = level_var_[nd.level];
        auto t = map.find(v);
        std::uint32_t vn = var_node(t == map.end() ? v : t->second);
        std::uint32_t res = ite(vn, self(self, nd.hi), self(self, nd.lo));
        memo.emplace(n, res);
        return res;
    };
    return go(go, f);
}

BoolFn BddManager::import(BoolFn f) {
    if (f.mgr == this) return f;
    const BddManager& src = *f.mgr;
    std::unordered_map<std::uint32_t, std::uint32_t> memo;
    auto go = [&](auto&& self, std::uint32_t n) -> std::uint32_t {
        const Node& nd = src.nodes_[n];
        if (nd.level == kTermLevel) return n;
        auto m = memo.find(n);
        if (m != memo.end()) return m->second;
        std::uint32_t vn = var_node(src.level_var_[nd.level]);
        std::uint32_t res = ite(vn, self(self, nd.hi), self(self, nd.lo));
        memo.emplace(n, res);
        return res;
    };
    return {this, go(go, f.node)};
}

bool BddManager::eval(std::uint32_t f, std::span<const bool> assignment) const {
    while (nodes_[f].level != kTermLevel) {
        VarId v = level_var_[nodes_[f].level];
        if (v >= assignment.size())
            throw std::out_of_range("reference_eval: assignment does not cover support");
        f = assignment[v] ? nodes_[f].hi : nodes_[f].lo;
    }
    return f == 1;
}

// ===================== free-function surface =====================

namespace {
BddManager& same_mgr(BoolFn f, BoolFn g) {
    assert(f.mgr && f.mgr == g.mgr && "operands from different managers");
    return *f.mgr;
}
}  // namespace

BoolFn mk_true(BddManager& m) { return m.top(); }
BoolFn mk_false(BddManager& m) { return m.bot(); }
BoolFn mk_var(BddManager& m, VarId v) { return m.var(v); }

BoolFn conj(BoolFn f, BoolFn g) { return {f.mgr, same_mgr(f, g).b_and(f.node, g.node)}; }
BoolFn disj(BoolFn f, BoolFn g) { return {f.mgr, same_mgr(f, g).b_or(f.node, g.node)}; }
BoolFn neg(BoolFn f) { return {f.mgr, f.mgr->b_not(f.node)}; }
BoolFn implies(BoolFn f, BoolFn g) { return {f.mgr, same_mgr(f, g).b_implies(f.node, g.node)}; }
BoolFn iff(BoolFn f, BoolFn g) { return {f.mgr, same_mgr(f, g).b_iff(f.node, g.node)}; }

BoolFn pseudo_complement(BoolFn f, BoolFn g) { return implies(f, g); }

BoolFn restrict(BoolFn f, VarId v, bool b) { return {f.mgr, f.mgr->cofactor(f.node, v, b)}; }

BoolFn exists(BoolFn f, VarId v) {
    auto& m = *f.mgr;
    return {&m, m.b_or(m.cofactor(f.node, v, false), m.cofactor(f.node, v, true))};
}

BoolFn forall(BoolFn f, VarId v) {
    auto& m = *f.mgr;
    std::uint32_t both = m.b_and(m.cofactor(f.node, v, false), m.cofactor(f.node, v, true));
    return {&m, m.true_at_ones(both) ? both : 0};
}

BoolFn exists_set(BoolFn f, std::span<const VarId> vs) {
    for (VarId v : vs) f = exists(f, v);
    return f;
}

BoolFn forall_set(BoolFn f, std::span<const VarId> vs) {
    for (VarId v : vs) f = forall(f, v);
    return f;
}

BoolFn project_onto(BoolFn f, std::span<const VarId> keep, Quant q) {
    std::vector<VarId> drop;
    for (VarId v : support(f))
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.push_back(v);
    return q == Quant::exists ? exists_set(f, drop) : forall_set(f, drop);
}

BoolFn rename(BoolFn f, const Renaming& r) { return {f.mgr, f.mgr->rename_node(f.node, r)}; }

bool entails(BoolFn f, BoolFn g) { return conj(f, g) == f; }

bool equiv(BoolFn f, BoolFn g) {
    same_mgr(f, g);
    return f.node == g.node;
}

bool in_pos(BoolFn f) { return f.mgr->true_at_ones(f.node); }

std::vector<VarId> support(BoolFn f) { return f.mgr->support_of(f.node); }

bool reference_eval(BoolFn f, std::span<const bool> assignment) {
    return f.mgr->eval(f.node, assignment);
}

}  // namespace modewise
