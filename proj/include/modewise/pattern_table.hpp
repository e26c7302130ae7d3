#pragma once

#include <map>
#include <string>

#include "modewise/bdd.hpp"

namespace modewise {

// Success tables default absent entries to bottom (nothing proven to
// succeed); call tables default to top (no demand established yet).
enum class TableKind : std::uint8_t { success, call };

// Map from predicate name/arity to a formula over canonical argument
// positions x1..xN (VarIds 0..N-1).
class PatternTable {
public:
    PatternTable(TableKind k, BddManager& m) : kind_(k), mgr_(&m) {}

    TableKind kind() const { return kind_; }
    BddManager& manager() const { return *mgr_; }

    BoolFn get(const std::string& name, std::uint32_t arity) const {
        auto it = map_.find({name, arity});
        if (it != map_.end()) return it->second;
        return kind_ == TableKind::success ? mgr_->bot() : mgr_->top();
    }

    void set(const std::string& name, std::uint32_t arity, BoolFn f) {
        map_.insert_or_assign({name, arity}, f);
    }

    const std::map<std::pair<std::string, std::uint32_t>, BoolFn>& entries() const {
        return map_;
    }

    friend bool operator==(const PatternTable& a, const PatternTable& b) {
        if (a.kind_ != b.kind_ || a.mgr_ != b.mgr_) return false;
        for (const auto& [k, v] : a.map_)
            if (!(b.get(k.first, k.second) == v)) return false;
        for (const auto& [k, v] : b.map_)
            if (!(a.get(k.first, k.second) == v)) return false;
        return true;
    }

private:
    TableKind kind_;
    BddManager* mgr_;
    std::map<std::pair<std::string, std::uint32_t>, BoolFn> map_;
};

}  // namespace modewise
