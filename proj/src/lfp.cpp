#include "modewise/lfp.hpp"

#include <cassert>
#include <deque>
#include <set>

namespace modewise {

BoolFn clause_success(const AbstractClause& c, const PatternTable& success,
                      [[maybe_unused]] BddManager& m) {
    BoolFn g = c.constraint;
    for (const AbstractAtom& a : c.body) {
        BoolFn fa = success.get(a.pred, a.arity());
        Renaming r;
        for (std::uint32_t i = 0; i < a.arity(); ++i) r.push_back({i, a.args[i]});
        g = conj(g, rename(fa, r));
    }
    g = project_onto(g, c.head.args, Quant::exists);
    Renaming to_canonical;
    for (std::uint32_t i = 0; i < c.head.arity(); ++i) to_canonical.push_back({c.head.args[i], i});
    return rename(g, to_canonical);
}

namespace {

PatternTable lfp_round(const AbstractProgram& ap, const PatternTable& cur) {
    BddManager& m = *ap.mgr;
    PatternTable next(TableKind::success, m);
    for (const PredInfo& p : ap.preds) {
        BoolFn v = mk_false(m);
        for (std::size_t ci : p.clauses) v = disj(v, clause_success(ap.clauses[ci], cur, m));
        next.set(p.name, p.arity, v);
    }
    return next;
}

}  // namespace

LfpResult lfp(const AbstractProgram& ap) {
    BddManager& m = *ap.mgr;
    PatternTable cur(TableKind::success, m);
    std::vector<PatternTable> trace;

    while (true) {
        PatternTable next = lfp_round(ap, cur);
        // The chain ascends; on change the ascent is strict somewhere.
        for (const PredInfo& p : ap.preds)
            assert(entails(cur.get(p.name, p.arity), next.get(p.name, p.arity)));
        trace.push_back(next);
        if (next == cur) break;
        cur = std::move(next);
    }
    return {cur, trace, trace.size()};
}

PatternTable lfp_worklist(const AbstractProgram& ap) {
    BddManager& m = *ap.mgr;
    PatternTable cur(TableKind::success, m);

    using Key = std::pair<std::string, std::uint32_t>;
    std::map<Key, std::set<Key>> dependents;
    for (const PredInfo& p : ap.preds)
        for (std::size_t ci : p.clauses)
            for (const AbstractAtom& a : ap.clauses[ci].body)
                dependents[{a.pred, a.arity()}].insert({p.name, p.arity});

    std::deque<Key> queue;
    std::set<Key> queued;
    for (const PredInfo& p : ap.preds) {
        queue.push_back({p.name, p.arity});
        queued.insert({p.name, p.arity});
    }

    while (!queue.empty()) {
        Key k = queue.front();
        queue.pop_front();
        queued.erase(k);
        const PredInfo* p = ap.find(k.first, k.second);
        BoolFn v = mk_false(m);
        for (std::size_t ci : p->clauses) v = disj(v, clause_success(ap.clauses[ci], cur, m));
        if (!(v == cur.get(k.first, k.second))) {
            assert(entails(cur.get(k.first, k.second), v));
            cur.set(k.first, k.second, v);
            for (const Key& dep : dependents[k])
                if (queued.insert(dep).second) queue.push_back(dep);
        }
    }
    return cur;
}

}  // namespace modewise
