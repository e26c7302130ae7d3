#include "modewise/gfp.hpp"

#include <cassert>
#include <chrono>
#include <deque>
#include <set>

namespace modewise {

ClauseDemandDetail clause_demand_detail(const AbstractClause& c, const PatternTable& success,
                                        const PatternTable& calls, BddManager& m) {
    BoolFn e = mk_true(m);
    for (auto it = c.body.rbegin(); it != c.body.rend(); ++it) {
        const AbstractAtom& a = *it;
        Renaming r;
        for (std::uint32_t i = 0; i < a.arity(); ++i) r.push_back({i, a.args[i]});
        BoolFn d = rename(calls.get(a.pred, a.arity()), r);
        BoolFn f = rename(success.get(a.pred, a.arity()), r);
        // The guarded and unguarded weakenings agree under the call pattern.
        assert(conj(d, pseudo_complement(f, e)) ==
               conj(d, pseudo_complement(conj(d, f), e)));
        e = conj(d, pseudo_complement(f, e));
    }
    BoolFn entry = conj(c.assertion, pseudo_complement(c.constraint, e));
    assert(entry == conj(c.assertion,
                         pseudo_complement(conj(c.assertion, c.constraint), e)));

    BoolFn g = project_onto(entry, c.head.args, Quant::forall);
    Renaming to_canonical;
    for (std::uint32_t i = 0; i < c.head.arity(); ++i) to_canonical.push_back({c.head.args[i], i});
    return {rename(g, to_canonical), entry};
}

BoolFn clause_demand(const AbstractClause& c, const PatternTable& success,
                     const PatternTable& calls, BddManager& m) {
    return clause_demand_detail(c, success, calls, m).head_demand;
}

namespace {

PatternTable gfp_round(const AbstractProgram& ap, const PatternTable& success,
                       const PatternTable& cur) {
    BddManager& m = *ap.mgr;
    PatternTable next = cur;
    for (const PredInfo& p : ap.preds) {
        BoolFn v = next.get(p.name, p.arity);
        for (std::size_t ci : p.clauses)
            v = conj(v, clause_demand(ap.clauses[ci], success, cur, m));
        next.set(p.name, p.arity, v);
    }
    return next;
}

}  // namespace

GfpResult gfp(const AbstractProgram& ap, const PatternTable& success) {
    BddManager& m = *ap.mgr;
    PatternTable cur(TableKind::call, m);
    std::vector<PatternTable> trace;
    trace.push_back(cur);  // all-top start

    while (true) {
        PatternTable next = gfp_round(ap, success, cur);
        // The chain descends.
        for (const PredInfo& p : ap.preds)
            assert(entails(next.get(p.name, p.arity), cur.get(p.name, p.arity)));
        trace.push_back(next);
        if (next == cur) break;
        cur = std::move(next);
    }
    std::size_t iterations = trace.size() >= 2 ? trace.size() - 2 : 0;
    return {cur, trace, iterations};
}

PatternTable gfp_worklist(const AbstractProgram& ap, const PatternTable& success) {
    BddManager& m = *ap.mgr;
    PatternTable cur(TableKind::call, m);

    using Key = std::pair<std::string, std::uint32_t>;
    // A predicate's demand depends on the call and success patterns of the
    // predicates its clauses mention, and feeds back into those clauses'
    // heads; on change, requeue every predicate calling the changed one...
    // demand flows from callees into heads, so dependents of q are the
    // predicates with q in a clause body.
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
        BoolFn v = cur.get(k.first, k.second);
        for (std::size_t ci : p->clauses)
            v = conj(v, clause_demand(ap.clauses[ci], success, cur, m));
        if (!(v == cur.get(k.first, k.second))) {
            assert(entails(v, cur.get(k.first, k.second)));
            cur.set(k.first, k.second, v);
            for (const Key& dep : dependents[k])
                if (queued.insert(dep).second) queue.push_back(dep);
        }
    }
    return cur;
}

AnalysisResult analyze(const AbstractProgram& ap) {
    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    LfpResult lf = lfp(ap);
    auto t1 = clock::now();
    GfpResult gf = gfp(ap, lf.table);
    auto t2 = clock::now();

    AnalysisResult r{std::move(lf.table),  std::move(gf.table), std::move(lf.trace),
                     std::move(gf.trace),  lf.iterations,       gf.iterations,
                     std::chrono::duration<double, std::milli>(t1 - t0).count(),
                     std::chrono::duration<double, std::milli>(t2 - t1).count()};
    return r;
}

}  // namespace modewise
