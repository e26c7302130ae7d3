#include "modewise/normalize.hpp"

#include <deque>
#include <set>

namespace modewise {

namespace {

struct Normalizer {
    NormClause out;

    std::uint32_t fresh() {
        std::uint32_t v = out.nvars++;
        out.var_names.push_back("_N" + std::to_string(v));
        return v;
    }

    // Pending bindings awaiting flattening, in reading order.
    std::deque<std::pair<std::uint32_t, Term>> pending;

    // Turns one argument list into distinct variables, queueing an equation
    // per non-variable or repeated argument.
    std::vector<std::uint32_t> atom_args(const std::vector<Term>& args) {
        std::vector<std::uint32_t> ids;
        std::set<std::uint32_t> used;
        for (const Term& a : args) {
            if (a.is_var() && used.insert(a.var).second) {
                ids.push_back(a.var);
            } else {
                std::uint32_t v = fresh();
                used.insert(v);
                pending.push_back({v, a});
                ids.push_back(v);
            }
        }
        return ids;
    }

    // One level of flattening: replaces non-variable subterm arguments with
    // fresh variables, queueing their bindings behind the current ones.
    void flatten(std::uint32_t lhs, const Term& rhs) {
        if (!rhs.is_compound()) {
            out.eqns.push_back({lhs, rhs});
            return;
        }
        Term flat = rhs;
        for (Term& a : flat.args) {
            if (a.is_var()) continue;
            std::uint32_t v = fresh();
            pending.push_back({v, std::move(a)});
            a = Term::make_var(v, out.var_names[v]);
        }
        out.eqns.push_back({lhs, std::move(flat)});
    }

    void drain() {
        while (!pending.empty()) {
            auto [v, t] = std::move(pending.front());
            pending.pop_front();
            flatten(v, t);
        }
    }
};

}  // namespace

NormClause normalize_clause(const SourceClause& c) {
    Normalizer n;
    n.out.line = c.line;
    n.out.nvars = c.nvars;
    n.out.var_names = c.var_names;

    n.out.head.pred = c.head.text;
    n.out.head.args = n.atom_args(c.head.args);
    n.drain();

    for (const Goal& g : c.body) {
        if (g.kind == Goal::Kind::equation) {
            if (g.a.is_var()) {
                n.pending.push_back({g.a.var, g.b});
            } else if (g.b.is_var()) {
                n.pending.push_back({g.b.var, g.a});
            } else {
                std::uint32_t v = n.fresh();
                n.pending.push_back({v, g.a});
                n.pending.push_back({v, g.b});
            }
            n.drain();
            continue;
        }
        NormAtom atom;
        atom.pred = g.a.text;
        atom.args = n.atom_args(g.a.args);
        n.drain();
        n.out.body.push_back(std::move(atom));
    }
    return n.out;
}

NormProgram normalize(const Program& p) {
    NormProgram np;
    np.directives = p.directives;
    np.clauses.reserve(p.clauses.size());
    for (const SourceClause& c : p.clauses) np.clauses.push_back(normalize_clause(c));
    return np;
}

bool is_normal(const NormClause& c) {
    auto distinct = [](const NormAtom& a) {
        std::set<std::uint32_t> s(a.args.begin(), a.args.end());
        return s.size() == a.args.size();
    };
    if (!distinct(c.head)) return false;
    for (const NormAtom& a : c.body)
        if (!distinct(a)) return false;
    for (const auto& [v, t] : c.eqns) {
        if (v >= c.nvars) return false;
        if (t.is_compound()) {
            for (const Term& a : t.args)
                if (!a.is_var()) return false;
        }
    }
    return true;
}

}  // namespace modewise
