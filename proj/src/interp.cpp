#include "modewise/interp.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "modewise/formula.hpp"

namespace modewise {

// ===================== substitution and unification =====================

const Term& Substitution::walk_ref(const Term& t) const {
    const Term* cur = &t;
    while (cur->is_var() && bound(cur->var)) cur = &slots_[cur->var].term;
    return *cur;
}

Term Substitution::walk(const Term& t) const { return walk_ref(t); }

Term Substitution::resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_compound())
        for (Term& a : w.args) a = resolve(a);
    return w;
}

namespace {

bool occurs(std::uint32_t v, const Term& t, const Substitution& s) {
    const Term& w = s.walk_ref(t);
    if (w.is_var()) return w.var == v;
    for (const Term& a : w.args)
        if (occurs(v, a, s)) return true;
    return false;
}

}  // namespace

bool unify(const Term& a0, const Term& b0, Substitution& s) {
    // References stay valid across binds: slots never move once created.
    const Term& a = s.walk_ref(a0);
    const Term& b = s.walk_ref(b0);
    if (a.is_var() && b.is_var() && a.var == b.var) return true;
    if (a.is_var()) {
        if (occurs(a.var, b, s)) return false;
        s.bind(a.var, b);
        return true;
    }
    if (b.is_var()) {
        if (occurs(b.var, a, s)) return false;
        s.bind(b.var, a);
        return true;
    }
    if (a.is_int() || b.is_int()) return a.is_int() && b.is_int() && a.value == b.value;
    if (a.is_atom() || b.is_atom()) return a.is_atom() && b.is_atom() && a.text == b.text;
    if (a.text != b.text || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify(a.args[i], b.args[i], s)) return false;
    return true;
}

Query parse_query(std::string_view text) {
    std::string wrapped = "'?' :- ";
    wrapped += text;
    wrapped += " .";
    Program p = parse_program(wrapped);
    if (p.clauses.size() != 1 || !p.directives.empty())
        throw ParseError("query must be a single goal sequence", 1, 1);
    SourceClause& c = p.clauses[0];
    return {std::move(c.body), c.nvars, std::move(c.var_names)};
}

namespace {

Term canon_rec(const Term& t, std::map<std::uint32_t, std::uint32_t>& ids) {
    if (t.is_var()) {
        auto [it, fresh] = ids.try_emplace(t.var, static_cast<std::uint32_t>(ids.size()));
        (void)fresh;
        return Term::make_var(it->second, t.text);
    }
    if (!t.is_compound()) return t;
    Term out = t;
    for (Term& a : out.args) a = canon_rec(a, ids);
    return out;
}

}  // namespace

Term canonical_vars(const Term& t) {
    std::map<std::uint32_t, std::uint32_t> ids;
    return canon_rec(t, ids);
}

// ===================== runtime program =====================

RuntimeProgram RuntimeProgram::from_source(const Program& p, const BuiltinTable& builtins) {
    RuntimeProgram rp;
    rp.mgr_ = std::make_unique<BddManager>();
    for (const SourceClause& c : p.clauses) {
        auto key = std::make_pair(c.head.text, static_cast<std::uint32_t>(c.head.args.size()));
        rp.clauses_[key].push_back({c.head, c.body, c.nvars, c.line});
    }
    rp.finish(p.directives, builtins);
    return rp;
}

RuntimeProgram RuntimeProgram::from_normalized(const NormProgram& np,
                                               const BuiltinTable& builtins) {
    RuntimeProgram rp;
    rp.mgr_ = std::make_unique<BddManager>();
    for (const NormClause& c : np.clauses) {
        auto var_of = [&](std::uint32_t v) {
            std::string n = v < c.var_names.size() ? c.var_names[v] : std::string();
            return Term::make_var(v, std::move(n));
        };
        auto atom_term = [&](const std::string& pred, const std::vector<std::uint32_t>& vs) {
            if (vs.empty()) return Term::make_atom(pred);
            std::vector<Term> args;
            args.reserve(vs.size());
            for (std::uint32_t v : vs) args.push_back(var_of(v));
            return Term::make_compound(pred, std::move(args));
        };

        RuntimeClause rc;
        rc.head = atom_term(c.head.pred, c.head.args);
        for (const auto& [v, t] : c.eqns) {
            Goal g;
            g.kind = Goal::Kind::equation;
            g.a = var_of(v);
            g.b = t;
            g.line = c.line;
            rc.goals.push_back(std::move(g));
        }
        for (const NormAtom& a : c.body) {
            Goal g;
            g.kind = Goal::Kind::call;
            g.a = atom_term(a.pred, a.args);
            g.line = c.line;
            rc.goals.push_back(std::move(g));
        }
        rc.nvars = c.nvars;
        rc.line = c.line;
        rp.clauses_[{c.head.pred, c.head.arity()}].push_back(std::move(rc));
    }
    rp.finish(np.directives, builtins);
    return rp;
}

void RuntimeProgram::finish(const std::vector<Directive>& ds, const BuiltinTable& builtins) {
    for (const auto& [key, spec] : builtins.entries())
        builtins_.emplace(key,
                          BuiltinModes{mgr_->import(spec.required), mgr_->import(spec.success)});
    for (const auto& [key, mode] : directive_assertions(ds, *mgr_))
        if (clauses_.count(key)) modes_.emplace(key, mode);
}

const std::vector<RuntimeClause>& RuntimeProgram::clauses_of(const std::string& name,
                                                             std::uint32_t arity) const {
    static const std::vector<RuntimeClause> none;
    auto it = clauses_.find({name, arity});
    return it == clauses_.end() ? none : it->second;
}

const RuntimeProgram::BuiltinModes* RuntimeProgram::builtin(const std::string& name,
                                                            std::uint32_t arity) const {
    auto it = builtins_.find({name, arity});
    return it == builtins_.end() ? nullptr : &it->second;
}

bool RuntimeProgram::builtin_like(const std::string& name, std::uint32_t arity) const {
    if (builtins_.count({name, arity})) return true;
    bool symbolic = !name.empty();
    for (char c : name)
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            symbolic = false;
            break;
        }
    return symbolic || BuiltinTable::stock_name(name, arity);
}

BoolFn RuntimeProgram::assertion_mode(const std::string& name, std::uint32_t arity) const {
    auto it = modes_.find({name, arity});
    return it == modes_.end() ? mgr_->top() : it->second;
}

// ===================== execution =====================

namespace {

struct GoalNode;
using GoalList = std::shared_ptr<const GoalNode>;

struct GoalNode {
    Goal g;
    std::size_t depth;
    GoalList next;
};

GoalList push_goal(Goal g, std::size_t depth, GoalList next) {
    return std::make_shared<const GoalNode>(GoalNode{std::move(g), depth, std::move(next)});
}

struct RunState {
    const RuntimeProgram& rp;
    const Query& query;
    const InterpOptions& opts;
    RunResult res;
    std::uint32_t fresh = 0;
    std::vector<Term> stack;  // enclosing calls, unresolved
    bool stop_all = false;
    bool step_limited = false;
    std::mt19937_64 io_rng{0x6d6f6465u};  // feeds read/1's pseudo-random terms
};

Term rename_term(const Term& t, std::uint32_t base) {
    Term out = t;
    if (out.is_var()) {
        out.var += base;
        return out;
    }
    for (Term& a : out.args) a = rename_term(a, base);
    return out;
}

std::optional<long long> eval_arith(const Term& t0, const Substitution& s) {
    const Term& t = s.walk_ref(t0);
    if (t.is_int()) return t.value;
    if (!t.is_compound()) return std::nullopt;
    if (t.args.size() == 1) {
        auto a = eval_arith(t.args[0], s);
        if (!a) return std::nullopt;
        if (t.text == "-") return -*a;
        if (t.text == "+") return *a;
        if (t.text == "abs") return *a < 0 ? -*a : *a;
        return std::nullopt;
    }
    if (t.args.size() != 2) return std::nullopt;
    auto a = eval_arith(t.args[0], s);
    auto b = eval_arith(t.args[1], s);
    if (!a || !b) return std::nullopt;
    const std::string& op = t.text;
    if (op == "+") return *a + *b;
    if (op == "-") return *a - *b;
    if (op == "*") return *a * *b;
    if (op == "//" || op == "/") {
        if (*b == 0) return std::nullopt;
        return *a / *b;
    }
    if (op == "mod") {
        if (*b == 0) return std::nullopt;
        long long r = *a % *b;
        if (r != 0 && (r < 0) != (*b < 0)) r += *b;
        return r;
    }
    if (op == "rem") {
        if (*b == 0) return std::nullopt;
        return *a % *b;
    }
    if (op == "min") return std::min(*a, *b);
    if (op == "max") return std::max(*a, *b);
    if (op == "<<") {
        if (*b < 0 || *b > 62) return std::nullopt;
        return *a << *b;
    }
    if (op == ">>") {
        if (*b < 0 || *b > 62) return std::nullopt;
        return *a >> *b;
    }
    if (op == "/\\") return *a & *b;
    if (op == "\\/") return *a | *b;
    if (op == "^" || op == "**") {
        if (*b < 0 || *b > 62) return std::nullopt;
        long long r = 1;
        for (long long i = 0; i < *b; ++i) r *= *a;
        return r;
    }
    return std::nullopt;
}

std::optional<std::vector<Term>> list_elems(const Term& t0, const Substitution& s) {
    std::vector<Term> out;
    const Term* t = &s.walk_ref(t0);
    while (t->is_cons()) {
        out.push_back(t->args[0]);
        t = &s.walk_ref(t->args[1]);
    }
    if (t->is_nil()) return out;
    return std::nullopt;
}

Term build_list(std::vector<Term> elems) {
    Term out = Term::make_atom("[]");
    for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        out = Term::make_compound(".", {std::move(*it), std::move(out)});
    return out;
}

bool exec_univ(const std::vector<Term>& args, Substitution& s) {
    Term a = s.walk(args[0]);
    if (!a.is_var()) {
        std::vector<Term> parts;
        if (a.is_compound()) {
            parts.push_back(Term::make_atom(a.text));
            for (const Term& x : a.args) parts.push_back(x);
        } else {
            parts.push_back(a);
        }
        return unify(args[1], build_list(std::move(parts)), s);
    }
    auto elems = list_elems(args[1], s);
    if (!elems || elems->empty()) return false;
    Term f = s.walk((*elems)[0]);
    if (elems->size() == 1) {
        if (f.is_atom() || f.is_int()) return unify(args[0], f, s);
        return false;
    }
    if (!f.is_atom()) return false;
    std::vector<Term> rest(elems->begin() + 1, elems->end());
    return unify(args[0], Term::make_compound(f.text, std::move(rest)), s);
}

bool exec_name(const std::vector<Term>& args, Substitution& s) {
    Term a = s.walk(args[0]);
    if (a.is_atom() || a.is_int()) {
        std::string text = a.is_atom() ? a.text : std::to_string(a.value);
        std::vector<Term> codes;
        codes.reserve(text.size());
        for (unsigned char c : text) codes.push_back(Term::make_int(c));
        return unify(args[1], build_list(std::move(codes)), s);
    }
    auto elems = list_elems(args[1], s);
    if (!elems) return false;
    std::string text;
    for (const Term& e : *elems) {
        Term w = s.walk(e);
        if (!w.is_int() || w.value < 0 || w.value > 255) return false;
        text += static_cast<char>(w.value);
    }
    bool numeric = !text.empty() && text.size() <= 18;
    for (std::size_t i = text[0] == '-' ? 1 : 0; numeric && i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) numeric = false;
    if (numeric && !(text.size() == 1 && text[0] == '-'))
        return unify(args[0], Term::make_int(std::stoll(text)), s);
    return unify(args[0], Term::make_atom(std::move(text)), s);
}

bool exec_length(const std::vector<Term>& args, Substitution& s, std::uint32_t& fresh) {
    if (auto elems = list_elems(args[0], s))
        return unify(args[1], Term::make_int(static_cast<long long>(elems->size())), s);
    Term n = s.walk(args[1]);
    if (!n.is_int() || n.value < 0 || n.value > 4096) return false;
    std::vector<Term> vs;
    vs.reserve(static_cast<std::size_t>(n.value));
    for (long long i = 0; i < n.value; ++i) vs.push_back(Term::make_var(fresh++));
    return unify(args[0], build_list(std::move(vs)), s);
}

bool exec_sort(bool by_key, const std::vector<Term>& args, Substitution& s) {
    auto elems = list_elems(args[0], s);
    if (!elems) return false;
    std::vector<Term> xs;
    xs.reserve(elems->size());
    for (const Term& e : *elems) xs.push_back(s.resolve(e));
    if (by_key) {
        for (const Term& x : xs)
            if (!x.is_compound("-", 2)) return false;
        std::stable_sort(xs.begin(), xs.end(), [](const Term& a, const Term& b) {
            return term_compare(a.args[0], b.args[0]) < 0;
        });
    } else {
        std::sort(xs.begin(), xs.end(),
                  [](const Term& a, const Term& b) { return term_compare(a, b) < 0; });
        xs.erase(std::unique(xs.begin(), xs.end(),
                             [](const Term& a, const Term& b) { return term_equal(a, b); }),
                 xs.end());
    }
    return unify(args[1], build_list(std::move(xs)), s);
}

bool exec_functor(const std::vector<Term>& args, Substitution& s, std::uint32_t& fresh) {
    Term a = s.walk(args[0]);
    if (!a.is_var()) {
        Term fn = a.is_int() ? a : Term::make_atom(a.text);
        long long n = a.is_compound() ? static_cast<long long>(a.args.size()) : 0;
        return unify(args[1], fn, s) && unify(args[2], Term::make_int(n), s);
    }
    Term f = s.walk(args[1]);
    Term n = s.walk(args[2]);
    if (!n.is_int() || n.value < 0 || n.value > 255) return false;
    if (n.value == 0) {
        if (f.is_atom() || f.is_int()) return unify(args[0], f, s);
        return false;
    }
    if (!f.is_atom()) return false;
    std::vector<Term> vs;
    vs.reserve(static_cast<std::size_t>(n.value));
    for (long long i = 0; i < n.value; ++i) vs.push_back(Term::make_var(fresh++));
    return unify(args[0], Term::make_compound(f.text, std::move(vs)), s);
}

bool exec_arg(const std::vector<Term>& args, Substitution& s) {
    Term n = s.walk(args[0]);
    Term t = s.walk(args[1]);
    if (!n.is_int() || !t.is_compound()) return false;
    if (n.value < 1 || n.value > static_cast<long long>(t.args.size())) return false;
    return unify(args[2], t.args[static_cast<std::size_t>(n.value - 1)], s);
}

// Single-solution oracles for the stock builtins. Cut is a no-op (the
// supported corpus is cut-free), the write family does not write, read/1
// yields a pseudo-random ground integer. A table entry with no native
// meaning succeeds without binding anything.
bool exec_builtin(const std::string& name, const std::vector<Term>& args, Substitution& s,
                  RunState& st) {
    std::uint32_t arity = static_cast<std::uint32_t>(args.size());
    auto nums = [&]() -> std::optional<std::pair<long long, long long>> {
        auto a = eval_arith(args[0], s);
        auto b = eval_arith(args[1], s);
        if (!a || !b) return std::nullopt;
        return std::make_pair(*a, *b);
    };

    if (arity == 0) {
        if (name == "true" || name == "!" || name == "nl" || name == "listing" ||
            name == "repeat")
            return true;
        if (name == "fail" || name == "false" || name == "abort") return false;
    } else if (arity == 1) {
        if (name == "write" || name == "writeq" || name == "print" || name == "display" ||
            name == "portray_clause" || name == "listing")
            return true;
        if (name == "tab" || name == "put") return eval_arith(args[0], s).has_value();
        if (name == "read")
            return unify(args[0], Term::make_int(static_cast<long long>(st.io_rng() % 1000)), s);
        if (name == "var") return s.walk(args[0]).is_var();
        if (name == "nonvar") return !s.walk(args[0]).is_var();
        if (name == "atom") return s.walk(args[0]).is_atom();
        if (name == "atomic") {
            Term w = s.walk(args[0]);
            return w.is_atom() || w.is_int();
        }
        if (name == "number" || name == "integer") return s.walk(args[0]).is_int();
        if (name == "float") return false;
        if (name == "compound") return s.walk(args[0]).is_compound();
        if (name == "ground") return term_ground(s.resolve(args[0]));
    } else if (arity == 2) {
        if (name == "is") {
            auto v = eval_arith(args[1], s);
            return v && unify(args[0], Term::make_int(*v), s);
        }
        if (name == "=:=") {
            auto p = nums();
            return p && p->first == p->second;
        }
        if (name == "=\\=") {
            auto p = nums();
            return p && p->first != p->second;
        }
        if (name == "<") {
            auto p = nums();
            return p && p->first < p->second;
        }
        if (name == ">") {
            auto p = nums();
            return p && p->first > p->second;
        }
        if (name == ">=") {
            auto p = nums();
            return p && p->first >= p->second;
        }
        if (name == "=<") {
            auto p = nums();
            return p && p->first <= p->second;
        }
        if (name == "==") return term_equal(s.resolve(args[0]), s.resolve(args[1]));
        if (name == "\\==") return !term_equal(s.resolve(args[0]), s.resolve(args[1]));
        if (name == "@<") return term_compare(s.resolve(args[0]), s.resolve(args[1])) < 0;
        if (name == "@=<") return term_compare(s.resolve(args[0]), s.resolve(args[1])) <= 0;
        if (name == "@>") return term_compare(s.resolve(args[0]), s.resolve(args[1])) > 0;
        if (name == "@>=") return term_compare(s.resolve(args[0]), s.resolve(args[1])) >= 0;
        if (name == "\\=") {
            std::size_t mk = s.mark();
            bool unified = unify(args[0], args[1], s);
            s.undo(mk);
            return !unified;
        }
        if (name == "=..") return exec_univ(args, s);
        if (name == "name") return exec_name(args, s);
        if (name == "length") return exec_length(args, s, st.fresh);
        if (name == "sort" || name == "keysort") return exec_sort(name == "keysort", args, s);
        if (name == "statistics")
            return unify(args[0], Term::make_int(0), s) && unify(args[1], Term::make_int(0), s);
    } else if (arity == 3) {
        if (name == "functor") return exec_functor(args, s, st.fresh);
        if (name == "arg") return exec_arg(args, s);
        if (name == "compare") {
            int c = term_compare(s.resolve(args[1]), s.resolve(args[2]));
            return unify(args[0], Term::make_atom(c < 0 ? "<" : (c > 0 ? ">" : "=")), s);
        }
    }

    if (st.rp.builtin(name, arity)) return true;
    throw InterpError("unknown builtin: " + name + "/" + std::to_string(arity));
}

void collect_free_vars(const Term& t, const Substitution& s, std::vector<std::uint32_t>& out) {
    const Term& w = s.walk_ref(t);
    if (w.is_var()) {
        out.push_back(w.var);
        return;
    }
    for (const Term& a : w.args) collect_free_vars(a, s, out);
}

// The exact entry check: the call's groundness abstraction (argument
// dependencies induced by shared variables, free variables projected away)
// must entail the mode.
bool mode_satisfied(const std::vector<Term>& args, const Substitution& s, BoolFn mode,
                    BddManager& m) {
    if (mode == m.top()) return true;
    std::uint32_t arity = static_cast<std::uint32_t>(args.size());
    std::map<std::uint32_t, VarId> ys;
    BoolFn abs = mk_true(m);
    for (std::uint32_t i = 0; i < arity; ++i) {
        std::vector<std::uint32_t> vs;
        collect_free_vars(args[i], s, vs);
        BoolFn rhs = mk_true(m);
        for (std::uint32_t v : vs) {
            auto [it, fresh] = ys.try_emplace(v, static_cast<VarId>(arity + ys.size()));
            (void)fresh;
            rhs = conj(rhs, mk_var(m, it->second));
        }
        abs = conj(abs, iff(mk_var(m, i), rhs));
    }
    std::vector<VarId> keep(arity);
    for (std::uint32_t i = 0; i < arity; ++i) keep[i] = i;
    return entails(project_onto(abs, keep, Quant::exists), mode);
}

void report_violation(const std::string& name, std::uint32_t arity, const Term& call,
                      BoolFn mode, int line, const Substitution& s, RunState& st) {
    CallViolation v;
    v.pred = name;
    v.arity = arity;
    v.call = s.resolve(call);
    v.required = print_formula(mode, 'a');
    v.ancestors.reserve(st.stack.size());
    for (const Term& t : st.stack) v.ancestors.push_back(s.resolve(t));
    v.line = line;
    st.res.violation = std::move(v);
    st.stop_all = true;
}

// Returns true when the whole search must stop.
bool record_answer(const Substitution& s, RunState& st) {
    Answer ans;
    for (const Goal& g : st.query.goals) {
        Term shown = g.kind == Goal::Kind::call ? g.a : Term::make_compound("=", {g.a, g.b});
        ans.goals.push_back(s.resolve(shown));
    }
    for (std::uint32_t v = 0; v < st.query.nvars; ++v) {
        const std::string& n = st.query.var_names[v];
        if (n.empty() || n == "_") continue;
        ans.bindings.emplace(n, s.resolve(Term::make_var(v, n)));
    }
    st.res.answers.push_back(std::move(ans));
    return st.res.answers.size() >= st.opts.max_solutions;
}

bool solve(const GoalList& goals, Substitution& s, RunState& st) {
    if (st.stop_all) return true;
    if (!goals) return record_answer(s, st);

    if (++st.res.steps > st.opts.max_steps) {
        st.step_limited = true;
        st.stop_all = true;
        return true;
    }

    const Goal& g = goals->g;
    const std::size_t depth = goals->depth;
    const GoalList& rest = goals->next;

    if (g.kind == Goal::Kind::equation) {
        std::size_t mk = s.mark();
        bool done = unify(g.a, g.b, s) && solve(rest, s, st);
        s.undo(mk);
        return done;
    }

    const Term& call = g.a;
    const std::string& name = call.text;
    std::uint32_t arity = static_cast<std::uint32_t>(call.args.size());

    if (st.rp.defined(name, arity)) {
        if (st.opts.check_assertions) {
            BoolFn mode = st.rp.assertion_mode(name, arity);
            if (!mode_satisfied(call.args, s, mode, st.rp.manager())) {
                report_violation(name, arity, call, mode, g.line, s, st);
                return true;
            }
        }
        if (depth > st.opts.max_depth) {
            st.res.depth_cut = true;
            return false;
        }
        st.stack.push_back(call);
        for (const RuntimeClause& rc : st.rp.clauses_of(name, arity)) {
            std::uint32_t base = st.fresh;
            st.fresh += rc.nvars;
            std::size_t mk = s.mark();
            if (unify(call, rename_term(rc.head, base), s)) {
                GoalList gl = rest;
                for (auto it = rc.goals.rbegin(); it != rc.goals.rend(); ++it) {
                    Goal rg = *it;
                    rg.a = rename_term(rg.a, base);
                    if (rg.kind == Goal::Kind::equation) rg.b = rename_term(rg.b, base);
                    gl = push_goal(std::move(rg), depth + 1, gl);
                }
                if (solve(gl, s, st)) {
                    s.undo(mk);
                    st.stack.pop_back();
                    return true;
                }
            }
            s.undo(mk);
            st.fresh = base;  // ids past the mark are unreachable again
        }
        st.stack.pop_back();
        return false;
    }

    if (st.rp.builtin_like(name, arity)) {
        if (st.opts.check_assertions) {
            if (const auto* bm = st.rp.builtin(name, arity)) {
                if (!mode_satisfied(call.args, s, bm->required, st.rp.manager())) {
                    report_violation(name, arity, call, bm->required, g.line, s, st);
                    return true;
                }
            }
        }
        std::uint32_t base = st.fresh;
        std::size_t mk = s.mark();
        bool done = exec_builtin(name, call.args, s, st) && solve(rest, s, st);
        s.undo(mk);
        st.fresh = base;  // reclaims ids minted by length/2 and functor/3
        return done;
    }

    return false;  // undefined predicate: fails silently
}

}  // namespace

RunResult run(const RuntimeProgram& rp, const Query& q, const InterpOptions& opts) {
    RunState st{rp, q, opts, {}, q.nvars, {}, false, false};
    GoalList gl;
    for (auto it = q.goals.rbegin(); it != q.goals.rend(); ++it) gl = push_goal(*it, 1, gl);
    Substitution root;
    solve(gl, root, st);

    RunResult r = std::move(st.res);
    if (r.violation)
        r.status = RunStatus::error;
    else if (!r.answers.empty())
        r.status = RunStatus::success;
    else if (st.step_limited)
        r.status = RunStatus::step_limit;
    else if (r.depth_cut)
        r.status = RunStatus::depth_limit;
    else
        r.status = RunStatus::exhausted;
    return r;
}

}  // namespace modewise
