#include "modewise/abstraction.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "modewise/formula.hpp"

namespace modewise {

// ===================== builtin table =====================

namespace {

struct DefaultRow {
    const char* name;
    std::uint32_t arity;
    const char* required;
    const char* success;
};

// Groundness contracts of the stock builtins. Shorthand used below:
// both formulas range over argument positions a1..aN.
constexpr DefaultRow kDefaultRows[] = {
    {"!", 0, "true", "true"},
    {"=..", 2, "a1 | a2", "a1 <=> a2"},
    {"=:=", 2, "a1 & a2", "a1 & a2"},
    {"=<", 2, "a1 & a2", "a1 & a2"},
    {"==", 2, "true", "true"},
    {"=\\=", 2, "a1 & a2", "a1 & a2"},
    {"<", 2, "a1 & a2", "a1 & a2"},
    {">", 2, "a1 & a2", "a1 & a2"},
    {">=", 2, "a1 & a2", "a1 & a2"},
    {"@<", 2, "true", "true"},
    {"@=<", 2, "true", "true"},
    {"@>", 2, "true", "true"},
    {"@>=", 2, "true", "true"},
    {"\\=", 2, "true", "true"},
    {"\\==", 2, "true", "true"},
    {"abort", 0, "true", "false"},
    {"arg", 3, "a1 & a2", "a1 & (a2 => a3)"},
    {"atom", 1, "true", "a1"},
    {"atomic", 1, "true", "a1"},
    {"compare", 3, "true", "a1"},
    {"compound", 1, "true", "true"},
    {"display", 1, "true", "true"},
    {"fail", 0, "true", "false"},
    {"false", 0, "true", "false"},
    {"float", 1, "true", "a1"},
    {"functor", 3, "a1 | a2 & a3", "a2 & a3"},
    {"ground", 1, "true", "a1"},
    {"integer", 1, "true", "a1"},
    {"is", 2, "a2", "a1 & a2"},
    {"keysort", 2, "a1", "a1 <=> a2"},
    {"length", 2, "true", "a2"},
    {"listing", 0, "true", "true"},
    {"listing", 1, "true", "true"},
    {"name", 2, "a1 | a2", "a1 & a2"},
    {"nl", 0, "true", "true"},
    {"nonvar", 1, "true", "true"},
    {"number", 1, "true", "a1"},
    {"portray_clause", 1, "true", "true"},
    {"print", 1, "true", "true"},
    {"put", 1, "a1", "a1"},
    {"read", 1, "true", "true"},
    {"repeat", 0, "true", "true"},
    {"sort", 2, "a1", "a1 <=> a2"},
    {"statistics", 2, "true", "a1 & a2"},
    {"tab", 1, "a1", "a1"},
    {"true", 0, "true", "true"},
    {"var", 1, "true", "true"},
    {"write", 1, "true", "true"},
    {"writeq", 1, "true", "true"},
};

std::string quoted_name(const std::string& name) {
    return print_term(Term::make_atom(name));
}

void check_support(BoolFn f, std::uint32_t arity, const std::string& what, int line) {
    for (VarId v : support(f))
        if (v >= arity)
            throw BuiltinFileError(what + " mentions a" + std::to_string(v + 1) +
                                       " beyond the declared arity",
                                   line);
}

}  // namespace

BuiltinTable BuiltinTable::defaults(BddManager& m) {
    BuiltinTable t(m);
    for (const DefaultRow& r : kDefaultRows) {
        BuiltinSpec s;
        s.name = r.name;
        s.arity = r.arity;
        s.required = parse_formula(r.required, m, 'a');
        s.success = parse_formula(r.success, m, 'a');
        t.set(std::move(s));
    }
    return t;
}

bool BuiltinTable::stock_name(const std::string& name, std::uint32_t arity) {
    for (const DefaultRow& r : kDefaultRows)
        if (r.arity == arity && name == r.name) return true;
    return false;
}

const BuiltinSpec* BuiltinTable::find(const std::string& name, std::uint32_t arity) const {
    auto it = map_.find({name, arity});
    return it == map_.end() ? nullptr : &it->second;
}

void BuiltinTable::set(BuiltinSpec s) {
    map_.insert_or_assign({s.name, s.arity}, std::move(s));
}

BuiltinTable BuiltinTable::load_text(std::string_view text, BddManager& m) {
    BuiltinTable t(m);
    std::size_t pos = 0;
    int line = 1;

    auto skip_layout = [&] {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '%') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    };

    while (skip_layout(), pos < text.size()) {
        int entry_line = line;
        if (text.substr(pos, 8) != "builtin(")
            throw BuiltinFileError("expected builtin(Name/Arity, Required, Success).", line);
        pos += 8;

        // Scan the balanced argument list, splitting at top-level commas.
        std::vector<std::string> parts(1);
        int depth = 1;
        bool quoted = false;
        for (;; ++pos) {
            if (pos >= text.size())
                throw BuiltinFileError("unterminated builtin entry", entry_line);
            char c = text[pos];
            if (c == '\n') ++line;
            if (quoted) {
                parts.back() += c;
                if (c == '\\' && pos + 1 < text.size()) {
                    ++pos;
                    if (text[pos] == '\n') ++line;
                    parts.back() += text[pos];
                    continue;
                }
                if (c == '\'') quoted = false;
                continue;
            }
            if (c == '\'') {
                quoted = true;
                parts.back() += c;
                continue;
            }
            if (c == '%') {  // comment runs to end of line
                while (pos + 1 < text.size() && text[pos + 1] != '\n') ++pos;
                continue;
            }
            if (c == '(') ++depth;
            if (c == ')') {
                if (--depth == 0) {
                    ++pos;
                    break;
                }
            }
            if (c == ',' && depth == 1) {
                parts.emplace_back();
                continue;
            }
            parts.back() += c;
        }
        skip_layout();
        if (pos >= text.size() || text[pos] != '.')
            throw BuiltinFileError("expected '.' after builtin entry", entry_line);
        ++pos;

        if (parts.size() != 3)
            throw BuiltinFileError("expected three arguments in builtin entry", entry_line);

        // Name/Arity, with the name optionally quoted.
        std::string head = parts[0];
        std::size_t slash = head.rfind('/');
        if (slash == std::string::npos)
            throw BuiltinFileError("expected Name/Arity", entry_line);
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\n");
            std::size_t e = s.find_last_not_of(" \t\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string name = trim(head.substr(0, slash));
        std::string arity_text = trim(head.substr(slash + 1));
        if (name.size() >= 2 && name.front() == '\'' && name.back() == '\'') {
            std::string dec;
            for (std::size_t i = 1; i + 1 < name.size(); ++i) {
                char c = name[i];
                if (c == '\\' && i + 2 < name.size())
                    dec += name[++i];
                else if (c == '\'' && i + 2 < name.size() && name[i + 1] == '\'')
                    dec += name[++i];
                else
                    dec += c;
            }
            name = dec;
        }
        if (name.empty()) throw BuiltinFileError("empty builtin name", entry_line);
        std::uint32_t arity = 0;
        for (char c : arity_text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw BuiltinFileError("arity is not a number", entry_line);
            arity = arity * 10 + static_cast<std::uint32_t>(c - '0');
        }

        BuiltinSpec s;
        s.name = name;
        s.arity = arity;
        try {
            s.required = parse_formula(parts[1], m, 'a');
            s.success = parse_formula(parts[2], m, 'a');
        } catch (const FormulaError& e) {
            throw BuiltinFileError(std::string("bad formula: ") + e.what(), entry_line);
        }
        check_support(s.required, arity, "required mode of " + name, entry_line);
        check_support(s.success, arity, "success mode of " + name, entry_line);
        t.set(std::move(s));
    }
    return t;
}

BuiltinTable BuiltinTable::load_file(const std::string& path, BddManager& m) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BuiltinFileError("cannot open builtin file: " + path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    return load_text(text, m);
}

std::string BuiltinTable::serialize() const {
    std::string out;
    for (const auto& [key, s] : map_) {
        out += "builtin(" + quoted_name(s.name) + "/" + std::to_string(s.arity) + ", " +
               print_formula(s.required, 'a') + ", " + print_formula(s.success, 'a') + ").\n";
    }
    return out;
}

// ===================== program abstraction =====================

BoolFn abstract_equation(VarId lhs, const Term& rhs, BddManager& m) {
    std::vector<std::uint32_t> vs;
    term_vars(rhs, vs);
    BoolFn rv = mk_true(m);
    for (std::uint32_t v : vs) rv = conj(rv, mk_var(m, v));
    return iff(mk_var(m, lhs), rv);
}

namespace {

bool symbolic_name(const std::string& name) {
    for (char c : name)
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    return !name.empty();
}

// Translates an assertion directive's mode term (variables of the asserted
// head combined with ','/2, ';'/2, true, fail, false) into a formula over
// argument positions.
BoolFn mode_term_to_formula(const Term& t, const std::map<std::uint32_t, VarId>& positions,
                            BddManager& m, int line) {
    if (t.is_var()) {
        auto it = positions.find(t.var);
        if (it == positions.end())
            throw AbstractionError("line " + std::to_string(line) +
                                   ": assertion formula variable does not occur in the head");
        return mk_var(m, it->second);
    }
    if (t.is_atom("true")) return mk_true(m);
    if (t.is_atom("fail") || t.is_atom("false")) return mk_false(m);
    if (t.is_compound(",", 2))
        return conj(mode_term_to_formula(t.args[0], positions, m, line),
                    mode_term_to_formula(t.args[1], positions, m, line));
    if (t.is_compound(";", 2))
        return disj(mode_term_to_formula(t.args[0], positions, m, line),
                    mode_term_to_formula(t.args[1], positions, m, line));
    throw AbstractionError("line " + std::to_string(line) +
                           ": unsupported assertion formula part: " + print_term(t));
}

}  // namespace

AbstractProgram abstract_program(const NormProgram& np, const BuiltinTable& builtins,
                                 BddManager& m, const AbstractionOptions& opts) {
    AbstractProgram ap;
    ap.mgr = &m;

    std::set<std::pair<std::string, std::uint32_t>> defined;
    for (const NormClause& c : np.clauses) {
        defined.insert({c.head.pred, c.head.arity()});
        ap.max_arity = std::max(ap.max_arity, c.head.arity());
        for (const NormAtom& a : c.body) ap.max_arity = std::max(ap.max_arity, a.arity());
    }
    // Canonical argument variables get the lowest levels, so printed modes
    // are stable across programs.
    for (VarId v = 0; v < ap.max_arity; ++v) m.var(v);

    auto add_pred = [&](const std::string& name, std::uint32_t arity, bool wrapper) {
        auto key = std::make_pair(name, arity);
        auto it = ap.pred_index.find(key);
        if (it != ap.pred_index.end()) return it->second;
        std::size_t idx = ap.preds.size();
        ap.preds.push_back({name, arity, {}, wrapper});
        ap.pred_index.emplace(key, idx);
        return idx;
    };

    // User clauses, in source order.
    for (const NormClause& c : np.clauses) {
        AbstractClause ac;
        ac.head = {c.head.pred, c.head.args};
        ac.assertion = mk_true(m);
        ac.constraint = mk_true(m);
        for (const auto& [v, t] : c.eqns)
            ac.constraint = conj(ac.constraint, abstract_equation(v, t, m));
        for (const NormAtom& a : c.body) ac.body.push_back({a.pred, a.args});
        ac.nvars = c.nvars;
        ac.var_names = c.var_names;
        ac.line = c.line;

        std::size_t pi = add_pred(c.head.pred, c.head.arity(), false);
        ap.preds[pi].clauses.push_back(ap.clauses.size());
        ap.clauses.push_back(std::move(ac));
    }

    // Builtin wrappers and undefined-predicate warnings; body atoms that
    // call a builtin are redirected to its primed wrapper.
    std::set<std::pair<std::string, std::uint32_t>> warned;
    for (AbstractClause& c : ap.clauses) {
        for (AbstractAtom& a : c.body) {
            auto key = std::make_pair(a.pred, a.arity());
            if (defined.count(key)) continue;

            const BuiltinSpec* spec = builtins.find(a.pred, a.arity());
            bool builtin_like =
                spec || symbolic_name(a.pred) || BuiltinTable::stock_name(a.pred, a.arity());
            if (!builtin_like) {
                if (warned.insert(key).second)
                    ap.warnings.push_back("undefined predicate " + a.pred + "/" +
                                          std::to_string(a.arity()) +
                                          " (no success contribution, trivial demand)");
                continue;
            }

            BoolFn required, success;
            if (spec) {
                required = spec->required;
                success = spec->success;
            } else if (opts.lax_builtins) {
                if (warned.insert(key).second)
                    ap.warnings.push_back("unknown builtin " + a.pred + "/" +
                                          std::to_string(a.arity()) +
                                          " treated as required=false, success=false");
                required = mk_false(m);
                success = mk_false(m);
            } else {
                throw AbstractionError("unknown builtin: " + a.pred + "/" +
                                       std::to_string(a.arity()));
            }

            std::string wname = a.pred + "'";
            auto wkey = std::make_pair(wname, a.arity());
            if (!ap.pred_index.count(wkey)) {
                AbstractClause wc;
                wc.head.pred = wname;
                for (VarId v = 0; v < a.arity(); ++v) wc.head.args.push_back(v);
                wc.assertion = required;
                wc.constraint = success;
                wc.nvars = a.arity();
                for (VarId v = 0; v < a.arity(); ++v)
                    wc.var_names.push_back("x" + std::to_string(v + 1));
                wc.wrapper = true;
                std::size_t pi = add_pred(wname, a.arity(), true);
                ap.preds[pi].clauses.push_back(ap.clauses.size());
                ap.clauses.push_back(std::move(wc));
            }
            a.pred = wname;
        }
    }

    // User assertion directives strengthen every clause of their predicate.
    for (const Directive& d : np.directives) {
        auto dm = directive_mode(d, m);
        if (!dm) continue;
        const PredInfo* pi = ap.find(dm->name, dm->arity);
        if (!pi || pi->wrapper) {
            ap.warnings.push_back("assertion for undefined predicate " + dm->name + "/" +
                                  std::to_string(dm->arity) + " ignored");
            continue;
        }
        for (std::size_t ci : pi->clauses) {
            AbstractClause& c = ap.clauses[ci];
            Renaming r;
            for (std::uint32_t i = 0; i < dm->arity; ++i) r.push_back({i, c.head.args[i]});
            c.assertion = conj(c.assertion, rename(dm->mode, r));
        }
    }

    return ap;
}

std::optional<DirectiveMode> directive_mode(const Directive& d, BddManager& m) {
    if (!d.goal.is_compound("assertion", 2)) return std::nullopt;
    const Term& head = d.goal.args[0];
    if (head.is_var() || head.is_int())
        throw AbstractionError("line " + std::to_string(d.line) +
                               ": assertion head must be a predicate pattern");
    std::string name = head.text;
    std::uint32_t arity = static_cast<std::uint32_t>(head.args.size());

    std::map<std::uint32_t, VarId> positions;
    for (std::uint32_t i = 0; i < arity; ++i) {
        if (!head.args[i].is_var() || positions.count(head.args[i].var))
            throw AbstractionError("line " + std::to_string(d.line) +
                                   ": assertion head needs distinct variables");
        positions.emplace(head.args[i].var, i);
    }
    return DirectiveMode{name, arity, mode_term_to_formula(d.goal.args[1], positions, m, d.line)};
}

std::map<std::pair<std::string, std::uint32_t>, BoolFn> directive_assertions(
    const std::vector<Directive>& ds, BddManager& m) {
    std::map<std::pair<std::string, std::uint32_t>, BoolFn> out;
    for (const Directive& d : ds) {
        auto dm = directive_mode(d, m);
        if (!dm) continue;
        auto [it, fresh] = out.try_emplace({dm->name, dm->arity}, dm->mode);
        if (!fresh) it->second = conj(it->second, dm->mode);
    }
    return out;
}

std::map<std::pair<std::string, std::uint32_t>, BoolFn> predicate_assertions(
    const AbstractProgram& ap) {
    std::map<std::pair<std::string, std::uint32_t>, BoolFn> out;
    BddManager& m = *ap.mgr;
    for (const PredInfo& p : ap.preds) {
        BoolFn d = mk_true(m);
        for (std::size_t ci : p.clauses) {
            const AbstractClause& c = ap.clauses[ci];
            Renaming r;
            for (std::uint32_t i = 0; i < p.arity; ++i) r.push_back({c.head.args[i], i});
            d = conj(d, rename(c.assertion, r));
        }
        out.emplace(std::make_pair(p.name, p.arity), d);
    }
    return out;
}

}  // namespace modewise
