#include "modewise/formula.hpp"

#include <algorithm>
#include <cctype>

namespace modewise {

// ===================== variable naming =====================

VarId VarNames::intern(std::string_view name) {
    if (prefix_) {
        if (name.size() < 2 || name[0] != *prefix_)
            throw FormulaError("unknown variable '" + std::string(name) + "'", 0);
        std::uint64_t idx = 0;
        for (char c : name.substr(1)) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw FormulaError("unknown variable '" + std::string(name) + "'", 0);
            idx = idx * 10 + static_cast<std::uint64_t>(c - '0');
            if (idx > 1'000'000) throw FormulaError("variable index too large", 0);
        }
        if (idx == 0)
            throw FormulaError("positional variables start at 1", 0);
        return static_cast<VarId>(idx - 1);
    }
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    VarId v = static_cast<VarId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), v);
    return v;
}

std::optional<VarId> VarNames::lookup(std::string_view name) const {
    if (prefix_) return std::nullopt;
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::string VarNames::name(VarId v) const {
    if (prefix_) return std::string(1, *prefix_) + std::to_string(v + 1);
    if (v >= names_.size()) throw std::logic_error("VarNames: id out of range");
    return names_[v];
}

// ===================== parser =====================

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    BddManager& m;
    VarNames& names;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(std::string_view tok) {
        skip_ws();
        if (text.substr(pos, tok.size()) == tok) {
            // `=>` must not consume the front of `<=>`; tokens here are
            // checked longest-first by callers, so plain prefix match works.
            pos += tok.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw FormulaError(msg, pos); }

    BoolFn parse() {
        BoolFn f = parse_iff();
        skip_ws();
        if (pos != text.size()) fail("trailing input after formula");
        return f;
    }

    BoolFn parse_iff() {
        BoolFn f = parse_implies();
        while (eat("<=>")) f = iff(f, parse_implies());
        return f;
    }

    BoolFn parse_implies() {
        BoolFn f = parse_or();
        skip_ws();
        if (text.substr(pos, 3) != "<=>" && eat("=>")) return implies(f, parse_implies());
        return f;
    }

    BoolFn parse_or() {
        BoolFn f = parse_and();
        while (eat("|")) f = disj(f, parse_and());
        return f;
    }

    BoolFn parse_and() {
        BoolFn f = parse_unary();
        while (eat("&")) f = conj(f, parse_unary());
        return f;
    }

    BoolFn parse_unary() {
        if (eat("~")) return neg(parse_unary());
        return parse_atom();
    }

    BoolFn parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of formula");
        if (eat("(")) {
            BoolFn f = parse_iff();
            if (!eat(")")) fail("expected ')'");
            return f;
        }
        char c = text[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string_view word = text.substr(start, pos - start);
            if (word == "true") return mk_true(m);
            if (word == "false") return mk_false(m);
            try {
                return mk_var(m, names.intern(word));
            } catch (const FormulaError& e) {
                throw FormulaError(e.what(), start);
            }
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

BoolFn parse_formula(std::string_view text, BddManager& m, VarNames& names) {
    Parser p{text, 0, m, names};
    return p.parse();
}

BoolFn parse_formula(std::string_view text, BddManager& m, char prefix) {
    VarNames names(prefix);
    return parse_formula(text, m, names);
}

// ===================== canonical printing =====================

namespace {

using Cube = std::vector<std::pair<VarId, bool>>;  // (var, negated)

struct Isop {
    BddManager& m;
    std::vector<Cube> cover;

    // Minato-Morreale: irredundant SOP for any g with l |= g |= u.
    // Returns the function realised by the cubes emitted for this call.
    std::uint32_t run(std::uint32_t l, std::uint32_t u, Cube& prefix) {
        if (l == 0) return 0;
        if (u == 1) {
            cover.push_back(prefix);
            return 1;
        }
        std::uint32_t lvl = std::min(m.node(l).level, m.node(u).level);
        VarId x = m.level_var(lvl);
        std::uint32_t l0 = m.cofactor(l, x, false), l1 = m.cofactor(l, x, true);
        std::uint32_t u0 = m.cofactor(u, x, false), u1 = m.cofactor(u, x, true);

        prefix.emplace_back(x, true);
        std::uint32_t g0 = run(m.b_and(l0, m.b_not(u1)), u0, prefix);
        prefix.back().second = false;
        std::uint32_t g1 = run(m.b_and(l1, m.b_not(u0)), u1, prefix);
        prefix.pop_back();

        std::uint32_t lrest = m.b_or(m.b_and(l0, m.b_not(g0)), m.b_and(l1, m.b_not(g1)));
        std::uint32_t grest = run(lrest, m.b_and(u0, u1), prefix);

        std::uint32_t xn = m.var_node(x);
        return m.b_or(m.ite(xn, g1, g0), grest);
    }
};

}  // namespace

std::string print_formula(BoolFn f, const VarNames& names) {
    if (f.node == 0) return "false";
    if (f.node == 1) return "true";

    Isop isop{*f.mgr, {}};
    Cube prefix;
    isop.run(f.node, f.node, prefix);

    for (Cube& c : isop.cover) std::sort(c.begin(), c.end());
    std::sort(isop.cover.begin(), isop.cover.end());

    std::string out;
    for (std::size_t i = 0; i < isop.cover.size(); ++i) {
        if (i) out += " | ";
        const Cube& c = isop.cover[i];
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) out += " & ";
            if (c[j].second) out += '~';
            out += names.name(c[j].first);
        }
    }
    return out;
}

std::string print_formula(BoolFn f, char prefix) {
    return print_formula(f, VarNames(prefix));
}

}  // namespace modewise
