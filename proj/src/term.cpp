#include "modewise/term.hpp"

#include <cctype>

namespace modewise {

bool term_equal(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::variable: return a.var == b.var;
        case Term::Kind::integer: return a.value == b.value;
        case Term::Kind::atom: return a.text == b.text;
        case Term::Kind::compound: {
            if (a.text != b.text || a.args.size() != b.args.size()) return false;
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (!term_equal(a.args[i], b.args[i])) return false;
            return true;
        }
    }
    return false;
}

namespace {
int kind_rank(Term::Kind k) {
    switch (k) {
        case Term::Kind::variable: return 0;
        case Term::Kind::integer: return 1;
        case Term::Kind::atom: return 2;
        case Term::Kind::compound: return 3;
    }
    return 3;
}
}  // namespace

int term_compare(const Term& a, const Term& b) {
    int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind) {
        case Term::Kind::variable:
            return a.var < b.var ? -1 : a.var > b.var ? 1 : 0;
        case Term::Kind::integer:
            return a.value < b.value ? -1 : a.value > b.value ? 1 : 0;
        case Term::Kind::atom:
            return a.text < b.text ? -1 : a.text > b.text ? 1 : 0;
        case Term::Kind::compound: {
            if (a.args.size() != b.args.size())
                return a.args.size() < b.args.size() ? -1 : 1;
            if (a.text != b.text) return a.text < b.text ? -1 : 1;
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (int c = term_compare(a.args[i], b.args[i])) return c;
            return 0;
        }
    }
    return 0;
}

bool term_ground(const Term& t) {
    if (t.is_var()) return false;
    for (const Term& a : t.args)
        if (!term_ground(a)) return false;
    return true;
}

void term_vars(const Term& t, std::vector<std::uint32_t>& out) {
    if (t.is_var()) {
        for (std::uint32_t v : out)
            if (v == t.var) return;
        out.push_back(t.var);
        return;
    }
    for (const Term& a : t.args) term_vars(a, out);
}

namespace {

bool atom_needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    if (s == "[]" || s == "!" || s == ";" || s == "{}") return false;
    if (std::islower(static_cast<unsigned char>(s[0]))) {
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return true;
        return false;
    }
    constexpr std::string_view sym = "+-*/\\^<>=~:.?@#&$";
    for (char c : s)
        if (sym.find(c) == std::string_view::npos) return true;
    return false;
}

void print_rec(const Term& t, std::string& out) {
    switch (t.kind) {
        case Term::Kind::variable:
            if (!t.text.empty() && t.text != "_")
                out += t.text;
            else
                out += "_G" + std::to_string(t.var);
            return;
        case Term::Kind::integer:
            out += std::to_string(t.value);
            return;
        case Term::Kind::atom:
            if (atom_needs_quotes(t.text)) {
                out += '\'';
                for (char c : t.text) {
                    if (c == '\'') out += '\\';
                    out += c;
                }
                out += '\'';
            } else {
                out += t.text;
            }
            return;
        case Term::Kind::compound: {
            if (t.is_cons()) {
                out += '[';
                const Term* cur = &t;
                bool first = true;
                while (cur->is_cons()) {
                    if (!first) out += ',';
                    first = false;
                    print_rec(cur->args[0], out);
                    cur = &cur->args[1];
                }
                if (!cur->is_nil()) {
                    out += '|';
                    print_rec(*cur, out);
                }
                out += ']';
                return;
            }
            print_rec(Term::make_atom(t.text), out);
            out += '(';
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ',';
                print_rec(t.args[i], out);
            }
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string print_term(const Term& t) {
    std::string out;
    print_rec(t, out);
    return out;
}

}  // namespace modewise
