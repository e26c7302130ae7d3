#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modewise {

// First-order term. Lists are './2' chains ending in the atom '[]'.
// Variables are identified by id; `text` keeps the display name.
struct Term {
    enum class Kind : std::uint8_t { variable, atom, integer, compound };

    Kind kind = Kind::atom;
    std::string text;
    long long value = 0;
    std::uint32_t var = 0;
    std::vector<Term> args;

    static Term make_var(std::uint32_t id, std::string name = {}) {
        Term t;
        t.kind = Kind::variable;
        t.var = id;
        t.text = std::move(name);
        return t;
    }
    static Term make_atom(std::string name) {
        Term t;
        t.kind = Kind::atom;
        t.text = std::move(name);
        return t;
    }
    static Term make_int(long long v) {
        Term t;
        t.kind = Kind::integer;
        t.value = v;
        return t;
    }
    static Term make_compound(std::string functor, std::vector<Term> a) {
        Term t;
        t.kind = Kind::compound;
        t.text = std::move(functor);
        t.args = std::move(a);
        return t;
    }

    bool is_var() const { return kind == Kind::variable; }
    bool is_atom() const { return kind == Kind::atom; }
    bool is_atom(std::string_view name) const { return kind == Kind::atom && text == name; }
    bool is_int() const { return kind == Kind::integer; }
    bool is_compound() const { return kind == Kind::compound; }
    bool is_compound(std::string_view functor, std::size_t arity) const {
        return kind == Kind::compound && text == functor && args.size() == arity;
    }
    bool is_nil() const { return is_atom("[]"); }
    bool is_cons() const { return is_compound(".", 2); }

    std::size_t arity() const { return kind == Kind::compound ? args.size() : 0; }
};

// Structural equality; variables compare by id.
bool term_equal(const Term& a, const Term& b);

// Standard order of terms: Var < Integer < Atom < Compound, then by value,
// name, or (arity, functor, args).
int term_compare(const Term& a, const Term& b);

bool term_ground(const Term& t);

// Appends each distinct variable id on first occurrence, left to right.
void term_vars(const Term& t, std::vector<std::uint32_t>& out);

// Writer with list sugar ([1,2|T]) and minimal quoting.
std::string print_term(const Term& t);

}  // namespace modewise
