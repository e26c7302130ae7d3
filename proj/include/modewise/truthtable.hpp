#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Reference implementation of every Boolean-function operation by explicit
// truth tables over at most 5 variables. Deliberately shares no code with
// the BDD layer; differential tests compare the two pointwise.

namespace modewise::tt {

struct TruthTable {
    std::uint32_t bits = 0;  // bit r = value at assignment r (var i = bit i of r)
    unsigned nvars = 0;

    bool operator==(const TruthTable&) const = default;
};

inline std::uint32_t full_mask(unsigned nvars) {
    if (nvars > 5) throw std::invalid_argument("truth table limited to 5 variables");
    unsigned rows = 1u << nvars;
    return rows == 32 ? 0xffffffffu : ((1u << rows) - 1u);
}

inline TruthTable make(std::uint32_t bits, unsigned nvars) {
    return {bits & full_mask(nvars), nvars};
}

inline TruthTable tt_false(unsigned n) { return make(0, n); }
inline TruthTable tt_true(unsigned n) { return make(~0u, n); }

inline TruthTable tt_var(unsigned i, unsigned n) {
    if (i >= n) throw std::invalid_argument("tt_var: index out of range");
    std::uint32_t bits = 0;
    for (unsigned r = 0; r < (1u << n); ++r)
        if (r & (1u << i)) bits |= 1u << r;
    return make(bits, n);
}

inline TruthTable tt_not(TruthTable f) { return make(~f.bits, f.nvars); }

inline TruthTable tt_and(TruthTable f, TruthTable g) {
    if (f.nvars != g.nvars) throw std::invalid_argument("tt arity mismatch");
    return make(f.bits & g.bits, f.nvars);
}

inline TruthTable tt_or(TruthTable f, TruthTable g) {
    if (f.nvars != g.nvars) throw std::invalid_argument("tt arity mismatch");
    return make(f.bits | g.bits, f.nvars);
}

inline TruthTable tt_implies(TruthTable f, TruthTable g) { return tt_or(tt_not(f), g); }

inline TruthTable tt_iff(TruthTable f, TruthTable g) {
    if (f.nvars != g.nvars) throw std::invalid_argument("tt arity mismatch");
    return make(~(f.bits ^ g.bits), f.nvars);
}

inline TruthTable tt_pseudo_complement(TruthTable f, TruthTable g) { return tt_implies(f, g); }

inline bool tt_eval(TruthTable f, std::uint32_t row) { return (f.bits >> row) & 1u; }

inline bool tt_entails(TruthTable f, TruthTable g) {
    if (f.nvars != g.nvars) throw std::invalid_argument("tt arity mismatch");
    return (f.bits & ~g.bits & full_mask(f.nvars)) == 0;
}

inline bool tt_is_pos(TruthTable f) { return tt_eval(f, (1u << f.nvars) - 1u); }

inline TruthTable tt_restrict(TruthTable f, unsigned v, bool b) {
    std::uint32_t bits = 0;
    for (std::uint32_t r = 0; r < (1u << f.nvars); ++r) {
        std::uint32_t src = b ? (r | (1u << v)) : (r & ~(1u << v));
        if (tt_eval(f, src)) bits |= 1u << r;
    }
    return make(bits, f.nvars);
}

inline TruthTable tt_exists(TruthTable f, unsigned v) {
    return tt_or(tt_restrict(f, v, false), tt_restrict(f, v, true));
}

inline TruthTable tt_forall(TruthTable f, unsigned v) {
    TruthTable both = tt_and(tt_restrict(f, v, false), tt_restrict(f, v, true));
    return tt_is_pos(both) ? both : tt_false(f.nvars);
}

// Pairs map source var -> target var; g(a) = f(a with source read from target).
inline TruthTable tt_rename(TruthTable f, const std::vector<std::pair<unsigned, unsigned>>& r) {
    std::uint32_t bits = 0;
    for (std::uint32_t a = 0; a < (1u << f.nvars); ++a) {
        std::uint32_t b = a;
        for (auto [from, to] : r) {
            if (((a >> to) & 1u) != 0)
                b |= 1u << from;
            else
                b &= ~(1u << from);
        }
        if (tt_eval(f, b)) bits |= 1u << a;
    }
    return make(bits, f.nvars);
}

}  // namespace modewise::tt
