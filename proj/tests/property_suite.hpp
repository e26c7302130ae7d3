#pragma once

// Differential and algebraic property checks for the Boolean-function layer,
// shared between the unit tests and the acceptance runner. Checks never
// abort; failures are collected as human-readable strings.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "modewise/bdd.hpp"
#include "modewise/formula.hpp"
#include "modewise/truthtable.hpp"

namespace proptest {

struct Stats {
    std::uint64_t checks = 0;
    std::uint64_t failed_total = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failed_total;
            if (failures.size() < 32) failures.push_back(what);
        }
    }

    void merge(const Stats& o) {
        checks += o.checks;
        failed_total += o.failed_total;
        for (const auto& f : o.failures)
            if (failures.size() < 32) failures.push_back(f);
    }
};

inline modewise::BoolFn build_bdd(modewise::tt::TruthTable t, modewise::BddManager& m) {
    using namespace modewise;
    BoolFn acc = mk_false(m);
    for (std::uint32_t row = 0; row < (1u << t.nvars); ++row) {
        if (!tt::tt_eval(t, row)) continue;
        BoolFn cube = mk_true(m);
        for (unsigned v = 0; v < t.nvars; ++v) {
            BoolFn lit = mk_var(m, v);
            cube = conj(cube, (row >> v) & 1u ? lit : neg(lit));
        }
        acc = disj(acc, cube);
    }
    return acc;
}

inline bool pointwise_equal(modewise::BoolFn f, modewise::tt::TruthTable t) {
    bool a[5] = {};
    std::span<const bool> point(a, t.nvars);
    for (std::uint32_t row = 0; row < (1u << t.nvars); ++row) {
        for (unsigned v = 0; v < t.nvars; ++v) a[v] = (row >> v) & 1u;
        if (modewise::reference_eval(f, point) != modewise::tt::tt_eval(t, row)) return false;
    }
    return true;
}

namespace detail {

inline std::string tag(const char* prop, unsigned n, std::uint32_t fb,
                       std::uint32_t gb = 0xdeadbeefu, std::uint32_t hb = 0xdeadbeefu) {
    std::string s = std::string(prop) + " nvars=" + std::to_string(n) +
                    " f=" + std::to_string(fb);
    if (gb != 0xdeadbeefu) s += " g=" + std::to_string(gb);
    if (hb != 0xdeadbeefu) s += " h=" + std::to_string(hb);
    return s;
}

// Unary-operator differential plus single-function laws.
inline void check_unary(unsigned n, std::uint32_t fbits, modewise::BddManager& m, Stats& st) {
    using namespace modewise;
    tt::TruthTable tf = tt::make(fbits, n);
    BoolFn f = build_bdd(tf, m);

    st.expect(pointwise_equal(f, tf), tag("build", n, fbits));
    st.expect(in_pos(f) == tt::tt_is_pos(tf), tag("in_pos", n, fbits));

    // Canonical print round-trips to the same handle.
    VarNames names('x');
    BoolFn back = parse_formula(print_formula(f, names), m, names);
    st.expect(back == f, tag("print-roundtrip", n, fbits));

    for (unsigned v = 0; v < n; ++v) {
        st.expect(pointwise_equal(restrict(f, v, false), tt::tt_restrict(tf, v, false)),
                  tag("restrict0", n, fbits));
        st.expect(pointwise_equal(restrict(f, v, true), tt::tt_restrict(tf, v, true)),
                  tag("restrict1", n, fbits));
        BoolFn ex = exists(f, v);
        BoolFn fa = forall(f, v);
        st.expect(pointwise_equal(ex, tt::tt_exists(tf, v)), tag("exists", n, fbits));
        st.expect(pointwise_equal(fa, tt::tt_forall(tf, v)), tag("forall", n, fbits));
        // One-variable projection adjunction. The upper half needs f in the
        // domain: the clamp inside forall sends non-members to bottom.
        st.expect(entails(exists(forall(f, v), v), f), tag("adj-lower", n, fbits));
        if (in_pos(f))
            st.expect(entails(f, forall(exists(f, v), v)), tag("adj-upper", n, fbits));
        st.expect(entails(fa, f) && entails(f, ex), tag("quant-bounds", n, fbits));
        if (in_pos(f)) {
            st.expect(in_pos(ex), tag("pos-closed-exists", n, fbits));
            st.expect(in_pos(fa) || fa == mk_false(m), tag("pos-or-bot-forall", n, fbits));
        }
    }

    // Projection duality over every keep-set.
    for (std::uint32_t keep_mask = 0; keep_mask < (1u << n); ++keep_mask) {
        std::vector<VarId> keep;
        for (unsigned v = 0; v < n; ++v)
            if (keep_mask & (1u << v)) keep.push_back(v);
        BoolFn up = project_onto(f, keep, Quant::exists);
        BoolFn down = project_onto(f, keep, Quant::forall);
        st.expect(entails(down, f) && entails(f, up), tag("projection-duality", n, fbits));
        bool sup_ok = true;
        for (VarId v : support(up))
            if (!(keep_mask & (1u << v))) sup_ok = false;
        for (VarId v : support(down))
            if (!(keep_mask & (1u << v))) sup_ok = false;
        st.expect(sup_ok, tag("projection-support", n, fbits));
    }
}

inline void check_elimination_orders(unsigned n, std::uint32_t fbits, modewise::BddManager& m,
                                     Stats& st) {
    using namespace modewise;
    BoolFn f = build_bdd(tt::make(fbits, n), m);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<VarId> vars;
        for (unsigned v = 0; v < n; ++v)
            if (mask & (1u << v)) vars.push_back(v);
        BoolFn ex_ref = exists_set(f, vars);
        BoolFn fa_ref = forall_set(f, vars);
        std::vector<VarId> perm = vars;
        do {
            st.expect(exists_set(f, perm) == ex_ref, tag("exists-order", n, fbits, mask));
            st.expect(forall_set(f, perm) == fa_ref, tag("forall-order", n, fbits, mask));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

inline void check_binary(unsigned n, std::uint32_t fbits, std::uint32_t gbits,
                         modewise::BoolFn f, modewise::BoolFn g, Stats& st) {
    using namespace modewise;
    tt::TruthTable tf = tt::make(fbits, n), tg = tt::make(gbits, n);

    st.expect(pointwise_equal(conj(f, g), tt::tt_and(tf, tg)), tag("conj", n, fbits, gbits));
    st.expect(pointwise_equal(disj(f, g), tt::tt_or(tf, tg)), tag("disj", n, fbits, gbits));
    st.expect(pointwise_equal(iff(f, g), tt::tt_iff(tf, tg)), tag("iff", n, fbits, gbits));
    BoolFn pc = pseudo_complement(f, g);
    st.expect(pointwise_equal(pc, tt::tt_pseudo_complement(tf, tg)), tag("pc", n, fbits, gbits));
    st.expect(entails(f, g) == tt::tt_entails(tf, tg), tag("entails", n, fbits, gbits));
    st.expect(equiv(f, g) == (tf.bits == tg.bits), tag("equiv", n, fbits, gbits));

    // Relative pseudo-complement law of the lattice.
    st.expect(conj(f, pc) == conj(f, g), tag("cha-law", n, fbits, gbits));

    if (in_pos(f) && in_pos(g)) {
        bool closed = in_pos(conj(f, g)) && in_pos(disj(f, g)) && in_pos(iff(f, g)) &&
                      in_pos(pc);
        st.expect(closed, tag("pos-closure", n, fbits, gbits));
    }
}

inline void check_rename_perms(unsigned n, std::uint32_t fbits, modewise::BddManager& m,
                               Stats& st) {
    using namespace modewise;
    tt::TruthTable tf = tt::make(fbits, n);
    BoolFn f = build_bdd(tf, m);
    std::vector<unsigned> perm(n);
    for (unsigned i = 0; i < n; ++i) perm[i] = i;
    do {
        Renaming r;
        std::vector<std::pair<unsigned, unsigned>> rt;
        for (unsigned i = 0; i < n; ++i) {
            r.push_back({i, perm[i]});
            rt.push_back({i, perm[i]});
        }
        st.expect(pointwise_equal(rename(f, r), tt::tt_rename(tf, rt)),
                  tag("rename", n, fbits));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

// Exhaustive pass over every function on up to `max_vars` variables (<= 3
// is practical). With `full_triples`, the weakest-conjunct adjunction
// entails(conj(f,h), g) <=> entails(h, pc(f,g)) is checked for every
// function triple at `max_vars` too, else only below it.
inline Stats exhaustive_small(unsigned max_vars = 3, bool full_triples = true) {
    using namespace modewise;
    Stats st;
    for (unsigned n = 0; n <= max_vars; ++n) {
        BddManager m;
        for (unsigned v = 0; v < n; ++v) m.var(v);  // fix levels 0..n-1
        std::uint32_t count = 1u << (1u << n);

        std::vector<BoolFn> fn(count);
        for (std::uint32_t fb = 0; fb < count; ++fb) fn[fb] = build_bdd(tt::make(fb, n), m);

        for (std::uint32_t fb = 0; fb < count; ++fb) {
            detail::check_unary(n, fb, m, st);
            detail::check_elimination_orders(n, fb, m, st);
            detail::check_rename_perms(n, fb, m, st);
        }
        for (std::uint32_t fb = 0; fb < count; ++fb)
            for (std::uint32_t gb = 0; gb < count; ++gb)
                detail::check_binary(n, fb, gb, fn[fb], fn[gb], st);

        if (n < max_vars || full_triples) {
            for (std::uint32_t fb = 0; fb < count; ++fb) {
                std::vector<BoolFn> pc_row(count);
                for (std::uint32_t gb = 0; gb < count; ++gb)
                    pc_row[gb] = pseudo_complement(fn[fb], fn[gb]);
                for (std::uint32_t gb = 0; gb < count; ++gb)
                    for (std::uint32_t hb = 0; hb < count; ++hb) {
                        bool lhs = entails(conj(fn[fb], fn[hb]), fn[gb]);
                        bool rhs = entails(fn[hb], pc_row[gb]);
                        st.expect(lhs == rhs,
                                  detail::tag("weakest-adjunction", n, fb, gb, hb));
                    }
            }
        }
    }
    return st;
}

// Randomised pass at a fixed variable count (4 by default exercises the
// space the exhaustive pass cannot reach).
inline Stats randomized(unsigned nvars, std::uint64_t cases, std::uint64_t seed) {
    using namespace modewise;
    Stats st;
    std::mt19937_64 rng(seed);
    BddManager m;
    for (unsigned v = 0; v < nvars; ++v) m.var(v);
    std::uint32_t mask = tt::full_mask(nvars);
    for (std::uint64_t i = 0; i < cases; ++i) {
        std::uint32_t fb = static_cast<std::uint32_t>(rng()) & mask;
        std::uint32_t gb = static_cast<std::uint32_t>(rng()) & mask;
        std::uint32_t hb = static_cast<std::uint32_t>(rng()) & mask;
        BoolFn f = build_bdd(tt::make(fb, nvars), m);
        BoolFn g = build_bdd(tt::make(gb, nvars), m);
        BoolFn h = build_bdd(tt::make(hb, nvars), m);
        detail::check_binary(nvars, fb, gb, f, g, st);
        bool lhs = entails(conj(f, h), g);
        bool rhs = entails(h, pseudo_complement(f, g));
        st.expect(lhs == rhs, detail::tag("weakest-adjunction", nvars, fb, gb, hb));
        if (i % 64 == 0) {
            detail::check_unary(nvars, fb, m, st);
            detail::check_elimination_orders(nvars, fb, m, st);
            detail::check_rename_perms(nvars, fb, m, st);
        }
    }
    return st;
}

}  // namespace proptest
