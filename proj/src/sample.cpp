#include "modewise/sample.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "modewise/formula.hpp"

namespace modewise {
namespace {

// Ground-term pool drawn from the program text, so generated queries stay
// inside the shapes the clauses actually match on.
struct Signature {
    std::vector<std::string> atoms;
    std::vector<std::pair<std::string, std::uint32_t>> ctors;  // non-list functors
};

void harvest_term(const Term& t, std::set<std::string>& atoms,
                  std::set<std::pair<std::string, std::uint32_t>>& ctors) {
    switch (t.kind) {
        case Term::Kind::variable:
        case Term::Kind::integer:
            return;
        case Term::Kind::atom:
            if (!t.is_nil()) atoms.insert(t.text);
            return;
        case Term::Kind::compound:
            if (!t.is_cons()) ctors.insert({t.text, t.arity()});
            for (const Term& a : t.args) harvest_term(a, atoms, ctors);
            return;
    }
}

Signature harvest(const RuntimeProgram& rp, const AbstractProgram& ap) {
    std::set<std::string> atoms;
    std::set<std::pair<std::string, std::uint32_t>> ctors;
    for (const PredInfo& p : ap.preds) {
        if (p.wrapper) continue;
        for (const RuntimeClause& c : rp.clauses_of(p.name, p.arity)) {
            for (const Term& a : c.head.args) harvest_term(a, atoms, ctors);
            for (const Goal& g : c.goals) {
                if (g.kind == Goal::Kind::equation) {
                    harvest_term(g.a, atoms, ctors);
                    harvest_term(g.b, atoms, ctors);
                } else {
                    for (const Term& a : g.a.args) harvest_term(a, atoms, ctors);
                }
            }
        }
    }
    Signature s;
    s.atoms.assign(atoms.begin(), atoms.end());
    if (s.atoms.empty()) s.atoms = {"a", "b", "c"};
    s.ctors.assign(ctors.begin(), ctors.end());
    return s;
}

// Stable across standard libraries, unlike std::hash.
std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
    return h;
}

class TermGen {
public:
    // No single shape distribution suits every predicate: sorting wants
    // number lists, tree predicates want signature constructors, rewriting
    // wants constructor nests over the signature's atoms. Queries rotate
    // through three profiles so each family gets exercised.
    enum class Profile : std::uint8_t { lists, symbolic, mixed };

    TermGen(const Signature& sig, std::uint64_t seed) : sig_(sig), rng_(seed) {}

    void set_profile(Profile p) { profile_ = p; }

    Term top(int depth) {
        if (profile_ == Profile::lists)
            return rng_() % 3 != 0 ? list(depth - 1) : gen(depth);
        if (!sig_.ctors.empty() && rng_() % 2 == 0) return ctor(depth);
        return rng_() % 2 == 0 ? list(depth - 1) : gen(depth);
    }

    Term gen(int depth) {
        if (depth <= 0) return leaf();
        std::uint64_t r = rng_() % 10;
        bool pick_list = profile_ == Profile::lists ? r < 4 : r < 2;
        bool pick_ctor = profile_ == Profile::lists ? r < 6 : r < 7;
        if (pick_list) return list(depth - 1);
        if (pick_ctor && !sig_.ctors.empty()) return ctor(depth);
        return leaf();
    }

private:
    Term leaf() {
        // List-processing predicates compare elements, so those profiles
        // lean on small integers; the symbolic profile leans on atoms.
        bool atom = profile_ == Profile::symbolic ? rng_() % 4 != 0 : rng_() % 4 == 0;
        if (atom) return Term::make_atom(sig_.atoms[rng_() % sig_.atoms.size()]);
        return Term::make_int(static_cast<long long>(rng_() % 10));
    }

    Term ctor(int depth) {
        const auto& [name, n] = sig_.ctors[rng_() % sig_.ctors.size()];
        std::vector<Term> args;
        args.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) args.push_back(gen(depth - 1));
        return Term::make_compound(name, std::move(args));
    }

    Term list(int depth) {
        // Half the lists hold plain numbers: the common input shape for
        // predicates that compare elements.
        bool numbers = rng_() % 2 == 0;
        Term t = Term::make_atom("[]");
        for (std::uint64_t n = rng_() % 4; n > 0; --n) {
            Term e = numbers ? Term::make_int(static_cast<long long>(rng_() % 10)) : gen(depth);
            t = Term::make_compound(".", {std::move(e), std::move(t)});
        }
        return t;
    }

    const Signature& sig_;
    std::mt19937_64 rng_;
    Profile profile_ = Profile::lists;
};

// Position sets whose grounding alone guarantees the mode: the free
// positions are pairwise distinct fresh variables, so the call's abstraction
// is exactly the conjunction of the grounded positions.
std::vector<std::uint32_t> admissible_masks(BoolFn mode, std::uint32_t arity) {
    BddManager& m = *mode.mgr;
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << arity); ++mask) {
        BoolFn g = m.top();
        for (std::uint32_t i = 0; i < arity; ++i)
            if (mask & (1u << i)) g = conj(g, m.var(i));
        if (entails(g, mode)) out.push_back(mask);
    }
    return out;
}

struct PredQueries {
    const PredInfo* pred = nullptr;
    std::vector<std::uint32_t> masks;
};

Query make_query(const PredInfo& p, std::uint32_t mask, TermGen& gen, int term_depth) {
    std::vector<Term> args;
    args.reserve(p.arity);
    std::uint32_t nvars = 0;
    for (std::uint32_t i = 0; i < p.arity; ++i) {
        if (mask & (1u << i))
            args.push_back(gen.top(term_depth));
        else
            args.push_back(Term::make_var(nvars++, "_"));
    }
    Query q;
    Goal g;
    g.kind = Goal::Kind::call;
    g.a = p.arity == 0 ? Term::make_atom(p.name) : Term::make_compound(p.name, std::move(args));
    q.goals.push_back(std::move(g));
    q.nvars = nvars;
    q.var_names.assign(nvars, "_");
    return q;
}

template <typename PerRun>
SampleReport drive(const RuntimeProgram& rp, const AbstractProgram& ap,
                   const PatternTable& calls, const SampleOptions& opts, bool check_entries,
                   PerRun per_run) {
    SampleReport rep;
    Signature sig = harvest(rp, ap);
    for (const PredInfo& p : ap.preds) {
        if (p.wrapper) continue;
        std::string key = p.name + "/" + std::to_string(p.arity);
        std::vector<std::uint32_t> masks =
            admissible_masks(calls.get(p.name, p.arity), p.arity);
        if (masks.empty()) {
            if (check_entries) {
                rep.skipped.push_back(key + ": no admissible instantiation (call mode is false)");
                continue;
            }
            // Success harvesting does not need admissible calls.
            for (std::uint32_t mask = 0; mask < (1u << p.arity); ++mask) masks.push_back(mask);
        }
        TermGen gen(sig, opts.seed ^ fnv1a(key));
        std::mt19937_64 pick(opts.seed * 0x9e3779b97f4a7c15ull + fnv1a(key));
        InterpOptions io;
        io.max_depth = opts.max_depth;
        io.max_solutions = opts.max_solutions;
        io.max_steps = opts.max_steps;
        io.check_assertions = check_entries;
        for (std::size_t i = 0; i < opts.queries; ++i) {
            gen.set_profile(static_cast<TermGen::Profile>(pick() % 3));
            Query q = make_query(p, masks[pick() % masks.size()], gen, opts.term_depth);
            Term posed = q.goals[0].a;
            RunResult r = run(rp, q, io);
            ++rep.queries_run;
            rep.answers_seen += r.answers.size();
            rep.per_pred_answers[key] += r.answers.size();
            per_run(rep, p, key, posed, r);
        }
    }
    return rep;
}

}  // namespace

SampleReport check_call_modes(const RuntimeProgram& rp, const AbstractProgram& ap,
                              const AnalysisResult& analysis, const SampleOptions& opts) {
    return drive(rp, ap, analysis.calls, opts, /*check_entries=*/true,
                 [](SampleReport& rep, const PredInfo& p, const std::string&, const Term& posed,
                    const RunResult& r) {
                     if (r.status != RunStatus::error) return;
                     std::string detail = "entry mode violated";
                     if (r.violation)
                         detail = "call " + print_term(r.violation->call) + " violates " +
                                  r.violation->pred + "/" + std::to_string(r.violation->arity) +
                                  " requires " + r.violation->required;
                     rep.findings.push_back({p.name, p.arity, print_term(posed), detail});
                 });
}

SampleReport check_success_modes(const RuntimeProgram& rp, const AbstractProgram& ap,
                                 const AnalysisResult& analysis, const SampleOptions& opts) {
    return drive(rp, ap, analysis.calls, opts, /*check_entries=*/false,
                 [&analysis](SampleReport& rep, const PredInfo& p, const std::string&,
                             const Term& posed, const RunResult& r) {
                     BoolFn f = analysis.success.get(p.name, p.arity);
                     for (const Answer& ans : r.answers) {
                         const Term& got = ans.goals[0];
                         bool bits[32] = {};
                         for (std::uint32_t i = 0; i < p.arity; ++i)
                             bits[i] = term_ground(got.args[i]);
                         if (reference_eval(f, std::span<const bool>(bits, p.arity))) continue;
                         rep.findings.push_back(
                             {p.name, p.arity, print_term(posed),
                              "answer " + print_term(got) + " falsifies success mode " +
                                  print_formula(f, 'a')});
                     }
                 });
}

}  // namespace modewise
