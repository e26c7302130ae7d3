#include <string>

#include "doctest.h"
#include "modewise/interp.hpp"
#include "modewise/normalize.hpp"

using namespace modewise;

namespace {

constexpr const char* kQuicksort = R"(
qs([],S,S).
qs([X|Xs],S,T) :- pt(Xs,X,L,H), qs(L,S,[X|M]), qs(H,M,T).
pt([],_,[],[]).
pt([M|T],N,[M|L],H) :- M =< N, pt(T,N,L,H).
pt([M|T],N,L,[M|H]) :- M > N, pt(T,N,L,H).
)";

RuntimeProgram load(std::string_view src) {
    BddManager m;
    return RuntimeProgram::from_source(parse_program(src), BuiltinTable::defaults(m));
}

Term pterm(const std::string& text) {
    Query q = parse_query("dummy(" + text + ")");
    return q.goals[0].a.args[0];
}

bool same_term(const Term& a, const Term& b) {
    return term_equal(canonical_vars(a), canonical_vars(b));
}

RunResult ask(const RuntimeProgram& rp, const std::string& text, InterpOptions opts = {}) {
    return run(rp, parse_query(text), opts);
}

}  // namespace

TEST_CASE("unification") {
    Substitution s;
    CHECK(unify(pterm("X"), pterm("f(a)"), s));
    CHECK(print_term(s.resolve(pterm("X"))) == "f(a)");

    SUBCASE("shared variables propagate") {
        // One parse so the two sides get disjoint variable ids.
        Term both = pterm("b(p(X, X), p(f(Y), f(3)))");
        Substitution s2;
        REQUIRE(unify(both.args[0], both.args[1], s2));
        CHECK(print_term(s2.resolve(both.args[0].args[0])) == "f(3)");
    }
    SUBCASE("occurs check") {
        Substitution s2;
        Term x = Term::make_var(0, "X");
        CHECK_FALSE(unify(x, Term::make_compound("f", {x}), s2));
        // ... also through a chain.
        Substitution s3;
        CHECK(unify(Term::make_var(0), Term::make_var(1), s3));
        CHECK_FALSE(unify(Term::make_var(1), Term::make_compound("g", {Term::make_var(0)}), s3));
    }
    SUBCASE("clashes") {
        Substitution s2;
        CHECK_FALSE(unify(pterm("f(a)"), pterm("f(b)"), s2));
        CHECK_FALSE(unify(pterm("f(a)"), pterm("g(a)"), s2));
        CHECK_FALSE(unify(pterm("f(a)"), pterm("f(a, b)"), s2));
        CHECK_FALSE(unify(Term::make_int(1), Term::make_atom("1"), s2));
    }
    SUBCASE("walk versus resolve") {
        Substitution s2;
        Term x = Term::make_var(7, "X");
        REQUIRE(unify(x, pterm("f(Y)"), s2));
        REQUIRE(unify(pterm("f(Y)").args[0], Term::make_int(9), s2));
        Term w = s2.walk(x);
        CHECK(w.is_compound());      // shallow: argument still a variable
        CHECK(w.args[0].is_var());
        CHECK(print_term(s2.resolve(x)) == "f(9)");
    }
}

TEST_CASE("canonical renumbering makes alpha-equivalent terms equal") {
    Query a = parse_query("p([1, 2 | T], T, X)");
    Query b = parse_query("p([1, 2 | Q], Q, R)");
    CHECK(term_equal(canonical_vars(a.goals[0].a), canonical_vars(b.goals[0].a)));
    Query c = parse_query("p([1, 2 | Q], R, Q)");
    CHECK_FALSE(term_equal(canonical_vars(a.goals[0].a), canonical_vars(c.goals[0].a)));
}

TEST_CASE("query answers") {
    RuntimeProgram rp = load(kQuicksort);

    SUBCASE("empty list passes through") {
        RunResult r = ask(rp, "qs([], S, T)");
        REQUIRE(r.status == RunStatus::success);
        REQUIRE(r.answers.size() == 1);
        // S and T end up as one variable.
        Term pair = Term::make_compound("p", {r.answers[0].bindings.at("S"),
                                              r.answers[0].bindings.at("T")});
        CHECK(same_term(pair, pterm("p(A, A)")));
    }
    SUBCASE("difference list sorting") {
        InterpOptions o;
        o.max_depth = 64;
        RunResult r = ask(rp, "qs([2, 1], S, T)", o);
        REQUIRE(r.status == RunStatus::success);
        CHECK(same_term(r.answers[0].bindings.at("S"), pterm("[1, 2 | T]")));
        Term pair = Term::make_compound("p", {r.answers[0].bindings.at("S"),
                                              r.answers[0].bindings.at("T")});
        CHECK(same_term(pair, pterm("p([1, 2 | T], T)")));
    }
    SUBCASE("closing the tail grounds the answer") {
        RunResult r = ask(rp, "qs([5, 3, 8, 1], S, [])");
        REQUIRE(r.status == RunStatus::success);
        CHECK(term_ground(r.answers[0].bindings.at("S")));
        CHECK(same_term(r.answers[0].bindings.at("S"), pterm("[1, 3, 5, 8]")));
    }
    SUBCASE("all solutions") {
        RuntimeProgram mem = load("mem(X, [X|_]).\nmem(X, [_|T]) :- mem(X, T).\n");
        InterpOptions o;
        o.max_solutions = 10;
        RunResult r = ask(mem, "mem(X, [1, 2, 3])", o);
        REQUIRE(r.status == RunStatus::success);
        REQUIRE(r.answers.size() == 3);
        CHECK(same_term(r.answers[0].bindings.at("X"), pterm("1")));
        CHECK(same_term(r.answers[1].bindings.at("X"), pterm("2")));
        CHECK(same_term(r.answers[2].bindings.at("X"), pterm("3")));
    }
    SUBCASE("no solutions") {
        RuntimeProgram mem = load("mem(X, [X|_]).\nmem(X, [_|T]) :- mem(X, T).\n");
        RunResult r = ask(mem, "mem(4, [1, 2])");
        CHECK(r.status == RunStatus::exhausted);
        CHECK(r.answers.empty());
    }
    SUBCASE("equations in the query") {
        RunResult r = ask(rp, "X = [1 | T], T = [2], qs(X, S, [])");
        REQUIRE(r.status == RunStatus::success);
        CHECK(same_term(r.answers[0].bindings.at("S"), pterm("[1, 2]")));
    }
}

TEST_CASE("limits") {
    SUBCASE("depth") {
        RuntimeProgram rp = load("p :- p.\n");
        RunResult r = ask(rp, "p");
        CHECK(r.status == RunStatus::depth_limit);
        CHECK(r.depth_cut);
        CHECK(r.answers.empty());
    }
    SUBCASE("steps") {
        RuntimeProgram rp = load("mem(X, [X|_]).\nmem(X, [_|T]) :- mem(X, T).\n");
        InterpOptions o;
        o.max_steps = 3;
        RunResult r = ask(rp, "mem(9, [1, 2, 3, 4, 5, 6, 7, 8, 9])", o);
        CHECK(r.status == RunStatus::step_limit);
    }
}

TEST_CASE("builtin entry checks fire at call time") {
    RuntimeProgram rp = load(kQuicksort);

    SUBCASE("comparison with an unbound operand") {
        RunResult r = ask(rp, "pt([1], M, L, H)");
        REQUIRE(r.status == RunStatus::error);
        REQUIRE(r.violation.has_value());
        CHECK(r.violation->pred == "=<");
        CHECK(r.violation->arity == 2);
        CHECK(r.violation->required == "a1 & a2");
        CHECK(same_term(r.violation->call, pterm("'=<'(1, N)")));
        REQUIRE(r.violation->ancestors.size() == 1);
        CHECK(r.violation->ancestors[0].text == "pt");
    }
    SUBCASE("errors outrank earlier answers") {
        InterpOptions o;
        o.max_solutions = 100;
        RunResult r = ask(rp, "qs(L, S, [1])", o);
        CHECK(r.status == RunStatus::error);
        REQUIRE(r.violation.has_value());
        CHECK((r.violation->pred == "=<" || r.violation->pred == ">"));
        CHECK(r.answers.size() == 2);  // both found before the unsafe branch
    }
    SUBCASE("fully ground calls stay safe") {
        InterpOptions o;
        o.max_solutions = 100;
        RunResult r = ask(rp, "qs([2, 1, 3], S, [])", o);
        CHECK(r.status == RunStatus::success);
        CHECK_FALSE(r.violation.has_value());
    }
    SUBCASE("checks can be disabled") {
        InterpOptions o;
        o.check_assertions = false;
        RunResult r = ask(rp, "pt([1], M, L, H)", o);
        // The unbound comparison now simply fails that branch.
        CHECK(r.status == RunStatus::exhausted);
    }
}

TEST_CASE("declared entry modes are checked before resolution") {
    RuntimeProgram rp = load(
        "p(X) :- q(X).\n"
        "q(a).\n"
        ":- assertion(q(A), A).\n");
    RunResult r = ask(rp, "p(Y)");
    REQUIRE(r.status == RunStatus::error);
    CHECK(r.violation->pred == "q");
    CHECK(r.violation->required == "a1");
    CHECK(r.answers.empty());  // never reached q's fact

    InterpOptions off;
    off.check_assertions = false;
    RunResult r2 = ask(rp, "p(Y)", off);
    REQUIRE(r2.status == RunStatus::success);
    CHECK(same_term(r2.answers[0].bindings.at("Y"), pterm("a")));

    RunResult r3 = ask(rp, "p(a)");
    CHECK(r3.status == RunStatus::success);
}

TEST_CASE("mode checks honour argument sharing") {
    RuntimeProgram rp = load(
        "r(X, Y) :- s(X, Y).\n"
        "s(X, Y).\n"
        ":- assertion(s(A, B), (A ; B)).\n");
    // Neither argument ground, but they are the same variable... still not
    // enough for a disjunctive demand.
    CHECK(ask(rp, "r(U, U)").status == RunStatus::error);
    CHECK(ask(rp, "r(a, V)").status == RunStatus::success);
    CHECK(ask(rp, "r(U, [1])").status == RunStatus::success);
    CHECK(ask(rp, "r(U, [1|W])").status == RunStatus::error);
}

TEST_CASE("arithmetic builtins") {
    RuntimeProgram rp = load("");
    auto val = [&](const std::string& q, const std::string& v) {
        RunResult r = ask(rp, q);
        REQUIRE_MESSAGE(r.status == RunStatus::success, q);
        CHECK_MESSAGE(same_term(r.answers[0].bindings.at(v), pterm(v + "v")), q);
    };
    (void)val;

    auto evals_to = [&](const std::string& expr, long long expect) {
        RunResult r = ask(rp, "X is " + expr);
        REQUIRE_MESSAGE(r.status == RunStatus::success, expr);
        Term x = r.answers[0].bindings.at("X");
        REQUIRE(x.is_int());
        CHECK_MESSAGE(x.value == expect, expr);
    };
    evals_to("3 + 4 * 2", 11);
    evals_to("(3 + 4) * 2", 14);
    evals_to("7 - 2 - 1", 4);
    evals_to("7 // 2", 3);
    evals_to("-7 // 2", -3);
    evals_to("7 mod 3", 1);
    evals_to("-7 mod 3", 2);
    evals_to("-7 rem 3", -1);
    evals_to("2 ^ 10", 1024);
    evals_to("- (4 + 1)", -5);
    evals_to("abs(3 - 9)", 6);
    evals_to("min(3, 9) + max(1, 2)", 5);
    evals_to("5 << 2", 20);
    evals_to("5 >> 1", 2);
    evals_to("6 /\\ 3", 2);
    evals_to("6 \\/ 3", 7);

    CHECK(ask(rp, "X is 1 // 0").status == RunStatus::exhausted);
    CHECK(ask(rp, "X is foo + 1").status == RunStatus::exhausted);

    CHECK(ask(rp, "3 < 4").status == RunStatus::success);
    CHECK(ask(rp, "4 =< 3").status == RunStatus::exhausted);
    CHECK(ask(rp, "2 + 2 =:= 4").status == RunStatus::success);
    CHECK(ask(rp, "2 + 2 =\\= 4").status == RunStatus::exhausted);
    CHECK(ask(rp, "5 >= 5").status == RunStatus::success);
    CHECK(ask(rp, "5 > 5").status == RunStatus::exhausted);

    // Unbound operand: an entry violation when checked, a plain failure
    // when not.
    CHECK(ask(rp, "X < 4").status == RunStatus::error);
    InterpOptions off;
    off.check_assertions = false;
    CHECK(ask(rp, "X < 4", off).status == RunStatus::exhausted);
}

TEST_CASE("term inspection and construction builtins") {
    RuntimeProgram rp = load("");

    RunResult r = ask(rp, "sort([3, 1, 2, 3, 1], X)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("X"), pterm("[1, 2, 3]")));

    r = ask(rp, "keysort([b-1, a-2, b-0], X)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("X"), pterm("[a-2, b-1, b-0]")));

    r = ask(rp, "length([a, b, c], N)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("N").value == 3);

    r = ask(rp, "length(L, 2)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("L"), pterm("[A, B]")));

    r = ask(rp, "functor(f(a, b), N, A)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("N").is_atom("f"));
    CHECK(r.answers[0].bindings.at("A").value == 2);
    // A non-ground first argument does not meet functor's entry mode.
    CHECK(ask(rp, "functor(f(a, B), N, A)").status == RunStatus::error);

    r = ask(rp, "functor(T, g, 3)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("T"), pterm("g(A, B, C)")));

    r = ask(rp, "functor(T, 7, 0)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("T").value == 7);

    r = ask(rp, "arg(2, f(a, b, c), X)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("X").is_atom("b"));
    CHECK(ask(rp, "arg(4, f(a), X)").status == RunStatus::exhausted);

    r = ask(rp, "f(a, b) =.. L");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("L"), pterm("[f, a, b]")));
    InterpOptions off;
    off.check_assertions = false;
    r = ask(rp, "f(a, B) =.. L", off);  // decomposition works on partial terms
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("L"), pterm("[f, a, B]")));

    r = ask(rp, "T =.. [h, 1, x]");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("T"), pterm("h(1, x)")));

    r = ask(rp, "T =.. [5]");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("T").value == 5);

    r = ask(rp, "name(abc, L)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(same_term(r.answers[0].bindings.at("L"), pterm("[97, 98, 99]")));

    r = ask(rp, "name(X, [52, 50])");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("X").value == 42);

    r = ask(rp, "name(X, [104, 105])");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("X").is_atom("hi"));

    r = ask(rp, "compare(O, 1, 2)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("O").is_atom("<"));
    r = ask(rp, "compare(O, f(a), 2)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("O").is_atom(">"));
}

TEST_CASE("type tests, comparison and miscellaneous builtins") {
    RuntimeProgram rp = load("");
    auto ok = [&](const std::string& q) { CHECK_MESSAGE(ask(rp, q).status == RunStatus::success, q); };
    auto no = [&](const std::string& q) {
        CHECK_MESSAGE(ask(rp, q).status == RunStatus::exhausted, q);
    };

    ok("var(X)");
    no("X = 3, var(X)");
    ok("X = 3, nonvar(X)");
    ok("atom(foo)");
    no("atom(3)");
    no("atom(f(a))");
    ok("atomic(3)");
    ok("atomic(foo)");
    no("atomic(f(a))");
    ok("integer(3)");
    ok("number(3)");
    no("float(3)");
    ok("compound(f(a))");
    no("compound(foo)");
    ok("ground(f(a, [1, 2]))");
    no("ground(f(a, [1 | T]))");
    ok("a \\= b");
    no("a \\= a");
    no("f(X) \\= f(3)");
    ok("f(a) == f(a)");
    no("f(a) == f(X)");
    ok("f(a) \\== f(X)");
    ok("f(X) @< f(a)");
    ok("b @> a");
    ok("f(a) @=< f(a)");
    ok("true");
    no("fail");
    no("false");
    no("abort");
    ok("nl");
    ok("write(anything)");
    ok("tab(3)");
    CHECK(ask(rp, "tab(X)").status == RunStatus::error);  // entry mode wants a ground count
}

TEST_CASE("output style builtins and io stubs") {
    RuntimeProgram rp = load("");
    RunResult r = ask(rp, "read(X)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("X").is_int());  // pseudo-random but ground
    // The stream stub is deterministic per run.
    RunResult r2 = ask(rp, "read(X)");
    CHECK(term_equal(r.answers[0].bindings.at("X"), r2.answers[0].bindings.at("X")));

    r = ask(rp, "statistics(A, B)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("A").is_int());
    CHECK(r.answers[0].bindings.at("B").is_int());
}

TEST_CASE("custom builtins execute as inert stubs") {
    BddManager m;
    BuiltinTable t = BuiltinTable::load_text("builtin(magic/1, true, a1).", m);
    RuntimeProgram rp = RuntimeProgram::from_source(parse_program("p(X) :- magic(X).\n"), t);
    RunResult r = ask(rp, "p(Y)");
    REQUIRE(r.status == RunStatus::success);
    CHECK(r.answers[0].bindings.at("Y").is_var());
}

TEST_CASE("unknown builtins throw") {
    RuntimeProgram rp = load("");
    CHECK_THROWS_AS(ask(rp, "'=?='(a, b)"), InterpError);
    // Unknown alphanumeric predicates are not builtins: they just fail.
    CHECK(ask(rp, "nosuchpred(3)").status == RunStatus::exhausted);
}

TEST_CASE("normalized programs run like their source") {
    BddManager m;
    Program p = parse_program(kQuicksort);
    RuntimeProgram raw = RuntimeProgram::from_source(p, BuiltinTable::defaults(m));
    RuntimeProgram norm =
        RuntimeProgram::from_normalized(normalize(p), BuiltinTable::defaults(m));

    for (const char* q : {"qs([3, 1, 2], S, [])", "qs([2, 1], S, T)", "pt([1, 2, 3], 2, L, H)",
                          "qs([], S, T)", "qs([9], S, [])"}) {
        CAPTURE(q);
        InterpOptions o;
        o.max_solutions = 4;
        RunResult a = run(raw, parse_query(q), o);
        RunResult b = run(norm, parse_query(q), o);
        REQUIRE(a.status == b.status);
        REQUIRE(a.answers.size() == b.answers.size());
        for (std::size_t i = 0; i < a.answers.size(); ++i) {
            REQUIRE(a.answers[i].goals.size() == b.answers[i].goals.size());
            for (std::size_t j = 0; j < a.answers[i].goals.size(); ++j)
                CHECK(term_equal(canonical_vars(a.answers[i].goals[j]),
                                 canonical_vars(b.answers[i].goals[j])));
        }
    }
}
