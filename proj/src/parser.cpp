#include "modewise/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace modewise {

namespace {

// ===================== lexer =====================

struct Token {
    enum class K : std::uint8_t { atom, var, integer, punct, end, eof };
    K k = K::eof;
    std::string text;
    long long ival = 0;
    int line = 1, col = 1;
    bool layout_before = false;  // separates `f (x)` from `f(x)`
};

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol_char(char c) { return kSymbolChars.find(c) != std::string_view::npos; }

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1, col = 1;

    [[noreturn]] void fail(const std::string& msg, int l, int c) { throw ParseError(msg, l, c); }
    [[noreturn]] void fail(const std::string& msg) { fail(msg, line, col); }

    char peek(std::size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    bool skip_layout() {
        bool any = false;
        while (pos < src.size()) {
            char c = src[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                any = true;
            } else if (c == '%') {
                while (pos < src.size() && src[pos] != '\n') advance();
                any = true;
            } else if (c == '/' && peek(1) == '*') {
                int l = line, cpos = col;
                advance();
                advance();
                while (pos < src.size() && !(src[pos] == '*' && peek(1) == '/')) advance();
                if (pos >= src.size()) fail("unterminated block comment", l, cpos);
                advance();
                advance();
                any = true;
            } else {
                break;
            }
        }
        return any;
    }

    Token next() {
        Token t;
        t.layout_before = skip_layout();
        t.line = line;
        t.col = col;
        if (pos >= src.size()) {
            t.k = Token::K::eof;
            return t;
        }
        char c = src[pos];

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                digits += src[pos];
                advance();
            }
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))
                fail("unsupported construct: floating point literal", t.line, t.col);
            if (peek() == '\'' && digits == "0")
                fail("unsupported construct: character code literal", t.line, t.col);
            t.k = Token::K::integer;
            try {
                t.ival = std::stoll(digits);
            } catch (const std::out_of_range&) {
                fail("integer literal out of range", t.line, t.col);
            }
            t.text = digits;
            return t;
        }

        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                        src[pos] == '_')) {
                name += src[pos];
                advance();
            }
            t.k = Token::K::var;
            t.text = name;
            return t;
        }

        if (std::islower(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                        src[pos] == '_')) {
                name += src[pos];
                advance();
            }
            t.k = Token::K::atom;
            t.text = name;
            return t;
        }

        if (c == '\'') {
            advance();
            std::string name;
            while (true) {
                if (pos >= src.size()) fail("unterminated quoted atom", t.line, t.col);
                char q = src[pos];
                if (q == '\'') {
                    advance();
                    if (peek() == '\'') {  // doubled quote escapes itself
                        name += '\'';
                        advance();
                        continue;
                    }
                    break;
                }
                if (q == '\\' && pos + 1 < src.size()) {
                    advance();
                    char e = src[pos];
                    advance();
                    switch (e) {
                        case 'n': name += '\n'; break;
                        case 't': name += '\t'; break;
                        case '\\': name += '\\'; break;
                        case '\'': name += '\''; break;
                        default: name += e; break;
                    }
                    continue;
                }
                name += q;
                advance();
            }
            t.k = Token::K::atom;
            t.text = name;
            return t;
        }

        if (c == '"') fail("unsupported construct: double-quoted string");
        if (c == '{' || c == '}') fail("unsupported construct: curly-brace term");

        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
            t.k = Token::K::punct;
            t.text = std::string(1, c);
            advance();
            return t;
        }

        if (c == '!' || c == ';') {
            t.k = Token::K::atom;
            t.text = std::string(1, c);
            advance();
            return t;
        }

        if (is_symbol_char(c)) {
            std::string sym;
            while (pos < src.size() && is_symbol_char(src[pos])) {
                sym += src[pos];
                advance();
            }
            // A bare '.' before layout or EOF terminates the clause.
            if (sym == ".") {
                char after = peek();
                if (after == '\0' || std::isspace(static_cast<unsigned char>(after)) ||
                    after == '%') {
                    t.k = Token::K::end;
                    t.text = ".";
                    return t;
                }
            }
            t.k = Token::K::atom;
            t.text = sym;
            return t;
        }

        fail(std::string("unexpected character '") + c + "'");
    }
};

// ===================== operator table =====================

enum class OpType : std::uint8_t { xfx, xfy, yfx };

struct InfixOp {
    int prec;
    OpType type;
};

const std::unordered_map<std::string, InfixOp>& infix_ops() {
    static const std::unordered_map<std::string, InfixOp> table = {
        {":-", {1200, OpType::xfx}}, {"-->", {1200, OpType::xfx}},
        {";", {1100, OpType::xfy}},  {"->", {1050, OpType::xfy}},
        {",", {1000, OpType::xfy}},  {"=", {700, OpType::xfx}},
        {"\\=", {700, OpType::xfx}}, {"==", {700, OpType::xfx}},
        {"\\==", {700, OpType::xfx}}, {"@<", {700, OpType::xfx}},
        {"@>", {700, OpType::xfx}},  {"@=<", {700, OpType::xfx}},
        {"@>=", {700, OpType::xfx}}, {"is", {700, OpType::xfx}},
        {"=..", {700, OpType::xfx}}, {"=:=", {700, OpType::xfx}},
        {"=\\=", {700, OpType::xfx}}, {"<", {700, OpType::xfx}},
        {">", {700, OpType::xfx}},   {"=<", {700, OpType::xfx}},
        {">=", {700, OpType::xfx}},  {"+", {500, OpType::yfx}},
        {"-", {500, OpType::yfx}},   {"/\\", {500, OpType::yfx}},
        {"\\/", {500, OpType::yfx}}, {"*", {400, OpType::yfx}},
        {"/", {400, OpType::yfx}},   {"//", {400, OpType::yfx}},
        {"mod", {400, OpType::yfx}}, {"rem", {400, OpType::yfx}},
        {"<<", {400, OpType::yfx}},  {">>", {400, OpType::yfx}},
        {"**", {200, OpType::xfx}},  {"^", {200, OpType::xfy}},
    };
    return table;
}

struct PrefixOp {
    int prec;
    bool fy;
};

const std::unordered_map<std::string, PrefixOp>& prefix_ops() {
    static const std::unordered_map<std::string, PrefixOp> table = {
        {":-", {1200, false}}, {"?-", {1200, false}}, {"\\+", {900, true}},
        {"-", {200, true}},    {"+", {200, true}},
    };
    return table;
}

// ===================== term parser =====================

struct TermParser {
    Lexer lex;
    Token tok;

    explicit TermParser(std::string_view src) : lex{src} { tok = lex.next(); }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok.line, tok.col); }
    [[noreturn]] void fail(const std::string& msg, const Token& at) {
        throw ParseError(msg, at.line, at.col);
    }

    void consume() { tok = lex.next(); }

    bool at_punct(std::string_view p) const {
        return tok.k == Token::K::punct && tok.text == p;
    }

    void expect_punct(std::string_view p) {
        if (!at_punct(p)) fail(std::string("expected '") + std::string(p) + "'");
        consume();
    }

    // True when the current token could begin a term (used to decide whether
    // an operator atom is prefix here).
    bool starts_term() const {
        switch (tok.k) {
            case Token::K::integer:
            case Token::K::var:
            case Token::K::atom:
                return true;
            case Token::K::punct:
                return tok.text == "(" || tok.text == "[";
            default:
                return false;
        }
    }

    struct Parsed {
        Term t;
        int prec;
    };

    Parsed primary(int max) {
        Token at = tok;
        switch (tok.k) {
            case Token::K::integer: {
                consume();
                return {Term::make_int(at.ival), 0};
            }
            case Token::K::var: {
                consume();
                return {Term::make_var(0, at.text), 0};
            }
            case Token::K::punct: {
                if (tok.text == "(") {
                    consume();
                    Term t = parse(1200).t;
                    expect_punct(")");
                    return {t, 0};
                }
                if (tok.text == "[") {
                    consume();
                    return {parse_list(), 0};
                }
                fail("expected a term");
            }
            case Token::K::atom: {
                std::string name = tok.text;
                consume();
                if (at_punct("(") && !tok.layout_before) {
                    consume();
                    std::vector<Term> args;
                    args.push_back(parse(999).t);
                    while (at_punct(",")) {
                        consume();
                        args.push_back(parse(999).t);
                    }
                    expect_punct(")");
                    return {Term::make_compound(name, std::move(args)), 0};
                }
                auto pre = prefix_ops().find(name);
                if (pre != prefix_ops().end() && pre->second.prec <= max && starts_term()) {
                    // Don't treat `- ,` or an infix operator usage as prefix.
                    bool operand_is_op = tok.k == Token::K::atom &&
                                         infix_ops().count(tok.text) &&
                                         !prefix_ops().count(tok.text);
                    if (!operand_is_op) {
                        if (name == "-" && tok.k == Token::K::integer) {
                            long long v = tok.ival;
                            consume();
                            return {Term::make_int(-v), 0};
                        }
                        int sub = pre->second.prec - (pre->second.fy ? 0 : 1);
                        Term arg = parse(sub).t;
                        return {Term::make_compound(name, {std::move(arg)}), pre->second.prec};
                    }
                }
                return {Term::make_atom(name), 0};
            }
            default:
                fail("unexpected end of clause");
        }
    }

    Term parse_list() {
        if (at_punct("]")) {
            consume();
            return Term::make_atom("[]");
        }
        std::vector<Term> elems;
        elems.push_back(parse(999).t);
        while (at_punct(",")) {
            consume();
            elems.push_back(parse(999).t);
        }
        Term tail = Term::make_atom("[]");
        if (at_punct("|")) {
            consume();
            tail = parse(999).t;
        }
        expect_punct("]");
        for (auto it = elems.rbegin(); it != elems.rend(); ++it)
            tail = Term::make_compound(".", {std::move(*it), std::move(tail)});
        return tail;
    }

    Parsed parse(int max) {
        Parsed left = primary(max);
        while (true) {
            std::string opname;
            if (tok.k == Token::K::atom && infix_ops().count(tok.text)) {
                opname = tok.text;
            } else if (at_punct(",") && max >= 1000) {
                opname = ",";
            } else {
                break;
            }
            const InfixOp& op = infix_ops().at(opname);
            if (op.prec > max) break;
            int left_max = op.type == OpType::yfx ? op.prec : op.prec - 1;
            int right_max = op.type == OpType::xfy ? op.prec : op.prec - 1;
            if (left.prec > left_max) break;
            consume();
            Term rhs = parse(right_max).t;
            left = {Term::make_compound(opname, {std::move(left.t), std::move(rhs)}), op.prec};
        }
        return left;
    }

    Term parse_clause_term() {
        Term t = parse(1200).t;
        if (tok.k != Token::K::end) fail("expected '.' at end of clause");
        consume();
        return t;
    }

    bool at_eof() const { return tok.k == Token::K::eof; }
};

// ===================== clause building =====================

struct VarInterner {
    std::uint32_t next = 0;
    std::map<std::string, std::uint32_t> named;
    std::vector<std::string> names;

    std::uint32_t get(const std::string& name) {
        if (name == "_") {
            names.push_back("_");
            return next++;
        }
        auto it = named.find(name);
        if (it != named.end()) return it->second;
        named.emplace(name, next);
        names.push_back(name);
        return next++;
    }

    void walk(Term& t) {
        if (t.is_var()) {
            t.var = get(t.text);
        } else {
            for (Term& a : t.args) walk(a);
        }
    }
};

void flatten_body(Term&& t, std::vector<Goal>& out, int line, int col) {
    if (t.is_compound(",", 2)) {
        Term lhs = std::move(t.args[0]);
        Term rhs = std::move(t.args[1]);
        flatten_body(std::move(lhs), out, line, col);
        flatten_body(std::move(rhs), out, line, col);
        return;
    }
    if (t.is_compound(";", 2))
        throw ParseError("unsupported construct: disjunction ;/2 in clause body", line, col);
    if (t.is_compound("->", 2))
        throw ParseError("unsupported construct: if-then-else ->/2", line, col);
    if (t.is_compound("\\+", 1))
        throw ParseError("unsupported construct: negation as failure \\+/1", line, col);
    if (t.is_var())
        throw ParseError("unsupported construct: variable goal (meta-call)", line, col);
    if (t.is_int())
        throw ParseError("goal is not callable: integer", line, col);

    Goal g;
    g.line = line;
    g.col = col;
    if (t.is_compound("=", 2)) {
        g.kind = Goal::Kind::equation;
        g.a = std::move(t.args[0]);
        g.b = std::move(t.args[1]);
    } else {
        g.kind = Goal::Kind::call;
        g.a = std::move(t);
    }
    out.push_back(std::move(g));
}

void check_head(const Term& h, int line, int col) {
    if (h.is_var()) throw ParseError("clause head may not be a variable", line, col);
    if (h.is_int()) throw ParseError("clause head may not be an integer", line, col);
    if (h.is_compound("-->", 2))
        throw ParseError("unsupported construct: DCG rule -->/2", line, col);
}

}  // namespace

Program parse_program(std::string_view src) {
    Program prog;
    TermParser tp(src);
    while (!tp.at_eof()) {
        int line = tp.tok.line, col = tp.tok.col;
        Term t = tp.parse_clause_term();

        if (t.is_compound(":-", 1)) {
            Directive d;
            d.line = line;
            d.goal = std::move(t.args[0]);
            VarInterner vars;
            vars.walk(d.goal);
            d.nvars = vars.next;
            d.var_names = std::move(vars.names);
            prog.directives.push_back(std::move(d));
            continue;
        }

        SourceClause c;
        c.line = line;
        if (t.is_compound(":-", 2)) {
            c.head = std::move(t.args[0]);
            check_head(c.head, line, col);
            flatten_body(std::move(t.args[1]), c.body, line, col);
        } else {
            check_head(t, line, col);
            c.head = std::move(t);
        }

        VarInterner vars;
        vars.walk(c.head);
        for (Goal& g : c.body) {
            vars.walk(g.a);
            if (g.kind == Goal::Kind::equation) vars.walk(g.b);
        }
        c.nvars = vars.next;
        c.var_names = std::move(vars.names);
        prog.clauses.push_back(std::move(c));
    }
    return prog;
}

Program parse_program_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path, 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    return parse_program(text);
}

}  // namespace modewise
