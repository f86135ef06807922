#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "hrel/ast.hpp"

namespace hrel {

namespace detail {

enum class Tok { End, Ident, Number, Punct };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.span = {line_, col_};
        if (pos_ >= src_.size()) return t;

        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            if (pos_ < src_.size() && src_[pos_] == '.') {
                bump();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                size_t save = pos_;
                int save_line = line_, save_col = col_;
                bump();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
                } else {
                    pos_ = save;  // 'e' was an identifier, not an exponent
                    line_ = save_line;
                    col_ = save_col;
                }
            }
            t.kind = Tok::Number;
            t.text = std::string(src_.substr(start, pos_ - start));
            t.number = std::strtod(t.text.c_str(), nullptr);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (std::string_view("+-*=;:,()[]").find(c) != std::string_view::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            bump();
            return t;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", t.span);
    }

private:
    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline bool is_reserved(const std::string& s) {
    static const char* words[] = {"param", "let",  "rep",       "coordinate", "component",
                                  "state", "i",    "exp",       "inv",        "det",
                                  "tr",    "transpose", "affine", "id",       "eta4",
                                  "gamma0", "gamma1", "gamma2", "gamma3"};
    for (const char* w : words)
        if (s == w) return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    RepProgram parse_program() {
        RepProgram p;
        while (cur_.kind != Tok::End) {
            parse_decl(p);
            expect_punct(";");
        }
        return p;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected = "") {
        throw parse_error(msg, cur_.span, expected);
    }

    std::string describe_current() const {
        switch (cur_.kind) {
            case Tok::End: return "end of input";
            case Tok::Number: return "number '" + cur_.text + "'";
            default: return "'" + cur_.text + "'";
        }
    }

    void expect_punct(const std::string& p) {
        if (cur_.kind != Tok::Punct || cur_.text != p)
            fail("expected '" + p + "', got " + describe_current(), p);
        advance();
    }

    bool peek_punct(const std::string& p) const {
        return cur_.kind == Tok::Punct && cur_.text == p;
    }

    std::string expect_new_name(const RepProgram& prog) {
        if (cur_.kind != Tok::Ident)
            fail("expected identifier, got " + describe_current(), "identifier");
        std::string name = cur_.text;
        if (is_reserved(name))
            fail("'" + name + "' is a reserved word and cannot be declared");
        for (const auto& d : prog.params)
            if (d.name == name) fail("duplicate name '" + name + "'");
        for (const auto& d : prog.bindings)
            if (d.name == name) fail("duplicate name '" + name + "'");
        for (const auto& d : prog.reps)
            if (d.name == name) fail("duplicate name '" + name + "'");
        advance();
        return name;
    }

    void parse_decl(RepProgram& p) {
        if (cur_.kind != Tok::Ident)
            fail("expected 'param', 'let' or 'rep', got " + describe_current(),
                 "param, let, rep");
        SourceSpan at = cur_.span;
        if (cur_.text == "param") {
            advance();
            ParamDecl d;
            d.span = at;
            d.name = expect_new_name(p);
            expect_punct("=");
            double sign = 1.0;
            if (peek_punct("-")) {
                sign = -1.0;
                advance();
            }
            if (cur_.kind != Tok::Number)
                fail("expected number, got " + describe_current(), "number");
            d.identity_value = sign * cur_.number;
            advance();
            p.params.push_back(std::move(d));
        } else if (cur_.text == "let") {
            advance();
            BindingDecl d;
            d.span = at;
            d.name = expect_new_name(p);
            expect_punct("=");
            d.expr = parse_expr(p);
            p.bindings.push_back(std::move(d));
        } else if (cur_.text == "rep") {
            advance();
            RepDecl d;
            d.span = at;
            d.name = expect_new_name(p);
            expect_punct(":");
            if (cur_.kind != Tok::Ident)
                fail("expected rep kind, got " + describe_current(),
                     "coordinate, component, state");
            if (cur_.text == "coordinate") d.kind = RepKind::Coordinate;
            else if (cur_.text == "component") d.kind = RepKind::Component;
            else if (cur_.text == "state") d.kind = RepKind::State;
            else
                fail("unknown rep kind '" + cur_.text + "'",
                     "coordinate, component, state");
            advance();
            expect_punct("=");
            d.expr = parse_expr(p);
            p.reps.push_back(std::move(d));
        } else {
            fail("expected 'param', 'let' or 'rep', got " + describe_current(),
                 "param, let, rep");
        }
    }

    ExprPtr make(ExprKind k, SourceSpan span) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->span = span;
        return e;
    }

    ExprPtr parse_expr(const RepProgram& p) {
        ExprPtr lhs = parse_term(p);
        while (peek_punct("+") || peek_punct("-")) {
            bool add = cur_.text == "+";
            SourceSpan at = cur_.span;
            advance();
            ExprPtr rhs = parse_term(p);
            ExprPtr node = make(add ? ExprKind::Add : ExprKind::Sub, at);
            node->kids.push_back(std::move(lhs));
            node->kids.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_term(const RepProgram& p) {
        ExprPtr lhs = parse_factor(p);
        while (peek_punct("*")) {
            SourceSpan at = cur_.span;
            advance();
            ExprPtr rhs = parse_factor(p);
            ExprPtr node = make(ExprKind::Mul, at);
            node->kids.push_back(std::move(lhs));
            node->kids.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_factor(const RepProgram& p) {
        SourceSpan at = cur_.span;
        if (cur_.kind == Tok::Number) {
            ExprPtr e = make(ExprKind::Number, at);
            e->number = cur_.number;
            advance();
            return e;
        }
        if (peek_punct("-")) {
            advance();
            ExprPtr e = make(ExprKind::Neg, at);
            e->kids.push_back(parse_factor(p));
            return e;
        }
        if (peek_punct("(")) {
            advance();
            ExprPtr e = parse_expr(p);
            expect_punct(")");
            return e;
        }
        if (peek_punct("[")) return parse_matrix(p);
        if (cur_.kind == Tok::Ident) {
            std::string name = cur_.text;
            if (name == "i") {
                advance();
                return make(ExprKind::ImagUnit, at);
            }
            if (is_reserved(name)) return parse_call(p, name);
            advance();
            for (size_t k = 0; k < p.params.size(); ++k)
                if (p.params[k].name == name) {
                    ExprPtr e = make(ExprKind::ParamRef, at);
                    e->ref = int(k);
                    e->name = name;
                    return e;
                }
            for (size_t k = 0; k < p.bindings.size(); ++k)
                if (p.bindings[k].name == name) {
                    ExprPtr e = make(ExprKind::BindingRef, at);
                    e->ref = int(k);
                    e->name = name;
                    return e;
                }
            throw parse_error("unknown identifier '" + name + "'", at);
        }
        fail("expected expression, got " + describe_current(),
             "number, i, identifier, matrix, call, (, -");
    }

    ExprPtr parse_matrix(const RepProgram& p) {
        SourceSpan at = cur_.span;
        expect_punct("[");
        ExprPtr e = make(ExprKind::MatrixLit, at);
        int cols = -1;
        while (true) {
            expect_punct("[");
            int row_len = 0;
            while (true) {
                e->kids.push_back(parse_expr(p));
                ++row_len;
                if (peek_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_punct("]");
            if (cols < 0) cols = row_len;
            else if (cols != row_len)
                throw parse_error("ragged matrix literal", at);
            ++e->lit_rows;
            if (peek_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct("]");
        e->lit_cols = cols;
        return e;
    }

    ExprPtr parse_call(const RepProgram& p, const std::string& name) {
        SourceSpan at = cur_.span;
        advance();
        expect_punct("(");
        auto finish = [&](ExprPtr e) {
            expect_punct(")");
            return e;
        };
        if (name == "eta4") return finish(make(ExprKind::Eta4, at));
        if (name.rfind("gamma", 0) == 0 && name.size() == 6) {
            ExprPtr e = make(ExprKind::Gamma, at);
            e->arg = name[5] - '0';
            return finish(std::move(e));
        }
        if (name == "id") {
            if (cur_.kind != Tok::Number || cur_.number != double(int(cur_.number)) ||
                cur_.number < 1)
                fail("id() expects a positive integer dimension", "positive integer");
            ExprPtr e = make(ExprKind::IdN, at);
            e->arg = int(cur_.number);
            advance();
            return finish(std::move(e));
        }
        if (name == "affine") {
            ExprPtr e = make(ExprKind::Affine, at);
            e->kids.push_back(parse_expr(p));
            expect_punct(",");
            e->kids.push_back(parse_expr(p));
            return finish(std::move(e));
        }
        ExprKind k;
        if (name == "exp") k = ExprKind::Exp;
        else if (name == "inv") k = ExprKind::Inv;
        else if (name == "det") k = ExprKind::Det;
        else if (name == "tr") k = ExprKind::Tr;
        else if (name == "transpose") k = ExprKind::Transpose;
        else fail("'" + name + "' cannot be used here");
        ExprPtr e = make(k, at);
        e->kids.push_back(parse_expr(p));
        return finish(std::move(e));
    }

    Lexer lex_;
    Token cur_;
};

inline void print_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

inline bool is_atomic(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Neg:
            return false;
        default:
            return true;
    }
}

inline void print_expr(std::string& out, const Expr& e) {
    auto paren = [&](const Expr& kid, bool need) {
        if (need) out += "(";
        print_expr(out, kid);
        if (need) out += ")";
    };
    switch (e.kind) {
        case ExprKind::Number:
            print_number(out, e.number);
            break;
        case ExprKind::ImagUnit:
            out += "i";
            break;
        case ExprKind::ParamRef:
        case ExprKind::BindingRef:
            out += e.name;
            break;
        case ExprKind::MatrixLit: {
            out += "[";
            for (int r = 0; r < e.lit_rows; ++r) {
                if (r) out += ", ";
                out += "[";
                for (int c = 0; c < e.lit_cols; ++c) {
                    if (c) out += ", ";
                    print_expr(out, *e.kids[size_t(r) * e.lit_cols + c]);
                }
                out += "]";
            }
            out += "]";
            break;
        }
        case ExprKind::IdN:
            out += "id(" + std::to_string(e.arg) + ")";
            break;
        case ExprKind::Eta4:
            out += "eta4()";
            break;
        case ExprKind::Gamma:
            out += "gamma" + std::to_string(e.arg) + "()";
            break;
        case ExprKind::Neg:
            out += "-";
            paren(*e.kids[0], !is_atomic(*e.kids[0]));
            break;
        case ExprKind::Exp:
        case ExprKind::Inv:
        case ExprKind::Det:
        case ExprKind::Tr:
        case ExprKind::Transpose: {
            const char* n = e.kind == ExprKind::Exp   ? "exp"
                            : e.kind == ExprKind::Inv ? "inv"
                            : e.kind == ExprKind::Det ? "det"
                            : e.kind == ExprKind::Tr  ? "tr"
                                                      : "transpose";
            out += n;
            out += "(";
            print_expr(out, *e.kids[0]);
            out += ")";
            break;
        }
        case ExprKind::Add:
        case ExprKind::Sub: {
            print_expr(out, *e.kids[0]);
            out += e.kind == ExprKind::Add ? " + " : " - ";
            const Expr& rhs = *e.kids[1];
            paren(rhs, rhs.kind == ExprKind::Add || rhs.kind == ExprKind::Sub);
            break;
        }
        case ExprKind::Mul: {
            const Expr& lhs = *e.kids[0];
            const Expr& rhs = *e.kids[1];
            paren(lhs, lhs.kind == ExprKind::Add || lhs.kind == ExprKind::Sub);
            out += "*";
            paren(rhs, !detail::is_atomic(rhs));
            break;
        }
        case ExprKind::Affine:
            out += "affine(";
            print_expr(out, *e.kids[0]);
            out += ", ";
            print_expr(out, *e.kids[1]);
            out += ")";
            break;
    }
}

}  // namespace detail

/// Parse a rep-file. Throws parse_error with a 1-based line/column and,
/// where applicable, the set of tokens that would have been accepted.
inline RepProgram parse_repfile(std::string_view text) {
    detail::Parser p(text);
    return p.parse_program();
}

/// Canonical text form; reparsing yields a structurally identical program.
inline std::string pretty_print(const RepProgram& p) {
    std::string out;
    for (const auto& d : p.params) {
        out += "param " + d.name + " = ";
        detail::print_number(out, d.identity_value);
        out += ";\n";
    }
    for (const auto& d : p.bindings) {
        out += "let " + d.name + " = ";
        detail::print_expr(out, *d.expr);
        out += ";\n";
    }
    for (const auto& d : p.reps) {
        out += "rep " + d.name + " : " + to_string(d.kind) + " = ";
        detail::print_expr(out, *d.expr);
        out += ";\n";
    }
    return out;
}

}  // namespace hrel
