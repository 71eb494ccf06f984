/*
 * Copyright 2026 The vacmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cctype>
#include <string>
#include <vector>

#include "vacmc/error.hpp"
#include "vacmc/formula.hpp"

namespace vacmc {

namespace {

enum class Tok {
    LParen,
    RParen,
    LBrack,
    RBrack,
    Not,
    And,
    Or,
    Implies,
    Dot,
    Ident,   // lowercase atom or keyword
    Keyword, // uppercase operator word
    SetAtom,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
    std::vector<std::string> states; // set atoms only
};

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }
bool model_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        switch (c) {
        case '(': out.push_back({Tok::LParen, "(", i++, {}}); continue;
        case ')': out.push_back({Tok::RParen, ")", i++, {}}); continue;
        case '[': out.push_back({Tok::LBrack, "[", i++, {}}); continue;
        case ']': out.push_back({Tok::RBrack, "]", i++, {}}); continue;
        case '!': out.push_back({Tok::Not, "!", i++, {}}); continue;
        case '&': out.push_back({Tok::And, "&", i++, {}}); continue;
        case '|': out.push_back({Tok::Or, "|", i++, {}}); continue;
        case '.': out.push_back({Tok::Dot, ".", i++, {}}); continue;
        case '-':
            if (i + 1 < src.size() && src[i + 1] == '>') {
                out.push_back({Tok::Implies, "->", i, {}});
                i += 2;
                continue;
            }
            throw ParseError("unexpected character '-'", i);
        default: break;
        }
        if (c == '{') {
            // {name,name,...}@Model ; names may be composite like (a0,n0)
            ++i;
            std::vector<std::string> names;
            std::string cur;
            int depth = 0;
            bool closed = false;
            while (i < src.size()) {
                char d = src[i];
                if (d == '(') ++depth;
                if (d == ')') --depth;
                if (depth == 0 && (d == ',' || d == '}')) {
                    if (!cur.empty()) names.push_back(cur);
                    else if (d == ',' || !names.empty()) throw ParseError("empty state name in set atom", i);
                    cur.clear();
                    ++i;
                    if (d == '}') {
                        closed = true;
                        break;
                    }
                    continue;
                }
                if (!std::isspace(static_cast<unsigned char>(d))) cur += d;
                ++i;
            }
            if (!closed) throw ParseError("unterminated set atom", start);
            if (i >= src.size() || src[i] != '@') throw ParseError("expected '@' after set atom", i);
            ++i;
            std::string model;
            while (i < src.size() && model_char(src[i])) model += src[i++];
            if (model.empty()) throw ParseError("expected model name after '@'", i);
            Token t{Tok::SetAtom, model, start, std::move(names)};
            out.push_back(std::move(t));
            continue;
        }
        if (ident_start(c)) {
            std::string word;
            while (i < src.size() && ident_char(src[i])) word += src[i++];
            out.push_back({Tok::Ident, word, start, {}});
            continue;
        }
        if (c >= 'A' && c <= 'Z') {
            std::string word;
            while (i < src.size() && src[i] >= 'A' && src[i] <= 'Z') word += src[i++];
            out.push_back({Tok::Keyword, word, start, {}});
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Tok::End, "", src.size(), {}});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse_top() {
        Formula f;
        if (peek_ident("forall") || peek_ident("exists")) {
            bool universal = peek().text == "forall";
            next();
            const Token& v = expect(Tok::Ident, "variable name");
            if (is_reserved(v.text)) throw ParseError("reserved word as variable", v.pos);
            std::string var = v.text;
            expect(Tok::Dot, "'.'");
            Formula body = parse_expr(true);
            f = universal ? Formula::Forall(var, body) : Formula::Exists(var, body);
        } else {
            f = parse_expr(true);
        }
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;

    static bool is_reserved(const std::string& w) {
        return w == "true" || w == "false" || w == "forall" || w == "exists";
    }

    const Token& peek() const { return toks_[at_]; }
    const Token& next() { return toks_[at_++]; }
    bool peek_ident(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
    bool peek_keyword(const char* w) const { return peek().kind == Tok::Keyword && peek().text == w; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
            throw ParseError(std::string("expected ") + what + ", found " + found, peek().pos);
        }
        return next();
    }

    Formula parse_expr(bool allow_until) { return parse_implies(allow_until); }

    Formula parse_implies(bool allow_until) {
        Formula lhs = parse_or(allow_until);
        if (peek().kind == Tok::Implies) {
            next();
            Formula rhs = parse_implies(allow_until);
            return Formula::Implies(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_or(bool allow_until) {
        Formula lhs = parse_and(allow_until);
        while (peek().kind == Tok::Or) {
            next();
            lhs = Formula::Or(lhs, parse_and(allow_until));
        }
        return lhs;
    }

    Formula parse_and(bool allow_until) {
        Formula lhs = parse_until(allow_until);
        while (peek().kind == Tok::And) {
            next();
            lhs = Formula::And(lhs, parse_until(allow_until));
        }
        return lhs;
    }

    Formula parse_until(bool allow_until) {
        Formula lhs = parse_unary();
        if (allow_until && (peek_keyword("U") || peek_keyword("R"))) {
            bool until = next().text == "U";
            Formula rhs = parse_until(true);
            return until ? Formula::U(lhs, rhs) : Formula::R(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Not: next(); return Formula::Not(parse_unary());
        case Tok::LParen: {
            next();
            Formula f = parse_expr(true);
            expect(Tok::RParen, "')'");
            return f;
        }
        case Tok::SetAtom: {
            Token tok = next();
            return Formula::set_atom(tok.text, tok.states);
        }
        case Tok::Ident: {
            if (t.text == "true") return next(), Formula::truth();
            if (t.text == "false") return next(), Formula::falsity();
            if (t.text == "forall" || t.text == "exists")
                throw ParseError("quantifier not at root", t.pos);
            return Formula::prop(next().text);
        }
        case Tok::Keyword: return parse_keyword();
        case Tok::End: throw ParseError("unexpected end of input", t.pos);
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
    }

    Formula parse_keyword() {
        Token t = next();
        const std::string& w = t.text;
        if (w == "X") return Formula::X(parse_unary());
        if (w == "F") return Formula::F(parse_unary());
        if (w == "G") return Formula::G(parse_unary());
        if (w.size() == 2 && (w[0] == 'A' || w[0] == 'E') &&
            (w[1] == 'X' || w[1] == 'F' || w[1] == 'G')) {
            Formula body = parse_unary();
            Formula path = w[1] == 'X' ? Formula::X(body) : w[1] == 'F' ? Formula::F(body) : Formula::G(body);
            return w[0] == 'A' ? Formula::A(path) : Formula::E(path);
        }
        if (w == "A" || w == "E") {
            Formula path;
            if (peek().kind == Tok::LBrack) {
                next();
                Formula l = parse_expr(false);
                if (!(peek_keyword("U") || peek_keyword("R")))
                    throw ParseError("expected 'U' or 'R' inside brackets", peek().pos);
                bool until = next().text == "U";
                Formula r = parse_expr(false);
                expect(Tok::RBrack, "']'");
                path = until ? Formula::U(l, r) : Formula::R(l, r);
            } else if (peek().kind == Tok::LParen) {
                next();
                path = parse_expr(true);
                expect(Tok::RParen, "')'");
            } else {
                throw ParseError("expected '(' or '[' after path quantifier", peek().pos);
            }
            return w == "A" ? Formula::A(path) : Formula::E(path);
        }
        throw ParseError("unknown operator '" + w + "'", t.pos);
    }
};

} // namespace

Formula parse_formula(std::string_view text) {
    Parser p(lex(text));
    return p.parse_top();
}

} // namespace vacmc
