#include "kcp/parser.hpp"

#include <algorithm>
#include <cctype>

namespace kcp {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    int line, column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Token::Kind::End, "", line, col};
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                advance();
            return {Token::Kind::Number, std::string(text_.substr(start, pos_ - start)), line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                advance();
            return {Token::Kind::Ident, std::string(text_.substr(start, pos_ - start)), line, col};
        }
        advance();
        switch (c) {
            case '+': return {Token::Kind::Plus, "+", line, col};
            case '-': return {Token::Kind::Minus, "-", line, col};
            case '*': return {Token::Kind::Star, "*", line, col};
            case '/': return {Token::Kind::Slash, "/", line, col};
            case '^': return {Token::Kind::Caret, "^", line, col};
            case '(': return {Token::Kind::LParen, "(", line, col};
            case ')': return {Token::Kind::RParen, ")", line, col};
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

AstPtr make(AstNode n) { return std::make_shared<const AstNode>(std::move(n)); }

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    AstPtr parse_all() {
        AstPtr e = expr();
        expect(Token::Kind::End, "end of input");
        return e;
    }

private:
    void shift() { tok_ = lexer_.next(); }

    void expect(Token::Kind k, const char* what) {
        if (tok_.kind != k)
            throw SyntaxError(std::string("expected ") + what + ", found '" +
                                  (tok_.kind == Token::Kind::End ? "<end>" : tok_.text) + "'",
                              tok_.line, tok_.column);
    }

    AstPtr expr() {
        AstPtr e = term();
        while (tok_.kind == Token::Kind::Plus || tok_.kind == Token::Kind::Minus) {
            bool add = tok_.kind == Token::Kind::Plus;
            shift();
            AstPtr rhs = term();
            e = make({add ? AstNode::Kind::Add : AstNode::Kind::Sub, {}, {}, e, rhs, 0});
        }
        return e;
    }

    AstPtr term() {
        AstPtr e = factor();
        while (tok_.kind == Token::Kind::Star || tok_.kind == Token::Kind::Slash) {
            bool mul = tok_.kind == Token::Kind::Star;
            shift();
            AstPtr rhs = factor();
            e = make({mul ? AstNode::Kind::Mul : AstNode::Kind::Div, {}, {}, e, rhs, 0});
        }
        return e;
    }

    AstPtr factor() {
        if (tok_.kind == Token::Kind::Minus) {
            shift();
            AstPtr inner = factor();
            return make({AstNode::Kind::Neg, {}, {}, inner, nullptr, 0});
        }
        return power();
    }

    AstPtr power() {
        AstPtr b = base();
        if (tok_.kind == Token::Kind::Caret) {
            shift();
            bool neg = false;
            if (tok_.kind == Token::Kind::Minus) {
                neg = true;
                shift();
            }
            expect(Token::Kind::Number, "integer exponent");
            long e = std::stol(tok_.text);
            shift();
            return make({AstNode::Kind::Pow, {}, {}, b, nullptr, neg ? -e : e});
        }
        return b;
    }

    AstPtr base() {
        switch (tok_.kind) {
            case Token::Kind::Number: {
                Scalar v = scalar_from_string(tok_.text);
                shift();
                return make({AstNode::Kind::Number, std::move(v), {}, nullptr, nullptr, 0});
            }
            case Token::Kind::Ident: {
                std::string name = tok_.text;
                shift();
                if (name == "sqrt") {
                    expect(Token::Kind::LParen, "'(' after sqrt");
                    shift();
                    AstPtr arg = expr();
                    expect(Token::Kind::RParen, "')'");
                    shift();
                    return make({AstNode::Kind::Sqrt, {}, {}, arg, nullptr, 0});
                }
                return make({AstNode::Kind::Symbol, {}, std::move(name), nullptr, nullptr, 0});
            }
            case Token::Kind::LParen: {
                shift();
                AstPtr e = expr();
                expect(Token::Kind::RParen, "')'");
                shift();
                return e;
            }
            default:
                throw SyntaxError("expected a number, symbol or '('", tok_.line, tok_.column);
        }
    }

    Lexer lexer_;
    Token tok_;
};

const RationalForm& s_form() {
    static const RationalForm s = RationalForm::variable(X) * RationalForm::variable(X) +
                                  RationalForm::variable(Y) * RationalForm::variable(Y) +
                                  RationalForm::variable(Z) * RationalForm::variable(Z);
    return s;
}

} // namespace

AstPtr parse(std::string_view text) { return Parser(text).parse_all(); }

RationalForm lower(const AstPtr& ast, const std::vector<std::string>& params,
                   const SymbolTable& env) {
    switch (ast->kind) {
        case AstNode::Kind::Number:
            return RationalForm::constant(ast->number);
        case AstNode::Kind::Symbol: {
            if (auto v = var_from_name(ast->symbol)) {
                if (is_param_var(*v) &&
                    std::find(params.begin(), params.end(), ast->symbol) == params.end())
                    throw UnknownSymbol("undeclared parameter: " + ast->symbol);
                return RationalForm::variable(*v);
            }
            if (auto it = env.find(ast->symbol); it != env.end()) return it->second;
            throw UnknownSymbol("unknown symbol: " + ast->symbol);
        }
        case AstNode::Kind::Neg:
            return -lower(ast->a, params, env);
        case AstNode::Kind::Add:
            return lower(ast->a, params, env) + lower(ast->b, params, env);
        case AstNode::Kind::Sub:
            return lower(ast->a, params, env) - lower(ast->b, params, env);
        case AstNode::Kind::Mul:
            return lower(ast->a, params, env) * lower(ast->b, params, env);
        case AstNode::Kind::Div:
            return div(lower(ast->a, params, env), lower(ast->b, params, env));
        case AstNode::Kind::Pow:
            return pow(lower(ast->a, params, env), ast->exponent);
        case AstNode::Kind::Sqrt: {
            RationalForm arg = lower(ast->a, params, env);
            if (arg != s_form())
                throw InvalidRadical("sqrt is only defined for x^2+y^2+z^2");
            return RationalForm::variable(R);
        }
    }
    throw Error("corrupt AST");
}

} // namespace kcp
