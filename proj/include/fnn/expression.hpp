#pragma once

// Recursive-descent parser for user-supplied target functions.
// Grammar: real literals, x, pi, + - * / ^ (right associative), parentheses,
// and the functions sin, cos, abs, exp. Standard precedence.

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "fnn/stats.hpp"

namespace fnn {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at offset " + std::to_string(offset)),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class Expression {
public:
    virtual ~Expression() = default;
    virtual double evaluate(double x) const = 0;
    virtual std::string print() const = 0;
};

using ExpressionPtr = std::shared_ptr<const Expression>;

namespace detail {

struct Constant final : Expression {
    double value;
    explicit Constant(double v) : value(v) {}
    double evaluate(double) const override { return value; }
    std::string print() const override {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        return buf;
    }
};

struct Variable final : Expression {
    double evaluate(double x) const override { return x; }
    std::string print() const override { return "x"; }
};

struct Binary final : Expression {
    char op;
    ExpressionPtr lhs, rhs;
    Binary(char o, ExpressionPtr l, ExpressionPtr r)
        : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
    double evaluate(double x) const override {
        const double a = lhs->evaluate(x);
        const double b = rhs->evaluate(x);
        switch (op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            default: return std::pow(a, b);
        }
    }
    std::string print() const override {
        return "(" + lhs->print() + op + rhs->print() + ")";
    }
};

struct Negate final : Expression {
    ExpressionPtr arg;
    explicit Negate(ExpressionPtr a) : arg(std::move(a)) {}
    double evaluate(double x) const override { return -arg->evaluate(x); }
    std::string print() const override { return "(-" + arg->print() + ")"; }
};

struct Call final : Expression {
    std::string name;
    ExpressionPtr arg;
    Call(std::string n, ExpressionPtr a) : name(std::move(n)), arg(std::move(a)) {}
    double evaluate(double x) const override {
        const double v = arg->evaluate(x);
        if (name == "sin") return std::sin(v);
        if (name == "cos") return std::cos(v);
        if (name == "abs") return std::fabs(v);
        return std::exp(v);
    }
    std::string print() const override { return name + "(" + arg->print() + ")"; }
};

class Parser {
public:
    explicit Parser(std::string text) : text_(std::move(text)) {}

    ExpressionPtr parse() {
        auto e = sum();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string text_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExpressionPtr sum() {
        auto lhs = product();
        for (;;) {
            if (accept('+'))
                lhs = std::make_shared<Binary>('+', lhs, product());
            else if (accept('-'))
                lhs = std::make_shared<Binary>('-', lhs, product());
            else
                return lhs;
        }
    }

    ExpressionPtr product() {
        auto lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = std::make_shared<Binary>('*', lhs, unary());
            else if (accept('/'))
                lhs = std::make_shared<Binary>('/', lhs, unary());
            else
                return lhs;
        }
    }

    ExpressionPtr unary() {
        if (accept('-')) return std::make_shared<Negate>(unary());
        if (accept('+')) return unary();
        return power();
    }

    // '^' binds tighter than unary minus and associates to the right.
    ExpressionPtr power() {
        auto base = primary();
        if (accept('^')) return std::make_shared<Binary>('^', base, unary());
        return base;
    }

    ExpressionPtr primary() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExpressionPtr number() {
        const std::size_t start = pos_;
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(text_.substr(start), &consumed);
        } catch (const std::exception&) {
            throw ParseError("invalid number", start);
        }
        pos_ = start + consumed;
        return std::make_shared<Constant>(value);
    }

    ExpressionPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "x") return std::make_shared<Variable>();
        if (name == "pi") return std::make_shared<Constant>(kPi);
        if (name == "sin" || name == "cos" || name == "abs" || name == "exp") {
            if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
            auto arg = sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return std::make_shared<Call>(name, arg);
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

}  // namespace detail

inline ExpressionPtr parse_expression(const std::string& text) {
    return detail::Parser(text).parse();
}

}  // namespace fnn
