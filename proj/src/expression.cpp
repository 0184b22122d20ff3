#include "fkmm/expression.hpp"
#include "fkmm/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace fkmm {

struct Expression::Node {
    Op op = Op::Number;
    double value = 0;
    int slot = -1;
    int exponent = 0;
    std::string name;
    std::vector<Expression> args;
};

namespace {

int find_slot(const std::vector<std::string>& names, const std::string& s) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<int>(i);
    return -1;
}

int precedence(Expression::Op op) {
    using Op = Expression::Op;
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

}  // namespace

int SymbolTable::coordinate_slot(const std::string& name) const { return find_slot(coordinates, name); }
int SymbolTable::parameter_slot(const std::string& name) const { return find_slot(parameters, name); }

Expression::Expression() : node_(std::make_shared<Node>()) {}

Expression Expression::number(double v) {
    if (std::signbit(v)) return unary(Op::Neg, number(-v));
    auto n = std::make_shared<Node>();
    n->value = v;
    return Expression(n);
}

Expression Expression::coordinate(int slot, std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Coordinate;
    n->slot = slot;
    n->name = std::move(name);
    return Expression(n);
}

Expression Expression::parameter(int slot, std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Parameter;
    n->slot = slot;
    n->name = std::move(name);
    return Expression(n);
}

Expression Expression::pi() {
    auto n = std::make_shared<Node>();
    n->op = Op::Pi;
    n->name = "pi";
    return Expression(n);
}

Expression Expression::unary(Op op, Expression a) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = {std::move(a)};
    return Expression(n);
}

Expression Expression::binary(Op op, Expression a, Expression b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return Expression(n);
}

Expression Expression::power(Expression base, int exponent) {
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->exponent = exponent;
    n->args = {std::move(base)};
    return Expression(n);
}

Expression::Op Expression::op() const { return node_->op; }
double Expression::value() const { return node_->value; }
int Expression::slot() const { return node_->slot; }
int Expression::exponent() const { return node_->exponent; }
const std::string& Expression::name() const { return node_->name; }
const std::vector<Expression>& Expression::args() const { return node_->args; }

double Expression::eval(std::span<const double> coords, std::span<const double> params) const {
    const Node& n = *node_;
    auto arg = [&](int i) { return n.args[i].eval(coords, params); };
    switch (n.op) {
        case Op::Number: return n.value;
        case Op::Coordinate: return coords[n.slot];
        case Op::Parameter: return params[n.slot];
        case Op::Pi: return std::numbers::pi;
        case Op::Add: return arg(0) + arg(1);
        case Op::Sub: return arg(0) - arg(1);
        case Op::Mul: return arg(0) * arg(1);
        case Op::Div: return arg(0) / arg(1);
        case Op::Neg: return -arg(0);
        case Op::Pow: return std::pow(arg(0), n.exponent);
        case Op::Sin: return std::sin(arg(0));
        case Op::Cos: return std::cos(arg(0));
    }
    return 0;
}

Expression Expression::substitute(const std::vector<Expression>& replacements) const {
    if (op() == Op::Coordinate) return replacements.at(slot());
    if (args().empty()) return *this;
    auto n = std::make_shared<Node>(*node_);
    for (auto& a : n->args) a = a.substitute(replacements);
    return Expression(n);
}

bool Expression::is_zero() const {
    const auto& a = args();
    switch (op()) {
        case Op::Number: return value() == 0;
        case Op::Add:
        case Op::Sub: return a[0].is_zero() && a[1].is_zero();
        case Op::Mul: return a[0].is_zero() || a[1].is_zero();
        case Op::Div: return a[0].is_zero();
        case Op::Neg:
        case Op::Sin: return a[0].is_zero();
        case Op::Pow: return exponent() > 0 && a[0].is_zero();
        default: return false;
    }
}

bool Expression::uses_coordinates() const {
    if (op() == Op::Coordinate) return true;
    for (auto& a : args())
        if (a.uses_coordinates()) return true;
    return false;
}

std::string Expression::str() const {
    const auto& a = args();
    const int p = precedence(op());
    auto wrap = [](const Expression& e, bool parens) { return parens ? "(" + e.str() + ")" : e.str(); };
    switch (op()) {
        case Op::Number: return format_number(value());
        case Op::Coordinate:
        case Op::Parameter:
        case Op::Pi: return name();
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            static const char* sym[] = {" + ", " - ", "*", "/"};
            const char* s = sym[static_cast<int>(op()) - static_cast<int>(Op::Add)];
            return wrap(a[0], precedence(a[0].op()) < p) + s + wrap(a[1], precedence(a[1].op()) <= p);
        }
        case Op::Neg: return "-" + wrap(a[0], precedence(a[0].op()) < p);
        case Op::Pow: return wrap(a[0], precedence(a[0].op()) <= p) + "^" + std::to_string(exponent());
        case Op::Sin: return "sin(" + a[0].str() + ")";
        case Op::Cos: return "cos(" + a[0].str() + ")";
    }
    return {};
}

bool Expression::operator==(const Expression& o) const {
    if (node_ == o.node_) return true;
    const Node &x = *node_, &y = *o.node_;
    return x.op == y.op && x.value == y.value && x.slot == y.slot && x.exponent == y.exponent && x.name == y.name &&
           x.args == y.args;
}

std::string format_number(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

struct Token {
    enum Kind { End, Number, Name, Symbol } kind = End;
    std::string text;
    double number = 0;
    int pos = 0;  // 0-based offset into the expression text
};

class Parser {
public:
    Parser(const std::string& text, const SymbolTable& symbols, int line, int column)
        : text_(text), symbols_(symbols), line_(line), column_(column) {
        advance();
    }

    Expression parse() {
        if (tok_.kind == Token::End) fail(Errc::SyntaxError, "empty expression", tok_.pos);
        Expression e = sum();
        if (tok_.kind != Token::End) {
            if (tok_.text == ")") fail(Errc::SyntaxError, "unbalanced parenthesis: unmatched ')'", tok_.pos);
            fail(Errc::SyntaxError, "unexpected '" + tok_.text + "'", tok_.pos);
        }
        return e;
    }

private:
    [[noreturn]] void fail(Errc code, const std::string& what, int pos) const {
        throw ParseError(code, what, line_, column_ + pos);
    }

    bool is(const char* s) const { return tok_.kind == Token::Symbol && tok_.text == s; }

    void advance() {
        std::size_t i = pos_;
        while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
        tok_ = {};
        tok_.pos = static_cast<int>(i);
        if (i >= text_.size()) {
            pos_ = i;
            return;
        }
        const char c = text_[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0;
            auto r = std::from_chars(text_.data() + i, text_.data() + text_.size(), v);
            if (r.ec != std::errc{}) fail(Errc::SyntaxError, "malformed number", tok_.pos);
            std::size_t end = r.ptr - text_.data();
            tok_.kind = Token::Number;
            tok_.number = v;
            tok_.text = text_.substr(i, end - i);
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = i;
            while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            tok_.kind = Token::Name;
            tok_.text = text_.substr(i, end - i);
            pos_ = end;
            return;
        }
        if (std::string("+-*/^(),").find(c) != std::string::npos) {
            tok_.kind = Token::Symbol;
            tok_.text = std::string(1, c);
            pos_ = i + 1;
            return;
        }
        fail(Errc::SyntaxError, std::string("unexpected character '") + c + "'", tok_.pos);
    }

    Expression sum() {
        Expression e = product();
        while (is("+") || is("-")) {
            const auto op = is("+") ? Expression::Op::Add : Expression::Op::Sub;
            advance();
            e = Expression::binary(op, e, product());
        }
        return e;
    }

    Expression product() {
        Expression e = unary();
        while (is("*") || is("/")) {
            const auto op = is("*") ? Expression::Op::Mul : Expression::Op::Div;
            advance();
            e = Expression::binary(op, e, unary());
        }
        return e;
    }

    Expression unary() {
        if (is("-")) {
            advance();
            return Expression::unary(Expression::Op::Neg, unary());
        }
        return power();
    }

    Expression power() {
        Expression base = atom();
        if (!is("^")) return base;
        advance();
        const int at = tok_.pos;
        bool negative = false;
        if (is("-")) {
            negative = true;
            advance();
        }
        if (tok_.kind != Token::Number || tok_.text.find_first_of(".eE") != std::string::npos ||
            tok_.number > 1000)
            fail(Errc::SyntaxError, "exponent must be an integer literal", at);
        const int n = static_cast<int>(tok_.number);
        advance();
        return Expression::power(base, negative ? -n : n);
    }

    Expression atom() {
        const Token t = tok_;
        switch (t.kind) {
            case Token::End: fail(Errc::SyntaxError, "unexpected end of expression", t.pos);
            case Token::Number: advance(); return Expression::number(t.number);
            case Token::Symbol: {
                if (!is("(")) fail(Errc::SyntaxError, "unexpected '" + t.text + "'", t.pos);
                advance();
                Expression e = sum();
                expect_close(t.pos);
                return e;
            }
            case Token::Name: break;
        }
        advance();
        if (is("(")) return call(t);
        if (t.text == "sin" || t.text == "cos")
            fail(Errc::SyntaxError, "function '" + t.text + "' needs a parenthesized argument", t.pos);
        if (int s = symbols_.coordinate_slot(t.text); s >= 0) return Expression::coordinate(s, t.text);
        if (int s = symbols_.parameter_slot(t.text); s >= 0) return Expression::parameter(s, t.text);
        if (t.text == "pi") return Expression::pi();
        fail(Errc::UnknownSymbol, "unknown symbol '" + t.text + "'", t.pos);
    }

    Expression call(const Token& name) {
        if (name.text != "sin" && name.text != "cos")
            fail(Errc::UnknownSymbol, "unknown function '" + name.text + "'", name.pos);
        const int open = tok_.pos;
        advance();
        std::vector<Expression> args;
        if (!is(")")) {
            args.push_back(sum());
            while (is(",")) {
                advance();
                args.push_back(sum());
            }
        }
        expect_close(open);
        if (args.size() != 1)
            fail(Errc::ArityError,
                 "'" + name.text + "' takes 1 argument, got " + std::to_string(args.size()), name.pos);
        return Expression::unary(name.text == "sin" ? Expression::Op::Sin : Expression::Op::Cos, args[0]);
    }

    void expect_close(int open) {
        if (tok_.kind == Token::End)
            fail(Errc::SyntaxError, "unbalanced parenthesis: '(' is never closed", open);
        if (!is(")")) fail(Errc::SyntaxError, "expected ')' but found '" + tok_.text + "'", tok_.pos);
        advance();
    }

    const std::string& text_;
    const SymbolTable& symbols_;
    int line_, column_;
    std::size_t pos_ = 0;
    Token tok_;
};

}  // namespace

Expression parse_expression(const std::string& text, const SymbolTable& symbols, int line, int column) {
    return Parser(text, symbols, line, column).parse();
}

}  // namespace fkmm
