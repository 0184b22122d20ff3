#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fkmm {

// Names an expression may refer to. Coordinates and parameters are resolved to slots at parse
// time, so evaluation only needs two flat arrays.
struct SymbolTable {
    std::vector<std::string> coordinates;
    std::vector<std::string> parameters;

    int coordinate_slot(const std::string& name) const;
    int parameter_slot(const std::string& name) const;
};

class Expression {
public:
    enum class Op { Number, Coordinate, Parameter, Pi, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos };

    Expression();  // the literal 0

    static Expression number(double v);
    static Expression coordinate(int slot, std::string name);
    static Expression parameter(int slot, std::string name);
    static Expression pi();
    static Expression unary(Op op, Expression a);
    static Expression binary(Op op, Expression a, Expression b);
    static Expression power(Expression base, int exponent);

    Op op() const;
    double value() const;  // Number only
    int slot() const;      // Coordinate / Parameter
    int exponent() const;  // Pow only
    const std::string& name() const;
    const std::vector<Expression>& args() const;

    double eval(std::span<const double> coords, std::span<const double> params) const;
    // Replaces coordinate slot i by replacements[i].
    Expression substitute(const std::vector<Expression>& replacements) const;
    // True for the literal 0 and anything that folds to it without looking at symbols, e.g. "0*k1".
    bool is_zero() const;
    bool uses_coordinates() const;

    // Canonical text with minimal parentheses; parsing it back gives the same tree.
    std::string str() const;
    bool operator==(const Expression& o) const;

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Grammar:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' '-'? integer)?
//   atom    := number | name | name '(' sum (',' sum)* ')' | '(' sum ')'
// `line` and `column` locate the first character of `text` within a larger document so errors
// point at the right place.
Expression parse_expression(const std::string& text, const SymbolTable& symbols, int line = 1, int column = 1);

// Shortest decimal text that reads back to exactly v.
std::string format_number(double v);

}  // namespace fkmm
