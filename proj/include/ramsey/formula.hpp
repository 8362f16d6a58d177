#pragma once

#include "ramsey/structure.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace ramsey {

enum class Var { x, y };

/// Quantifier-free formula in the two free variables x and y, built from
/// binary atoms R(u,v), equalities u=v and the connectives !, &, |.
class Formula
{
public:
    enum class Kind { atom, equal, negation, conjunction, disjunction };

    static Formula atom(std::string symbol, Var first, Var second);
    static Formula equal(Var first, Var second);
    static Formula negation(Formula operand);
    static Formula conjunction(Formula left, Formula right);
    static Formula disjunction(Formula left, Formula right);

    Kind kind() const { return node_->kind; }
    const std::string & symbol() const { return node_->symbol; }
    Var first() const { return node_->first; }
    Var second() const { return node_->second; }
    const Formula & left() const { return *node_->left; }
    const Formula & right() const { return *node_->right; }
    const Formula & operand() const { return *node_->left; }

    friend bool operator==(const Formula & a, const Formula & b);

private:
    struct Node
    {
        Kind kind;
        std::string symbol;
        Var first = Var::x;
        Var second = Var::x;
        std::shared_ptr<const Formula> left;
        std::shared_ptr<const Formula> right;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Grammar, precedence ! > & > |, whitespace insignificant:
///   formula := atom | "!" formula | formula "&" formula | formula "|" formula | "(" formula ")"
///   atom    := NAME "(" var "," var ")" | var "=" var
///   var     := "x" | "y"
/// Every NAME must be a binary symbol of `signature`. Throws SyntaxError.
Formula parse_formula(std::string_view text, const Signature & signature);

/// Minimal parenthesisation; parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula & f);

/// Truth of f in `s` with x := a, y := b.
bool evaluate(const Formula & f, const Structure & s, Element a, Element b);

/// Adds the binary symbol `name` interpreted as {(a,b) : f holds of (a,b)}.
Structure expand_by_formula(const Structure & s, const Formula & f, const std::string & name);

/// Irreflexive, transitive and total.
bool is_strict_linear_order(const Structure & s, std::string_view name);

} // namespace ramsey
