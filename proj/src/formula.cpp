#include "ramsey/formula.hpp"

#include "ramsey/error.hpp"

#include <cctype>

namespace ramsey {

Formula Formula::atom(std::string symbol, Var first, Var second)
{
    return Formula(std::make_shared<Node>(Node{Kind::atom, std::move(symbol), first, second, nullptr, nullptr}));
}

Formula Formula::equal(Var first, Var second)
{
    return Formula(std::make_shared<Node>(Node{Kind::equal, {}, first, second, nullptr, nullptr}));
}

Formula Formula::negation(Formula operand)
{
    return Formula(std::make_shared<Node>(
        Node{Kind::negation, {}, Var::x, Var::x, std::make_shared<const Formula>(std::move(operand)), nullptr}));
}

Formula Formula::conjunction(Formula left, Formula right)
{
    return Formula(std::make_shared<Node>(Node{Kind::conjunction, {}, Var::x, Var::x,
                                               std::make_shared<const Formula>(std::move(left)),
                                               std::make_shared<const Formula>(std::move(right))}));
}

Formula Formula::disjunction(Formula left, Formula right)
{
    return Formula(std::make_shared<Node>(Node{Kind::disjunction, {}, Var::x, Var::x,
                                               std::make_shared<const Formula>(std::move(left)),
                                               std::make_shared<const Formula>(std::move(right))}));
}

bool operator==(const Formula & a, const Formula & b)
{
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Formula::Kind::atom:
        return a.symbol() == b.symbol() && a.first() == b.first() && a.second() == b.second();
    case Formula::Kind::equal:
        return a.first() == b.first() && a.second() == b.second();
    case Formula::Kind::negation:
        return a.operand() == b.operand();
    default:
        return a.left() == b.left() && a.right() == b.right();
    }
}

namespace {

class FormulaParser
{
public:
    FormulaParser(std::string_view text, const Signature & sig) : text_(text), sig_(sig) {}

    Formula parse()
    {
        auto f = disjunction();
        skip_space();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return f;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    Formula disjunction()
    {
        auto f = conjunction();
        while (accept('|'))
            f = Formula::disjunction(std::move(f), conjunction());
        return f;
    }

    Formula conjunction()
    {
        auto f = unary();
        while (accept('&'))
            f = Formula::conjunction(std::move(f), unary());
        return f;
    }

    Formula unary()
    {
        if (accept('!'))
            return Formula::negation(unary());
        if (accept('(')) {
            auto f = disjunction();
            expect(')');
            return f;
        }
        return atom();
    }

    std::string name()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_valid_symbol_name(text_.substr(pos_, 1)))
            ++pos_;
        if (start == pos_)
            throw SyntaxError(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                  : std::string("unexpected end of formula"),
                              pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    Var variable()
    {
        skip_space();
        std::size_t at = pos_;
        auto v = name();
        if (v == "x")
            return Var::x;
        if (v == "y")
            return Var::y;
        throw SyntaxError("expected variable x or y, got '" + v + "'", at);
    }

    Formula atom()
    {
        skip_space();
        std::size_t at = pos_;
        auto head = name();
        if (accept('(')) {
            auto idx = sig_.index_of(head);
            if (!idx)
                throw SyntaxError("unknown symbol '" + head + "'", at);
            if (sig_[*idx].arity != 2)
                throw SyntaxError("symbol '" + head + "' is not binary", at);
            Var a = variable();
            expect(',');
            Var b = variable();
            expect(')');
            return Formula::atom(std::move(head), a, b);
        }
        if ((head == "x" || head == "y") && accept('=')) {
            Var b = variable();
            return Formula::equal(head == "x" ? Var::x : Var::y, b);
        }
        throw SyntaxError("expected '(' or '=' after '" + head + "'", pos_);
    }

    std::string_view text_;
    const Signature & sig_;
    std::size_t pos_ = 0;
};

const char * var_name(Var v)
{
    return v == Var::x ? "x" : "y";
}

int precedence(const Formula & f)
{
    switch (f.kind()) {
    case Formula::Kind::disjunction:
        return 0;
    case Formula::Kind::conjunction:
        return 1;
    default:
        return 2;
    }
}

std::string render_child(const Formula & f, int min_precedence)
{
    auto text = render_formula(f);
    return precedence(f) < min_precedence ? "(" + text + ")" : text;
}

} // namespace

Formula parse_formula(std::string_view text, const Signature & signature)
{
    return FormulaParser(text, signature).parse();
}

std::string render_formula(const Formula & f)
{
    switch (f.kind()) {
    case Formula::Kind::atom:
        return f.symbol() + "(" + var_name(f.first()) + "," + var_name(f.second()) + ")";
    case Formula::Kind::equal:
        return std::string(var_name(f.first())) + "=" + var_name(f.second());
    case Formula::Kind::negation:
        return "!" + render_child(f.operand(), 2);
    case Formula::Kind::conjunction:
        // Left-associative: a right operand of equal precedence needs parentheses.
        return render_child(f.left(), 1) + " & " + render_child(f.right(), 2);
    case Formula::Kind::disjunction:
        return render_child(f.left(), 0) + " | " + render_child(f.right(), 1);
    }
    return {};
}

namespace {

bool eval(const Formula & f, const Structure & s, Element a, Element b)
{
    auto value = [&](Var v) { return v == Var::x ? a : b; };
    switch (f.kind()) {
    case Formula::Kind::atom: {
        Element t[2] = {value(f.first()), value(f.second())};
        return s.relation(f.symbol()).contains(std::span<const Element>(t, 2));
    }
    case Formula::Kind::equal:
        return value(f.first()) == value(f.second());
    case Formula::Kind::negation:
        return !eval(f.operand(), s, a, b);
    case Formula::Kind::conjunction:
        return eval(f.left(), s, a, b) && eval(f.right(), s, a, b);
    case Formula::Kind::disjunction:
        return eval(f.left(), s, a, b) || eval(f.right(), s, a, b);
    }
    return false;
}

void check_symbols(const Formula & f, const Signature & sig)
{
    switch (f.kind()) {
    case Formula::Kind::atom: {
        auto idx = sig.index_of(f.symbol());
        if (!idx || sig[*idx].arity != 2)
            throw PreconditionError("formula symbol '" + f.symbol() + "' is not a binary symbol of the structure");
        return;
    }
    case Formula::Kind::equal:
        return;
    case Formula::Kind::negation:
        check_symbols(f.operand(), sig);
        return;
    default:
        check_symbols(f.left(), sig);
        check_symbols(f.right(), sig);
    }
}

} // namespace

bool evaluate(const Formula & f, const Structure & s, Element a, Element b)
{
    if (a >= s.size() || b >= s.size())
        throw PreconditionError("evaluate: element out of range for structure of size " + std::to_string(s.size()));
    check_symbols(f, s.signature());
    return eval(f, s, a, b);
}

Structure expand_by_formula(const Structure & s, const Formula & f, const std::string & name)
{
    if (s.signature().contains(name))
        throw PreconditionError("expand_by_formula: symbol '" + name + "' already in signature");
    check_symbols(f, s.signature());
    std::vector<Tuple> defined;
    for (Element a = 0; a < s.size(); ++a)
        for (Element b = 0; b < s.size(); ++b)
            if (eval(f, s, a, b))
                defined.push_back({a, b});
    Structure extra(Signature{{name, 2}}, s.size(), {std::move(defined)});
    return combine(s, extra);
}

bool is_strict_linear_order(const Structure & s, std::string_view name)
{
    auto idx = s.signature().index_of(name);
    if (!idx || s.signature()[*idx].arity != 2)
        throw PreconditionError("'" + std::string(name) + "' is not a binary symbol");
    const auto & rel = s.relation(*idx);
    const Element n = static_cast<Element>(s.size());
    auto lt = [&](Element a, Element b) { return rel.contains({a, b}); };
    for (Element a = 0; a < n; ++a) {
        if (lt(a, a))
            return false;
        for (Element b = 0; b < n; ++b) {
            if (a != b && !lt(a, b) && !lt(b, a))
                return false;
            if (!lt(a, b))
                continue;
            for (Element c = 0; c < n; ++c)
                if (lt(b, c) && !lt(a, c))
                    return false;
        }
    }
    return true;
}

} // namespace ramsey
