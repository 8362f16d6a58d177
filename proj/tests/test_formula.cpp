#include "oracles.hpp"

#include "ramsey/embedding.hpp"
#include "ramsey/error.hpp"
#include "ramsey/formula.hpp"

#include <doctest.h>

using namespace ramsey;

namespace {

const Signature digraph{{"E", 2}, {"F", 2}};

Formula random_formula(std::mt19937 & rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
    auto var = [&] { return rng() % 2 ? Var::x : Var::y; };
    switch (pick(rng)) {
    case 0:
        return Formula::atom(rng() % 2 ? "E" : "F", var(), var());
    case 1:
        return Formula::equal(var(), var());
    case 2:
        return Formula::negation(random_formula(rng, depth - 1));
    case 3:
        return Formula::conjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default:
        return Formula::disjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    }
}

} // namespace

TEST_SUITE("formula")
{
    TEST_CASE("parsing")
    {
        auto f = parse_formula("E(x,y) & !E(y,x)", digraph);
        CHECK(f == Formula::conjunction(Formula::atom("E", Var::x, Var::y),
                                        Formula::negation(Formula::atom("E", Var::y, Var::x))));
        CHECK(parse_formula(" x = y ", digraph) == Formula::equal(Var::x, Var::y));
        CHECK(parse_formula("E(x,y) | F(x,y) & x=y", digraph) ==
              Formula::disjunction(Formula::atom("E", Var::x, Var::y),
                                   Formula::conjunction(Formula::atom("F", Var::x, Var::y),
                                                        Formula::equal(Var::x, Var::y))));
    }

    TEST_CASE("syntax errors carry a position")
    {
        CHECK_THROWS_AS(parse_formula("E(x,y,z)", digraph), SyntaxError);
        CHECK_THROWS_AS(parse_formula("E(x,z)", digraph), SyntaxError);
        CHECK_THROWS_AS(parse_formula("G(x,y)", digraph), SyntaxError);
        CHECK_THROWS_AS(parse_formula("E(x,y) &", digraph), SyntaxError);
        CHECK_THROWS_AS(parse_formula("(x=y", digraph), SyntaxError);
        CHECK_THROWS_AS(parse_formula("U(x,x)", Signature{{"U", 1}}), SyntaxError);
        try {
            parse_formula("x=y & ?", digraph);
            FAIL("expected a syntax error");
        } catch (const SyntaxError & e) {
            CHECK(e.position() == 6);
        }
    }

    TEST_CASE("render round trip")
    {
        std::mt19937 rng(29);
        for (int i = 0; i < 300; ++i) {
            auto f = random_formula(rng, 4);
            CHECK(parse_formula(render_formula(f), digraph) == f);
        }
        CHECK(render_formula(parse_formula("(E(x,y) | F(x,y)) & !(x=y)", digraph)) == "(E(x,y) | F(x,y)) & !x=y");
    }

    TEST_CASE("evaluation")
    {
        auto c3 = oracle::chain(3);
        Signature lo{{"<", 2}};
        CHECK(evaluate(parse_formula("<(x,y)", lo), c3, 0, 2));
        CHECK(evaluate(parse_formula("x=y", lo), c3, 1, 1));
        CHECK_FALSE(evaluate(parse_formula("x=y", lo), c3, 0, 1));
        auto incomparable = parse_formula("!<(x,y) & !<(y,x) & !(x=y)", lo);
        for (Element a = 0; a < 3; ++a)
            for (Element b = 0; b < 3; ++b)
                CHECK_FALSE(evaluate(incomparable, c3, a, b));
        CHECK_THROWS_AS(evaluate(incomparable, c3, 0, 3), PreconditionError);
    }

    TEST_CASE("expansion")
    {
        Signature lo{{"<", 2}};
        auto c3 = oracle::chain(3);
        auto twice = expand_by_formula(c3, parse_formula("<(x,y)", lo), "<2");
        CHECK(twice.relation("<2") == c3.relation("<"));
        auto diagonal = expand_by_formula(c3, parse_formula("x=y", lo), "D");
        CHECK(diagonal.relation("D").tuples() == std::vector<Tuple>{{0, 0}, {1, 1}, {2, 2}});
        CHECK_THROWS_AS(expand_by_formula(c3, parse_formula("x=y", lo), "<"), PreconditionError);

        auto perm = oracle::permutation({2, 0, 1});
        auto e = expand_by_formula(perm, parse_formula("a.<(x,y)", perm.signature()), "o");
        CHECK(is_strict_linear_order(e, "o"));
    }

    TEST_CASE("strict linear orders")
    {
        CHECK(is_strict_linear_order(oracle::chain(3), "<"));
        CHECK_FALSE(is_strict_linear_order(oracle::complete_graph(2), "E"));
        CHECK(is_strict_linear_order(Structure(Signature{{"<", 2}}, 1), "<"));
        CHECK_FALSE(is_strict_linear_order(Structure(Signature{{"<", 2}}, 2), "<"));
        CHECK_THROWS_AS(is_strict_linear_order(oracle::chain(2), "E"), PreconditionError);
        CHECK_THROWS_AS(is_strict_linear_order(Structure(Signature{{"U", 1}}, 2), "U"), PreconditionError);
    }

    TEST_CASE("embeddings preserve quantifier-free formulas")
    {
        std::mt19937 rng(31);
        std::size_t checked = 0;
        for (int round = 0; round < 80; ++round) {
            auto a = oracle::random_structure(rng, digraph, 1 + round % 3, 0.4);
            auto c = oracle::random_structure(rng, digraph, 4, 0.4);
            // Plant a copy of a in c so that embeddings exist.
            std::vector<std::vector<Tuple>> rels;
            for (std::size_t s = 0; s < digraph.size(); ++s) {
                std::vector<Tuple> rel;
                for (const auto & t : c.relation(s).tuples())
                    if (t[0] >= a.size() || t[1] >= a.size())
                        rel.push_back(t);
                for (const auto & t : a.relation(s).tuples())
                    rel.push_back(t);
                rels.push_back(rel);
            }
            c = Structure(digraph, 4, rels);
            auto phi = random_formula(rng, 3);
            auto embs = enumerate_embeddings(a, c);
            CHECK_FALSE(embs.empty());
            for (const auto & e : embs)
                for (Element x = 0; x < a.size(); ++x)
                    for (Element y = 0; y < a.size(); ++y) {
                        CHECK(evaluate(phi, a, x, y) == evaluate(phi, c, e(x), e(y)));
                        ++checked;
                    }
            auto a2 = expand_by_formula(a, phi, "phi");
            auto c2 = expand_by_formula(c, phi, "phi");
            CHECK(enumerate_embeddings(a2, c2) == embs);
        }
        CHECK(checked > 0);
    }
}
