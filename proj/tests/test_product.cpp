#include "oracles.hpp"

#include "ramsey/class_dsl.hpp"
#include "ramsey/embedding.hpp"
#include "ramsey/error.hpp"
#include "ramsey/product.hpp"

#include <doctest.h>

using namespace ramsey;

namespace {

// The product straight from the definition: test every tuple of pairs.
Structure product_by_definition(const Structure & l, const Structure & r)
{
    const std::size_t n = l.size() * r.size();
    auto sig = l.signature().union_with(r.signature());
    std::vector<std::vector<Tuple>> rels;
    for (const auto & sym : sig.symbols()) {
        bool left = l.signature().contains(sym.name);
        std::vector<Tuple> rel;
        for (const auto & t : oracle::all_tuples(n, sym.arity)) {
            Tuple coords;
            for (auto x : t)
                coords.push_back(left ? x / static_cast<Element>(r.size()) : x % static_cast<Element>(r.size()));
            if ((left ? l : r).relation(sym.name).contains(coords))
                rel.push_back(t);
        }
        rels.push_back(rel);
    }
    return Structure(sig, n, rels);
}

// Every subset of the signature's names.
std::vector<std::set<std::string>> subsets(const Signature & sig)
{
    std::vector<std::set<std::string>> out;
    for (unsigned mask = 0; mask < (1u << sig.size()); ++mask) {
        std::set<std::string> s;
        for (std::size_t i = 0; i < sig.size(); ++i)
            if (mask >> i & 1)
                s.insert(sig[i].name);
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_SUITE("product")
{
    TEST_CASE("two 2-chains")
    {
        auto p = full_product(oracle::chain(2, "a.<"), oracle::chain(2, "b.<"));
        CHECK(p.size() == 4);
        CHECK(p.relation("a.<").size() == 4);
        CHECK(p.relation("b.<").size() == 4);
        for (Element x = 0; x < 4; ++x)
            for (Element y = 0; y < 4; ++y) {
                CHECK(p.relation("a.<").contains({x, y}) == (product_pair(x, 2).first < product_pair(y, 2).first));
                CHECK(p.relation("b.<").contains({x, y}) == (product_pair(x, 2).second < product_pair(y, 2).second));
            }
    }

    TEST_CASE("product with a point")
    {
        auto g = oracle::graph(3, {{0, 1}, {1, 2}});
        auto point = Structure(Signature{{"T", 2}}, 1);
        auto p = full_product(g, point);
        CHECK(p == combine(g, Structure(Signature{{"T", 2}}, 3)));
    }

    TEST_CASE("matches the definition on random factors")
    {
        std::mt19937 rng(53);
        Signature left{{"R", 2}, {"U", 1}};
        Signature right{{"S", 2}, {"T", 3}};
        for (int round = 0; round < 40; ++round) {
            auto l = oracle::random_structure(rng, left, round % 3, 0.4);
            auto r = oracle::random_structure(rng, right, 1 + round % 2, 0.4);
            auto p = full_product(l, r);
            CHECK(p.size() == l.size() * r.size());
            CHECK(p == product_by_definition(l, r));
            // |R| * |D2|^k for left symbols, symmetrically on the right.
            CHECK(p.relation("R").size() == l.relation("R").size() * r.size() * r.size());
            CHECK(p.relation("U").size() == l.relation("U").size() * r.size());
            CHECK(p.relation("S").size() == r.relation("S").size() * l.size() * l.size());
            CHECK(p.relation("T").size() == r.relation("T").size() * l.size() * l.size() * l.size());
        }
    }

    TEST_CASE("pair indexing is row-major")
    {
        for (Element a = 0; a < 3; ++a)
            for (Element b = 0; b < 4; ++b) {
                CHECK(product_index(a, b, 4) == a * 4 + b);
                CHECK(product_pair(product_index(a, b, 4), 4) == std::pair<Element, Element>{a, b});
            }
    }

    TEST_CASE("overlapping signatures are rejected")
    {
        CHECK_THROWS_AS(full_product(oracle::chain(2), oracle::chain(3)), PreconditionError);
    }

    TEST_CASE("ordered factors give a rigid product")
    {
        auto lg = parse_class_spec("wedge(LO,G)");
        auto rg = rename_symbols(lg, "r");
        for (std::size_t n1 = 1; n1 <= 4; ++n1)
            for (std::size_t n2 = 1; n2 <= 4; ++n2) {
                auto left = enumerate_members(lg, n1);
                auto right = enumerate_members(rg, n2);
                for (std::size_t i = 0; i < left.size(); i += 3)
                    for (std::size_t j = 0; j < right.size(); j += 5) {
                        auto p = full_product(left[i], right[j]);
                        CHECK(automorphisms(p).size() ==
                              automorphisms(left[i]).size() * automorphisms(right[j]).size());
                        CHECK(automorphisms(p).size() == 1);
                        if (p.size() <= 6)
                            CHECK(oracle::automorphism_count(p) == 1);
                    }
            }
    }

    TEST_CASE("diagonal check examples")
    {
        auto perm = oracle::permutation({1, 0});
        CHECK(diagonal_check(perm, {"a.<"}, {"b.<"}));
        CHECK(diagonal_check(perm, {}, {"a.<", "b.<"}));
        CHECK_THROWS_AS(diagonal_check(perm, {"a.<"}, {"a.<", "b.<"}), PreconditionError);
        CHECK_THROWS_AS(diagonal_check(perm, {"a.<"}, {}), PreconditionError);
    }

    TEST_CASE("diagonal law over wedge-class members and every partition")
    {
        for (const char * cls : {"perm", "wedge(LO,G)", "PLE", "wedge(T,rename(F(3),\"g\"))"}) {
            auto spec = parse_class_spec(cls);
            for (std::size_t n = 0; n <= 4; ++n)
                for (const auto & s : enumerate_members(spec, n))
                    for (const auto & left : subsets(s.signature())) {
                        std::set<std::string> right;
                        for (const auto & name : s.signature().names())
                            if (!left.count(name))
                                right.insert(name);
                        CHECK(diagonal_check(s, left, right));
                    }
        }
    }
}
