#include "oracles.hpp"

#include "ramsey/arrow.hpp"
#include "ramsey/class_dsl.hpp"
#include "ramsey/embedding.hpp"
#include "ramsey/error.hpp"

#include <doctest.h>

using namespace ramsey;

namespace {

ArrowCertificate arrow(const Structure & a, const Structure & b, const Structure & c, std::size_t r,
                       bool canonical = false)
{
    return check_arrow(make_arrow_instance(a, b, c, r), {canonical});
}

// Lexicographically least bad colouring by plain enumeration.
std::optional<Colouring> least_bad_colouring(const ArrowInstance & inst)
{
    auto sets = copy_index_sets(inst);
    const std::size_t v = count_embeddings(inst.a, inst.c);
    Colouring colour(v, 0);
    while (true) {
        bool bad = std::all_of(sets.begin(), sets.end(), [&](const std::vector<std::size_t> & s) {
            return std::any_of(s.begin(), s.end(), [&](std::size_t x) { return colour[x] != colour[s.front()]; });
        });
        if (bad)
            return colour;
        // Increment as a base-r number, most significant digit first.
        std::size_t i = v;
        while (i > 0 && ++colour[i - 1] == inst.colours)
            colour[--i] = 0;
        if (i == 0)
            return std::nullopt;
    }
}

} // namespace

TEST_SUITE("arrow")
{
    TEST_CASE("R(3,3) = 6 on chains")
    {
        auto six = arrow(oracle::chain(2), oracle::chain(3), oracle::chain(6), 2);
        CHECK(six.holds());
        CHECK(six.exhausted);
        auto five = arrow(oracle::chain(2), oracle::chain(3), oracle::chain(5), 2);
        REQUIRE_FALSE(five.holds());
        CHECK(five.colouring.size() == 10);
        auto inst = make_arrow_instance(oracle::chain(2), oracle::chain(3), oracle::chain(5), 2);
        CHECK(validate_bad_colouring(inst, five.colouring));
        CHECK_FALSE(find_mono_copy(inst, five.colouring).has_value());
        // The brute-force oracle over all 2^10 and 2^15 colourings.
        CHECK(oracle::arrow(oracle::chain(2), oracle::chain(3), oracle::chain(6), 2));
        CHECK_FALSE(oracle::arrow(oracle::chain(2), oracle::chain(3), oracle::chain(5), 2));
    }

    TEST_CASE("ordered complete graphs")
    {
        auto k2 = oracle::ordered_complete_graph(2);
        auto k3 = oracle::ordered_complete_graph(3);
        CHECK(arrow(k2, k3, oracle::ordered_complete_graph(6), 2).holds());
        auto five = arrow(k2, k3, oracle::ordered_complete_graph(5), 2);
        CHECK_FALSE(five.holds());
        CHECK(validate_bad_colouring(make_arrow_instance(k2, k3, oracle::ordered_complete_graph(5), 2), five.colouring));
        CHECK(oracle::arrow(k2, k3, oracle::ordered_complete_graph(6), 2));
        CHECK_FALSE(oracle::arrow(k2, k3, oracle::ordered_complete_graph(5), 2));
    }

    TEST_CASE("agrees with the exhaustive oracle on small chain and graph instances")
    {
        for (std::size_t a = 1; a <= 2; ++a)
            for (std::size_t b = a; b <= 3; ++b)
                for (std::size_t c = b; c <= 6; ++c)
                    for (std::size_t r = 1; r <= 3; ++r) {
                        if (oracle::binomial(c, a) > 15 || (r == 3 && oracle::binomial(c, a) > 10))
                            continue;
                        auto result = arrow(oracle::chain(a), oracle::chain(b), oracle::chain(c), r);
                        CHECK_MESSAGE(result.holds() == oracle::arrow(oracle::chain(a), oracle::chain(b),
                                                                      oracle::chain(c), r),
                                      a << " " << b << " " << c << " " << r);
                    }
        // Unordered graphs: automorphisms make S_f sets with repeats.
        auto k2 = oracle::complete_graph(2);
        auto p3 = oracle::graph(3, {{0, 1}, {1, 2}});
        for (std::size_t n = 3; n <= 5; ++n) {
            auto c = oracle::complete_graph(n);
            CHECK(arrow(k2, oracle::complete_graph(3), c, 2).holds() == oracle::arrow(k2, oracle::complete_graph(3), c, 2));
            auto pn = oracle::graph(n, {{0, 1}, {1, 2}, {2, 0}});
            CHECK(arrow(k2, p3, pn, 2).holds() == oracle::arrow(k2, p3, pn, 2));
        }
    }

    TEST_CASE("every fails certificate re-validates")
    {
        std::mt19937 rng(59);
        std::size_t fails = 0;
        for (int round = 0; round < 60; ++round) {
            auto members = enumerate_members(ClassSpec::graph(), 3 + round % 3);
            const auto & c = members[rng() % members.size()];
            auto inst = make_arrow_instance(oracle::complete_graph(2), oracle::graph(3, {{0, 1}, {1, 2}}), c,
                                            2 + round % 2);
            for (bool canonical : {false, true}) {
                auto cert = check_arrow(inst, {canonical});
                if (!cert.holds()) {
                    ++fails;
                    CHECK(validate_bad_colouring(inst, cert.colouring));
                    CHECK_FALSE(find_mono_copy(inst, cert.colouring).has_value());
                }
            }
        }
        CHECK(fails > 0);
    }

    TEST_CASE("canonical certificate is the lexicographically least bad colouring")
    {
        for (std::size_t c = 3; c <= 5; ++c)
            for (std::size_t r = 2; r <= 3; ++r) {
                auto inst = make_arrow_instance(oracle::chain(2), oracle::chain(3), oracle::chain(c), r);
                auto cert = check_arrow(inst, {true});
                auto expected = least_bad_colouring(inst);
                REQUIRE(expected.has_value());
                CHECK(cert.colouring == *expected);
            }
        auto k = make_arrow_instance(oracle::ordered_complete_graph(2), oracle::ordered_complete_graph(3),
                                     oracle::ordered_complete_graph(4), 2);
        CHECK(check_arrow(k, {true}).colouring == *least_bad_colouring(k));
    }

    TEST_CASE("default certificate is deterministic")
    {
        auto inst = make_arrow_instance(oracle::chain(2), oracle::chain(4), oracle::chain(8), 2);
        auto first = check_arrow(inst);
        CHECK_FALSE(first.holds());
        CHECK(check_arrow(inst).colouring == first.colouring);
        CHECK(validate_bad_colouring(inst, first.colouring));
    }

    TEST_CASE("monotone in C, anti-monotone in r")
    {
        for (std::size_t a = 1; a <= 2; ++a)
            for (std::size_t b = a; b <= 3; ++b)
                for (std::size_t r = 1; r <= 3; ++r)
                    for (std::size_t c = b; c < 7; ++c) {
                        bool here = arrow(oracle::chain(a), oracle::chain(b), oracle::chain(c), r).holds();
                        if (!here)
                            continue;
                        // C embeds into every longer chain.
                        CHECK(arrow(oracle::chain(a), oracle::chain(b), oracle::chain(c + 1), r).holds());
                        for (std::size_t fewer = 1; fewer < r; ++fewer)
                            CHECK(arrow(oracle::chain(a), oracle::chain(b), oracle::chain(c), fewer).holds());
                    }
    }

    TEST_CASE("one colour, self arrows and empty conventions")
    {
        auto k3 = oracle::complete_graph(3);
        auto p3 = oracle::graph(3, {{0, 1}, {1, 2}});
        CHECK(arrow(oracle::complete_graph(2), k3, oracle::complete_graph(4), 1).holds());
        for (std::size_t r = 1; r <= 4; ++r) {
            CHECK(arrow(oracle::chain(3), oracle::chain(3), oracle::chain(3), r).holds());
            CHECK(arrow(oracle::ordered_complete_graph(2), oracle::ordered_complete_graph(2),
                        oracle::ordered_complete_graph(2), r)
                      .holds());
        }
        // No copy of B: fails, with a colouring of every A-embedding.
        auto none = arrow(oracle::complete_graph(2), k3, p3, 2);
        CHECK_FALSE(none.holds());
        CHECK(none.colouring.size() == 4);
        // A does not embed into B but B embeds into C: vacuously constant.
        CHECK(arrow(oracle::graph(2, {}), k3, oracle::complete_graph(4), 2).holds());
        // Size-0 edge cases.
        Structure empty(Signature{{"<", 2}}, 0);
        CHECK(arrow(empty, oracle::chain(2), oracle::chain(2), 3).holds());
        CHECK_THROWS_AS(make_arrow_instance(oracle::chain(2), oracle::chain(2), oracle::chain(2), 0), PreconditionError);
        CHECK_THROWS_AS(make_arrow_instance(oracle::chain(2), k3, oracle::chain(2), 2), PreconditionError);
    }

    TEST_CASE("monochromatic copies")
    {
        auto inst = make_arrow_instance(oracle::chain(2), oracle::chain(3), oracle::chain(6), 2);
        auto pairs = enumerate_embeddings(inst.a, inst.c);
        Colouring constant(pairs.size(), 1);
        auto first = find_mono_copy(inst, constant);
        REQUIRE(first.has_value());
        CHECK(first->map() == std::vector<Element>{0, 1, 2});
        // Colour pairs by the parity of their first element.
        Colouring parity;
        for (const auto & e : pairs)
            parity.push_back(e(0) % 2);
        auto mono = find_mono_copy(inst, parity);
        REQUIRE(mono.has_value());
        auto colour_of = [&](Element x, Element y) { return parity[static_cast<std::size_t>(
                                                         std::find(pairs.begin(), pairs.end(), Embedding({x, y})) -
                                                         pairs.begin())]; };
        auto f = mono->map();
        CHECK(colour_of(f[0], f[1]) == colour_of(f[0], f[2]));
        CHECK(colour_of(f[0], f[2]) == colour_of(f[1], f[2]));
        CHECK_THROWS_AS(find_mono_copy(inst, Colouring(3, 0)), PreconditionError);
        CHECK_THROWS_AS(find_mono_copy(inst, Colouring(pairs.size(), 2)), PreconditionError);
    }

    TEST_CASE("witness search")
    {
        auto lo = ClassSpec::linear_order();
        auto six = search_witness(lo, oracle::chain(2), oracle::chain(3), 2, 8);
        REQUIRE(six.has_value());
        CHECK(*six == oracle::chain(6));
        CHECK_FALSE(search_witness(lo, oracle::chain(2), oracle::chain(4), 2, 8).has_value());
        auto ordered = search_witness(parse_class_spec("wedge(LO,G)"), oracle::ordered_complete_graph(2),
                                      oracle::ordered_complete_graph(3), 2, 6);
        REQUIRE(ordered.has_value());
        CHECK(*ordered == oracle::ordered_complete_graph(6));
        CHECK_THROWS_AS(search_witness(lo, oracle::chain(2), oracle::chain(3), 2, 2), PreconditionError);
        Structure not_order(Signature{{"<", 2}}, 2);
        CHECK_THROWS_AS(search_witness(lo, not_order, oracle::chain(3), 2, 6), PreconditionError);
    }

    TEST_CASE("transfer through a definable order")
    {
        Signature lo{{"<", 2}};
        auto report = transfer_check(oracle::chain(2), oracle::chain(3), oracle::chain(5), parse_formula("<(x,y)", lo),
                                     "o", 2);
        CHECK(report.agree());
        CHECK(report.embeddings_equal);
        CHECK(report.plain == ArrowVerdict::fails);

        auto perm_sig = oracle::permutation({0}).signature();
        auto p2 = oracle::permutation({1, 0});
        auto p3 = oracle::permutation({2, 0, 1});
        for (const auto & c : enumerate_members(ClassSpec::permutations(), 4)) {
            auto r = transfer_check(p2, p3, c, parse_formula("a.<(x,y)", perm_sig), "o", 2);
            CHECK(r.agree());
            CHECK(r.embeddings_equal);
        }
        auto g = oracle::graph(3, {{0, 1}});
        CHECK_THROWS_AS(transfer_check(g, g, g, parse_formula("E(x,y)", g.signature()), "o", 2), PreconditionError);
    }
}
