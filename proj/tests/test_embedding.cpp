#include "oracles.hpp"

#include "ramsey/canonical.hpp"
#include "ramsey/class_dsl.hpp"
#include "ramsey/embedding.hpp"
#include "ramsey/error.hpp"

#include <doctest.h>

using namespace ramsey;

namespace {

std::vector<oracle::Map> maps(const std::vector<Embedding> & all)
{
    std::vector<oracle::Map> out;
    for (const auto & e : all)
        out.push_back(e.map());
    return out;
}

} // namespace

TEST_SUITE("embeddings")
{
    TEST_CASE("small examples")
    {
        CHECK(count_embeddings(oracle::chain(2), oracle::chain(4)) == 6);
        CHECK(count_embeddings(oracle::graph(2, {}), oracle::complete_graph(3)) == 0);
        CHECK(count_embeddings(oracle::complete_graph(2), oracle::complete_graph(3)) == 6);
        CHECK(enumerate_embeddings(oracle::chain(2), oracle::chain(3)).front().map() == oracle::Map{0, 1});
        CHECK_THROWS_AS(count_embeddings(oracle::chain(2), oracle::complete_graph(3)), PreconditionError);
    }

    TEST_CASE("the empty structure embeds once everywhere")
    {
        Structure empty(Signature{{"<", 2}}, 0);
        auto all = enumerate_embeddings(empty, oracle::chain(3));
        REQUIRE(all.size() == 1);
        CHECK(all.front().size() == 0);
        CHECK(count_embeddings(empty, empty) == 1);
        CHECK(count_embeddings(oracle::chain(1), empty) == 0);
    }

    TEST_CASE("count law C(n,k) for chains")
    {
        for (std::size_t n = 1; n <= 7; ++n)
            for (std::size_t k = 1; k <= n; ++k)
                CHECK(count_embeddings(oracle::chain(k), oracle::chain(n)) == oracle::binomial(n, k));
    }

    TEST_CASE("enumeration matches brute force, in lexicographic order")
    {
        std::mt19937 rng(3);
        Signature sig{{"R", 2}, {"U", 1}, {"T", 3}};
        for (int round = 0; round < 150; ++round) {
            auto a = oracle::random_structure(rng, sig, 1 + round % 3, 0.5);
            auto c = oracle::random_structure(rng, sig, 3 + round % 3, 0.5);
            auto expected = oracle::embeddings(a, c);
            CHECK(maps(enumerate_embeddings(a, c)) == expected);
        }
        // Denser fixtures where many embeddings exist.
        for (std::size_t n = 3; n <= 6; ++n) {
            auto a = oracle::graph(3, {{0, 1}});
            auto c = oracle::graph(n + 1, {{0, 1}, {1, 2}, {2, 3}, {0, static_cast<Element>(n)}});
            CHECK(maps(enumerate_embeddings(a, c)) == oracle::embeddings(a, c));
        }
    }

    TEST_CASE("deterministic across runs")
    {
        auto c = oracle::complete_graph(5);
        auto k2 = oracle::complete_graph(2);
        CHECK(maps(enumerate_embeddings(k2, c)) == maps(enumerate_embeddings(k2, c)));
    }

    TEST_CASE("composition of embeddings is an embedding")
    {
        auto small = oracle::labelled_members("G", 2);
        auto middle = oracle::labelled_members("G", 3);
        auto large = oracle::labelled_members("G", 4);
        std::mt19937 rng(5);
        for (int round = 0; round < 40; ++round) {
            const auto & a = small[rng() % small.size()];
            const auto & b = middle[rng() % middle.size()];
            const auto & c = large[rng() % large.size()];
            for (const auto & e : enumerate_embeddings(a, b))
                for (const auto & f : enumerate_embeddings(b, c))
                    CHECK(oracle::is_embedding(e.then(f).map(), a, c));
        }
    }

    TEST_CASE("automorphisms")
    {
        auto id3 = oracle::Map{0, 1, 2};
        auto chain_aut = automorphisms(oracle::chain(3));
        REQUIRE(chain_aut.size() == 1);
        CHECK(chain_aut.front().map() == id3);
        auto k3 = automorphisms(oracle::complete_graph(3));
        CHECK(k3.size() == 6);
        CHECK(k3.front().map() == id3);
        CHECK(automorphisms(oracle::graph(3, {{0, 1}, {1, 2}})).size() == 2);
    }

    TEST_CASE("ordered structures are rigid")
    {
        for (const char * cls : {"LO", "PLE", "perm", "wedge(LO,G)"})
            for (std::size_t n = 0; n <= 5; ++n)
                for (const auto & s : enumerate_members(parse_class_spec(cls), n)) {
                    CHECK(automorphisms(s).size() == 1);
                    if (n <= 4)
                        CHECK(oracle::automorphism_count(s) == 1);
                }
    }
}

TEST_SUITE("canonical form")
{
    TEST_CASE("examples")
    {
        auto p3 = oracle::graph(3, {{0, 1}, {1, 2}});
        auto p3b = oracle::graph(3, {{2, 0}, {0, 1}});
        CHECK(canonical_form(p3) == canonical_form(p3b));
        CHECK(canonical_form(p3) != canonical_form(oracle::complete_graph(3)));
        CHECK(canonical_form(oracle::chain(2)) != canonical_form(oracle::chain(2, "a.<")));
    }

    TEST_CASE("agrees with the permutation oracle on all loop digraphs of size 3")
    {
        auto all = [] {
            std::vector<Structure> out;
            auto tuples = oracle::all_tuples(3, 2);
            for (unsigned mask = 0; mask < (1u << tuples.size()); ++mask) {
                std::vector<Tuple> rel;
                for (std::size_t i = 0; i < tuples.size(); ++i)
                    if (mask >> i & 1)
                        rel.push_back(tuples[i]);
                out.push_back(Structure(Signature{{"R", 2}}, 3, {rel}));
            }
            return out;
        }();
        std::vector<CanonicalForm> forms;
        for (const auto & s : all)
            forms.push_back(canonical_form(s));
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i; j < all.size(); ++j)
                if ((forms[i] == forms[j]) != oracle::isomorphic(all[i], all[j]))
                    ++mismatches;
        CHECK(mismatches == 0);
        // 104 isomorphism types of loop digraphs on 3 points.
        CHECK(std::set<CanonicalForm>(forms.begin(), forms.end()).size() == 104);
    }

    TEST_CASE("agrees with the permutation oracle on all graphs of size 4 and 5")
    {
        for (std::size_t n : {4, 5}) {
            auto all = oracle::labelled_members("G", n);
            std::set<CanonicalForm> forms;
            for (const auto & s : all)
                forms.insert(canonical_form(s));
            // 11 and 34 graphs up to isomorphism.
            CHECK(forms.size() == (n == 4 ? 11u : 34u));
            if (n == 4)
                CHECK(oracle::iso_types(all).size() == 11);
        }
    }

    TEST_CASE("random pairs up to size 5, mixed arities")
    {
        std::mt19937 rng(17);
        Signature sig{{"R", 2}, {"U", 1}, {"T", 3}};
        std::size_t mismatches = 0;
        for (int round = 0; round < 400; ++round) {
            std::size_t n = 1 + round % 5;
            double density = round % 3 == 0 ? 0.1 : 0.4;
            auto a = oracle::random_structure(rng, sig, n, density);
            auto b = round % 2 ? oracle::relabel(a, oracle::random_permutation(rng, n))
                               : oracle::random_structure(rng, sig, n, density);
            if ((canonical_form(a) == canonical_form(b)) != oracle::isomorphic(a, b))
                ++mismatches;
        }
        CHECK(mismatches == 0);
    }

    TEST_CASE("near-isomorphic pairs of size 5")
    {
        // Regular and vertex-transitive graphs defeat colour refinement alone.
        auto c5 = oracle::graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
        auto pentagram = oracle::graph(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
        CHECK(canonical_form(c5) == canonical_form(pentagram));
        auto c6 = oracle::graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
        auto two_triangles = oracle::graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
        CHECK(canonical_form(c6) != canonical_form(two_triangles));
    }

    TEST_CASE("labelling produces the representative")
    {
        std::mt19937 rng(23);
        for (int round = 0; round < 50; ++round) {
            auto a = oracle::random_structure(rng, Signature{{"R", 2}}, 5, 0.3);
            auto lab = canonical_labelling(a);
            auto rep = canonical_representative(a);
            CHECK(relabel(a, lab.labelling) == rep);
            CHECK(canonical_form(rep) == lab.form);
            CHECK(canonical_representative(oracle::relabel(a, oracle::random_permutation(rng, 5))) == rep);
        }
    }

    TEST_CASE("colours restrict the isomorphisms")
    {
        auto p3 = oracle::graph(3, {{0, 1}, {1, 2}});
        std::vector<std::uint32_t> end_marked{1, 0, 0};
        std::vector<std::uint32_t> other_end{0, 0, 1};
        std::vector<std::uint32_t> middle{0, 1, 0};
        CHECK(canonical_form(p3, end_marked) == canonical_form(p3, other_end));
        CHECK(canonical_form(p3, end_marked) != canonical_form(p3, middle));
        // Colour values matter, not just the partition they induce.
        std::vector<std::uint32_t> zeros{0, 0, 0};
        std::vector<std::uint32_t> ones{1, 1, 1};
        CHECK(canonical_form(p3, zeros) != canonical_form(p3, ones));
    }
}
