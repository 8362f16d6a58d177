#include "ramsey/product.hpp"

#include "ramsey/canonical.hpp"
#include "ramsey/error.hpp"

namespace ramsey {

namespace {

// Every tuple of pairs whose `coordinate` projection is `t`.
void lift(const Tuple & t, bool first_coordinate, std::size_t other_size, std::size_t right_size,
          std::vector<Tuple> & out)
{
    const std::size_t k = t.size();
    std::vector<Element> free(k, 0);
    while (true) {
        Tuple lifted(k);
        for (std::size_t i = 0; i < k; ++i)
            lifted[i] = first_coordinate ? product_index(t[i], free[i], right_size)
                                         : product_index(free[i], t[i], right_size);
        out.push_back(std::move(lifted));
        std::size_t i = k;
        while (true) {
            if (i == 0)
                return;
            --i;
            if (++free[i] < other_size)
                break;
            free[i] = 0;
        }
    }
}

} // namespace

Structure full_product(const Structure & left, const Structure & right)
{
    if (!left.signature().disjoint_from(right.signature()))
        throw PreconditionError("full_product: signatures overlap (" + left.signature().to_string() + " and " +
                                right.signature().to_string() + ")");
    auto sig = left.signature().union_with(right.signature());
    const std::size_t n = left.size() * right.size();
    std::vector<std::vector<Tuple>> rels;
    for (const auto & rel : left.relations()) {
        std::vector<Tuple> out;
        if (right.size() > 0)
            for (const auto & t : rel.tuples())
                lift(t, true, right.size(), right.size(), out);
        rels.push_back(std::move(out));
    }
    for (const auto & rel : right.relations()) {
        std::vector<Tuple> out;
        if (left.size() > 0)
            for (const auto & t : rel.tuples())
                lift(t, false, left.size(), right.size(), out);
        rels.push_back(std::move(out));
    }
    return Structure(std::move(sig), n, std::move(rels));
}

bool diagonal_check(const Structure & g, const std::set<std::string> & left, const std::set<std::string> & right)
{
    for (const auto & name : left)
        if (right.count(name))
            throw PreconditionError("diagonal_check: symbol '" + name + "' is on both sides");
    auto all = left;
    all.insert(right.begin(), right.end());
    if (all != g.signature().names())
        throw PreconditionError("diagonal_check: the two symbol sets must partition the signature " +
                                g.signature().to_string());
    auto product = full_product(reduct(g, left), reduct(g, right));
    std::set<Element> diagonal;
    for (Element d = 0; d < g.size(); ++d)
        diagonal.insert(product_index(d, d, g.size()));
    auto [induced, inclusion] = substructure(product, diagonal);
    return are_isomorphic(induced, g);
}

} // namespace ramsey
