#pragma once

// Shared helpers for exhaustive searches over candidate tuple sets.

#include "ramsey/class_spec.hpp"
#include "ramsey/error.hpp"

#include <string>
#include <vector>

namespace ramsey::detail {

/// Alternatives for one group of tuples; a search picks exactly one.
using Options = std::vector<std::vector<Tuple>>;

inline constexpr std::size_t search_cap = std::size_t{1} << 22;

/// Ways to relate the distinct elements lo < hi under a binary shape.
inline Options pair_options(RelationShape shape, Element lo, Element hi)
{
    switch (shape) {
    case RelationShape::graph:
        return {{}, {{lo, hi}, {hi, lo}}};
    case RelationShape::linear_order:
    case RelationShape::tournament:
        return {{{lo, hi}}, {{hi, lo}}};
    case RelationShape::oriented:
        return {{}, {{lo, hi}}, {{hi, lo}}};
    default:
        return {{}, {{lo, hi}}, {{hi, lo}}, {{lo, hi}, {hi, lo}}};
    }
}

inline bool allows_loops(RelationShape shape)
{
    return shape == RelationShape::any;
}

inline Options all_subsets(const std::vector<Tuple> & tuples)
{
    if (tuples.size() >= 22)
        throw PreconditionError("candidate search over " + std::to_string(tuples.size()) +
                                " free tuples is too large");
    Options out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << tuples.size()); ++mask) {
        std::vector<Tuple> pick;
        for (std::size_t i = 0; i < tuples.size(); ++i)
            if (mask >> i & 1)
                pick.push_back(tuples[i]);
        out.push_back(std::move(pick));
    }
    return out;
}

/// Odometer over one pick per group. `visit(pick)` returns false to stop;
/// the function returns false in that case. Groups with no alternatives
/// admit no choice at all.
template <typename Visit>
bool for_each_pick(const std::vector<Options> & groups, Visit && visit)
{
    std::size_t total = 1;
    for (const auto & g : groups) {
        if (g.empty())
            return true;
        if (total > search_cap / g.size())
            throw PreconditionError("candidate search exceeds " + std::to_string(search_cap) + " combinations");
        total *= g.size();
    }
    std::vector<std::size_t> pick(groups.size(), 0);
    while (true) {
        if (!visit(static_cast<const std::vector<std::size_t> &>(pick)))
            return false;
        std::size_t i = groups.size();
        while (true) {
            if (i == 0)
                return true;
            --i;
            if (++pick[i] < groups[i].size())
                break;
            pick[i] = 0;
        }
    }
}

/// All tuples over {0..k}^arity that mention k, in lexicographic order.
inline std::vector<Tuple> tuples_touching(std::size_t arity, Element k)
{
    std::vector<Tuple> out;
    Tuple t(arity, 0);
    while (true) {
        bool touches = false;
        for (Element x : t)
            touches = touches || x == k;
        if (touches)
            out.push_back(t);
        std::size_t i = arity;
        bool done = true;
        while (i > 0) {
            --i;
            if (t[i] < k) {
                ++t[i];
                done = false;
                break;
            }
            t[i] = 0;
        }
        if (done)
            return out;
    }
}

} // namespace ramsey::detail
