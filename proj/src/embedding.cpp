#include "ramsey/embedding.hpp"

#include <cstdint>

namespace ramsey {

namespace {

// A check performed once source element `level` is mapped: the tuple uses
// only elements <= level and contains level.
struct LevelCheck
{
    std::size_t target_symbol;
    Tuple tuple;
    bool expected;
};

// All tuples over {0..level} of the given arity that mention `level`.
template <typename Visit>
void tuples_touching(std::size_t arity, Element level, Visit && visit)
{
    Tuple t(arity, 0);
    while (true) {
        bool touches = false;
        for (Element x : t)
            touches = touches || x == level;
        if (touches)
            visit(t);
        std::size_t i = arity;
        while (i > 0) {
            --i;
            if (t[i] < level) {
                ++t[i];
                break;
            }
            t[i] = 0;
            if (i == 0)
                return;
        }
        if (arity == 0)
            return;
    }
}

class EmbeddingSearch
{
public:
    EmbeddingSearch(const Structure & from, const Structure & to,
                    const std::function<bool(const Embedding &)> & visit)
        : to_(to), visit_(visit), map_(from.size()), used_(to.size(), false), checks_(from.size())
    {
        auto align = to.symbol_alignment(from.signature());
        for (Element level = 0; level < from.size(); ++level)
            for (std::size_t s = 0; s < from.signature().size(); ++s)
                tuples_touching(from.signature()[s].arity, level, [&](const Tuple & t) {
                    checks_[level].push_back({align[s], t, from.holds(s, t)});
                });
    }

    void run()
    {
        if (map_.size() > to_.size())
            return;
        extend(0);
    }

private:
    bool consistent(Element level) const
    {
        Tuple image;
        for (const auto & check : checks_[level]) {
            image.resize(check.tuple.size());
            for (std::size_t i = 0; i < check.tuple.size(); ++i)
                image[i] = map_[check.tuple[i]];
            if (to_.holds(check.target_symbol, image) != check.expected)
                return false;
        }
        return true;
    }

    // Returns false once the visitor asked to stop.
    bool extend(Element level)
    {
        if (level == map_.size())
            return visit_(Embedding(map_));
        for (Element c = 0; c < to_.size(); ++c) {
            if (used_[c])
                continue;
            map_[level] = c;
            if (!consistent(level))
                continue;
            used_[c] = true;
            bool go_on = extend(level + 1);
            used_[c] = false;
            if (!go_on)
                return false;
        }
        return true;
    }

    const Structure & to_;
    const std::function<bool(const Embedding &)> & visit_;
    std::vector<Element> map_;
    std::vector<bool> used_;
    std::vector<std::vector<LevelCheck>> checks_;
};

} // namespace

void for_each_embedding(const Structure & from, const Structure & to,
                        const std::function<bool(const Embedding &)> & visit)
{
    require_same_signature(from.signature(), to.signature(), "enumerate_embeddings");
    EmbeddingSearch(from, to, visit).run();
}

std::vector<Embedding> enumerate_embeddings(const Structure & from, const Structure & to)
{
    std::vector<Embedding> out;
    for_each_embedding(from, to, [&](const Embedding & e) {
        out.push_back(e);
        return true;
    });
    return out;
}

std::size_t count_embeddings(const Structure & from, const Structure & to)
{
    std::size_t n = 0;
    for_each_embedding(from, to, [&](const Embedding &) {
        ++n;
        return true;
    });
    return n;
}

bool embeds_into(const Structure & from, const Structure & to)
{
    bool found = false;
    for_each_embedding(from, to, [&](const Embedding &) {
        found = true;
        return false;
    });
    return found;
}

std::vector<Embedding> automorphisms(const Structure & a)
{
    return enumerate_embeddings(a, a);
}

} // namespace ramsey
