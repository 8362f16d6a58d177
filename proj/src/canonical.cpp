#include "ramsey/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ramsey {

namespace {

void put_u32(std::vector<std::uint8_t> & out, std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

// Iterated colour refinement. Colours stay canonical because new colours
// are ranks of label-independent signatures.
std::vector<std::uint32_t> refine(const Structure & a, const std::vector<std::size_t> & name_order,
                                  std::vector<std::uint32_t> colour)
{
    const std::size_t n = a.size();
    auto count_distinct = [](std::vector<std::uint32_t> v) {
        std::sort(v.begin(), v.end());
        return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    std::size_t classes = count_distinct(colour);
    while (true) {
        std::vector<std::vector<std::vector<std::uint32_t>>> neighbourhood(n);
        for (std::size_t rank = 0; rank < name_order.size(); ++rank) {
            for (const auto & t : a.relation(name_order[rank]).tuples()) {
                std::vector<std::uint32_t> base;
                base.reserve(t.size() + 2);
                base.push_back(static_cast<std::uint32_t>(rank));
                base.push_back(0);
                for (Element x : t)
                    base.push_back(colour[x]);
                for (std::size_t i = 0; i < t.size(); ++i) {
                    base[1] = static_cast<std::uint32_t>(i);
                    neighbourhood[t[i]].push_back(base);
                }
            }
        }
        using Key = std::pair<std::uint32_t, std::vector<std::vector<std::uint32_t>>>;
        std::vector<Key> keys(n);
        for (std::size_t x = 0; x < n; ++x) {
            std::sort(neighbourhood[x].begin(), neighbourhood[x].end());
            keys[x] = {colour[x], std::move(neighbourhood[x])};
        }
        std::vector<Key> distinct = keys;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() == classes)
            return colour;
        classes = distinct.size();
        for (std::size_t x = 0; x < n; ++x)
            colour[x] = static_cast<std::uint32_t>(
                std::lower_bound(distinct.begin(), distinct.end(), keys[x]) - distinct.begin());
    }
}

class LabellingSearch
{
public:
    LabellingSearch(const Structure & a, const std::vector<std::size_t> & name_order,
                    const std::vector<std::uint32_t> & colour)
        : a_(a), order_(name_order), colour_(colour), n_(a.size()), inverse_(n_), assigned_(n_, false)
    {
        sorted_colour_ = colour_;
        std::sort(sorted_colour_.begin(), sorted_colour_.end());
        offset_.assign(n_ + 1, 0);
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t bits = 0;
            for (std::size_t s : order_) {
                std::size_t m = a_.signature()[s].arity;
                std::size_t hi = 1, lo = 1;
                for (std::size_t i = 0; i < m; ++i) {
                    hi *= k + 1;
                    lo *= k;
                }
                bits += hi - lo;
            }
            offset_[k + 1] = offset_[k] + bits;
        }
        current_.resize(offset_[n_]);
    }

    std::vector<Element> run()
    {
        descend(0, false);
        return best_inverse_;
    }

    const std::vector<std::uint8_t> & best_bits() const { return best_; }

private:
    void level_bits(std::size_t k)
    {
        std::size_t pos = offset_[k];
        Tuple positions, image;
        for (std::size_t s : order_) {
            std::size_t m = a_.signature()[s].arity;
            positions.assign(m, 0);
            image.resize(m);
            while (true) {
                if (std::find(positions.begin(), positions.end(), k) != positions.end()) {
                    for (std::size_t i = 0; i < m; ++i)
                        image[i] = inverse_[positions[i]];
                    current_[pos++] = a_.holds(s, image) ? 1 : 0;
                }
                std::size_t i = m;
                bool done = true;
                while (i > 0) {
                    --i;
                    if (positions[i] < k) {
                        ++positions[i];
                        done = false;
                        break;
                    }
                    positions[i] = 0;
                }
                if (done)
                    break;
            }
        }
    }

    // `improving`: the prefix so far is strictly smaller than the best.
    void descend(std::size_t k, bool improving)
    {
        if (k == n_) {
            if (!have_best_ || improving) {
                best_ = current_;
                best_inverse_ = inverse_;
                have_best_ = true;
            }
            return;
        }
        for (Element x = 0; x < n_; ++x) {
            if (assigned_[x] || colour_[x] != sorted_colour_[k])
                continue;
            inverse_[k] = x;
            level_bits(k);
            bool next_improving = improving;
            if (have_best_ && !improving) {
                auto first = current_.begin() + static_cast<std::ptrdiff_t>(offset_[k]);
                auto last = current_.begin() + static_cast<std::ptrdiff_t>(offset_[k + 1]);
                auto best_first = best_.begin() + static_cast<std::ptrdiff_t>(offset_[k]);
                auto cmp = std::lexicographical_compare_three_way(first, last, best_first,
                                                                  best_first + (last - first));
                if (cmp > 0)
                    continue;
                next_improving = cmp < 0;
            }
            assigned_[x] = true;
            descend(k + 1, next_improving);
            assigned_[x] = false;
        }
    }

    const Structure & a_;
    const std::vector<std::size_t> & order_;
    const std::vector<std::uint32_t> & colour_;
    std::size_t n_;
    std::vector<std::uint32_t> sorted_colour_;
    std::vector<std::size_t> offset_;
    std::vector<Element> inverse_;
    std::vector<bool> assigned_;
    std::vector<std::uint8_t> current_;
    std::vector<std::uint8_t> best_;
    std::vector<Element> best_inverse_;
    bool have_best_ = false;
};

} // namespace

CanonicalLabelling canonical_labelling(const Structure & a, std::span<const std::uint32_t> colours)
{
    const std::size_t n = a.size();
    auto order = a.signature().name_order();

    // Refinement works on colour ranks; the code records the colours themselves.
    std::vector<std::uint32_t> input(n, 0);
    if (!colours.empty()) {
        std::vector<std::uint32_t> values(colours.begin(), colours.end());
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t x = 0; x < n; ++x)
            input[x] = static_cast<std::uint32_t>(
                std::lower_bound(values.begin(), values.end(), colours[x]) - values.begin());
    }
    auto refined = refine(a, order, input);

    LabellingSearch search(a, order, refined);
    auto inverse = search.run();

    CanonicalLabelling result;
    auto & code = result.form.code;
    for (std::size_t s : order) {
        const auto & sym = a.signature()[s];
        code.insert(code.end(), sym.name.begin(), sym.name.end());
        code.push_back(0);
        put_u32(code, static_cast<std::uint32_t>(sym.arity));
    }
    code.push_back(0xff);
    put_u32(code, static_cast<std::uint32_t>(n));
    if (!colours.empty())
        for (std::size_t k = 0; k < n; ++k)
            put_u32(code, colours[inverse[k]]);
    const auto & bits = search.best_bits();
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        std::uint8_t byte = 0;
        for (std::size_t j = 0; j < 8; ++j)
            byte = static_cast<std::uint8_t>((byte << 1) | (i + j < bits.size() ? bits[i + j] : 0));
        code.push_back(byte);
    }
    result.labelling.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k)
        result.labelling[inverse[k]] = static_cast<Element>(k);
    return result;
}

CanonicalLabelling canonical_labelling(const Structure & a)
{
    return canonical_labelling(a, {});
}

CanonicalForm canonical_form(const Structure & a)
{
    return canonical_labelling(a).form;
}

CanonicalForm canonical_form(const Structure & a, std::span<const std::uint32_t> colours)
{
    return canonical_labelling(a, colours).form;
}

bool are_isomorphic(const Structure & a, const Structure & b)
{
    return a.size() == b.size() && a.signature() == b.signature() && canonical_form(a) == canonical_form(b);
}

Structure canonical_representative(const Structure & a)
{
    auto lab = canonical_labelling(a);
    return relabel(a, lab.labelling);
}

} // namespace ramsey
