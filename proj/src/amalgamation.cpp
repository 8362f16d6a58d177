#include "ramsey/amalgamation.hpp"

#include "ramsey/canonical.hpp"
#include "ramsey/embedding.hpp"

#include "candidates.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace ramsey {

AmalgamationDiagram make_diagram(Structure base, Structure first, Structure second, Embedding into_first,
                                 Embedding into_second)
{
    require_same_signature(base.signature(), first.signature(), "amalgamation diagram");
    require_same_signature(base.signature(), second.signature(), "amalgamation diagram");
    if (!is_embedding(into_first.map(), base, first))
        throw PreconditionError("amalgamation diagram: first map is not an embedding of the base");
    if (!is_embedding(into_second.map(), base, second))
        throw PreconditionError("amalgamation diagram: second map is not an embedding of the base");
    return {std::move(base), std::move(first), std::move(second), std::move(into_first), std::move(into_second)};
}

bool commutes(const AmalgamationDiagram & d, const Amalgam & m)
{
    return d.into_first.then(m.from_first) == d.into_second.then(m.from_second);
}

bool is_strong(const AmalgamationDiagram & d, const Amalgam & m)
{
    std::set<Element> first(m.from_first.map().begin(), m.from_first.map().end());
    std::set<Element> second(m.from_second.map().begin(), m.from_second.map().end());
    auto glued = d.into_first.then(m.from_first).map();
    std::set<Element> base(glued.begin(), glued.end());
    std::set<Element> meet;
    std::set_intersection(first.begin(), first.end(), second.begin(), second.end(),
                          std::inserter(meet, meet.begin()));
    return meet == base;
}

std::string property_name(AmalgamationProperty p)
{
    switch (p) {
    case AmalgamationProperty::amalgamation:
        return "AP";
    case AmalgamationProperty::strong_amalgamation:
        return "SAP";
    case AmalgamationProperty::joint_embedding:
        return "JEP";
    }
    return {};
}

namespace {

using detail::Options;

// Domain of a candidate amalgam: first's elements keep their numbers,
// second's elements are either glued onto the base image, identified with
// a first-only element, or appended.
struct Layout
{
    std::size_t size = 0;
    std::vector<Element> from_first;
    std::vector<Element> from_second;
    std::vector<Element> first_only;
    std::vector<Element> second_only;
    std::vector<std::vector<Tuple>> fixed; // in first's signature order
};

// `identify[q]` for each second element outside the base image: the
// first-only element it is identified with, or nullopt.
std::optional<Layout> make_layout(const AmalgamationDiagram & d,
                                  const std::map<Element, std::optional<Element>> & identify)
{
    Layout lay;
    const std::size_t n1 = d.first.size();
    lay.from_first.resize(n1);
    for (Element i = 0; i < n1; ++i)
        lay.from_first[i] = i;
    lay.from_second.assign(d.second.size(), 0);
    std::vector<bool> glued_second(d.second.size(), false);
    for (std::size_t a = 0; a < d.base.size(); ++a) {
        lay.from_second[d.into_second[a]] = d.into_first[a];
        glued_second[d.into_second[a]] = true;
    }
    std::vector<bool> in_second_image(n1, false);
    for (std::size_t a = 0; a < d.base.size(); ++a)
        in_second_image[d.into_first[a]] = true;
    Element next = static_cast<Element>(n1);
    for (Element q = 0; q < d.second.size(); ++q) {
        if (glued_second[q])
            continue;
        auto it = identify.find(q);
        if (it != identify.end() && it->second) {
            lay.from_second[q] = *it->second;
            in_second_image[*it->second] = true;
        } else {
            lay.from_second[q] = next;
            lay.second_only.push_back(next);
            ++next;
        }
    }
    lay.size = next;
    for (Element i = 0; i < n1; ++i)
        if (!in_second_image[i])
            lay.first_only.push_back(i);

    // Both sides must agree on tuples inside the overlap.
    const auto & sig = d.first.signature();
    auto align = d.second.symbol_alignment(sig);
    std::vector<bool> overlap(lay.size, false);
    for (Element i = 0; i < n1; ++i)
        overlap[i] = in_second_image[i];
    lay.fixed.resize(sig.size());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::set<Tuple> from1, from2;
        for (const auto & t : d.first.relation(s).tuples()) {
            Tuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                m[i] = lay.from_first[t[i]];
            from1.insert(std::move(m));
        }
        for (const auto & t : d.second.relation(align[s]).tuples()) {
            Tuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                m[i] = lay.from_second[t[i]];
            from2.insert(std::move(m));
        }
        auto inside_overlap = [&](const Tuple & t) {
            return std::all_of(t.begin(), t.end(), [&](Element x) { return overlap[x]; });
        };
        for (const auto & t : from1)
            if (inside_overlap(t) && !from2.count(t))
                return std::nullopt;
        for (const auto & t : from2)
            if (inside_overlap(t) && !from1.count(t))
                return std::nullopt;
        std::set<Tuple> all = from1;
        all.insert(from2.begin(), from2.end());
        lay.fixed[s].assign(all.begin(), all.end());
    }
    return lay;
}

// Backtracking over second-only elements in increasing order. At each
// step the tuples that join the current element to first-only elements
// are chosen, and the induced structure on everything decided so far
// must be a member (all classes here are hereditary).
class CompletionSearch
{
public:
    CompletionSearch(const Layout & lay, const Signature & sig, const ClassSpec & spec,
                     const std::function<bool(const Structure &)> & visit)
        : lay_(lay), sig_(sig), spec_(spec), visit_(visit), shapes_(relation_shapes(spec))
    {
        is_first_only_.assign(lay.size, false);
        for (Element x : lay.first_only)
            is_first_only_[x] = true;
    }

    void run()
    {
        auto rels = lay_.fixed;
        if (lay_.second_only.empty()) {
            Structure s(sig_, lay_.size, rels);
            if (is_member(spec_, s))
                visit_(s);
            return;
        }
        step(0, rels);
    }

private:
    RelationShape shape_of(std::size_t s) const
    {
        auto it = shapes_.find(sig_[s].name);
        return it == shapes_.end() ? RelationShape::any : it->second;
    }

    // Returns false once the visitor asked to stop.
    bool step(std::size_t index, std::vector<std::vector<Tuple>> & rels)
    {
        const Element y = lay_.second_only[index];
        const bool last = index + 1 == lay_.second_only.size();
        std::vector<bool> decided(lay_.size, true);
        for (std::size_t j = index + 1; j < lay_.second_only.size(); ++j)
            decided[lay_.second_only[j]] = false;
        std::set<Element> domain;
        for (Element x = 0; x < lay_.size; ++x)
            if (decided[x])
                domain.insert(x);

        std::vector<Options> groups;
        std::vector<std::size_t> group_symbol;
        for (std::size_t s = 0; s < sig_.size(); ++s) {
            if (sig_[s].arity == 2) {
                for (Element x : lay_.first_only) {
                    groups.push_back(detail::pair_options(shape_of(s), std::min(x, y), std::max(x, y)));
                    group_symbol.push_back(s);
                }
                continue;
            }
            std::vector<Tuple> free;
            for (Element top = 0; top < lay_.size; ++top) {
                for (const auto & t : detail::tuples_touching(sig_[s].arity, top)) {
                    bool ok = std::find(t.begin(), t.end(), y) != t.end();
                    bool crosses = false;
                    for (Element e : t) {
                        ok = ok && decided[e];
                        crosses = crosses || is_first_only_[e];
                    }
                    if (ok && crosses)
                        free.push_back(t);
                }
            }
            groups.push_back(detail::all_subsets(free));
            group_symbol.push_back(s);
        }

        bool keep_going = true;
        detail::for_each_pick(groups, [&](const std::vector<std::size_t> & pick) {
            auto next = rels;
            for (std::size_t g = 0; g < groups.size(); ++g) {
                const auto & alt = groups[g][pick[g]];
                next[group_symbol[g]].insert(next[group_symbol[g]].end(), alt.begin(), alt.end());
            }
            Structure whole(sig_, lay_.size, next);
            if (last) {
                if (is_member(spec_, whole))
                    keep_going = visit_(whole);
            } else if (is_member(spec_, substructure(whole, domain).first)) {
                keep_going = step(index + 1, next);
            }
            return keep_going;
        });
        return keep_going;
    }

    const Layout & lay_;
    const Signature & sig_;
    const ClassSpec & spec_;
    const std::function<bool(const Structure &)> & visit_;
    std::map<std::string, RelationShape> shapes_;
    std::vector<bool> is_first_only_;
};

void search_completions(const Layout & lay, const Signature & sig, const ClassSpec & spec,
                        const std::function<bool(const Structure &)> & visit)
{
    CompletionSearch(lay, sig, spec, visit).run();
}

void require_spec_signature(const AmalgamationDiagram & d, const ClassSpec & spec)
{
    require_same_signature(spec.signature(), d.first.signature(), "amalgam search in " + spec.describe());
}

std::vector<std::uint32_t> side_colours(const AmalgamationDiagram & d, const Amalgam & m)
{
    // Base image elements individually, then first-only and second-only.
    const std::uint32_t first_only = 0, second_only = 1;
    std::vector<std::uint32_t> colour(m.structure.size(), second_only);
    for (Element x : m.from_first.map())
        colour[x] = first_only;
    for (std::size_t a = 0; a < d.base.size(); ++a)
        colour[m.from_first[d.into_first[a]]] = static_cast<std::uint32_t>(2 + a);
    return colour;
}

} // namespace

Amalgam free_amalgam(const AmalgamationDiagram & d)
{
    auto lay = make_layout(d, {});
    // The strong layout never conflicts: the overlap is the base image.
    return {Structure(d.first.signature(), lay->size, lay->fixed), Embedding(lay->from_first),
            Embedding(lay->from_second)};
}

std::vector<Amalgam> find_strong_amalgams(const AmalgamationDiagram & d, const ClassSpec & spec)
{
    require_spec_signature(d, spec);
    auto lay = make_layout(d, {});
    std::vector<Amalgam> out;
    std::set<CanonicalForm> seen;
    search_completions(*lay, d.first.signature(), spec, [&](const Structure & s) {
        Amalgam m{s, Embedding(lay->from_first), Embedding(lay->from_second)};
        auto colours = side_colours(d, m);
        if (seen.insert(canonical_form(s, colours)).second)
            out.push_back(std::move(m));
        return true;
    });
    return out;
}

std::optional<Amalgam> first_strong_amalgam(const AmalgamationDiagram & d, const ClassSpec & spec)
{
    require_spec_signature(d, spec);
    auto lay = make_layout(d, {});
    std::optional<Amalgam> out;
    search_completions(*lay, d.first.signature(), spec, [&](const Structure & s) {
        out = Amalgam{s, Embedding(lay->from_first), Embedding(lay->from_second)};
        return false;
    });
    return out;
}

std::optional<Amalgam> first_amalgam(const AmalgamationDiagram & d, const ClassSpec & spec)
{
    require_spec_signature(d, spec);
    std::vector<bool> glued(d.second.size(), false);
    for (Element q : d.into_second.map())
        glued[q] = true;
    std::vector<Element> loose_second;
    for (Element q = 0; q < d.second.size(); ++q)
        if (!glued[q])
            loose_second.push_back(q);
    std::vector<bool> base_in_first(d.first.size(), false);
    for (Element p : d.into_first.map())
        base_in_first[p] = true;
    std::vector<Element> loose_first;
    for (Element p = 0; p < d.first.size(); ++p)
        if (!base_in_first[p])
            loose_first.push_back(p);

    std::optional<Amalgam> out;
    std::map<Element, std::optional<Element>> identify;
    std::vector<bool> taken(d.first.size(), false);
    // Partial injective identifications, the empty one first.
    std::function<bool(std::size_t)> choose = [&](std::size_t i) -> bool {
        if (i == loose_second.size()) {
            auto lay = make_layout(d, identify);
            if (!lay)
                return true;
            search_completions(*lay, d.first.signature(), spec, [&](const Structure & s) {
                out = Amalgam{s, Embedding(lay->from_first), Embedding(lay->from_second)};
                return false;
            });
            return !out;
        }
        identify[loose_second[i]] = std::nullopt;
        if (!choose(i + 1))
            return false;
        for (Element p : loose_first) {
            if (taken[p])
                continue;
            taken[p] = true;
            identify[loose_second[i]] = p;
            bool go_on = choose(i + 1);
            taken[p] = false;
            if (!go_on)
                return false;
        }
        identify.erase(loose_second[i]);
        return true;
    };
    choose(0);
    return out;
}

std::vector<AmalgamationDiagram> enumerate_diagrams(const ClassSpec & spec, std::size_t bound, bool joint_only)
{
    auto levels = enumerate_members_up_to(spec, bound);
    std::vector<AmalgamationDiagram> out;
    std::set<CanonicalForm> seen;
    const std::size_t max_base = joint_only ? 0 : bound;
    for (std::size_t m = 0; m <= max_base; ++m)
        for (std::size_t s1 = m; s1 <= bound; ++s1)
            for (std::size_t s2 = m; s2 <= bound; ++s2)
                for (const auto & base : levels[m])
                    for (const auto & first : levels[s1])
                        for (const auto & second : levels[s2]) {
                            auto e1s = enumerate_embeddings(base, first);
                            auto e2s = enumerate_embeddings(base, second);
                            for (const auto & e1 : e1s)
                                for (const auto & e2 : e2s) {
                                    AmalgamationDiagram d{base, first, second, e1, e2};
                                    auto free = free_amalgam(d);
                                    std::vector<std::uint32_t> colour(free.structure.size(), 1);
                                    for (Element x : free.from_first.map())
                                        colour[x] = 0;
                                    for (Element a : e1.map())
                                        colour[a] = 2;
                                    if (seen.insert(canonical_form(free.structure, colour)).second)
                                        out.push_back(std::move(d));
                                }
                        }
    return out;
}

AmalgamationCheck check_property(const ClassSpec & spec, AmalgamationProperty property, std::size_t bound,
                                 unsigned threads)
{
    auto diagrams = enumerate_diagrams(spec, bound, property == AmalgamationProperty::joint_embedding);
    auto has_amalgam = [&](const AmalgamationDiagram & d) {
        if (property == AmalgamationProperty::amalgamation)
            return first_amalgam(d, spec).has_value();
        return first_strong_amalgam(d, spec).has_value();
    };

    // Lowest failing index wins regardless of scheduling.
    std::atomic<std::size_t> first_failure{diagrams.size()};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= diagrams.size() || i > first_failure.load())
                return;
            if (!has_amalgam(diagrams[i])) {
                std::size_t cur = first_failure.load();
                while (i < cur && !first_failure.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto & t : pool)
            t.join();
    }

    AmalgamationCheck result{property, bound, 0, std::nullopt};
    std::size_t fail = first_failure.load();
    result.diagrams_checked = std::min(diagrams.size(), fail + 1);
    if (fail < diagrams.size())
        result.counterexample = diagrams[fail];
    return result;
}

AmalgamationCheck check_sap(const ClassSpec & spec, std::size_t bound, unsigned threads)
{
    return check_property(spec, AmalgamationProperty::strong_amalgamation, bound, threads);
}

AmalgamationCheck check_ap(const ClassSpec & spec, std::size_t bound, unsigned threads)
{
    return check_property(spec, AmalgamationProperty::amalgamation, bound, threads);
}

AmalgamationCheck check_jep(const ClassSpec & spec, std::size_t bound, unsigned threads)
{
    return check_property(spec, AmalgamationProperty::joint_embedding, bound, threads);
}

Injectivization injectivize(std::span<const Element> map, const Structure & source, const Structure & target,
                            const ClassSpec & spec)
{
    require_same_signature(source.signature(), target.signature(), "injectivize");
    require_same_signature(spec.signature(), target.signature(), "injectivize");
    if (!has_injective_relations(source))
        throw PreconditionError("injectivize: source has a relation tuple with a repeated entry");
    if (!has_injective_relations(target))
        throw PreconditionError("injectivize: target has a relation tuple with a repeated entry");
    if (!is_homomorphism(map, source, target))
        throw PreconditionError("injectivize: map is not a homomorphism from source to target");
    if (!is_member(spec, target))
        throw PreconditionError("injectivize: target is not a member of " + spec.describe());

    Injectivization out{target, std::vector<Element>(map.begin(), map.end()), 0};
    auto & h = out.mapping;
    while (true) {
        // Lexicographically least identified pair.
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        for (std::size_t u = 0; u < h.size() && !pair; ++u)
            for (std::size_t v = u + 1; v < h.size() && !pair; ++v)
                if (h[u] == h[v])
                    pair = {u, v};
        if (!pair)
            return out;
        const std::size_t u = pair->first;
        const Element point = h[u];

        std::set<Element> image(h.begin(), h.end());
        auto [copy, copy_in_target] = substructure(out.target, image);
        const Element point_in_copy =
            static_cast<Element>(std::distance(image.begin(), image.find(point)));
        std::set<Element> rest;
        for (Element i = 0; i < copy.size(); ++i)
            if (i != point_in_copy)
                rest.insert(i);
        auto [base, base_in_copy] = substructure(copy, rest);

        // Two copies of the image glued over the image minus the point.
        AmalgamationDiagram doubled{base, copy, copy, base_in_copy, base_in_copy};
        auto cloned = first_strong_amalgam(doubled, spec);
        if (!cloned)
            throw AmalgamationFailure("injectivize: no strong amalgam of the image over the image without element " +
                                          std::to_string(point),
                                      doubled);

        // Glue that amalgam onto the current target over the image.
        AmalgamationDiagram onto{copy, out.target, cloned->structure, copy_in_target, cloned->from_first};
        auto grown = first_strong_amalgam(onto, spec);
        if (!grown)
            throw AmalgamationFailure("injectivize: no strong amalgam of the target with the cloned image", onto);

        std::vector<Element> next(h.size());
        for (std::size_t w = 0; w < h.size(); ++w)
            next[w] = grown->from_first[h[w]];
        next[u] = grown->from_second[cloned->from_second[point_in_copy]];
        h = std::move(next);
        out.target = std::move(grown->structure);
        ++out.steps;
    }
}

} // namespace ramsey
