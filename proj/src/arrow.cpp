#include "ramsey/arrow.hpp"

#include "ramsey/embedding.hpp"
#include "ramsey/error.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace ramsey {

ArrowInstance make_arrow_instance(Structure a, Structure b, Structure c, std::size_t colours)
{
    require_same_signature(a.signature(), b.signature(), "arrow instance");
    require_same_signature(a.signature(), c.signature(), "arrow instance");
    if (colours < 1)
        throw PreconditionError("arrow instance: number of colours must be at least 1");
    if (colours > 64)
        throw PreconditionError("arrow instance: at most 64 colours are supported");
    return {std::move(a), std::move(b), std::move(c), colours};
}

std::string verdict_name(ArrowVerdict v)
{
    return v == ArrowVerdict::holds ? "ARROW" : "NOT-ARROW";
}

std::vector<std::vector<std::size_t>> copy_index_sets(const ArrowInstance & inst)
{
    auto into_c = enumerate_embeddings(inst.a, inst.c);
    std::map<std::vector<Element>, std::size_t> index;
    for (std::size_t i = 0; i < into_c.size(); ++i)
        index.emplace(into_c[i].map(), i);
    auto into_b = enumerate_embeddings(inst.a, inst.b);
    std::vector<std::vector<std::size_t>> sets;
    for_each_embedding(inst.b, inst.c, [&](const Embedding & f) {
        std::vector<std::size_t> s;
        for (const auto & e : into_b)
            s.push_back(index.at(e.then(f).map()));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.push_back(std::move(s));
        return true;
    });
    return sets;
}

namespace {

using Mask = std::uint64_t;

// Backtracking search for a colouring of the vertices under which no
// hyperedge is monochromatic (not-all-equal colouring).
class NaeSearch
{
public:
    NaeSearch(std::size_t vertices, std::vector<std::vector<std::size_t>> edges, std::size_t colours,
              bool vertex_order)
        : colour_(vertices, unassigned), edges_(std::move(edges)), colours_(colours),
          vertex_order_(vertex_order), incident_(vertices)
    {
        for (std::size_t e = 0; e < edges_.size(); ++e)
            for (std::size_t v : edges_[e])
                incident_[v].push_back(e);
    }

    std::optional<Colouring> run()
    {
        if (search(0))
            return Colouring(colour_.begin(), colour_.end());
        return std::nullopt;
    }

    std::size_t nodes() const { return nodes_; }

private:
    static constexpr std::uint32_t unassigned = ~std::uint32_t{0};

    Mask all_colours() const
    {
        return colours_ >= 64 ? ~Mask{0} : (Mask{1} << colours_) - 1;
    }

    // Colours v may not take: the rest of some edge is one colour.
    Mask forbidden(std::size_t v) const
    {
        Mask out = 0;
        for (std::size_t e : incident_[v]) {
            std::uint32_t seen = unassigned;
            bool uniform = true;
            for (std::size_t u : edges_[e]) {
                if (u == v)
                    continue;
                if (colour_[u] == unassigned || (seen != unassigned && colour_[u] != seen)) {
                    uniform = false;
                    break;
                }
                seen = colour_[u];
            }
            if (uniform && seen != unassigned)
                out |= Mask{1} << seen;
        }
        return out;
    }

    bool satisfied(std::size_t e) const
    {
        std::uint32_t seen = unassigned;
        for (std::size_t u : edges_[e]) {
            if (colour_[u] == unassigned)
                continue;
            if (seen != unassigned && colour_[u] != seen)
                return true;
            seen = colour_[u];
        }
        return false;
    }

    // Next vertex to colour, or nullopt when every edge is already
    // non-constant.
    std::optional<std::size_t> choose() const
    {
        if (vertex_order_) {
            bool open = false;
            for (std::size_t e = 0; e < edges_.size() && !open; ++e)
                open = !satisfied(e);
            if (!open)
                return std::nullopt;
            for (std::size_t v = 0; v < colour_.size(); ++v)
                if (colour_[v] == unassigned)
                    return v;
            return std::nullopt;
        }
        std::optional<std::size_t> best_edge;
        std::size_t best_free = 0;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (satisfied(e))
                continue;
            std::size_t free = 0;
            for (std::size_t u : edges_[e])
                free += colour_[u] == unassigned;
            if (!best_edge || free < best_free) {
                best_edge = e;
                best_free = free;
            }
        }
        if (!best_edge)
            return std::nullopt;
        for (std::size_t u : edges_[*best_edge])
            if (colour_[u] == unassigned)
                return u;
        return std::nullopt;
    }

    // Some uncoloured neighbour has every colour forbidden.
    bool wiped_out(std::size_t v) const
    {
        for (std::size_t e : incident_[v])
            for (std::size_t u : edges_[e])
                if (colour_[u] == unassigned && (forbidden(u) & all_colours()) == all_colours())
                    return true;
        return false;
    }

    bool search(std::uint32_t used)
    {
        ++nodes_;
        auto next = choose();
        if (!next) {
            for (auto & c : colour_)
                if (c == unassigned)
                    c = 0;
            return true;
        }
        const std::size_t v = *next;
        const Mask banned = forbidden(v);
        // Colours are interchangeable: never open more than one new colour.
        const std::uint32_t limit = std::min<std::uint32_t>(static_cast<std::uint32_t>(colours_), used + 1);
        for (std::uint32_t c = 0; c < limit; ++c) {
            if (banned >> c & 1)
                continue;
            colour_[v] = c;
            if (!wiped_out(v) && search(std::max(used, c + 1)))
                return true;
            colour_[v] = unassigned;
        }
        return false;
    }

    std::vector<std::uint32_t> colour_;
    std::vector<std::vector<std::size_t>> edges_;
    std::size_t colours_;
    bool vertex_order_;
    std::vector<std::vector<std::size_t>> incident_;
    std::size_t nodes_ = 0;
};

} // namespace

ArrowCertificate check_arrow(const ArrowInstance & inst, const ArrowOptions & options)
{
    require_same_signature(inst.a.signature(), inst.b.signature(), "check_arrow");
    require_same_signature(inst.a.signature(), inst.c.signature(), "check_arrow");
    if (inst.colours < 1 || inst.colours > 64)
        throw PreconditionError("check_arrow: number of colours must be in 1..64");

    const std::size_t vertices = count_embeddings(inst.a, inst.c);
    auto sets = copy_index_sets(inst);

    ArrowCertificate cert;
    if (sets.empty()) {
        // No copy of B at all: any colouring is bad.
        cert.verdict = ArrowVerdict::fails;
        cert.colouring.assign(vertices, 0);
        return cert;
    }
    // A copy whose A-set has at most one element is constant under every
    // colouring (the empty set vacuously).
    for (const auto & s : sets)
        if (s.size() <= 1)
            return cert;
    if (inst.colours == 1)
        return cert;

    NaeSearch search(vertices, std::move(sets), inst.colours, options.canonical_certificate);
    auto bad = search.run();
    cert.search_nodes = search.nodes();
    if (bad) {
        cert.verdict = ArrowVerdict::fails;
        cert.colouring = std::move(*bad);
    } else {
        cert.exhausted = true;
    }
    return cert;
}

bool validate_bad_colouring(const ArrowInstance & inst, std::span<const std::uint32_t> colouring)
{
    auto into_c = enumerate_embeddings(inst.a, inst.c);
    if (colouring.size() != into_c.size())
        return false;
    for (auto c : colouring)
        if (c >= inst.colours)
            return false;
    auto into_b = enumerate_embeddings(inst.a, inst.b);
    bool bad = true;
    for_each_embedding(inst.b, inst.c, [&](const Embedding & f) {
        std::set<std::uint32_t> seen;
        for (const auto & e : into_b) {
            auto composed = e.then(f);
            auto it = std::lower_bound(into_c.begin(), into_c.end(), composed);
            seen.insert(colouring[static_cast<std::size_t>(it - into_c.begin())]);
        }
        bad = seen.size() >= 2;
        return bad;
    });
    return bad;
}

std::optional<Embedding> find_mono_copy(const ArrowInstance & inst, std::span<const std::uint32_t> colouring)
{
    const std::size_t vertices = count_embeddings(inst.a, inst.c);
    if (colouring.size() != vertices)
        throw PreconditionError("find_mono_copy: colouring has " + std::to_string(colouring.size()) +
                                " entries, expected " + std::to_string(vertices));
    for (auto c : colouring)
        if (c >= inst.colours)
            throw PreconditionError("find_mono_copy: colour " + std::to_string(c) + " out of range");
    auto sets = copy_index_sets(inst);
    auto copies = enumerate_embeddings(inst.b, inst.c);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool constant = std::all_of(sets[i].begin(), sets[i].end(),
                                    [&](std::size_t v) { return colouring[v] == colouring[sets[i].front()]; });
        if (constant)
            return copies[i];
    }
    return std::nullopt;
}

std::optional<Structure> search_witness(const ClassSpec & spec, const Structure & a, const Structure & b,
                                        std::size_t colours, std::size_t max_size, unsigned threads)
{
    if (!is_member(spec, a))
        throw PreconditionError("search_witness: A is not a member of " + spec.describe());
    if (!is_member(spec, b))
        throw PreconditionError("search_witness: B is not a member of " + spec.describe());
    if (max_size < b.size())
        throw PreconditionError("search_witness: max size " + std::to_string(max_size) + " is below |B| = " +
                                std::to_string(b.size()));
    auto levels = enumerate_members_up_to(spec, max_size);
    threads = std::max(1u, threads);
    for (std::size_t n = b.size(); n <= max_size; ++n) {
        const auto & members = levels[n];
        std::atomic<std::size_t> first_hit{members.size()};
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= members.size() || i > first_hit.load())
                    return;
                if (check_arrow(make_arrow_instance(a, b, members[i], colours)).holds()) {
                    std::size_t cur = first_hit.load();
                    while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(worker);
            for (auto & t : pool)
                t.join();
        }
        if (first_hit.load() < members.size())
            return members[first_hit.load()];
    }
    return std::nullopt;
}

TransferReport transfer_check(const Structure & a, const Structure & b, const Structure & c, const Formula & order,
                              const std::string & name, std::size_t colours)
{
    auto expand = [&](const Structure & s, const char * label) {
        auto expanded = expand_by_formula(s, order, name);
        if (!is_strict_linear_order(expanded, name))
            throw PreconditionError(std::string("transfer_check: the formula does not define a strict linear order on ") +
                                    label);
        return expanded;
    };
    auto a2 = expand(a, "A");
    auto b2 = expand(b, "B");
    auto c2 = expand(c, "C");

    TransferReport report;
    report.plain = check_arrow(make_arrow_instance(a, b, c, colours)).verdict;
    report.expanded = check_arrow(make_arrow_instance(a2, b2, c2, colours)).verdict;
    auto plain = enumerate_embeddings(a, c);
    auto expanded = enumerate_embeddings(a2, c2);
    report.plain_embeddings = plain.size();
    report.expanded_embeddings = expanded.size();
    report.embeddings_equal = plain == expanded;
    return report;
}

} // namespace ramsey
