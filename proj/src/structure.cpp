#include "ramsey/structure.hpp"

#include "ramsey/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ramsey {

namespace {

constexpr std::size_t dense_limit = std::size_t{1} << 22;

std::optional<std::size_t> dense_capacity(std::size_t arity, std::size_t n)
{
    std::size_t cap = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (n != 0 && cap > dense_limit / n)
            return std::nullopt;
        cap *= n;
    }
    return cap;
}

std::size_t dense_index(std::span<const Element> tuple, std::size_t n)
{
    std::size_t idx = 0;
    for (Element x : tuple)
        idx = idx * n + x;
    return idx;
}

} // namespace

bool is_valid_symbol_name(std::string_view name)
{
    if (name.empty())
        return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '.' || c == '<';
    });
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols))
{
    std::set<std::string> seen;
    for (const auto & s : symbols_) {
        if (!is_valid_symbol_name(s.name))
            throw PreconditionError("invalid symbol name '" + s.name + "'");
        if (s.arity < 1)
            throw PreconditionError("symbol '" + s.name + "' must have arity >= 1");
        if (!seen.insert(s.name).second)
            throw PreconditionError("duplicate symbol '" + s.name + "' in signature");
    }
}

Signature::Signature(std::initializer_list<Symbol> symbols) : Signature(std::vector<Symbol>(symbols)) {}

std::optional<std::size_t> Signature::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return i;
    return std::nullopt;
}

std::set<std::string> Signature::names() const
{
    std::set<std::string> out;
    for (const auto & s : symbols_)
        out.insert(s.name);
    return out;
}

bool Signature::disjoint_from(const Signature & other) const
{
    return std::none_of(symbols_.begin(), symbols_.end(),
                        [&](const Symbol & s) { return other.contains(s.name); });
}

Signature Signature::union_with(const Signature & other) const
{
    for (const auto & s : other.symbols_)
        if (contains(s.name))
            throw PreconditionError("signatures overlap in symbol '" + s.name + "'");
    auto all = symbols_;
    all.insert(all.end(), other.symbols_.begin(), other.symbols_.end());
    return Signature(std::move(all));
}

Signature Signature::restricted_to(const std::set<std::string> & keep) const
{
    std::vector<Symbol> kept;
    for (const auto & s : symbols_)
        if (keep.count(s.name))
            kept.push_back(s);
    return Signature(std::move(kept));
}

std::vector<std::size_t> Signature::name_order() const
{
    std::vector<std::size_t> order(symbols_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return symbols_[a].name < symbols_[b].name; });
    return order;
}

std::string Signature::to_string() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i)
            out << ", ";
        out << symbols_[i].name << '/' << symbols_[i].arity;
    }
    return out.str();
}

bool operator==(const Signature & a, const Signature & b)
{
    if (a.size() != b.size())
        return false;
    for (const auto & s : a.symbols_) {
        auto j = b.index_of(s.name);
        if (!j || b.symbols_[*j].arity != s.arity)
            return false;
    }
    return true;
}

Relation::Relation(std::size_t arity, std::size_t domain_size, std::vector<Tuple> tuples)
    : arity_(arity), domain_size_(domain_size), tuples_(std::move(tuples))
{
    for (const auto & t : tuples_) {
        if (t.size() != arity_)
            throw PreconditionError("tuple of length " + std::to_string(t.size()) + " in relation of arity " +
                                    std::to_string(arity_));
        for (Element x : t)
            if (x >= domain_size_)
                throw PreconditionError("element " + std::to_string(x) + " out of range for domain of size " +
                                        std::to_string(domain_size_));
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
    if (auto cap = dense_capacity(arity_, domain_size_)) {
        dense_.assign(*cap, false);
        for (const auto & t : tuples_)
            dense_[dense_index(t, domain_size_)] = true;
    }
}

bool Relation::contains(std::span<const Element> tuple) const
{
    if (tuple.size() != arity_)
        return false;
    for (Element x : tuple)
        if (x >= domain_size_)
            return false;
    if (!dense_.empty())
        return dense_[dense_index(tuple, domain_size_)];
    if (dense_capacity(arity_, domain_size_))
        return false; // empty domain
    return std::binary_search(tuples_.begin(), tuples_.end(), tuple,
                              [](const auto & a, const auto & b) {
                                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                              });
}

Structure::Structure(Signature signature, std::size_t size) : signature_(std::move(signature)), size_(size)
{
    for (const auto & s : signature_.symbols())
        relations_.emplace_back(s.arity, size_);
}

Structure::Structure(Signature signature, std::size_t size, std::vector<std::vector<Tuple>> relations)
    : signature_(std::move(signature)), size_(size)
{
    if (relations.size() != signature_.size())
        throw PreconditionError("expected " + std::to_string(signature_.size()) + " relations, got " +
                                std::to_string(relations.size()));
    for (std::size_t i = 0; i < relations.size(); ++i)
        relations_.emplace_back(signature_[i].arity, size_, std::move(relations[i]));
}

Structure Structure::from_named(Signature signature, std::size_t size,
                                const std::map<std::string, std::vector<Tuple>> & relations)
{
    std::vector<std::vector<Tuple>> rels(signature.size());
    for (const auto & [name, tuples] : relations) {
        auto i = signature.index_of(name);
        if (!i)
            throw PreconditionError("unknown symbol '" + name + "'");
        rels[*i] = tuples;
    }
    return Structure(std::move(signature), size, std::move(rels));
}

const Relation & Structure::relation(std::string_view name) const
{
    auto i = signature_.index_of(name);
    if (!i)
        throw PreconditionError("unknown symbol '" + std::string(name) + "'");
    return relations_[*i];
}

std::vector<std::size_t> Structure::symbol_alignment(const Signature & other) const
{
    std::vector<std::size_t> out;
    out.reserve(other.size());
    for (const auto & s : other.symbols())
        out.push_back(*signature_.index_of(s.name));
    return out;
}

bool operator==(const Structure & a, const Structure & b)
{
    if (a.size_ != b.size_ || !(a.signature_ == b.signature_))
        return false;
    for (std::size_t i = 0; i < a.signature_.size(); ++i)
        if (!(a.relations_[i] == b.relation(a.signature_[i].name)))
            return false;
    return true;
}

Embedding Embedding::then(const Embedding & outer) const
{
    std::vector<Element> out(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        out[i] = outer(map_[i]);
    return Embedding(std::move(out));
}

void require_same_signature(const Signature & a, const Signature & b, std::string_view context)
{
    if (!(a == b))
        throw PreconditionError(std::string(context) + ": signature mismatch (" + a.to_string() + " vs " +
                                b.to_string() + ")");
}

Structure reduct(const Structure & a, const std::set<std::string> & keep)
{
    for (const auto & name : keep)
        if (!a.signature().contains(name))
            throw PreconditionError("reduct: unknown symbol '" + name + "'");
    auto sig = a.signature().restricted_to(keep);
    std::vector<std::vector<Tuple>> rels;
    for (const auto & s : sig.symbols())
        rels.push_back(a.relation(s.name).tuples());
    return Structure(std::move(sig), a.size(), std::move(rels));
}

std::pair<Structure, Embedding> substructure(const Structure & a, const std::set<Element> & subset)
{
    std::vector<Element> inclusion(subset.begin(), subset.end());
    std::vector<std::optional<Element>> position(a.size());
    for (std::size_t i = 0; i < inclusion.size(); ++i) {
        if (inclusion[i] >= a.size())
            throw PreconditionError("substructure: element " + std::to_string(inclusion[i]) +
                                    " out of range for structure of size " + std::to_string(a.size()));
        position[inclusion[i]] = static_cast<Element>(i);
    }
    std::vector<std::vector<Tuple>> rels;
    for (const auto & rel : a.relations()) {
        std::vector<Tuple> kept;
        for (const auto & t : rel.tuples()) {
            Tuple mapped;
            mapped.reserve(t.size());
            for (Element x : t) {
                if (!position[x])
                    break;
                mapped.push_back(*position[x]);
            }
            if (mapped.size() == t.size())
                kept.push_back(std::move(mapped));
        }
        rels.push_back(std::move(kept));
    }
    return {Structure(a.signature(), inclusion.size(), std::move(rels)), Embedding(std::move(inclusion))};
}

Structure relabel(const Structure & a, std::span<const Element> perm)
{
    std::vector<std::vector<Tuple>> rels;
    for (const auto & rel : a.relations()) {
        std::vector<Tuple> out;
        out.reserve(rel.size());
        for (const auto & t : rel.tuples()) {
            Tuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                m[i] = perm[t[i]];
            out.push_back(std::move(m));
        }
        rels.push_back(std::move(out));
    }
    return Structure(a.signature(), a.size(), std::move(rels));
}

Structure combine(const Structure & a, const Structure & b)
{
    if (a.size() != b.size())
        throw PreconditionError("combine: domain sizes differ");
    auto sig = a.signature().union_with(b.signature());
    std::vector<std::vector<Tuple>> rels;
    for (const auto & r : a.relations())
        rels.push_back(r.tuples());
    for (const auto & r : b.relations())
        rels.push_back(r.tuples());
    return Structure(std::move(sig), a.size(), std::move(rels));
}

Structure rename_structure(const Structure & a, const std::map<std::string, std::string> & rename)
{
    std::vector<Symbol> symbols;
    for (const auto & s : a.signature().symbols()) {
        auto it = rename.find(s.name);
        symbols.push_back({it == rename.end() ? s.name : it->second, s.arity});
    }
    std::vector<std::vector<Tuple>> rels;
    for (const auto & r : a.relations())
        rels.push_back(r.tuples());
    return Structure(Signature(std::move(symbols)), a.size(), std::move(rels));
}

bool is_injective(std::span<const Element> map)
{
    std::vector<Element> sorted(map.begin(), map.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

namespace {

bool map_in_range(std::span<const Element> map, const Structure & from, const Structure & to)
{
    if (map.size() != from.size())
        return false;
    return std::all_of(map.begin(), map.end(), [&](Element x) { return x < to.size(); });
}

Tuple apply(std::span<const Element> map, const Tuple & t)
{
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        out[i] = map[t[i]];
    return out;
}

} // namespace

bool is_homomorphism(std::span<const Element> map, const Structure & from, const Structure & to)
{
    require_same_signature(from.signature(), to.signature(), "is_homomorphism");
    if (!map_in_range(map, from, to))
        return false;
    auto align = to.symbol_alignment(from.signature());
    for (std::size_t s = 0; s < from.signature().size(); ++s)
        for (const auto & t : from.relation(s).tuples())
            if (!to.holds(align[s], apply(map, t)))
                return false;
    return true;
}

bool is_embedding(std::span<const Element> map, const Structure & from, const Structure & to)
{
    require_same_signature(from.signature(), to.signature(), "is_embedding");
    if (!map_in_range(map, from, to) || !is_injective(map))
        return false;
    if (!is_homomorphism(map, from, to))
        return false;
    // Reflection: every target tuple inside the image pulls back.
    std::vector<std::optional<Element>> inverse(to.size());
    for (std::size_t i = 0; i < map.size(); ++i)
        inverse[map[i]] = static_cast<Element>(i);
    auto align = from.symbol_alignment(to.signature());
    for (std::size_t s = 0; s < to.signature().size(); ++s) {
        for (const auto & t : to.relation(s).tuples()) {
            Tuple back;
            for (Element x : t) {
                if (!inverse[x])
                    break;
                back.push_back(*inverse[x]);
            }
            if (back.size() == t.size() && !from.holds(align[s], back))
                return false;
        }
    }
    return true;
}

bool has_injective_relations(const Structure & a)
{
    for (const auto & rel : a.relations())
        for (const auto & t : rel.tuples())
            if (!is_injective(t))
                return false;
    return true;
}

} // namespace ramsey
