#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ramsey {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// Names are non-empty strings over [A-Za-z0-9_.<].
bool is_valid_symbol_name(std::string_view name);

struct Symbol
{
    std::string name;
    std::size_t arity = 0;

    friend auto operator<=>(const Symbol &, const Symbol &) = default;
};

/// An ordered list of relation symbols. The order only matters for
/// rendering: two signatures compare equal when they hold the same
/// (name, arity) pairs.
class Signature
{
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);
    Signature(std::initializer_list<Symbol> symbols);

    const std::vector<Symbol> & symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const Symbol & operator[](std::size_t i) const { return symbols_[i]; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }
    std::set<std::string> names() const;

    bool disjoint_from(const Signature & other) const;

    /// Concatenation; throws PreconditionError if a name occurs in both.
    Signature union_with(const Signature & other) const;

    /// Symbols of this signature whose names are in `keep`, in signature order.
    Signature restricted_to(const std::set<std::string> & keep) const;

    /// Indices of the symbols sorted by name.
    std::vector<std::size_t> name_order() const;

    /// "R/2, S/3"
    std::string to_string() const;

    friend bool operator==(const Signature & a, const Signature & b);

private:
    std::vector<Symbol> symbols_;
};

/// A duplicate-free, lexicographically sorted set of tuples over {0..n-1}.
class Relation
{
public:
    Relation(std::size_t arity, std::size_t domain_size, std::vector<Tuple> tuples = {});

    std::size_t arity() const noexcept { return arity_; }
    std::size_t domain_size() const noexcept { return domain_size_; }
    const std::vector<Tuple> & tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }

    bool contains(std::span<const Element> tuple) const;
    bool contains(std::initializer_list<Element> tuple) const
    {
        return contains(std::span<const Element>(tuple.begin(), tuple.size()));
    }

    friend bool operator==(const Relation & a, const Relation & b)
    {
        return a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
    }

private:
    std::size_t arity_;
    std::size_t domain_size_;
    std::vector<Tuple> tuples_;
    std::vector<bool> dense_;
};

/// A finite relational structure on the domain {0..size-1}. Immutable once
/// constructed; relations are stored in signature order.
class Structure
{
public:
    Structure() = default;
    Structure(Signature signature, std::size_t size);
    Structure(Signature signature, std::size_t size, std::vector<std::vector<Tuple>> relations);

    static Structure from_named(Signature signature, std::size_t size,
                                const std::map<std::string, std::vector<Tuple>> & relations);

    const Signature & signature() const noexcept { return signature_; }
    std::size_t size() const noexcept { return size_; }

    const Relation & relation(std::size_t symbol) const { return relations_[symbol]; }
    const Relation & relation(std::string_view name) const;
    const std::vector<Relation> & relations() const noexcept { return relations_; }

    bool holds(std::size_t symbol, std::span<const Element> tuple) const
    {
        return relations_[symbol].contains(tuple);
    }

    /// Relations of `other`'s symbols in this structure's signature order.
    /// Requires equal signatures.
    std::vector<std::size_t> symbol_alignment(const Signature & other) const;

    friend bool operator==(const Structure & a, const Structure & b);

private:
    Signature signature_;
    std::size_t size_ = 0;
    std::vector<Relation> relations_;
};

/// Injective map from a source domain into a target domain.
class Embedding
{
public:
    Embedding() = default;
    explicit Embedding(std::vector<Element> map) : map_(std::move(map)) {}

    Element operator()(Element x) const { return map_[x]; }
    Element operator[](std::size_t x) const { return map_[x]; }
    std::size_t size() const noexcept { return map_.size(); }
    const std::vector<Element> & map() const noexcept { return map_; }

    /// x -> outer(this(x))
    Embedding then(const Embedding & outer) const;

    friend auto operator<=>(const Embedding &, const Embedding &) = default;

private:
    std::vector<Element> map_;
};

void require_same_signature(const Signature & a, const Signature & b, std::string_view context);

/// Same domain, keeping only the named symbols. Throws on unknown names.
Structure reduct(const Structure & a, const std::set<std::string> & keep);

/// Induced structure on `subset`, relabelled to {0..|S|-1} in increasing
/// order, together with the inclusion embedding.
std::pair<Structure, Embedding> substructure(const Structure & a, const std::set<Element> & subset);

/// Image of `a` under the bijection x -> perm[x].
Structure relabel(const Structure & a, std::span<const Element> perm);

/// Structure with the same domain and the union of both signatures.
Structure combine(const Structure & a, const Structure & b);

/// Same structure with every symbol renamed through `rename`.
Structure rename_structure(const Structure & a, const std::map<std::string, std::string> & rename);

bool is_injective(std::span<const Element> map);

/// Preservation of every relation, nothing more.
bool is_homomorphism(std::span<const Element> map, const Structure & from, const Structure & to);

/// Injective, preserves and reflects every relation.
bool is_embedding(std::span<const Element> map, const Structure & from, const Structure & to);

/// True when no tuple of any relation repeats an entry.
bool has_injective_relations(const Structure & a);

} // namespace ramsey
