#pragma once

#include "ramsey/class_spec.hpp"
#include "ramsey/formula.hpp"
#include "ramsey/structure.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ramsey {

/// C -> (B)^A_r: every r-colouring of the embeddings A -> C is constant on
/// {f o e : e in Emb(A,B)} for some f in Emb(B,C).
struct ArrowInstance
{
    Structure a;
    Structure b;
    Structure c;
    std::size_t colours = 2;
};

/// Validates shared signature and colours >= 1.
ArrowInstance make_arrow_instance(Structure a, Structure b, Structure c, std::size_t colours);

enum class ArrowVerdict { holds, fails };

using Colouring = std::vector<std::uint32_t>;

struct ArrowCertificate
{
    ArrowVerdict verdict = ArrowVerdict::holds;
    /// For `fails`: colour of each embedding of A into C, indexed in
    /// enumerate_embeddings(a, c) order. No copy of B is monochromatic.
    Colouring colouring;
    /// For `holds`: true when the verdict needed the full search to refute
    /// every colouring (as opposed to a copy whose A-set has <= 1 element).
    bool exhausted = false;
    std::size_t search_nodes = 0;

    bool holds() const { return verdict == ArrowVerdict::holds; }
};

struct ArrowOptions
{
    /// Return the lexicographically least bad colouring instead of the
    /// first one found by the constraint-ordered search.
    bool canonical_certificate = false;
};

ArrowCertificate check_arrow(const ArrowInstance & inst, const ArrowOptions & options = {});

/// The sets {f o e : e in Emb(A,B)} for each f in Emb(B,C), as sorted
/// indices into enumerate_embeddings(a, c).
std::vector<std::vector<std::size_t>> copy_index_sets(const ArrowInstance & inst);

/// Re-checks a bad colouring by direct enumeration: every copy of B sees
/// at least two colours. False for colourings of the wrong length or with
/// colours out of range.
bool validate_bad_colouring(const ArrowInstance & inst, std::span<const std::uint32_t> colouring);

/// First f in Emb(B,C) (lexicographic) with the colouring constant on its
/// A-set. Throws PreconditionError for a partial or out-of-range colouring.
std::optional<Embedding> find_mono_copy(const ArrowInstance & inst, std::span<const std::uint32_t> colouring);

/// First member of `spec` (sizes |B|..max_size, canonical order within a
/// size) for which the arrow holds. Throws unless A and B are members and
/// max_size >= |B|.
std::optional<Structure> search_witness(const ClassSpec & spec, const Structure & a, const Structure & b,
                                        std::size_t colours, std::size_t max_size, unsigned threads = 1);

struct TransferReport
{
    ArrowVerdict plain = ArrowVerdict::holds;
    ArrowVerdict expanded = ArrowVerdict::holds;
    std::size_t plain_embeddings = 0;
    std::size_t expanded_embeddings = 0;
    /// Emb(A,C) and Emb(A',C') coincide as sets of maps.
    bool embeddings_equal = false;

    bool agree() const { return plain == expanded; }
};

/// Expands A, B and C by the order defined by `order` under the fresh
/// symbol `name`, and compares the arrow for the plain and the expanded
/// triple. Throws PreconditionError if the formula does not define a
/// strict linear order on each of them.
TransferReport transfer_check(const Structure & a, const Structure & b, const Structure & c, const Formula & order,
                              const std::string & name, std::size_t colours);

std::string verdict_name(ArrowVerdict v);

} // namespace ramsey
