#pragma once

#include "ramsey/structure.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace ramsey {

/// Byte string determined by the isomorphism type of a structure:
/// equal codes if and only if the structures are isomorphic.
struct CanonicalForm
{
    std::vector<std::uint8_t> code;

    friend auto operator<=>(const CanonicalForm &, const CanonicalForm &) = default;
};

/// Result of canonical labelling: `labelling[x]` is the canonical position
/// of element x.
struct CanonicalLabelling
{
    CanonicalForm form;
    std::vector<Element> labelling;
};

/// Colour refinement orders the elements into cells; the code is the
/// lexicographically least encoding over all cell-respecting relabellings,
/// found by a pruned depth-first search. Exact at every size.
CanonicalLabelling canonical_labelling(const Structure & a);

/// Variant where isomorphisms must also preserve the given vertex colours.
CanonicalLabelling canonical_labelling(const Structure & a, std::span<const std::uint32_t> colours);

CanonicalForm canonical_form(const Structure & a);
CanonicalForm canonical_form(const Structure & a, std::span<const std::uint32_t> colours);

bool are_isomorphic(const Structure & a, const Structure & b);

/// a relabelled into canonical position order.
Structure canonical_representative(const Structure & a);

} // namespace ramsey
