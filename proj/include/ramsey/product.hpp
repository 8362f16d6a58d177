#pragma once

#include "ramsey/structure.hpp"

#include <set>
#include <string>
#include <utility>

namespace ramsey {

/// Full product of two structures with disjoint signatures. The domain is
/// the set of pairs (a, b), flattened row-major as a * |right| + b. A tuple
/// of pairs is in a left symbol's relation iff its first coordinates are,
/// and in a right symbol's relation iff its second coordinates are.
/// Throws PreconditionError when the signatures overlap.
Structure full_product(const Structure & left, const Structure & right);

/// Flat index of the pair (a, b) in a product whose right factor has
/// `right_size` elements.
inline Element product_index(Element a, Element b, std::size_t right_size)
{
    return static_cast<Element>(a * right_size + b);
}

inline std::pair<Element, Element> product_pair(Element index, std::size_t right_size)
{
    return {static_cast<Element>(index / right_size), static_cast<Element>(index % right_size)};
}

/// Splits g's signature into `left` and `right`, forms the full product of
/// the two reducts and compares its diagonal {(d,d)} with g. Always true;
/// the check exists to exercise the construction.
/// Throws PreconditionError unless left and right partition the signature.
bool diagonal_check(const Structure & g, const std::set<std::string> & left, const std::set<std::string> & right);

} // namespace ramsey
