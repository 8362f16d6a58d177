#pragma once

#include "ramsey/structure.hpp"

#include <functional>
#include <vector>

namespace ramsey {

/// Streams every embedding of `from` into `to` in lexicographic order of
/// the image sequence. The visitor returns false to stop early.
/// Throws PreconditionError on signature mismatch.
void for_each_embedding(const Structure & from, const Structure & to,
                        const std::function<bool(const Embedding &)> & visit);

/// All embeddings, lexicographic by image.
std::vector<Embedding> enumerate_embeddings(const Structure & from, const Structure & to);

std::size_t count_embeddings(const Structure & from, const Structure & to);

bool embeds_into(const Structure & from, const Structure & to);

/// Embeddings of `a` onto itself; the identity always comes first.
std::vector<Embedding> automorphisms(const Structure & a);

} // namespace ramsey
