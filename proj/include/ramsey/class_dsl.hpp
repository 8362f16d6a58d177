#pragma once

#include "ramsey/class_spec.hpp"

#include <string_view>

namespace ramsey {

/// Parses the class-spec mini-language:
///
///   LO | G | T | PLE | perm | F(n)
///   wedge(X, Y) | rename(X, "prefix") | forget(X, {sym, ...})
///
/// Whitespace is insignificant. Throws SyntaxError with the offending
/// position, or PreconditionError for semantic failures (overlapping
/// wedge, unknown forgotten symbol, F(n) with n < 3).
ClassSpec parse_class_spec(std::string_view text);

} // namespace ramsey
