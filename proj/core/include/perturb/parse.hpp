#pragma once

// Text syntax shared by series, perturbed polynomials and rational functions:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*')? unary)*          juxtaposition multiplies: 2t^2, 3i
//   unary  := ('+' | '-') unary | factor
//   factor := atom ('^' uint)?
//   atom   := int ('/' uint)? | 'i' | 'X' | 'p' | 't' | 'e1'..'e9' | '(' expr ')'
//
// A rational function is expr ('/' factor)?, e.g. "(p+1)/(p^2+e1*p+1)".

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "perturb/ppoly.hpp"
#include "perturb/series.hpp"
#include "perturb/transfer.hpp"

namespace perturb {

/// Inputs above this size are rejected.
inline constexpr std::size_t kMaxParseInput = std::size_t{1} << 20;

/// Byte offsets [begin, end) of a parsed expression inside its source text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Generators mentioned in the texts, in canonical order t, e1, ..., e9.
std::vector<std::string> collect_generators(const std::vector<std::string_view>& texts);

/// Ring over the generators that appear in the texts.
RingPtr ring_for(const std::vector<std::string_view>& texts, int truncation = kDefaultTruncation);

/// The texts must not mention an indeterminate.
TruncatedSeries parse_series(std::string_view text, const RingPtr& ring,
                             SourceSpan* span = nullptr);

/// The indeterminate is X or p (one per expression); constants become degree 0.
PerturbedPolynomial parse_polynomial(std::string_view text, const RingPtr& ring,
                                     SourceSpan* span = nullptr);

RationalFunction parse_rational_function(std::string_view text, const RingPtr& ring,
                                         SourceSpan* span = nullptr);

}  // namespace perturb
