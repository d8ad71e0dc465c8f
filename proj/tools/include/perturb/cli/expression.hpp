#pragma once

// Front-end parsing: text expressions and JSON matrices into library values.

#include <string_view>
#include <variant>

#include "perturb/matperturb.hpp"
#include "perturb/parse.hpp"
#include "perturb/transfer.hpp"

namespace perturb::cli {

enum class ExprKind { series, polynomial, rational_function, matrix };

struct ParsedExpression {
  ExprKind kind;
  std::variant<TruncatedSeries, PerturbedPolynomial, RationalFunction, PerturbedMatrix> payload;
  SourceSpan source_span;
};

/// Parses `text` as the expected kind in a ring over the generators it mentions.
/// Matrices use the JSON form {"n":2,"base":[["1","1"],["0","1"]],"pert":[["0","0"],["t","0"]]}.
ParsedExpression parse(std::string_view text, ExprKind expected,
                       int truncation = kDefaultTruncation);

/// A matrix from its JSON form. Entries are strings in the series grammar or
/// JSON integers; "pert" is optional. Without generators the ring is Q(i)[[t]].
PerturbedMatrix parse_matrix(std::string_view json_text, int truncation = kDefaultTruncation);

/// A constant matrix given as a JSON array of rows.
ConstantMatrix parse_constant_matrix(std::string_view json_text);

}  // namespace perturb::cli
