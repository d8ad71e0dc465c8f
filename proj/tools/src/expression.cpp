#include "perturb/cli/expression.hpp"

#include <json.hpp>

#include "perturb/error.hpp"

namespace perturb::cli {

using nlohmann::json;

namespace {

json load(std::string_view text) {
  if (text.size() > kMaxParseInput) throw ParseError("input exceeds 1 MiB", 1, 1);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
  }
}

std::string entry_text(const json& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw ParseError("matrix entries must be strings or integers", 1, 1);
}

using Grid = std::vector<std::vector<std::string>>;

Grid grid_of(const json& rows, std::size_t n, const char* name) {
  if (!rows.is_array() || rows.size() != n) {
    throw ParseError(std::string("\"") + name + "\" must be an array of " + std::to_string(n) + " rows",
                     1, 1);
  }
  Grid out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) {
      throw ParseError(std::string("every row of \"") + name + "\" must hold " + std::to_string(n) +
                           " entries",
                       1, 1);
    }
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(entry_text(e));
    out.push_back(std::move(r));
  }
  return out;
}

GaussianRational constant_entry(const std::string& text) {
  static const RingPtr scalars = SeriesRing::make({}, 1);
  return parse_series(text, scalars).standard_part();
}

}  // namespace

PerturbedMatrix parse_matrix(std::string_view json_text, int truncation) {
  const json doc = load(json_text);
  if (!doc.is_object() || !doc.contains("base")) throw ParseError("matrix object needs \"base\"", 1, 1);
  const std::size_t n = doc.contains("n") ? doc.at("n").get<std::size_t>() : doc.at("base").size();
  if (n == 0) throw ParseError("matrix order must be positive", 1, 1);
  const Grid base = grid_of(doc.at("base"), n, "base");
  Grid pert(n, std::vector<std::string>(n, "0"));
  if (doc.contains("pert")) pert = grid_of(doc.at("pert"), n, "pert");

  std::vector<std::string_view> texts;
  for (const auto& row : pert) texts.insert(texts.end(), row.begin(), row.end());
  std::vector<std::string> gens = collect_generators(texts);
  if (gens.empty()) gens.emplace_back("t");
  const RingPtr ring = SeriesRing::make(gens, truncation);

  ConstantMatrix a(n, GaussianRational{});
  SeriesMatrix e(n, TruncatedSeries(ring));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = constant_entry(base[i][j]);
      e(i, j) = parse_series(pert[i][j], ring);
    }
  }
  return {std::move(a), std::move(e)};
}

ConstantMatrix parse_constant_matrix(std::string_view json_text) {
  const json doc = load(json_text);
  const Grid rows = grid_of(doc, doc.is_array() ? doc.size() : 0, "matrix");
  const std::size_t n = rows.size();
  ConstantMatrix a(n, GaussianRational{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = constant_entry(rows[i][j]);
  }
  return a;
}

ParsedExpression parse(std::string_view text, ExprKind expected, int truncation) {
  if (expected == ExprKind::matrix) {
    return {expected, parse_matrix(text, truncation), {0, text.size()}};
  }
  const RingPtr ring = ring_for({text}, truncation);
  SourceSpan span;
  switch (expected) {
    case ExprKind::series: {
      TruncatedSeries s = parse_series(text, ring, &span);
      return {expected, std::move(s), span};
    }
    case ExprKind::polynomial: {
      PerturbedPolynomial p = parse_polynomial(text, ring, &span);
      return {expected, std::move(p), span};
    }
    default: {
      RationalFunction h = parse_rational_function(text, ring, &span);
      return {expected, std::move(h), span};
    }
  }
}

}  // namespace perturb::cli
