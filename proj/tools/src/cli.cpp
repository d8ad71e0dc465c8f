#include "perturb/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "perturb/cli/expression.hpp"
#include "perturb/error.hpp"
#include "perturb/goze.hpp"
#include "perturb/matperturb.hpp"
#include "perturb/oracle.hpp"
#include "perturb/parse.hpp"
#include "perturb/transfer.hpp"

namespace perturb::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  int trunc = kDefaultTruncation;
  std::uint64_t seed = 0;
  bool json = false;
};

// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  for (const auto& piece : split_top_level(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != piece.size()) throw ParseError("invalid grid value '" + piece + "'", 1, 1);
    grid.push_back(v);
  }
  return grid;
}

ExactPoly require_exact(const PerturbedPolynomial& p, const char* what) {
  for (const auto& c : p.coeffs()) {
    if (!c.is_constant()) throw DomainError(std::string(what) + " must have constant coefficients");
  }
  return shadow_poly(p).with_var(p.var());
}

GaussianRational parse_scalar(const std::string& text) {
  const TruncatedSeries s = parse_series(text, SeriesRing::make({}, 1));
  return s.standard_part();
}

Json step_json(const RemainderStep& s) {
  return Json{{"dividend", s.dividend.to_string()},     {"divisor", s.divisor.to_string()},
              {"quotient", s.quotient.to_string()},     {"remainder", s.remainder.to_string()},
              {"stripped", s.stripped},                 {"remainder_infinitesimal", s.remainder_infinitesimal}};
}

Json asym_json(const RootAsymptotics& a) {
  Json j{{"base_root", a.base_root.to_string(false)}, {"order", a.order}, {"rhs", a.rhs.to_string()}};
  if (a.linear) j["linear"] = a.linear->to_string();
  if (a.leading_level) j["leading_level"] = *a.leading_level;
  j["statement"] = a.statement();
  return j;
}

Json rational_json(const ExactRational& r) {
  return Json{{"num", r.num().to_string()}, {"den", r.den().to_string()}};
}

Json report_json(const oracle::ConvergenceReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    auto c = [](oracle::Complex z) { return Json::array({z.real(), z.imag()}); };
    Json js{{"t0", s.t0}, {"observed", c(s.observed)}, {"predicted", c(s.predicted)},
            {"ratio", c(s.ratio)}};
    if (std::isfinite(s.error)) {
      js["error"] = s.error;
    } else {
      js["error"] = nullptr;
    }
    samples.push_back(std::move(js));
  }
  Json j{{"samples", samples}, {"verdict", std::string(oracle::to_string(r.verdict))},
         {"tolerance", r.tolerance}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// Aligns polynomial variable names when one side is a constant.
void unify_var(PerturbedPolynomial& a, PerturbedPolynomial& b) {
  if (a.var() == b.var()) return;
  if (b.degree() <= 0) {
    b = b.with_var(a.var());
  } else if (a.degree() <= 0) {
    a = a.with_var(b.var());
  } else {
    throw DomainError("polynomials use different indeterminates " + a.var() + " and " + b.var());
  }
}

class Commands {
 public:
  Commands(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  int pgcd_cmd(const std::string& t1, const std::string& t2) {
    const RingPtr ring = ring_for({t1, t2}, g_.trunc);
    PerturbedPolynomial a = parse_polynomial(t1, ring);
    PerturbedPolynomial b = parse_polynomial(t2, ring);
    unify_var(a, b);
    const PgcdResult r = pgcd(a, b);
    const ExactPoly shadow = shadow_poly(r.pgcd);
    const std::string monic = shadow.is_zero() ? "0" : shadow.monic().with_var(a.var()).to_string();
    if (g_.json) {
      Json trace = Json::array();
      for (const auto& s : r.trace) trace.push_back(step_json(s));
      out_ << Json{{"pgcd", r.pgcd.to_string()}, {"monic_shadow", monic}, {"stripped", r.stripped},
                   {"trace", trace}}.dump(2)
           << '\n';
      return kSuccess;
    }
    out_ << "PGCD: " << r.pgcd.to_string() << '\n' << "monic shadow: " << monic << '\n' << "remainder trace:\n";
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& s = r.trace[i];
      out_ << "  " << i + 1 << ". " << s.dividend.to_string() << " = (" << s.divisor.to_string() << ")*("
           << s.quotient.to_string() << ") + " << s.remainder.to_string();
      if (s.stripped > 0) out_ << "  [stripped " << s.stripped << " infinitesimal leading term(s)]";
      if (s.remainder_infinitesimal) out_ << "  [infinitesimal]";
      out_ << '\n';
    }
    return kSuccess;
  }

  int roots_cmd(const std::string& base_text, const std::string& xi_text, const std::string& root_text,
                std::optional<unsigned> mult, bool balance) {
    const RingPtr ring = ring_for({base_text, xi_text}, g_.trunc);
    PerturbedPolynomial base = parse_polynomial(base_text, ring);
    PerturbedPolynomial xi = parse_polynomial(xi_text, ring);
    unify_var(base, xi);
    const ExactPoly p = require_exact(base, "--base");
    const GaussianRational u = parse_scalar(root_text);
    std::vector<RootAsymptotics> result;
    if (balance) {
      result = dominant_balance(p, xi, u);
    } else {
      const unsigned k = mult.value_or(root_multiplicity(p, u));
      result.push_back(root_correction(p, xi, u, k));
    }
    if (g_.json) {
      Json list = Json::array();
      for (const auto& a : result) list.push_back(asym_json(a));
      out_ << Json{{"asymptotics", list}}.dump(2) << '\n';
    } else {
      for (const auto& a : result) out_ << a.statement() << '\n';
    }
    return kSuccess;
  }

  int goze_cmd(const std::string& vector_text) {
    const std::vector<std::string> parts = split_top_level(vector_text);
    std::vector<std::string_view> views(parts.begin(), parts.end());
    std::vector<std::string> gens = collect_generators(views);
    if (gens.empty()) gens.emplace_back("t");
    if (gens.size() != 1) throw DomainError("Goze decomposition needs a single generator");
    const RingPtr ring = SeriesRing::make(gens, g_.trunc);
    std::vector<TruncatedSeries> entries;
    for (const auto& p : parts) entries.push_back(parse_series(p, ring));
    const GozeDecomposition d = decompose(entries);
    if (g_.json) {
      Json levels = Json::array();
      for (const auto& l : d.levels) {
        Json u = Json::array();
        for (const auto& c : l.direction) u.push_back(c.to_string(false));
        levels.push_back(Json{{"alpha", l.alpha.to_string()}, {"U", u}});
      }
      Json j{{"levels", levels}, {"rank", d.rank()}};
      if (d.truncation_limited) j["truncation_limited"] = true;
      out_ << j.dump(2) << '\n';
      return kSuccess;
    }
    for (std::size_t i = 0; i < d.levels.size(); ++i) {
      out_ << "alpha" << i + 1 << " = " << d.levels[i].alpha.to_string() << "   U" << i + 1 << " = (";
      for (std::size_t k = 0; k < d.levels[i].direction.size(); ++k) {
        out_ << (k ? ", " : "") << d.levels[i].direction[k].to_string(false);
      }
      out_ << ")\n";
    }
    out_ << "rank " << d.rank() << (d.truncation_limited ? " (truncation-limited)" : "") << '\n';
    return kSuccess;
  }

  int charpoly_cmd(const std::string& matrix) {
    const PerturbedMatrix m = parse_matrix(matrix, g_.trunc);
    const PerturbedPolynomial c = char_poly(m);
    const ExactPoly ca = char_poly(m.base());
    const PerturbedPolynomial xi = c - PerturbedPolynomial::from_exact(ca, m.ring());
    const SeriesMatrix full = m.full();
    Json sums = Json::array();
    for (std::size_t k = 1; k <= m.order(); ++k) sums.push_back(minor_sum(full, k).to_string());
    if (g_.json) {
      out_ << Json{{"charpoly", c.to_string()}, {"base_charpoly", ca.to_string()}, {"xi", xi.to_string()},
                   {"minor_sums", sums}}.dump(2)
           << '\n';
    } else {
      out_ << "C(X) = " << c.to_string() << '\n'
           << "C_A(X) = " << ca.to_string() << '\n'
           << "Xi(X) = " << xi.to_string() << '\n';
      for (std::size_t k = 0; k < sums.size(); ++k) {
        out_ << "Q" << k + 1 << " = " << sums[k].get<std::string>() << '\n';
      }
    }
    return kSuccess;
  }

  int eigshift_cmd(const std::string& matrix, const std::string& eigen, std::optional<unsigned> mult) {
    const PerturbedMatrix m = parse_matrix(matrix, g_.trunc);
    const RootAsymptotics a = eigenvalue_correction(m, parse_scalar(eigen), mult.value_or(0));
    if (g_.json) {
      out_ << asym_json(a).dump(2) << '\n';
    } else {
      out_ << a.statement() << '\n';
    }
    return kSuccess;
  }

  int conservative_cmd(const std::string& matrix) {
    const PerturbedMatrix m = parse_matrix(matrix, g_.trunc);
    const auto res = conservative_residuals(m);
    bool all_zero = true;
    Json list = Json::array();
    for (const auto& r : res) {
      list.push_back(r.to_string());
      all_zero = all_zero && r.is_zero();
    }
    if (g_.json) {
      out_ << Json{{"residuals", list}, {"conservative", all_zero}}.dump(2) << '\n';
    } else {
      for (std::size_t k = 0; k < res.size(); ++k) out_ << "residual" << k + 1 << " = " << res[k].to_string() << '\n';
      out_ << (all_zero ? "conservative" : "not conservative") << '\n';
    }
    return kSuccess;
  }

  int orbitdim_cmd(const std::string& matrix) {
    const std::size_t d = orbit_dimension(parse_matrix(matrix, g_.trunc).base());
    if (g_.json) {
      out_ << Json{{"orbit_dimension", d}}.dump(2) << '\n';
    } else {
      out_ << d << '\n';
    }
    return kSuccess;
  }

  int hermitian_cmd(const std::string& matrix, const std::string& eigen,
                    const std::optional<std::string>& direction, const std::optional<std::string>& alpha) {
    const PerturbedMatrix m = parse_matrix(matrix, g_.trunc);
    const GaussianRational lambda = parse_scalar(eigen);
    std::optional<TruncatedSeries> a1;
    std::optional<ConstantMatrix> u1;
    if (direction || alpha) {
      if (!direction || !alpha) throw DomainError("--direction and --alpha must be given together");
      u1 = parse_constant_matrix(*direction);
      if (u1->order() != m.order()) throw DomainError("direction order does not match the matrix");
      const RingPtr ring = ring_for({*alpha}, g_.trunc);
      a1 = parse_series(*alpha, ring->arity() == 0 ? SeriesRing::univariate(g_.trunc) : ring);
    } else {
      const GozeDecomposition d = decompose_matrix(m.pert());
      if (d.levels.empty()) {
        a1 = TruncatedSeries(m.ring());
        u1 = ConstantMatrix(m.order(), GaussianRational{});
      } else {
        a1 = d.levels.front().alpha;
        u1 = level_matrix(d.levels.front(), m.order());
      }
    }
    const TruncatedSeries rho = hermitian_first_order(m.base(), *u1, *a1, lambda);
    if (g_.json) {
      out_ << Json{{"eigenvalue", lambda.to_string(false)}, {"alpha1", a1->to_string()}, {"rho", rho.to_string()}}
                  .dump(2)
           << '\n';
    } else {
      out_ << "rho ~ " << rho.to_string() << '\n';
    }
    return kSuccess;
  }

  int simplify_cmd(const std::string& num, const std::string& den) {
    const RingPtr ring = ring_for({num, den}, g_.trunc);
    PerturbedPolynomial n = parse_polynomial(num, ring);
    PerturbedPolynomial d = parse_polynomial(den, ring);
    unify_var(n, d);
    if (n.var() == "X" && n.degree() <= 0 && d.degree() <= 0) {
      n = n.with_var("p");
      d = d.with_var("p");
    }
    const SimplificationReport r = simplify({n, d});
    if (g_.json) {
      Json trace = Json::array();
      for (const auto& s : r.trace) trace.push_back(step_json(s));
      Json first = Json::object();
      for (const auto& [g, c] : r.first_order) first[g] = rational_json(c);
      out_ << Json{{"reduced_shadow", rational_json(r.reduced_shadow)},
                   {"pgcd", r.pgcd.to_string()},
                   {"trace", trace},
                   {"num_quotient", r.num_quotient.to_string()},
                   {"num_residual", r.num_residual.to_string()},
                   {"den_quotient", r.den_quotient.to_string()},
                   {"den_residual", r.den_residual.to_string()},
                   {"first_order", first}}
                  .dump(2)
           << '\n';
      return kSuccess;
    }
    out_ << "reduced: " << r.reduced_shadow.to_string() << '\n' << "PGCD: " << r.pgcd.to_string() << '\n';
    if (r.first_order.empty()) {
      out_ << "first-order correction: none\n";
    } else {
      out_ << "first-order correction:\n";
      for (const auto& [g, c] : r.first_order) out_ << "  " << g << ": " << c.to_string() << '\n';
    }
    return kSuccess;
  }

  int verify_cmd(const std::string& name, const std::string& grid_text) {
    std::vector<double> grid = parse_grid(grid_text);
    oracle::AsymptoticsCheck check;
    check.root_finder.seed = g_.seed;
    const RingPtr t_ring = SeriesRing::univariate(g_.trunc);
    const TruncatedSeries t = TruncatedSeries::generator(t_ring, "t");

    auto matrix_case = [&](const PerturbedMatrix& m, const GaussianRational& lambda) {
      const ExactPoly ca = char_poly(m.base());
      const PerturbedPolynomial xi = char_poly(m) - PerturbedPolynomial::from_exact(ca, m.ring());
      return oracle::verify_root_asymptotics(ca, xi, eigenvalue_correction(m, lambda), grid, check);
    };
    auto poly_case = [&](const ExactPoly& p, const PerturbedPolynomial& xi, const GaussianRational& u,
                         std::optional<TruncatedSeries> rhs_override) {
      RootAsymptotics a = root_correction(p, xi, u, root_multiplicity(p, u));
      if (rhs_override) a.rhs = *rhs_override;
      return oracle::verify_root_asymptotics(p, xi, a, grid, check);
    };
    const ExactPoly x_minus_1 = ExactPoly::linear_factor(1);
    const PerturbedPolynomial minus_t(t_ring, {-t});

    oracle::ConvergenceReport report;
    if (name == "jordan2") {
      report = matrix_case(parse_matrix(R"({"base":[["1","1"],["0","1"]],"pert":[["0","0"],["t","0"]]})", g_.trunc), 1);
    } else if (name == "nilpotent3") {
      report = matrix_case(
          parse_matrix(R"({"base":[[0,1,0],[0,0,1],[0,0,0]],"pert":[["0","0","0"],["0","0","0"],["t","0","0"]]})",
                       g_.trunc),
          0);
    } else if (name == "simple-root") {
      const ExactPoly p = ExactPoly({-1, 0, 1});
      report = poly_case(p, PerturbedPolynomial(t_ring, {t}), 1, std::nullopt);
    } else if (name == "double-root") {
      report = poly_case(x_minus_1 * x_minus_1, minus_t, 1, std::nullopt);
    } else if (name == "refute-half") {
      report = poly_case(x_minus_1 * x_minus_1, minus_t, 1, t * GaussianRational::fraction(1, 2));
    } else if (name == "hermitian") {
      const PerturbedMatrix m = parse_matrix(R"({"base":[[0,0],[0,1]],"pert":[["t","0"],["0","0"]]})", g_.trunc);
      const GozeDecomposition d = decompose_matrix(m.pert());
      const RootAsymptotics a{
          0, 1, hermitian_first_order(m.base(), level_matrix(d.levels.front(), 2), d.levels.front().alpha, 0),
          std::nullopt, std::nullopt};
      const ExactPoly ca = char_poly(m.base());
      report = oracle::verify_root_asymptotics(
          ca, char_poly(m) - PerturbedPolynomial::from_exact(ca, m.ring()), a, grid, check);
    } else if (name == "conservative") {
      const PerturbedMatrix m = parse_matrix(R"({"base":[[0,0],[0,0]],"pert":[["0","t"],["0","0"]]})", g_.trunc);
      RootAsymptotics a{0, 2, TruncatedSeries(m.ring()), std::nullopt, std::nullopt};
      const ExactPoly ca = char_poly(m.base());
      report = oracle::verify_root_asymptotics(
          ca, char_poly(m) - PerturbedPolynomial::from_exact(ca, m.ring()), a, grid, check);
    } else if (name == "pgcd-example" || name == "transfer") {
      const RingPtr ring = SeriesRing::make({"e1", "e2", "e3"}, g_.trunc);
      oracle::Sampling sampling{{1.0, 2.0, 3.0}};
      const char* var = name == "transfer" ? "p" : "X";
      const std::string v(var);
      const PerturbedPolynomial a = parse_polynomial(v + "^3 - e1*" + v + " - 1 + e2", ring);
      const PerturbedPolynomial b = parse_polynomial(v + "^2 + e3*" + v + " - 1", ring);
      if (name == "pgcd-example") {
        report = oracle::verify_pgcd(a, b, *std::min_element(grid.begin(), grid.end()), sampling,
                                     check.root_finder);
      } else {
        const RationalFunction h{a, b};
        report = oracle::verify_transfer(h, simplify(h), 2.0, grid, sampling);
      }
    } else {
      throw CLI::ValidationError("--case", "unknown case '" + name + "'");
    }
    Json j = report_json(report);
    j = Json{{"case", name}, {"report", j}};
    out_ << j.dump(2) << '\n';
    return report.verdict == oracle::Verdict::pass ? kSuccess : kOracleFailed;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact perturbation algebra: infinitesimals as truncated power series", "perturb"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--trunc", g.trunc, "Total-degree truncation T")->check(CLI::Range(1, 64));
  app.add_option("--seed", g.seed, "Seed for the numeric oracle");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::string p1, p2, base, xi, root, vec, matrix, eigen, num, den, vcase, grid = "1e-2,1e-3,1e-4";
  std::optional<unsigned> mult;
  std::optional<std::string> direction, alpha;
  bool balance = false;

  auto* pgcd_app = app.add_subcommand("pgcd", "PGCD of two perturbed polynomials with remainder trace");
  pgcd_app->add_option("--p1", p1)->required();
  pgcd_app->add_option("--p2", p2)->required();

  auto* roots_app = app.add_subcommand("roots", "Leading asymptotics of perturbed roots");
  roots_app->add_option("--base", base, "Unperturbed polynomial P")->required();
  roots_app->add_option("--xi", xi, "Infinitesimal perturbation Xi")->required();
  roots_app->add_option("--root", root, "Root u of P")->required();
  roots_app->add_option("--mult", mult, "Multiplicity k (default: exact multiplicity)");
  roots_app->add_flag("--balance", balance, "Dominant balance around a double root");

  auto* goze_app = app.add_subcommand("goze", "Goze decomposition of a vector of infinitesimals");
  goze_app->add_option("--vector", vec, "Comma-separated series")->required();

  auto add_matrix = [&](CLI::App* sub) { sub->add_option("--matrix", matrix, "Matrix JSON")->required(); };
  auto* charpoly_app = app.add_subcommand("charpoly", "Characteristic polynomial of A + E");
  add_matrix(charpoly_app);
  auto* eig_app = app.add_subcommand("eigshift", "Leading eigenvalue correction");
  add_matrix(eig_app);
  eig_app->add_option("--eigenvalue", eigen)->required();
  eig_app->add_option("--mult", mult);
  auto* cons_app = app.add_subcommand("conservative", "Conservative-perturbation residuals");
  add_matrix(cons_app);
  auto* orbit_app = app.add_subcommand("orbitdim", "Dimension of the conjugation orbit of A");
  add_matrix(orbit_app);
  auto* herm_app = app.add_subcommand("hermitian", "First-order shift of a simple Hermitian eigenvalue");
  add_matrix(herm_app);
  herm_app->add_option("--eigenvalue", eigen)->required();
  herm_app->add_option("--direction", direction, "Direction U1 as a JSON array of rows");
  herm_app->add_option("--alpha", alpha, "First scale alpha1");

  auto* tf_app = app.add_subcommand("simplify-tf", "Reduce an uncertain transfer function");
  tf_app->add_option("--num", num)->required();
  tf_app->add_option("--den", den)->required();

  auto* verify_app = app.add_subcommand("verify", "Numeric oracle check of a built-in case");
  verify_app->add_option("--case", vcase)
      ->required()
      ->check(CLI::IsMember({"jordan2", "nilpotent3", "simple-root", "double-root", "pgcd-example", "transfer",
                             "hermitian", "conservative", "refute-half"}));
  verify_app->add_option("--grid", grid, "Comma-separated t0 values");

  std::vector<const char*> argv{"perturb"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  Commands cmd(g, out);
  try {
    if (*pgcd_app) return cmd.pgcd_cmd(p1, p2);
    if (*roots_app) return cmd.roots_cmd(base, xi, root, mult, balance);
    if (*goze_app) return cmd.goze_cmd(vec);
    if (*charpoly_app) return cmd.charpoly_cmd(matrix);
    if (*eig_app) return cmd.eigshift_cmd(matrix, eigen, mult);
    if (*cons_app) return cmd.conservative_cmd(matrix);
    if (*orbit_app) return cmd.orbitdim_cmd(matrix);
    if (*herm_app) return cmd.hermitian_cmd(matrix, eigen, direction, alpha);
    if (*tf_app) return cmd.simplify_cmd(num, den);
    if (*verify_app) return cmd.verify_cmd(vcase, grid);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const oracle::ConvergenceError& e) {
    err << "oracle error: " << e.what() << '\n';
    return kOracleFailed;
  } catch (const Error& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace perturb::cli
