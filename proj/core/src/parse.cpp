#include "perturb/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "perturb/error.hpp"

namespace perturb {

namespace {

enum class Tok { number, ident, op, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;  // 1-based
  std::size_t end_offset = 0;
  std::size_t end_column = 1;  // column just past the token
};

bool is_generator_name(std::string_view s) {
  return s == "t" || (s.size() == 2 && s[0] == 'e' && s[1] >= '1' && s[1] <= '9');
}

std::vector<Token> tokenize(std::string_view text) {
  if (text.size() > kMaxParseInput) throw ParseError("input exceeds 1 MiB", 1, 1);
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    Token tok;
    tok.offset = i;
    tok.line = line;
    tok.column = col;
    std::size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Tok::number;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      tok.kind = Tok::ident;
      // 'e' takes exactly one digit so that "e1e2" reads as e1*e2.
      if (c == 'e' && j + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        j += 2;
      } else {
        ++j;
      }
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      tok.kind = Tok::op;
      ++j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    tok.text = std::string(text.substr(i, j - i));
    col += j - i;
    i = j;
    tok.end_offset = i;
    tok.end_column = col;
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::end;
  end.offset = end.end_offset = text.size();
  end.line = line;
  end.column = end.end_column = col;
  out.push_back(end);
  return out;
}

// Dense polynomial in the indeterminate with series coefficients.
struct Value {
  std::vector<TruncatedSeries> c;
};

Value constant(const RingPtr& ring, const TruncatedSeries& s) {
  Value v;
  v.c.push_back(s);
  (void)ring;
  return v;
}

Value add(Value a, const Value& b, bool negate) {
  if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), TruncatedSeries(b.c.front().ring()));
  for (std::size_t k = 0; k < b.c.size(); ++k) {
    if (negate) {
      a.c[k] -= b.c[k];
    } else {
      a.c[k] += b.c[k];
    }
  }
  return a;
}

Value mul(const Value& a, const Value& b) {
  Value out;
  out.c.assign(a.c.size() + b.c.size() - 1, TruncatedSeries(a.c.front().ring()));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  }
  return out;
}

bool is_scalar(const Value& v) {
  return std::all_of(v.c.begin() + 1, v.c.end(), [](const TruncatedSeries& s) { return s.is_zero(); });
}

class Parser {
 public:
  Parser(std::string_view text, RingPtr ring, bool allow_indeterminate)
      : tokens_(tokenize(text)), ring_(std::move(ring)), allow_indeterminate_(allow_indeterminate) {}

  Value parse_expr() {
    Value v = parse_term();
    while (peek_op('+') || peek_op('-')) {
      const bool minus = advance().text == "-";
      v = add(std::move(v), parse_term(), minus);
    }
    return v;
  }

  Value parse_factor_public() { return parse_factor(); }

  bool at_end() const { return tokens_[pos_].kind == Tok::end; }
  bool peek_op(char c) const {
    return tokens_[pos_].kind == Tok::op && tokens_[pos_].text[0] == c;
  }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& next = tokens_[pos_];
    std::size_t line = next.line, column = 1;
    if (pos_ > 0) {
      line = tokens_[pos_ - 1].line;
      column = tokens_[pos_ - 1].end_column;
    }
    const std::string found = next.kind == Tok::end ? "end of input" : "'" + next.text + "'";
    throw ParseError(what + " before " + found, line, column);
  }

  std::size_t first_offset() const { return tokens_.front().offset; }
  std::size_t consumed_end() const { return pos_ == 0 ? 0 : tokens_[pos_ - 1].end_offset; }
  const std::string& var() const { return var_; }

 private:
  bool starts_atom() const {
    const Token& t = tokens_[pos_];
    return t.kind == Tok::ident || peek_op('(');
  }

  Value parse_term() {
    Value v = parse_unary();
    while (true) {
      if (peek_op('*')) {
        advance();
      } else if (!starts_atom()) {
        break;
      }
      v = mul(v, parse_unary());
    }
    return v;
  }

  Value parse_unary() {
    if (peek_op('-') || peek_op('+')) {
      const bool minus = advance().text == "-";
      Value v = parse_unary();
      if (minus) {
        for (auto& s : v.c) s = -s;
      }
      return v;
    }
    return parse_factor();
  }

  Value parse_factor() {
    Value base = parse_atom();
    if (!peek_op('^')) return base;
    advance();
    if (tokens_[pos_].kind != Tok::number) fail("expected an unsigned integer exponent");
    const Token& e = advance();
    if (e.text.size() > 6) fail("exponent overflow");
    const unsigned exponent = static_cast<unsigned>(std::stoul(e.text));
    if (!is_scalar(base) && exponent > 4096) fail("exponent overflow");
    return power(base, exponent);
  }

  Value power(Value base, unsigned n) {
    Value result = constant(ring_, TruncatedSeries(ring_, 1));
    if (is_scalar(base)) {
      result.c[0] = base.c[0].pow(n);
      return result;
    }
    while (n > 0) {
      if (n & 1u) result = mul(result, base);
      n >>= 1;
      if (n > 0) base = mul(base, base);
    }
    return result;
  }

  Value parse_atom() {
    const Token& t = tokens_[pos_];
    if (t.kind == Tok::number) {
      advance();
      mpq_class q(mpz_class(t.text), mpz_class(1));
      if (peek_op('/') && tokens_[pos_ + 1].kind == Tok::number) {
        advance();
        const Token& d = advance();
        const mpz_class den(d.text);
        if (den == 0) {
          --pos_;
          fail("zero denominator");
        }
        q = mpq_class(mpz_class(t.text), den);
        q.canonicalize();
      }
      return constant(ring_, TruncatedSeries(ring_, GaussianRational(q)));
    }
    if (t.kind == Tok::ident) {
      if (t.text == "i") {
        advance();
        return constant(ring_, TruncatedSeries(ring_, GaussianRational::imaginary_unit()));
      }
      if (t.text == "X" || t.text == "p") {
        if (!allow_indeterminate_) fail("indeterminate '" + t.text + "' is not allowed here");
        if (!var_.empty() && var_ != t.text) fail("mixed indeterminates");
        var_ = t.text;
        advance();
        Value v;
        v.c = {TruncatedSeries(ring_), TruncatedSeries(ring_, 1)};
        return v;
      }
      if (is_generator_name(t.text)) {
        if (!ring_->index_of(t.text)) fail("generator '" + t.text + "' is not in the ring");
        advance();
        return constant(ring_, TruncatedSeries::generator(ring_, t.text));
      }
      fail("unknown symbol '" + t.text + "'");
    }
    if (peek_op('(')) {
      advance();
      Value v = parse_expr();
      if (!peek_op(')')) fail("expected ')'");
      advance();
      return v;
    }
    fail("expected a number, symbol or '('");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  RingPtr ring_;
  bool allow_indeterminate_;
  std::string var_;
};

void finish(Parser& p) {
  if (!p.at_end()) p.fail("unexpected token");
}

void record_span(const Parser& p, SourceSpan* span) {
  if (span != nullptr) *span = {p.first_offset(), p.consumed_end()};
}

PerturbedPolynomial to_poly(const Value& v, const RingPtr& ring, const std::string& var) {
  return {ring, v.c, var.empty() ? "X" : var};
}

}  // namespace

std::vector<std::string> collect_generators(const std::vector<std::string_view>& texts) {
  bool seen[10] = {};
  for (std::string_view text : texts) {
    for (const Token& t : tokenize(text)) {
      if (t.kind != Tok::ident || !is_generator_name(t.text)) continue;
      seen[t.text == "t" ? 0 : t.text[1] - '0'] = true;
    }
  }
  std::vector<std::string> out;
  if (seen[0]) out.emplace_back("t");
  for (int k = 1; k <= 9; ++k) {
    if (seen[k]) out.push_back("e" + std::to_string(k));
  }
  return out;
}

RingPtr ring_for(const std::vector<std::string_view>& texts, int truncation) {
  return SeriesRing::make(collect_generators(texts), truncation);
}

TruncatedSeries parse_series(std::string_view text, const RingPtr& ring, SourceSpan* span) {
  Parser p(text, ring, false);
  Value v = p.parse_expr();
  finish(p);
  record_span(p, span);
  return v.c.front();
}

PerturbedPolynomial parse_polynomial(std::string_view text, const RingPtr& ring, SourceSpan* span) {
  Parser p(text, ring, true);
  Value v = p.parse_expr();
  finish(p);
  record_span(p, span);
  return to_poly(v, ring, p.var());
}

RationalFunction parse_rational_function(std::string_view text, const RingPtr& ring,
                                         SourceSpan* span) {
  Parser p(text, ring, true);
  Value num = p.parse_expr();
  Value den = constant(ring, TruncatedSeries(ring, 1));
  if (p.peek_op('/')) {
    p.advance();
    den = p.parse_factor_public();
  }
  finish(p);
  record_span(p, span);
  RationalFunction out{to_poly(num, ring, p.var()), to_poly(den, ring, p.var())};
  if (out.den.is_zero()) throw DomainError("denominator of a rational function is zero");
  return out;
}

}  // namespace perturb
