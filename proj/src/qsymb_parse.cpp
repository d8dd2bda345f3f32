#include <cctype>
#include <optional>

#include "qheis/qsymb.hpp"

namespace qheis::symb {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
      position(pos) {}

namespace {

enum class TokKind { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  TokKind kind;
  std::size_t pos = 0;
  Rational number{0};    // TokKind::number
  std::string text;      // TokKind::ident
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    current_.pos = pos_;
    if (pos_ >= text_.size()) {
      current_.kind = TokKind::end;
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.kind = TokKind::number;
      current_.number = lex_rational();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_.kind = TokKind::ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    ++pos_;
    switch (c) {
      case '+': current_.kind = TokKind::plus; return;
      case '-': current_.kind = TokKind::minus; return;
      case '*': current_.kind = TokKind::star; return;
      case '^': current_.kind = TokKind::caret; return;
      case '(': current_.kind = TokKind::lparen; return;
      case ')': current_.kind = TokKind::rparen; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", current_.pos);
    }
  }

  Rational lex_rational() {
    long long num = lex_integer();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      std::size_t slash = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected digits after '/' in rational literal", slash);
      long long den = lex_integer();
      if (den == 0) throw ParseError("zero denominator in rational literal", slash);
      return {num, den};
    }
    return {num, 1};
  }

  long long lex_integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    try {
      return std::stoll(text_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      throw ParseError("integer literal out of range", start);
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_;
};

enum class BaseKind { number, q_symbol, hbar_symbol, generator, other };

struct Value {
  QPolynomial poly;
  BaseKind kind = BaseKind::other;
  Gen gen = Gen::X;           // BaseKind::generator
  Rational number{0};         // BaseKind::number
};

std::optional<Gen> generator_for(const std::string& name) {
  if (name == "x") return Gen::X;
  if (name == "p") return Gen::P;
  if (name == "y") return Gen::Y;
  if (name == "L") return Gen::Lambda;
  if (name == "Linv") return Gen::LambdaInv;
  if (name == "a") return Gen::A;
  if (name == "adag") return Gen::ADag;
  if (name == "xt") return Gen::Xt;
  if (name == "yt") return Gen::Yt;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  QPolynomial run() {
    QPolynomial out = parse_expr();
    if (lex_.peek().kind != TokKind::end) {
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    }
    return out;
  }

 private:
  QPolynomial parse_expr() {
    QPolynomial out = parse_term();
    while (lex_.peek().kind == TokKind::plus || lex_.peek().kind == TokKind::minus) {
      const bool add = lex_.take().kind == TokKind::plus;
      QPolynomial rhs = parse_term();
      if (add)
        out += rhs;
      else
        out -= rhs;
    }
    return out;
  }

  static bool starts_factor(TokKind k) {
    return k == TokKind::number || k == TokKind::ident || k == TokKind::lparen;
  }

  QPolynomial parse_term() {
    QPolynomial out = parse_factor();
    for (;;) {
      if (lex_.peek().kind == TokKind::star) {
        lex_.take();
        out = out * parse_factor();
      } else if (starts_factor(lex_.peek().kind)) {
        out = out * parse_factor();  // juxtaposition
      } else {
        return out;
      }
    }
  }

  QPolynomial parse_factor() {
    if (lex_.peek().kind == TokKind::minus) {
      lex_.take();
      return -parse_factor();
    }
    Value base = parse_primary();
    if (lex_.peek().kind != TokKind::caret) return base.poly;
    const Token caret = lex_.take();
    const auto [exponent, exp_pos] = parse_exponent(caret.pos);
    return apply_power(base, exponent, exp_pos);
  }

  std::pair<Rational, std::size_t> parse_exponent(std::size_t caret_pos) {
    bool negate = false;
    bool parens = false;
    if (lex_.peek().kind == TokKind::lparen) {
      parens = true;
      lex_.take();
    }
    if (lex_.peek().kind == TokKind::minus) {
      negate = true;
      lex_.take();
    }
    if (lex_.peek().kind != TokKind::number) {
      throw ParseError("expected numeric exponent after '^'",
                       lex_.peek().kind == TokKind::end ? caret_pos : lex_.peek().pos);
    }
    const Token num = lex_.take();
    if (parens) {
      if (lex_.peek().kind != TokKind::rparen)
        throw ParseError("expected ')' closing exponent", lex_.peek().pos);
      lex_.take();
    }
    return {negate ? -num.number : num.number, num.pos};
  }

  QPolynomial apply_power(const Value& base, const Rational& e, std::size_t pos) {
    const bool integral = e.denominator() == 1;
    switch (base.kind) {
      case BaseKind::q_symbol: {
        if (e.denominator() != 1 && e.denominator() != 2)
          throw ParseError("exponent of q must be an integer or half-integer", pos);
        const long long half_steps =
            e.denominator() == 1 ? 2 * e.numerator() : e.numerator();
        return QPolynomial::constant(
            QCoefficient::q_half_power(static_cast<int>(half_steps)));
      }
      case BaseKind::hbar_symbol: {
        if (!integral) throw ParseError("exponent of hbar must be an integer", pos);
        return QPolynomial::constant(
            QCoefficient::hbar_power(static_cast<int>(e.numerator())));
      }
      case BaseKind::number: {
        if (!integral) throw ParseError("numeric exponent must be an integer", pos);
        long long k = e.numerator();
        Rational b = base.number;
        if (k < 0) {
          if (b == Rational(0)) throw ParseError("zero base with negative exponent", pos);
          b = Rational(1) / b;
          k = -k;
        }
        Rational r(1);
        while (k-- > 0) r *= b;
        return QPolynomial::constant(QCoefficient::from_rational(CRat(r)));
      }
      case BaseKind::generator: {
        if (!integral || e.numerator() < 0)
          throw ParseError("generator exponent must be a nonnegative integer", pos);
        Word w(static_cast<std::size_t>(e.numerator()), base.gen);
        return QPolynomial::monomial(std::move(w), QCoefficient::one());
      }
      case BaseKind::other: {
        if (!integral || e.numerator() < 0)
          throw ParseError("exponent must be a nonnegative integer", pos);
        return base.poly.pow(static_cast<int>(e.numerator()));
      }
    }
    throw ParseError("unhandled exponent base", pos);
  }

  Value parse_primary() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case TokKind::number: {
        lex_.take();
        Value v;
        v.kind = BaseKind::number;
        v.number = t.number;
        v.poly = QPolynomial::constant(QCoefficient::from_rational(CRat(t.number)));
        return v;
      }
      case TokKind::ident: {
        lex_.take();
        Value v;
        if (t.text == "q") {
          v.kind = BaseKind::q_symbol;
          v.poly = QPolynomial::constant(QCoefficient::q_half_power(2));
          return v;
        }
        if (t.text == "hbar") {
          v.kind = BaseKind::hbar_symbol;
          v.poly = QPolynomial::constant(QCoefficient::hbar_power(1));
          return v;
        }
        if (t.text == "i") {
          v.kind = BaseKind::other;
          v.poly = QPolynomial::constant(QCoefficient::imaginary_unit());
          return v;
        }
        if (auto g = generator_for(t.text)) {
          v.kind = BaseKind::generator;
          v.gen = *g;
          v.poly = QPolynomial::generator(*g);
          return v;
        }
        throw ParseError("unknown symbol '" + t.text + "'", t.pos);
      }
      case TokKind::lparen: {
        lex_.take();
        Value v;
        v.kind = BaseKind::other;
        v.poly = parse_expr();
        if (lex_.peek().kind != TokKind::rparen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return v;
      }
      case TokKind::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }

  Lexer lex_;
};

}  // namespace

QPolynomial parse(const std::string& text) { return Parser(text).run(); }

}  // namespace qheis::symb
