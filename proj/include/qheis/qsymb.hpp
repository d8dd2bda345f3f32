#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qheis::symb {

using Rational = boost::rational<long long>;

// Exact complex rational.
struct CRat {
  Rational re{0};
  Rational im{0};

  CRat() = default;
  CRat(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  CRat(long long r) : re(r) {}

  bool is_zero() const { return re == Rational(0) && im == Rational(0); }
  CRat operator-() const { return {-re, -im}; }
  CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
  CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
  CRat operator*(const CRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
  std::complex<double> to_complex() const;
  std::string str() const;

  static CRat i() { return {Rational(0), Rational(1)}; }
};

// Generator kinds. The enum order is the total normal-ordering order:
// x < p < y < L < Linv within the hatted sector, adag < a for the ladder
// pair, and all tilde generators sort after the hatted ones (the two
// sectors commute). Spin symbols take part in no rewriting; they are
// handled through structure constants in the representation layer.
enum class Gen : std::uint8_t {
  X,
  P,
  Y,
  Lambda,
  LambdaInv,
  ADag,
  A,
  Xt,
  Yt,
  LambdaT,
  Sx,
  Sy,
  Sz,
};

const char* gen_name(Gen g);

using Word = std::vector<Gen>;

// Laurent polynomial in q^{1/2} and hbar with exact complex-rational
// coefficients. Key = (power of q^{1/2}, power of hbar); zero terms are
// pruned eagerly.
class QCoefficient {
 public:
  using Key = std::pair<int, int>;

  QCoefficient() = default;

  static QCoefficient zero() { return {}; }
  static QCoefficient one() { return from_rational(CRat(1)); }
  static QCoefficient imaginary_unit() { return from_rational(CRat::i()); }
  static QCoefficient from_rational(const CRat& c);
  // q^{half_steps/2}; even arguments give integer powers of q.
  static QCoefficient q_half_power(int half_steps, const CRat& c = CRat(1));
  static QCoefficient hbar_power(int k, const CRat& c = CRat(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, CRat>& terms() const { return terms_; }

  QCoefficient& operator+=(const QCoefficient& o);
  QCoefficient& operator-=(const QCoefficient& o);
  QCoefficient operator+(const QCoefficient& o) const;
  QCoefficient operator-(const QCoefficient& o) const;
  QCoefficient operator*(const QCoefficient& o) const;
  QCoefficient operator-() const;
  bool operator==(const QCoefficient& o) const { return terms_ == o.terms_; }

  std::complex<double> evaluate(double q, double hbar) const;
  // Collapses every power of q to 1; hbar stays symbolic.
  QCoefficient at_q_one() const;

  std::string str() const;

 private:
  std::map<Key, CRat> terms_;
};

class RuleSet;
class QPolynomial;

enum class Strategy { leftmost, rightmost };

QPolynomial normal_order(const QPolynomial& poly, const RuleSet& rules,
                         Strategy strategy = Strategy::leftmost,
                         std::size_t budget = 1'000'000);

// Noncommutative polynomial: words of generators with exact coefficients.
// A polynomial carries the name of the rule set that last normal-ordered
// it; arithmetic that can break the canonical form clears the tag.
class QPolynomial {
 public:
  QPolynomial() = default;

  static QPolynomial zero() { return {}; }
  static QPolynomial constant(const QCoefficient& c);
  static QPolynomial generator(Gen g);
  static QPolynomial monomial(Word w, QCoefficient c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, QCoefficient>& terms() const { return terms_; }
  const std::string& normal_form_tag() const { return tag_; }

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial operator+(const QPolynomial& o) const;
  QPolynomial operator-(const QPolynomial& o) const;
  QPolynomial operator*(const QPolynomial& o) const;  // noncommutative
  QPolynomial operator-() const;
  QPolynomial scaled(const QCoefficient& c) const;
  QPolynomial pow(int n) const;  // n >= 0

  bool operator==(const QPolynomial& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  friend QPolynomial normal_order(const QPolynomial&, const RuleSet&, Strategy,
                                  std::size_t);

  std::map<Word, QCoefficient> terms_;
  std::string tag_;

  void add_term(const Word& w, const QCoefficient& c);
};

struct RuleSetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RewriteBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adjacent-pair rewrite rule: the word [first, second] is replaced by a
// polynomial. Construction of a RuleSet validates the termination witness:
// every replacement word is strictly shorter, or is the sorted
// transposition of an out-of-order left-hand side.
struct RewriteRule {
  Gen first;
  Gen second;
  QPolynomial replacement;
};

class RuleSet {
 public:
  RuleSet(std::string name, std::vector<RewriteRule> rules);

  const QPolynomial* find(Gen a, Gen b) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::map<std::pair<Gen, Gen>, QPolynomial> rules_;
};

// x p - p x = i hbar L, L x = q^{-1} x L, L p = q p L, plus the formal
// inverses for Linv and the cancellation L Linv -> 1.
const RuleSet& pm_rules();
// a adag = 1 + q adag a.
const RuleSet& osc_rules();
// y x = q x y - i q^{1/2} L with L central, the same relation on the
// tilde copy, and free commutation between the hatted and tilde sectors.
const RuleSet& xy_rules();

// Bracket with exact symbolic weights.
struct SymbolicBracket {
  QCoefficient alpha = QCoefficient::one();
  QCoefficient beta = QCoefficient::one();

  static SymbolicBracket plain();
  static SymbolicBracket one_q();      // (1, q)
  static SymbolicBracket symmetric();  // (q^{1/2}, q^{-1/2})
};

QPolynomial symb_bracket(const QPolynomial& f, const QPolynomial& g,
                         const SymbolicBracket& spec, const RuleSet& rules,
                         Strategy strategy = Strategy::leftmost,
                         std::size_t budget = 1'000'000);

// Exact -> floating boundary: evaluates every coefficient.
std::map<Word, std::complex<double>> substitute_numeric(const QPolynomial& poly,
                                                        double q, double hbar);

// Structural equality of canonical forms; both inputs must have been
// normal-ordered under the same rule set.
bool canonical_equal(const QPolynomial& f, const QPolynomial& g);

// q -> 1 with every dilatation symbol replaced by the identity word.
QPolynomial specialize_q1_lambda1(const QPolynomial& poly);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position;
};

// Grammar: complex-rational literals (ints, p/q, i), symbols q and hbar,
// generator names x p L Linv a adag y xt yt, + - * juxtaposition,
// ^ for powers (nonnegative integers on generators; integers on hbar and
// numbers; half-integers such as q^(1/2) and negatives allowed on q),
// parentheses.
QPolynomial parse(const std::string& text);

}  // namespace qheis::symb
