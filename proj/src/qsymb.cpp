#include "qheis/qsymb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qheis::symb {

namespace {

double ipow(double base, int k) {
  if (k < 0) return 1.0 / ipow(base, -k);
  double out = 1.0;
  while (k-- > 0) out *= base;
  return out;
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

}  // namespace

std::complex<double> CRat::to_complex() const {
  return {boost::rational_cast<double>(re), boost::rational_cast<double>(im)};
}

std::string CRat::str() const {
  if (im == Rational(0)) return rational_str(re);
  if (re == Rational(0)) {
    if (im == Rational(1)) return "i";
    if (im == Rational(-1)) return "-i";
    return rational_str(im) + "*i";
  }
  std::string out = "(" + rational_str(re);
  out += (im > Rational(0)) ? " + " : " - ";
  Rational ai = im > Rational(0) ? im : -im;
  if (ai != Rational(1)) out += rational_str(ai) + "*";
  out += "i)";
  return out;
}

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::X: return "x";
    case Gen::P: return "p";
    case Gen::Y: return "y";
    case Gen::Lambda: return "L";
    case Gen::LambdaInv: return "Linv";
    case Gen::ADag: return "adag";
    case Gen::A: return "a";
    case Gen::Xt: return "xt";
    case Gen::Yt: return "yt";
    case Gen::LambdaT: return "Lt";
    case Gen::Sx: return "Sx";
    case Gen::Sy: return "Sy";
    case Gen::Sz: return "Sz";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// QCoefficient

QCoefficient QCoefficient::from_rational(const CRat& c) {
  QCoefficient out;
  if (!c.is_zero()) out.terms_[{0, 0}] = c;
  return out;
}

QCoefficient QCoefficient::q_half_power(int half_steps, const CRat& c) {
  QCoefficient out;
  if (!c.is_zero()) out.terms_[{half_steps, 0}] = c;
  return out;
}

QCoefficient QCoefficient::hbar_power(int k, const CRat& c) {
  QCoefficient out;
  if (!c.is_zero()) out.terms_[{0, k}] = c;
  return out;
}

QCoefficient& QCoefficient::operator+=(const QCoefficient& o) {
  for (const auto& [key, val] : o.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, val);
    } else {
      it->second = it->second + val;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

QCoefficient& QCoefficient::operator-=(const QCoefficient& o) { return *this += -o; }

QCoefficient QCoefficient::operator+(const QCoefficient& o) const {
  QCoefficient out = *this;
  out += o;
  return out;
}

QCoefficient QCoefficient::operator-(const QCoefficient& o) const {
  QCoefficient out = *this;
  out -= o;
  return out;
}

QCoefficient QCoefficient::operator-() const {
  QCoefficient out;
  for (const auto& [key, val] : terms_) out.terms_[key] = -val;
  return out;
}

QCoefficient QCoefficient::operator*(const QCoefficient& o) const {
  QCoefficient out;
  for (const auto& [ka, va] : terms_) {
    for (const auto& [kb, vb] : o.terms_) {
      const Key key{ka.first + kb.first, ka.second + kb.second};
      auto it = out.terms_.find(key);
      if (it == out.terms_.end()) {
        CRat prod = va * vb;
        if (!prod.is_zero()) out.terms_.emplace(key, prod);
      } else {
        it->second = it->second + va * vb;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

std::complex<double> QCoefficient::evaluate(double q, double hbar) const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [key, val] : terms_) {
    const auto [s_pow, h_pow] = key;
    const double qf = (s_pow % 2 == 0) ? ipow(q, s_pow / 2)
                                       : std::pow(q, 0.5 * s_pow);
    sum += val.to_complex() * qf * ipow(hbar, h_pow);
  }
  return sum;
}

QCoefficient QCoefficient::at_q_one() const {
  QCoefficient out;
  for (const auto& [key, val] : terms_) {
    QCoefficient t;
    t.terms_[{0, key.second}] = val;
    out += t;
  }
  return out;
}

std::string QCoefficient::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, val] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << val.str();
    if (key.first != 0) {
      if (key.first % 2 == 0) {
        os << "*q^" << key.first / 2;
      } else {
        os << "*q^(" << key.first << "/2)";
      }
    }
    if (key.second != 0) os << "*hbar^" << key.second;
  }
  return terms_.size() > 1 ? "(" + os.str() + ")" : os.str();
}

// ---------------------------------------------------------------------------
// QPolynomial

QPolynomial QPolynomial::constant(const QCoefficient& c) {
  QPolynomial out;
  out.add_term({}, c);
  return out;
}

QPolynomial QPolynomial::generator(Gen g) {
  QPolynomial out;
  out.add_term({g}, QCoefficient::one());
  return out;
}

QPolynomial QPolynomial::monomial(Word w, QCoefficient c) {
  QPolynomial out;
  out.add_term(w, c);
  return out;
}

void QPolynomial::add_term(const Word& w, const QCoefficient& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (tag_ != o.tag_ && !o.is_zero() && !is_zero()) tag_.clear();
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (tag_ != o.tag_ && !o.is_zero() && !is_zero()) tag_.clear();
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

QPolynomial QPolynomial::operator+(const QPolynomial& o) const {
  QPolynomial out = *this;
  if (out.is_zero()) out.tag_ = o.tag_;
  out += o;
  return out;
}

QPolynomial QPolynomial::operator-(const QPolynomial& o) const {
  QPolynomial out = *this;
  if (out.is_zero()) out.tag_ = o.tag_;
  out -= o;
  return out;
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  out.tag_ = tag_;
  return out;
}

QPolynomial QPolynomial::operator*(const QPolynomial& o) const {
  QPolynomial out;
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

QPolynomial QPolynomial::scaled(const QCoefficient& c) const {
  QPolynomial out;
  for (const auto& [w, coeff] : terms_) out.add_term(w, coeff * c);
  out.tag_ = tag_;
  return out;
}

QPolynomial QPolynomial::pow(int n) const {
  if (n < 0) throw std::invalid_argument("QPolynomial::pow: negative exponent");
  QPolynomial out = constant(QCoefficient::one());
  for (int k = 0; k < n; ++k) out = out * *this;
  return out;
}

std::string QPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (Gen g : w) os << "*" << gen_name(g);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rule sets

RuleSet::RuleSet(std::string name, std::vector<RewriteRule> rules)
    : name_(std::move(name)) {
  for (auto& rule : rules) {
    const bool lhs_inverted = rule.second < rule.first;
    for (const auto& [w, c] : rule.replacement.terms()) {
      if (w.size() < 2) continue;  // shortens the word: always fine
      const bool sorted_transposition =
          w.size() == 2 && lhs_inverted && w[0] == rule.second && w[1] == rule.first;
      if (!sorted_transposition) {
        throw RuleSetError("RuleSet '" + name_ + "': rule " +
                           std::string(gen_name(rule.first)) + " " +
                           gen_name(rule.second) +
                           " violates the termination witness (replacement word '" +
                           QPolynomial::monomial(w, QCoefficient::one()).str() +
                           "' neither shortens nor sorts the pair)");
      }
    }
    auto key = std::make_pair(rule.first, rule.second);
    if (rules_.count(key)) {
      throw RuleSetError("RuleSet '" + name_ + "': duplicate rule for pair");
    }
    rules_.emplace(key, std::move(rule.replacement));
  }
}

const QPolynomial* RuleSet::find(Gen a, Gen b) const {
  auto it = rules_.find({a, b});
  return it == rules_.end() ? nullptr : &it->second;
}

namespace {

QPolynomial gen_pair(Gen a, Gen b, QCoefficient c = QCoefficient::one()) {
  return QPolynomial::monomial({a, b}, std::move(c));
}

QPolynomial swap_rule(Gen a, Gen b) { return gen_pair(b, a); }

}  // namespace

const RuleSet& pm_rules() {
  static const RuleSet rules = [] {
    const QCoefficient one = QCoefficient::one();
    const QCoefficient i_hbar = QCoefficient::hbar_power(1, CRat::i());
    const QCoefficient q = QCoefficient::q_half_power(2);
    const QCoefficient q_inv = QCoefficient::q_half_power(-2);
    std::vector<RewriteRule> v;
    // p x = x p - i hbar L
    v.push_back({Gen::P, Gen::X,
                 gen_pair(Gen::X, Gen::P) - QPolynomial::monomial({Gen::Lambda}, i_hbar)});
    // L x = q^{-1} x L, L p = q p L
    v.push_back({Gen::Lambda, Gen::X, gen_pair(Gen::X, Gen::Lambda, q_inv)});
    v.push_back({Gen::Lambda, Gen::P, gen_pair(Gen::P, Gen::Lambda, q)});
    // Linv x = q x Linv, Linv p = q^{-1} p Linv
    v.push_back({Gen::LambdaInv, Gen::X, gen_pair(Gen::X, Gen::LambdaInv, q)});
    v.push_back({Gen::LambdaInv, Gen::P, gen_pair(Gen::P, Gen::LambdaInv, q_inv)});
    // L Linv = Linv L = 1
    v.push_back({Gen::Lambda, Gen::LambdaInv, QPolynomial::constant(one)});
    v.push_back({Gen::LambdaInv, Gen::Lambda, QPolynomial::constant(one)});
    return RuleSet("pm", std::move(v));
  }();
  return rules;
}

const RuleSet& osc_rules() {
  static const RuleSet rules = [] {
    std::vector<RewriteRule> v;
    // a adag = 1 + q adag a
    v.push_back({Gen::A, Gen::ADag,
                 QPolynomial::constant(QCoefficient::one()) +
                     gen_pair(Gen::ADag, Gen::A, QCoefficient::q_half_power(2))});
    return RuleSet("osc", std::move(v));
  }();
  return rules;
}

const RuleSet& xy_rules() {
  static const RuleSet rules = [] {
    const QCoefficient q = QCoefficient::q_half_power(2);
    const QCoefficient i_sqrt_q = QCoefficient::q_half_power(1, CRat::i());
    std::vector<RewriteRule> v;
    // y x = q x y - i q^{1/2} L
    v.push_back({Gen::Y, Gen::X,
                 gen_pair(Gen::X, Gen::Y, q) -
                     QPolynomial::monomial({Gen::Lambda}, i_sqrt_q)});
    // yt xt = q xt yt - i q^{1/2} Lt
    v.push_back({Gen::Yt, Gen::Xt,
                 gen_pair(Gen::Xt, Gen::Yt, q) -
                     QPolynomial::monomial({Gen::LambdaT}, i_sqrt_q)});
    // The dilatation symbols are central in this sector.
    v.push_back({Gen::Lambda, Gen::X, swap_rule(Gen::Lambda, Gen::X)});
    v.push_back({Gen::Lambda, Gen::Y, swap_rule(Gen::Lambda, Gen::Y)});
    v.push_back({Gen::LambdaT, Gen::Xt, swap_rule(Gen::LambdaT, Gen::Xt)});
    v.push_back({Gen::LambdaT, Gen::Yt, swap_rule(Gen::LambdaT, Gen::Yt)});
    // Hatted and tilde generators commute.
    for (Gen t : {Gen::Xt, Gen::Yt, Gen::LambdaT}) {
      for (Gen h : {Gen::X, Gen::Y, Gen::Lambda}) {
        v.push_back({t, h, swap_rule(t, h)});
      }
    }
    return RuleSet("xy", std::move(v));
  }();
  return rules;
}

// ---------------------------------------------------------------------------
// Normal ordering

QPolynomial normal_order(const QPolynomial& poly, const RuleSet& rules,
                         Strategy strategy, std::size_t budget) {
  std::vector<std::pair<Word, QCoefficient>> work(poly.terms().begin(),
                                                  poly.terms().end());
  QPolynomial result;
  std::size_t used = 0;
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    const QPolynomial* rule = nullptr;
    std::size_t at = 0;
    if (w.size() >= 2) {
      if (strategy == Strategy::leftmost) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          if ((rule = rules.find(w[i], w[i + 1]))) {
            at = i;
            break;
          }
        }
      } else {
        for (std::size_t i = w.size() - 1; i-- > 0;) {
          if ((rule = rules.find(w[i], w[i + 1]))) {
            at = i;
            break;
          }
        }
      }
    }
    if (!rule) {
      QPolynomial term = QPolynomial::monomial(std::move(w), c);
      result += term;
      continue;
    }
    if (++used > budget) {
      throw RewriteBudgetExceeded("normal_order: rule application budget of " +
                                  std::to_string(budget) +
                                  " exceeded under rule set '" + rules.name() + "'");
    }
    for (const auto& [rw, rc] : rule->terms()) {
      Word next;
      next.reserve(w.size() - 2 + rw.size());
      next.insert(next.end(), w.begin(), w.begin() + static_cast<long>(at));
      next.insert(next.end(), rw.begin(), rw.end());
      next.insert(next.end(), w.begin() + static_cast<long>(at) + 2, w.end());
      work.emplace_back(std::move(next), c * rc);
    }
  }
  result.tag_ = rules.name();
  return result;
}

SymbolicBracket SymbolicBracket::plain() { return {}; }

SymbolicBracket SymbolicBracket::one_q() {
  return {QCoefficient::one(), QCoefficient::q_half_power(2)};
}

SymbolicBracket SymbolicBracket::symmetric() {
  return {QCoefficient::q_half_power(1), QCoefficient::q_half_power(-1)};
}

QPolynomial symb_bracket(const QPolynomial& f, const QPolynomial& g,
                         const SymbolicBracket& spec, const RuleSet& rules,
                         Strategy strategy, std::size_t budget) {
  QPolynomial raw = (f * g).scaled(spec.alpha) - (g * f).scaled(spec.beta);
  return normal_order(raw, rules, strategy, budget);
}

std::map<Word, std::complex<double>> substitute_numeric(const QPolynomial& poly,
                                                        double q, double hbar) {
  std::map<Word, std::complex<double>> out;
  for (const auto& [w, c] : poly.terms()) out.emplace(w, c.evaluate(q, hbar));
  return out;
}

bool canonical_equal(const QPolynomial& f, const QPolynomial& g) {
  if (f.normal_form_tag().empty() || g.normal_form_tag().empty()) {
    throw std::invalid_argument(
        "canonical_equal: both polynomials must be normal-ordered");
  }
  if (f.normal_form_tag() != g.normal_form_tag()) {
    throw std::invalid_argument(
        "canonical_equal: polynomials come from different rule sets ('" +
        f.normal_form_tag() + "' vs '" + g.normal_form_tag() + "')");
  }
  return f == g;
}

QPolynomial specialize_q1_lambda1(const QPolynomial& poly) {
  QPolynomial out;
  for (const auto& [w, c] : poly.terms()) {
    Word reduced;
    reduced.reserve(w.size());
    for (Gen g : w) {
      if (g == Gen::Lambda || g == Gen::LambdaInv || g == Gen::LambdaT) continue;
      reduced.push_back(g);
    }
    out += QPolynomial::monomial(std::move(reduced), c.at_q_one());
  }
  return out;
}

}  // namespace qheis::symb
