#include "deltachow/io.hpp"

#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deltachow/error.hpp"

namespace deltachow {

namespace {

class Parser {
 public:
  Parser(const std::string& text, RingPtr ring)
      : s_(text), ring_(std::move(ring)) {}

  DiffPoly parse() {
    DiffPoly p = parse_poly_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at position " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffPoly parse_poly_expr() {
    DiffPoly acc = DiffPoly::zero(ring_);
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      if (first && pos_ >= s_.size()) fail("empty polynomial");
      DiffPoly term = parse_term();
      acc = sign > 0 ? acc + term : acc - term;
      first = false;
      if (peek() != '+' && peek() != '-') break;
    }
    return acc;
  }

  DiffPoly parse_term() {
    DiffPoly acc = DiffPoly::integer(ring_, 1);
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      acc = DiffPoly::constant(ring_, parse_coeff());
      any = true;
    }
    while (true) {
      char c = peek();
      bool had_op = false, dividing = false;
      if (c == '*') {
        ++pos_;
        had_op = true;
        c = peek();
      } else if (c == '/') {
        ++pos_;
        had_op = true;
        dividing = true;
        c = peek();
      }
      bool factor_start =
          c == '(' || c == '_' || std::isalpha(static_cast<unsigned char>(c));
      bool number_start = std::isdigit(static_cast<unsigned char>(c));
      if (!factor_start && !(had_op && number_start)) {
        if (had_op) fail("expected factor");
        break;
      }
      DiffPoly f = number_start ? DiffPoly::constant(ring_, parse_coeff())
                                : parse_factor();
      if (dividing) {
        if (!f.is_constant() || f.is_zero())
          fail("divisor must be a nonzero base-field constant");
        Coef inv = Coef::one(ring_->field()) / f.terms().front().coef;
        acc = acc.scaled(inv);
      } else {
        acc = acc * f;
      }
      any = true;
    }
    if (!any) fail("expected term");
    return acc;
  }

  Coef parse_coeff() {
    mpz_class num = parse_uint();
    if (peek() == '/') {
      // lookahead: only treat as fraction when followed by a digit
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        mpz_class den = parse_uint();
        if (den == 0) fail("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        if (ring_->field() == FieldKind::Rationals) return Coef::from_mpq(q);
        return Coef::from_qt(QtElem::from_mpq(q));
      }
      pos_ = save;
    }
    mpq_class q(num);
    if (ring_->field() == FieldKind::Rationals) return Coef::from_mpq(q);
    return Coef::from_qt(QtElem::from_mpq(q));
  }

  mpz_class parse_uint() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= s_.size() ||
        !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("expected identifier");
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  DiffPoly parse_factor() {
    skip_ws();
    if (eat('(')) {
      DiffPoly inner = parse_poly_expr();
      if (!eat(')')) fail("expected ')'");
      return maybe_pow(std::move(inner));
    }
    std::size_t ident_pos = pos_;
    std::string name = parse_ident();
    if (name == "d" && peek() == '(') {
      ++pos_;
      std::string var = parse_ident();
      if (!eat(',')) fail("expected ',' in d(var,k)");
      mpz_class k = parse_uint();
      if (!eat(')')) fail("expected ')' in d(var,k)");
      if (k > kMaxOrder) fail("derivative order too large");
      return maybe_pow(make_dervar(var, k.get_ui(), ident_pos));
    }
    std::uint32_t ticks = 0;
    while (pos_ < s_.size() && s_[pos_] == '\'') {
      ++ticks;
      ++pos_;
    }
    return maybe_pow(make_dervar(name, ticks, ident_pos));
  }

  DiffPoly make_dervar(const std::string& name, std::uint32_t ord, std::size_t at) {
    if (ring_->field() == FieldKind::RationalFunctionsT && name == "t") {
      if (ord == 0) return DiffPoly::constant(ring_, Coef::from_qt(QtElem::variable_t()));
      // delta t = 1, higher derivatives vanish
      return ord == 1 ? DiffPoly::integer(ring_, 1) : DiffPoly::zero(ring_);
    }
    auto idx = ring_->index_of(name);
    if (!idx) {
      pos_ = at;
      fail("unknown variable '" + name + "'");
    }
    return DiffPoly::var(ring_, DerVar{*idx, ord});
  }

  DiffPoly maybe_pow(DiffPoly base) {
    if (peek() == '^') {
      ++pos_;
      mpz_class e = parse_uint();
      if (e > 4096) fail("exponent too large");
      return base.pow(e.get_ui());
    }
    return base;
  }

  const std::string& s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

std::string coef_abs_text(const Coef& c) {
  Coef a = c.is_negative_leading() ? -c : c;
  if (a.kind() == FieldKind::Rationals) return a.q().get_str();
  const QtElem& e = a.qt();
  if (e.den().is_one()) {
    // count nonzero coefficients to decide on parentheses
    int nonzero = 0;
    for (int i = 0; i <= e.num().degree(); ++i)
      if (e.num().coeff(static_cast<std::size_t>(i)) != 0) ++nonzero;
    std::string s = e.num().to_string();
    return nonzero > 1 ? "(" + s + ")" : s;
  }
  std::string n = e.num().to_string();
  std::string d = e.den().to_string();
  return "(" + n + ")/(" + d + ")";
}

bool coef_abs_is_one(const Coef& c) {
  Coef a = c.is_negative_leading() ? -c : c;
  return a.is_one();
}

std::string mono_text(const Monomial& m, const RingContext& ring) {
  std::string out;
  for (const auto& f : m.factors()) {
    if (!out.empty()) out += "*";
    out += ring.dervar_name(dervar_of(f.key));
    if (f.exp > 1) out += "^" + std::to_string(f.exp);
  }
  return out;
}

std::string latex_dervar(const RingContext& ring, DerVar v) {
  const std::string& base = ring.name(v.var);
  // split trailing digits into a subscript
  std::size_t cut = base.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(base[cut - 1]))) --cut;
  std::string head = base.substr(0, cut);
  std::string sub = base.substr(cut);
  std::string out = head;
  if (!sub.empty()) out += "_{" + sub + "}";
  if (v.ord > 0) {
    if (v.ord <= 3)
      out += std::string(v.ord, '\'');
    else
      out += "^{(" + std::to_string(v.ord) + ")}";
  }
  return out;
}

std::string latex_coef_abs(const Coef& c) {
  Coef a = c.is_negative_leading() ? -c : c;
  if (a.kind() == FieldKind::Rationals) {
    const mpq_class& q = a.q();
    if (q.get_den() == 1) return mpz_class(q.get_num()).get_str();
    return "\\frac{" + mpz_class(q.get_num()).get_str() + "}{" +
           mpz_class(q.get_den()).get_str() + "}";
  }
  const QtElem& e = a.qt();
  if (e.den().is_one()) return e.num().to_string();
  return "\\frac{" + e.num().to_string() + "}{" + e.den().to_string() + "}";
}

std::string text_format(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  const RingContext& ring = *p.ring();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = t.coef.is_negative_leading();
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool unit = coef_abs_is_one(t.coef);
    std::string m = mono_text(t.mono, ring);
    if (m.empty()) {
      out += coef_abs_text(t.coef);
    } else if (unit) {
      out += m;
    } else {
      out += coef_abs_text(t.coef) + "*" + m;
    }
  }
  return out;
}

std::string latex_format(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  const RingContext& ring = *p.ring();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = t.coef.is_negative_leading();
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool unit = coef_abs_is_one(t.coef);
    std::string m;
    for (const auto& f : t.mono.factors()) {
      if (!m.empty()) m += " ";
      m += latex_dervar(ring, dervar_of(f.key));
      if (f.exp > 1) m += "^{" + std::to_string(f.exp) + "}";
    }
    if (m.empty())
      out += latex_coef_abs(t.coef);
    else if (unit)
      out += m;
    else
      out += latex_coef_abs(t.coef) + " " + m;
  }
  return out;
}

std::string json_format(const DiffPoly& p) {
  nlohmann::ordered_json j;
  j["field"] = p.ring()->field() == FieldKind::Rationals ? "Q" : "Qt";
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (std::uint32_t i = 0; i < p.ring()->size(); ++i) {
    nlohmann::ordered_json v;
    v["name"] = p.ring()->name(i);
    v["kind"] = p.ring()->is_main(i) ? "main" : "parameter";
    vars.push_back(v);
  }
  j["ring"] = vars;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : p.terms()) {
    nlohmann::ordered_json jt;
    jt["coeff"] = t.coef.to_string();
    nlohmann::ordered_json mono = nlohmann::ordered_json::object();
    for (const auto& f : t.mono.factors())
      mono[p.ring()->dervar_name(dervar_of(f.key))] = f.exp;
    jt["monomial"] = mono;
    terms.push_back(jt);
  }
  j["terms"] = terms;
  j["text"] = text_format(p);
  return j.dump();
}

}  // namespace

DiffPoly parse_poly(const std::string& text, const RingPtr& ring) {
  Parser p(text, ring);
  return p.parse();
}

std::string format_poly(const DiffPoly& p, FormatStyle style) {
  switch (style) {
    case FormatStyle::Text:
      return text_format(p);
    case FormatStyle::Json:
      return json_format(p);
    case FormatStyle::Latex:
      return latex_format(p);
  }
  return {};
}

std::string format_monomial(const Monomial& m, const RingContext& ring) {
  if (m.is_one()) return "1";
  return mono_text(m, ring);
}

}  // namespace deltachow
