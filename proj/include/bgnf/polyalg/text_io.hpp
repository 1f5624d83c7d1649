#pragma once
// Plain-text serialization of polynomials.
//
//   chart: real|complex
//   field: rational|quadratic(d=<int>)|float
//   order: <N>
//   <re>[+<im>i] : e1 e2 e3 e4
//
// Quadratic values are written as (a+b*s) with s = sqrt(d).

#include "bgnf/polyalg/polynomial.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bgnf {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string field_header(FieldKind k, long d) {
  switch (k) {
    case FieldKind::rational:
      return "rational";
    case FieldKind::quadratic:
      return "quadratic(d=" + std::to_string(d) + ")";
    case FieldKind::floating:
      return "float";
  }
  return "rational";
}

inline void write_polynomial(std::ostream& os, const Polynomial& p) {
  auto [kind, d] = p.field();
  os << "chart: " << chart_name(p.chart()) << "\n";
  os << "field: " << field_header(kind, d) << "\n";
  os << "order: " << p.order() << "\n";
  for (const auto& t : p.terms()) os << t.c.str() << " : " << exponent_str(t.e) << "\n";
}

inline std::string to_text(const Polynomial& p) {
  std::ostringstream os;
  write_polynomial(os, p);
  return os.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

// Last top-level '+'/'-' that is not a leading sign or an exponent sign.
inline std::size_t split_sign(const std::string& s) {
  int depth = 0;
  std::size_t found = std::string::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && i > 0 && (c == '+' || c == '-')) {
      char prev = s[i - 1];
      if (prev == 'e' || prev == 'E' || prev == '+' || prev == '-') continue;
      found = i;
    }
  }
  return found;
}

inline Rational parse_rational(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty()) throw parse_error("empty number");
  for (char c : t) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) {
      throw parse_error("bad rational '" + s + "'");
    }
  }
  Rational q;
  if (q.set_str(t, 10) != 0) throw parse_error("bad rational '" + s + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline Scalar parse_scalar(const std::string& raw, FieldKind kind, long d) {
  std::string s = trim(raw);
  if (s.empty()) throw parse_error("empty coefficient");
  bool neg = false;
  std::string body = s;
  if ((body[0] == '-' || body[0] == '+') && body.size() > 1 && body[1] == '(') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (body[0] == '(') {
    if (kind != FieldKind::quadratic) throw parse_error("quadratic value in a non-quadratic field: " + s);
    if (body.back() != ')') throw parse_error("unbalanced parenthesis: " + s);
    std::string inner = body.substr(1, body.size() - 2);
    std::size_t pos = split_sign(inner);
    std::string a_str = pos == std::string::npos ? "0" : inner.substr(0, pos);
    std::string b_str = pos == std::string::npos ? inner : inner.substr(pos);
    if (b_str.size() < 2 || b_str.substr(b_str.size() - 2) != "*s") throw parse_error("bad quadratic value: " + s);
    b_str = b_str.substr(0, b_str.size() - 2);
    Scalar v = Scalar::quadratic(parse_rational(a_str), parse_rational(b_str), d);
    return neg ? -v : v;
  }
  if (kind == FieldKind::floating) {
    try {
      return Scalar::from_float(BigFloat(body));
    } catch (const std::exception&) {
      throw parse_error("bad float '" + s + "'");
    }
  }
  return Scalar(parse_rational(body));
}

inline Coeff parse_coeff(const std::string& raw, FieldKind kind, long d) {
  std::string s = trim(raw);
  if (!s.empty() && s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    std::size_t pos = split_sign(body);
    std::string re = pos == std::string::npos ? "" : body.substr(0, pos);
    std::string im = pos == std::string::npos ? body : body.substr(pos);
    if (im == "+" || im == "" ) im = "1";
    if (im == "-") im = "-1";
    Scalar r = re.empty() ? Scalar() : parse_scalar(re, kind, d);
    return Coeff(r, parse_scalar(im, kind, d));
  }
  return Coeff(parse_scalar(s, kind, d));
}

}  // namespace detail

inline Polynomial read_polynomial(std::istream& is) {
  std::string line;
  Chart chart = Chart::real;
  FieldKind kind = FieldKind::rational;
  long d = 0;
  int order = -1;
  bool have_chart = false, have_field = false;
  std::vector<std::pair<Exponent, Coeff>> terms;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    if (t.rfind("chart:", 0) == 0) {
      std::string v = detail::trim(t.substr(6));
      if (v == "real") {
        chart = Chart::real;
      } else if (v == "complex") {
        chart = Chart::complex;
      } else {
        throw parse_error("unknown chart '" + v + "'" + where());
      }
      have_chart = true;
      continue;
    }
    if (t.rfind("field:", 0) == 0) {
      std::string v = detail::trim(t.substr(6));
      if (v == "rational") {
        kind = FieldKind::rational;
      } else if (v == "float") {
        kind = FieldKind::floating;
      } else if (v.rfind("quadratic(d=", 0) == 0 && v.back() == ')') {
        kind = FieldKind::quadratic;
        d = std::stol(v.substr(12, v.size() - 13));
        if (d < 2) throw parse_error("quadratic field needs d >= 2" + where());
      } else {
        throw parse_error("unknown field '" + v + "'" + where());
      }
      have_field = true;
      continue;
    }
    if (t.rfind("order:", 0) == 0) {
      try {
        order = std::stoi(t.substr(6));
      } catch (const std::exception&) {
        throw parse_error("bad order" + where());
      }
      if (order < 0 || order > 60) throw parse_error("order out of range" + where());
      continue;
    }
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) throw parse_error("expected '<coeff> : e1 e2 e3 e4'" + where());
    std::istringstream es(t.substr(colon + 1));
    int e[4];
    for (int& x : e) {
      if (!(es >> x) || x < 0 || x > 60) throw parse_error("bad exponent" + where());
    }
    std::string extra;
    if (es >> extra) throw parse_error("too many exponents" + where());
    try {
      terms.emplace_back(make_exponent(e[0], e[1], e[2], e[3]), detail::parse_coeff(t.substr(0, colon), kind, d));
    } catch (const parse_error& err) {
      throw parse_error(std::string(err.what()) + where());
    }
  }
  if (!have_chart || !have_field || order < 0) throw parse_error("missing chart/field/order header");
  Polynomial p(chart, order);
  for (const auto& [e, c] : terms) {
    if (degree(e) > order) throw parse_error("monomial " + exponent_str(e) + " exceeds declared order");
    p.add_term(e, c);
  }
  return p;
}

inline Polynomial from_text(const std::string& s) {
  std::istringstream is(s);
  return read_polynomial(is);
}

}  // namespace bgnf
