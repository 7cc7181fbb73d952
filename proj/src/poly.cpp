#include "khoveq/poly.hpp"

#include <sstream>

namespace khoveq {

void BivariatePoly::add_term(int a, int b, const mpz_class& c) {
  if (c == 0) return;
  Monomial m{a, b};
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.a, m.b, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.a, m.b, -c);
  return *this;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
  BivariatePoly r = *this;
  r += o;
  return r;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
  BivariatePoly r = *this;
  r -= o;
  return r;
}

BivariatePoly BivariatePoly::operator-() const {
  BivariatePoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
  BivariatePoly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_)
      r.add_term(m1.a + m2.a, m1.b + m2.b, c1 * c2);
  return r;
}

BivariatePoly& BivariatePoly::operator*=(const BivariatePoly& o) {
  *this = *this * o;
  return *this;
}

mpz_class BivariatePoly::eval(const mpz_class& sv, const mpz_class& tv) const {
  mpz_class acc = 0;
  for (const auto& [m, c] : terms_) {
    mpz_class term = c;
    for (int i = 0; i < m.a; ++i) term *= sv;
    for (int i = 0; i < m.b; ++i) term *= tv;
    acc += term;
  }
  return acc;
}

std::string BivariatePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpz_class abs = c >= 0 ? c : mpz_class(-c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = m.a > 0 || m.b > 0;
    if (abs != 1 || !has_var) os << abs.get_str();
    if (m.a > 0) { os << "s"; if (m.a > 1) os << "^" << m.a; }
    if (m.b > 0) { os << "t"; if (m.b > 1) os << "^" << m.b; }
  }
  return os.str();
}

void LaurentPoly::add_term(int e, const mpz_class& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_)
      r.add_term(e1 + e2, c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::substitute_monomial(int k, const mpz_class& c) const {
  LaurentPoly r;
  for (const auto& [e, coeff] : terms_) {
    mpz_class factor = 1;
    int n = e >= 0 ? e : -e;
    for (int i = 0; i < n; ++i) factor *= c;
    if (e < 0) {
      if (c != 1 && c != -1)
        throw std::runtime_error("negative power of non-unit in substitution");
      // c is +-1, so c^e = c^|e|
    }
    r.add_term(k * e, coeff * factor);
  }
  return r;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class abs = c >= 0 ? c : mpz_class(-c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (abs != 1 || e == 0) os << abs.get_str();
    if (e != 0) {
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace khoveq
