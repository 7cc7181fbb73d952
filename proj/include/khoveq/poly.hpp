#pragma once

// Exact arithmetic in Z[s,t] and its specializations.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace khoveq {

// Exponent pair (a,b) for s^a t^b, ordered graded-lex so serialization is
// canonical.
struct Monomial {
  int a = 0;
  int b = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  bool operator<(const Monomial& o) const {
    int da = a + b, db = o.a + o.b;
    if (da != db) return da < db;
    if (a != o.a) return a > o.a;  // higher s-power first within a degree
    return false;
  }
};

// Sparse element of Z[s,t]. No zero coefficients are ever stored.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  BivariatePoly(long c) { if (c != 0) terms_[{0, 0}] = c; }
  BivariatePoly(mpz_class c) { if (c != 0) terms_[{0, 0}] = std::move(c); }

  static BivariatePoly constant(mpz_class c) { return BivariatePoly(std::move(c)); }
  static BivariatePoly s() { return monomial(1, 0, 1); }
  static BivariatePoly t() { return monomial(0, 1, 1); }
  static BivariatePoly monomial(int a, int b, mpz_class c) {
    BivariatePoly p;
    if (c != 0) p.terms_[{a, b}] = std::move(c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, mpz_class>& terms() const { return terms_; }

  void add_term(int a, int b, const mpz_class& c);

  BivariatePoly& operator+=(const BivariatePoly& o);
  BivariatePoly& operator-=(const BivariatePoly& o);
  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator-(const BivariatePoly& o) const;
  BivariatePoly operator-() const;
  BivariatePoly operator*(const BivariatePoly& o) const;
  BivariatePoly& operator*=(const BivariatePoly& o);

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

  // Evaluation homomorphism Z[s,t] -> Z.
  mpz_class eval(const mpz_class& sv, const mpz_class& tv) const;

  std::string str() const;  // human-readable, canonical term order

 private:
  std::map<Monomial, mpz_class> terms_;
};

// Single-variable Laurent polynomial with integer coefficients; used for the
// Kauffman bracket (variable A) and graded Euler characteristics (variable q).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) { if (c != 0) terms_[0] = c; }

  static LaurentPoly term(int e, mpz_class c) {
    LaurentPoly p;
    if (c != 0) p.terms_[e] = std::move(c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, mpz_class>& terms() const { return terms_; }
  mpz_class coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
  }
  void add_term(int e, const mpz_class& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Substitute x -> c * x^k (monomial substitution); enough for q = -A^-2.
  LaurentPoly substitute_monomial(int k, const mpz_class& c) const;

  std::string str(const std::string& var) const;

 private:
  std::map<int, mpz_class> terms_;
};

// Target ring for homology computations.
enum class RingTag { Integers, Mod2, Mod2Poly };

struct Specialization {
  RingTag ring = RingTag::Integers;
  mpz_class s_value = 0;
  mpz_class t_value = 0;  // forced to 0 in the Mod2Poly case
  // In the Mod2Poly case, s maps to the polynomial variable itself.
  bool s_is_variable = false;

  static Specialization integers(mpz_class s, mpz_class t) {
    return {RingTag::Integers, std::move(s), std::move(t), false};
  }
  static Specialization mod2(mpz_class s, mpz_class t) {
    return {RingTag::Mod2, std::move(s), std::move(t), false};
  }
  static Specialization bar_natan() {
    return {RingTag::Mod2Poly, 0, 0, true};
  }
  bool preserves_j() const {
    return s_value == 0 && t_value == 0 && !s_is_variable;
  }
};

}  // namespace khoveq
