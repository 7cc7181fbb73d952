#pragma once

// The generalized Frobenius calculus of signed circles: merge table m(p,q)
// and split table Delta(p) with coefficients in Z[s,t], plus the universal
// calculus and JSON (de)serialization for user-supplied calculi.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "khoveq/poly.hpp"

namespace khoveq {

enum class Sign : int8_t { Plus = 1, Minus = -1 };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }
inline int sign_index(Sign s) { return s == Sign::Plus ? 0 : 1; }

// Formal Z[s,t]-linear combination of fixed-arity sign tuples, canonical
// (sorted keys, no zero coefficients).
class SignCombo {
 public:
  SignCombo() = default;

  static SignCombo single(std::vector<Sign> signs, BivariatePoly c = BivariatePoly(1)) {
    SignCombo r;
    r.add(std::move(signs), std::move(c));
    return r;
  }

  void add(std::vector<Sign> signs, const BivariatePoly& c);
  SignCombo operator+(const SignCombo& o) const;
  SignCombo operator-(const SignCombo& o) const;
  SignCombo scaled(const BivariatePoly& c) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<Sign>, BivariatePoly>& terms() const { return terms_; }
  BivariatePoly coeff(const std::vector<Sign>& signs) const;

  friend bool operator==(const SignCombo&, const SignCombo&) = default;

  std::string str() const;

 private:
  std::map<std::vector<Sign>, BivariatePoly> terms_;
};

class FrobeniusCalculus {
 public:
  // Figure-1 universal tables over Z[s,t].
  static FrobeniusCalculus universal();
  // Universal with (s,t) evaluated at integers (e.g. (0,0) Khovanov, (0,1) Lee).
  static FrobeniusCalculus universal_at(const mpz_class& s, const mpz_class& t);

  const SignCombo& multiply(Sign p, Sign q) const {
    return merge_[sign_index(p)][sign_index(q)];
  }
  const SignCombo& comultiply(Sign p) const { return split_[sign_index(p)]; }

  // Delta applied linearly to m(p,q).
  SignCombo composite_split_of_merge(Sign p, Sign q) const;

  void set_merge(Sign p, Sign q, SignCombo c) {
    merge_[sign_index(p)][sign_index(q)] = std::move(c);
  }
  void set_split(Sign p, SignCombo c) { split_[sign_index(p)] = std::move(c); }

  friend bool operator==(const FrobeniusCalculus&, const FrobeniusCalculus&) = default;

  nlohmann::json to_json() const;
  // Throws std::runtime_error on missing entries / malformed polynomials.
  static FrobeniusCalculus from_json(const nlohmann::json& doc);

 private:
  SignCombo merge_[2][2];
  SignCombo split_[2];
};

// Polynomial JSON form: list of [a, b, "coeff"] triples.
nlohmann::json poly_to_json(const BivariatePoly& p);
BivariatePoly poly_from_json(const nlohmann::json& j);

}  // namespace khoveq
