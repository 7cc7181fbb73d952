#pragma once

// Univariate polynomials over GF(2), bit-packed. Euclidean ring used for
// Smith normal form in the mod-2 s-deformed theory.

#include <cstdint>
#include <string>
#include <vector>

namespace khoveq {

class Gf2Poly {
 public:
  Gf2Poly() = default;
  explicit Gf2Poly(uint64_t low_bits) {
    if (low_bits) bits_.push_back(low_bits);
  }

  static Gf2Poly zero() { return Gf2Poly(); }
  static Gf2Poly one() { return Gf2Poly(1); }
  static Gf2Poly x_pow(int k);

  bool is_zero() const { return bits_.empty(); }
  bool is_one() const { return bits_.size() == 1 && bits_[0] == 1; }
  int degree() const;  // -1 for zero
  bool coeff(int k) const;
  void set_coeff(int k);  // toggles (characteristic 2 add)

  Gf2Poly operator+(const Gf2Poly& o) const;
  Gf2Poly operator*(const Gf2Poly& o) const;
  // Division with remainder; o must be nonzero.
  static void divmod(const Gf2Poly& a, const Gf2Poly& b, Gf2Poly& q, Gf2Poly& r);
  Gf2Poly operator%(const Gf2Poly& o) const;
  Gf2Poly operator/(const Gf2Poly& o) const;
  static Gf2Poly gcd(Gf2Poly a, Gf2Poly b);

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

  std::string str(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<uint64_t> bits_;  // bit k of word w = coefficient of x^(64w+k)
};

}  // namespace khoveq
