#include "khoveq/gf2poly.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace khoveq {

void Gf2Poly::trim() {
  while (!bits_.empty() && bits_.back() == 0) bits_.pop_back();
}

Gf2Poly Gf2Poly::x_pow(int k) {
  Gf2Poly p;
  p.bits_.assign(k / 64 + 1, 0);
  p.bits_[k / 64] = uint64_t{1} << (k % 64);
  return p;
}

int Gf2Poly::degree() const {
  if (bits_.empty()) return -1;
  int w = static_cast<int>(bits_.size()) - 1;
  return w * 64 + 63 - std::countl_zero(bits_.back());
}

bool Gf2Poly::coeff(int k) const {
  size_t w = k / 64;
  if (w >= bits_.size()) return false;
  return (bits_[w] >> (k % 64)) & 1;
}

void Gf2Poly::set_coeff(int k) {
  size_t w = k / 64;
  if (w >= bits_.size()) bits_.resize(w + 1, 0);
  bits_[w] ^= uint64_t{1} << (k % 64);
  trim();
}

Gf2Poly Gf2Poly::operator+(const Gf2Poly& o) const {
  Gf2Poly r;
  r.bits_.resize(std::max(bits_.size(), o.bits_.size()), 0);
  for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] ^= bits_[i];
  for (size_t i = 0; i < o.bits_.size(); ++i) r.bits_[i] ^= o.bits_[i];
  r.trim();
  return r;
}

Gf2Poly Gf2Poly::operator*(const Gf2Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  Gf2Poly r;
  int da = degree(), db = o.degree();
  r.bits_.assign((da + db) / 64 + 1, 0);
  for (int i = 0; i <= da; ++i) {
    if (!coeff(i)) continue;
    for (size_t w = 0; w < o.bits_.size(); ++w) {
      uint64_t v = o.bits_[w];
      if (!v) continue;
      int shift = i % 64;
      size_t base = w + i / 64;
      r.bits_[base] ^= v << shift;
      if (shift && base + 1 < r.bits_.size()) r.bits_[base + 1] ^= v >> (64 - shift);
    }
  }
  r.trim();
  return r;
}

void Gf2Poly::divmod(const Gf2Poly& a, const Gf2Poly& b, Gf2Poly& q, Gf2Poly& r) {
  if (b.is_zero()) throw std::runtime_error("Gf2Poly division by zero");
  q = Gf2Poly();
  r = a;
  int db = b.degree();
  while (r.degree() >= db) {
    int shift = r.degree() - db;
    q.set_coeff(shift);
    r = r + b * x_pow(shift);
  }
}

Gf2Poly Gf2Poly::operator%(const Gf2Poly& o) const {
  Gf2Poly q, r;
  divmod(*this, o, q, r);
  return r;
}

Gf2Poly Gf2Poly::operator/(const Gf2Poly& o) const {
  Gf2Poly q, r;
  divmod(*this, o, q, r);
  return q;
}

Gf2Poly Gf2Poly::gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::string Gf2Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (!coeff(k)) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) os << "1";
    else {
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace khoveq
