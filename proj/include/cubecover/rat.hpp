#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubecover {

using Int = mpz_class;

/// Exact rational scalar. Always canonical: gcd(num, den) = 1 and den > 0.
/// All arithmetic is exact; there is no rounding anywhere in this type.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int v) : q_(v) {}             // NOLINT(runtime/explicit)
  Rat(long v) : q_(v) {}            // NOLINT(runtime/explicit)
  Rat(long long v) : q_(static_cast<long>(v)) {}
  Rat(const Int& v) : q_(v) {}      // NOLINT(runtime/explicit)
  Rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p", "p/q" or a plain decimal like "0.1961". Throws on anything
  /// else (floats in scientific notation, empty strings, zero denominators).
  static Rat parse(const std::string& token);

  /// True iff the token is a valid integer or fraction string "p" / "p/q"
  /// (the strict on-disk form; decimals are not allowed here).
  static bool is_fraction_token(const std::string& token);

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }
  std::string to_string() const;

  Rat operator-() const { Rat r; r.q_ = -q_; return r; }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat square(const Rat& r) { return r * r; }

Rat dot(const RatVec& a, const RatVec& b);
Rat mass(const RatVec& v);     // squared l2 norm, exact
Rat l1_norm(const RatVec& v);  // exact
int sparsity(const RatVec& v);

std::string to_string(const Rat& r);

}  // namespace cubecover
