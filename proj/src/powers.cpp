#include "cubecover/powers.hpp"

#include <cmath>
#include <stdexcept>

namespace cubecover {

namespace {

// log2 of a positive big integer with ~1e-13 absolute error.
double log2_mpz(const Int& v) {
  signed long exp = 0;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return static_cast<double>(exp) + std::log2(d);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

void check_exponent(const Int& n, const Rat& e) {
  if (n < 1) throw std::invalid_argument("powers: base must be >= 1");
  if (e.sign() < 0) throw std::invalid_argument("powers: exponent must be >= 0 here");
}

}  // namespace

Rat pow_bound(const Int& n, const Rat& e, Round dir, unsigned bits) {
  check_exponent(n, e);
  unsigned long p = e.num().get_ui();
  unsigned long q = e.den().get_ui();
  // R = n^p * 2^(q*bits); r = floor(R^(1/q)) gives
  //   r / 2^bits <= n^(p/q) < (r+1) / 2^bits.
  Int r_pow = pow_int(n, p);
  mpz_mul_2exp(r_pow.get_mpz_t(), r_pow.get_mpz_t(), static_cast<mp_bitcnt_t>(q) * bits);
  Int root;
  int exact = mpz_root(root.get_mpz_t(), r_pow.get_mpz_t(), q);
  if (dir == Round::Up && !exact) root += 1;
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  return Rat(root, scale);
}

Rat sqrt_bound(const Rat& r, Round dir, unsigned bits) {
  if (r.sign() < 0) throw std::invalid_argument("sqrt_bound: negative input");
  if (r.is_zero()) return Rat(0);
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits under the root.
  Int under = r.num() * r.den();
  mpz_mul_2exp(under.get_mpz_t(), under.get_mpz_t(), 2 * static_cast<mp_bitcnt_t>(bits));
  Int root;
  int exact = mpz_root(root.get_mpz_t(), under.get_mpz_t(), 2);
  if (dir == Round::Up && !exact) root += 1;
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  return Rat(root, r.den() * scale);
}

Int floor_pow(const Int& n, const Rat& e) {
  check_exponent(n, e);
  unsigned long p = e.num().get_ui();
  unsigned long q = e.den().get_ui();
  Int r_pow = pow_int(n, p);
  Int root;
  mpz_root(root.get_mpz_t(), r_pow.get_mpz_t(), q);  // floor((n^p)^(1/q))
  return root;
}

int cmp_rat_vs_pow(const Rat& x, const Int& n, const Rat& e) {
  if (n < 1) throw std::invalid_argument("cmp_rat_vs_pow: base must be >= 1");
  if (x.sign() <= 0) return -1;  // n^e > 0 always
  bool neg_exp = e.sign() < 0;
  Rat ea = neg_exp ? -e : e;
  unsigned long p = ea.num().get_ui();
  unsigned long q = ea.den().get_ui();

  // x ? n^(p/q)  <=>  num^q ? den^q * n^p     (p >= 0)
  // x ? n^(-p/q) <=>  num^q * n^p ? den^q
  double lhs_log = static_cast<double>(q) * log2_mpz(x.num());
  double rhs_log = static_cast<double>(q) * log2_mpz(x.den());
  double n_log = static_cast<double>(p) * log2_mpz(n);
  if (neg_exp)
    lhs_log += n_log;
  else
    rhs_log += n_log;
  double gap = lhs_log - rhs_log;
  if (gap > 1e-6) return 1;
  if (gap < -1e-6) return -1;

  Int lhs = pow_int(x.num(), q);
  Int rhs = pow_int(x.den(), q);
  Int np = pow_int(n, p);
  if (neg_exp)
    lhs *= np;
  else
    rhs *= np;
  return cmp(lhs, rhs);
}

}  // namespace cubecover
