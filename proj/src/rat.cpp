#include "cubecover/rat.hpp"

#include <cctype>

namespace cubecover {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

bool Rat::is_fraction_token(const std::string& token) {
  if (token.empty()) return false;
  std::size_t start = token[0] == '-' ? 1 : 0;
  std::size_t slash = token.find('/');
  if (slash == std::string::npos) return all_digits(token, start, token.size());
  if (!all_digits(token, start, slash)) return false;
  if (!all_digits(token, slash + 1, token.size())) return false;
  // zero denominators are rejected by parse(); here only the shape matters
  return true;
}

Rat Rat::parse(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("Rat: empty token");
  std::size_t start = token[0] == '-' ? 1 : 0;
  bool neg = start == 1;

  std::size_t slash = token.find('/');
  std::size_t dot = token.find('.');
  if (slash != std::string::npos && dot != std::string::npos)
    throw std::invalid_argument("Rat: malformed token '" + token + "'");

  if (slash != std::string::npos) {
    if (!all_digits(token, start, slash) || !all_digits(token, slash + 1, token.size()))
      throw std::invalid_argument("Rat: malformed token '" + token + "'");
    Int num(token.substr(start, slash - start), 10);
    Int den(token.substr(slash + 1), 10);
    if (den == 0) throw std::invalid_argument("Rat: zero denominator in '" + token + "'");
    Rat r(num, den);
    return neg ? -r : r;
  }

  if (dot != std::string::npos) {
    if (!all_digits(token, start, dot) || !all_digits(token, dot + 1, token.size()))
      throw std::invalid_argument("Rat: malformed token '" + token + "'");
    std::string digits = token.substr(start, dot - start) + token.substr(dot + 1);
    Int num(digits, 10);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, token.size() - dot - 1);
    Rat r(num, den);
    return neg ? -r : r;
  }

  if (!all_digits(token, start, token.size()))
    throw std::invalid_argument("Rat: malformed token '" + token + "'");
  Rat r{Int(token.substr(start), 10)};
  return neg ? -r : r;
}

std::string Rat::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string to_string(const Rat& r) { return r.to_string(); }

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rat mass(const RatVec& v) {
  Rat acc;
  for (const Rat& x : v) acc += x * x;
  return acc;
}

Rat l1_norm(const RatVec& v) {
  Rat acc;
  for (const Rat& x : v) acc += abs(x);
  return acc;
}

int sparsity(const RatVec& v) {
  int count = 0;
  for (const Rat& x : v)
    if (!x.is_zero()) ++count;
  return count;
}

}  // namespace cubecover
