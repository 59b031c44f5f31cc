#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace koz {

using BigInt = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;

struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatchError : std::runtime_error {
  explicit DimensionMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ground field: the rationals or a prime field F_p. Scalars are stored as
/// exact rationals; over F_p they are kept as canonical residues in [0, p).
class Field {
 public:
  enum class Kind { rational, prime };

  static Field rationals() { return Field(Kind::rational, 0); }

  static Field prime(long long p) {
    if (p < 2 || !is_prime(p)) {
      throw PreconditionError("field modulus must be prime, got " + std::to_string(p));
    }
    return Field(Kind::prime, p);
  }

  Kind kind() const { return kind_; }
  long long modulus() const { return p_; }
  bool is_rational() const { return kind_ == Kind::rational; }

  /// Canonical representative: reduced fraction, or residue in [0, p).
  Scalar canon(const Scalar& a) const {
    if (kind_ == Kind::rational) return a;  // cpp_rational normalizes itself
    BigInt num = boost::multiprecision::numerator(a);
    BigInt den = boost::multiprecision::denominator(a);
    BigInt p(p_);
    num %= p;
    if (num < 0) num += p;
    den %= p;
    if (den < 0) den += p;
    if (den == 0) throw PreconditionError("division by zero residue in F_p");
    if (den != 1) num = (num * inv_mod(den, p)) % p;
    return Scalar(num);
  }

  Scalar add(const Scalar& a, const Scalar& b) const { return canon(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return canon(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return canon(a * b); }
  Scalar neg(const Scalar& a) const { return canon(-a); }

  Scalar inv(const Scalar& a) const {
    if (is_zero(a)) throw PreconditionError("inverse of zero");
    if (kind_ == Kind::rational) return 1 / a;
    BigInt num = boost::multiprecision::numerator(canon(a));
    return Scalar(inv_mod(num, BigInt(p_)));
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const { return canon(a) == 0; }
  bool eq(const Scalar& a, const Scalar& b) const { return is_zero(a - b); }

  Scalar from_int(long long n) const { return canon(Scalar(n)); }

  /// True when the field characteristic divides n (char 0 divides nothing nonzero).
  bool char_divides(long long n) const {
    if (kind_ == Kind::rational) return n == 0;
    return n % p_ == 0;
  }

  std::string describe() const {
    return kind_ == Kind::rational ? "rational" : ("prime:" + std::to_string(p_));
  }

 private:
  Field(Kind k, long long p) : kind_(k), p_(p) {}

  static bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long q = 2; q * q <= n; ++q) {
      if (n % q == 0) return false;
    }
    return true;
  }

  static BigInt inv_mod(BigInt a, const BigInt& p) {
    // extended Euclid
    BigInt t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
      BigInt q = r / new_r;
      BigInt tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (r != 1) throw PreconditionError("residue not invertible");
    if (t < 0) t += p;
    return t;
  }

  Kind kind_;
  long long p_;
};

}  // namespace koz
