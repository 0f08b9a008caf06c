#pragma once

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fernlab {

using BigInt = mpz_class;
using BigRat = mpq_class;

struct IrrationalResidue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_decimal(const BigInt& v) { return v.get_str(); }

inline std::string to_decimal(const BigRat& v) {
  BigRat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline bool is_integer(const BigRat& v) {
  BigRat c = v;
  c.canonicalize();
  return c.get_den() == 1;
}

// Product of Gamma values at positive half-integers.  Keys are twice the
// argument, so key 2k is Gamma(k) and key 2k+1 is Gamma(k+1/2).
class GammaProduct {
 public:
  GammaProduct() = default;

  static GammaProduct gamma2(long twice_arg, long exponent = 1) {
    if (twice_arg <= 0) throw std::domain_error("Gamma argument must be positive");
    GammaProduct g;
    if (exponent != 0) g.exps_[twice_arg] = exponent;
    return g;
  }

  const std::map<long, long>& exponents() const { return exps_; }

  long sqrt_pi_exponent() const {
    long s = 0;
    for (auto& [k, e] : exps_)
      if (k % 2 != 0) s += e;
    return s;
  }

  GammaProduct& operator*=(const GammaProduct& o) {
    for (auto& [k, e] : o.exps_) add(k, e);
    return *this;
  }
  GammaProduct& operator/=(const GammaProduct& o) {
    for (auto& [k, e] : o.exps_) add(k, -e);
    return *this;
  }
  GammaProduct pow(long p) const {
    GammaProduct g;
    for (auto& [k, e] : exps_) g.add(k, e * p);
    return g;
  }

  friend GammaProduct operator*(GammaProduct a, const GammaProduct& b) { return a *= b; }
  friend GammaProduct operator/(GammaProduct a, const GammaProduct& b) { return a /= b; }
  bool operator==(const GammaProduct& o) const { return exps_ == o.exps_; }

  // Rational part, i.e. the value divided by sqrt(pi)^sqrt_pi_exponent.
  BigRat rational_part() const {
    // Gamma(n) = prod_{j<n} j and Gamma(k+1/2) = sqrt(pi) prod_{j<=k} (2j-1)/2,
    // so accumulate exponents per integer factor with suffix sums.
    std::map<long, long> factor;  // integer j -> exponent
    long two = 0;
    long max_int = 0, max_half = 0;
    for (auto& [k, e] : exps_) {
      if (k % 2 == 0) max_int = std::max(max_int, k / 2);
      else max_half = std::max(max_half, (k - 1) / 2);
    }
    {
      long run = 0;
      for (long n = max_int; n >= 2; --n) {
        auto it = exps_.find(2 * n);
        if (it != exps_.end()) run += it->second;
        if (run) factor[n - 1] += run;
      }
    }
    {
      long run = 0;
      for (long k = max_half; k >= 1; --k) {
        auto it = exps_.find(2 * k + 1);
        if (it != exps_.end()) run += it->second;
        if (run) {
          factor[2 * k - 1] += run;
          two -= run;
        }
      }
    }
    BigInt num = 1, den = 1;
    for (auto& [j, e] : factor) {
      if (e == 0 || j == 1) continue;
      BigInt p;
      mpz_pow_ui(p.get_mpz_t(), BigInt(j).get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
      if (e > 0) num *= p; else den *= p;
    }
    if (two > 0) num <<= two;
    else if (two < 0) den <<= -two;
    BigRat r(num, den);
    r.canonicalize();
    return r;
  }

  BigRat to_rational() const {
    if (sqrt_pi_exponent() != 0)
      throw IrrationalResidue("sqrt(pi) exponent " + std::to_string(sqrt_pi_exponent()) +
                              " in " + str());
    return rational_part();
  }

  // Natural log of the full value (sqrt(pi) included).
  double log_value() const {
    double s = 0;
    for (auto& [k, e] : exps_) s += static_cast<double>(e) * std::lgamma(k / 2.0);
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, e] : exps_) {
      if (!first) os << " · ";
      first = false;
      os << "Γ(";
      if (k % 2 == 0) os << k / 2; else os << k << "/2";
      os << ")^" << e;
    }
    if (first) os << "1";
    os << " · √π^" << sqrt_pi_exponent();
    return os.str();
  }

 private:
  void add(long k, long e) {
    long& v = exps_[k];
    v += e;
    if (v == 0) exps_.erase(k);
  }
  std::map<long, long> exps_;
};

// H(n) for 2n = twice_n >= 0: product of Gamma(t) for t = n, n-1, ... > 0.
inline GammaProduct hyperfactorial2(long twice_n) {
  if (twice_n < 0) throw std::domain_error("hyperfactorial of a negative argument");
  GammaProduct g;
  for (long t = twice_n; t > 0; t -= 2) g *= GammaProduct::gamma2(t);
  return g;
}

inline GammaProduct hyperfactorial(long n) { return hyperfactorial2(2 * n); }

}  // namespace fernlab
