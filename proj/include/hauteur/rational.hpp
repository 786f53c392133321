#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hauteur/errors.hpp"

namespace hauteur {

using Int = mpz_class;
using Rational = mpq_class;

// canonical reduced fraction with positive denominator
Rational make_rational(const Int& num, const Int& den);
Rational rational_from_string(const std::string& s);

inline const Int& num(const Rational& x) { return x.get_num(); }
inline const Int& den(const Rational& x) { return x.get_den(); }
inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::string to_string(const Rational& x);

// trial divisors are capped; beyond the cap we refuse rather than stall
inline constexpr long long kFactorCap = 10'000'000;

bool is_prime(long long n);

// prime factorization of |n|, n != 0, ascending primes
std::vector<std::pair<long long, int>> factor_int(const Int& n);

// v_p(x) for nonzero x
long padic_val(const Rational& x, long long p);

struct PlaceQ {
    long long p = 0;  // 0 encodes the archimedean place

    static PlaceQ arch() { return PlaceQ{0}; }
    static PlaceQ finite(long long prime);

    bool is_arch() const { return p == 0; }
    bool operator==(const PlaceQ& o) const { return p == o.p; }
    bool operator<(const PlaceQ& o) const { return p < o.p; }
    std::string str() const;
};

// exact symbolic value sum q_i * log(p_i) over prime bases
class LogForm {
  public:
    LogForm() = default;

    static LogForm log_prime(long long p, const Rational& coeff);
    // log|x| for nonzero x, by factoring numerator and denominator
    static LogForm log_abs_exact(const Rational& x);

    LogForm& operator+=(const LogForm& o);
    LogForm& operator-=(const LogForm& o);
    LogForm& operator*=(const Rational& c);
    friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
    friend LogForm operator-(LogForm a, const LogForm& b) { return a -= b; }
    friend LogForm operator*(LogForm a, const Rational& c) { return a *= c; }

    bool operator==(const LogForm& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }

    double value() const;
    std::string str() const;
    const std::map<long long, Rational>& terms() const { return terms_; }

  private:
    std::map<long long, Rational> terms_;
    void prune(long long p);
};

// log|x| in double precision, x != 0; exact exponent arithmetic inside
double log_abs(const Rational& x);

// max(0, log|x|_v); 0 for x = 0
double local_naive_height(const Rational& x, const PlaceQ& v);
LogForm local_naive_height_exact(const Rational& x, const PlaceQ& v);

// log max(|num|, den)
double weil_height(const Rational& x);
LogForm weil_height_exact(const Rational& x);

}  // namespace hauteur
