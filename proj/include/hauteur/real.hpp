#pragma once

#include <mpfr.h>

#include <string>

#include "hauteur/rational.hpp"

namespace hauteur {

// fixed-precision MPFR value; 256 bits is far below every tolerance in use
// while keeping height differences resolvable beyond double precision
class Real {
  public:
    static constexpr mpfr_prec_t kBits = 256;

    Real() { mpfr_init2(v_, kBits); mpfr_set_zero(v_, 1); }
    explicit Real(long n) { mpfr_init2(v_, kBits); mpfr_set_si(v_, n, MPFR_RNDN); }
    explicit Real(double d) { mpfr_init2(v_, kBits); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit Real(const Rational& q) {
        mpfr_init2(v_, kBits);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    explicit Real(const Int& n) {
        mpfr_init2(v_, kBits);
        mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN);
    }
    Real(const Real& o) { mpfr_init2(v_, kBits); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, kBits); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    Real operator-() const {
        Real r;
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend Real r_abs(const Real& a) {
        Real r;
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    // natural log; input must be positive
    friend Real r_log(const Real& a) {
        Real r;
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real r_log1p(const Real& a) {
        Real r;
        mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real r_exp(const Real& a) {
        Real r;
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real r_max(const Real& a, const Real& b) { return (a < b) ? b : a; }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

// log p for a prime (or any positive integer)
inline Real r_log_int(long long p) { return r_log(Real(static_cast<long>(p))); }

// exact symbolic form evaluated in extended precision
inline Real logform_to_real(const LogForm& f) {
    Real total;
    for (const auto& [p, q] : f.terms()) total += Real(q) * r_log_int(p);
    return total;
}

}  // namespace hauteur
