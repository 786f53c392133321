#pragma once

#include <string>
#include <vector>

#include "hauteur/polynomial.hpp"
#include "hauteur/rational.hpp"

namespace hauteur {

// truncated Laurent series over Q in a local parameter w, exact modulo
// O(w^prec); coefficients stored densely on [val, prec)
class LaurentSeries {
  public:
    LaurentSeries();  // zero modulo O(w^0)
    LaurentSeries(std::vector<Rational> coeffs, long val, long prec);
    static LaurentSeries zero(long prec);
    static LaurentSeries one(long prec);
    static LaurentSeries monomial(const Rational& c, long exp, long prec);

    // true when every known coefficient vanishes (the zero flag; the series
    // may still be a nonzero element hiding above the precision cutoff)
    bool is_zero() const { return c_.empty(); }
    long val() const { return c_.empty() ? prec_ : val_; }
    long prec() const { return prec_; }
    Rational coeff(long e) const;  // defined for e < prec
    Rational lead() const;

    LaurentSeries operator-() const;
    LaurentSeries truncated(long new_prec) const;
    LaurentSeries shifted(long k) const;  // multiply by w^k
    bool agrees_with(const LaurentSeries& o, long upto) const;
    bool operator==(const LaurentSeries& o) const;
    std::string str(const std::string& var = "w") const;

  private:
    std::vector<Rational> c_;
    long val_ = 0;
    long prec_ = 0;
    void normalize();
};

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_pow(const LaurentSeries& s, unsigned e);

// multiplicative inverse; PrecisionExhausted when s has an all-zero window
LaurentSeries series_invert(const LaurentSeries& s);

// r with r^n = s and lead(r) = branch, via Newton iteration on the unit
// part; requires branch^n = lead(s) in Q and n | val(s), else
// NoRationalBranchError
LaurentSeries nth_root(const LaurentSeries& s, unsigned n, const Rational& branch);

// log s for s = 1 + O(w); formal series (s-1) - (s-1)^2/2 + ...
LaurentSeries log_unit_series(const LaurentSeries& s);

// exp s for val(s) >= 1; inverse of log_unit_series
LaurentSeries exp_series(const LaurentSeries& s);

// Laurent expansion of r at a rational point (w = t - a) or at infinity
// (w = 1/t), exact modulo O(w^prec); degree > 1 points need an extension
// field and raise ExtensionFieldError
LaurentSeries expand_at(const RatFunc& r, const ClosedPoint& c, long prec);

}  // namespace hauteur
