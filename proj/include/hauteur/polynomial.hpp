#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hauteur/rational.hpp"

namespace hauteur {

// polynomial in Q[t], coefficients lowest degree first
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rational& constant);
    explicit Poly(std::vector<Rational> coeffs);
    static Poly var();  // t

    bool is_zero() const { return c_.empty(); }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& lead() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const Rational& s) const;
    Poly pow(unsigned e) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // quotient and remainder over Q, b != 0
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    Poly derivative() const;
    Rational eval(const Rational& t0) const;
    Poly monic() const;
    std::string str(const std::string& var = "t") const;

  private:
    std::vector<Rational> c_;
    void trim();
};

// monic gcd over Q; remainders reduced to primitive integer form to keep
// coefficient growth in check
Poly gcd_poly(Poly a, Poly b);

// integer-primitive associate (content removed, leading coefficient > 0)
Poly primitive_part(const Poly& p);

struct PolyFactorization {
    Rational content;  // leading coefficient; factors are monic
    std::vector<std::pair<Poly, int>> factors;
};

// content/primitive split, Yun squarefree decomposition, rational-root
// extraction, Kronecker search for residual factors (residual degree <= 8)
PolyFactorization factor_poly(const Poly& q);

class ClosedPoint {
  public:
    static ClosedPoint infinity();
    // q monic irreducible; pass assume_irreducible for factor_poly outputs
    static ClosedPoint finite(Poly q, bool assume_irreducible = false);

    bool is_infinity() const { return inf_; }
    const Poly& poly() const;
    int degree() const { return inf_ ? 1 : q_.deg(); }
    // the rational a for a degree-1 point t - a
    std::optional<Rational> rational_value() const;

    bool operator==(const ClosedPoint& o) const;
    bool operator<(const ClosedPoint& o) const;
    std::string str() const;

  private:
    bool inf_ = false;
    Poly q_;
};

class RatFunc {
  public:
    RatFunc();  // zero
    RatFunc(const Rational& c);
    RatFunc(Poly n, Poly d);
    static RatFunc var();  // t

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.deg() <= 0 && den_.deg() == 0; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc pow(unsigned e) const;
    bool operator==(const RatFunc& o) const;

    // total coefficient count, the unit of the orbit degree budget
    long size() const { return num_.deg() + den_.deg() + 2; }
    std::string str(const std::string& var = "t") const;

  private:
    Poly num_, den_;  // den monic, gcd(num, den) = 1
    void normalize();
};

// valuation ord_c(r) for nonzero r
long ord_at(const RatFunc& r, const ClosedPoint& c);

// exact evaluation; PoleError at zeros of the denominator
Rational eval_ratfunc(const RatFunc& r, const Rational& t0);

}  // namespace hauteur
