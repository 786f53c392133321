#include "hauteur/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace hauteur {

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly::Poly(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::var() { return Poly({Rational(0), Rational(1)}); }

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[i];
}

const Rational& Poly::lead() const {
    if (c_.empty()) throw InternalError("lead of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InternalError("polynomial division by zero");
    Poly r = a;
    std::vector<Rational> q(
        a.deg() >= b.deg() ? a.deg() - b.deg() + 1 : 0, Rational(0));
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        Rational f = r.lead() / b.lead();
        q[k] = f;
        for (int i = 0; i <= b.deg(); ++i) r.c_[i + k] -= f * b.c_[i];
        r.trim();
    }
    return {Poly(std::move(q)), r};
}

Poly Poly::derivative() const {
    if (deg() < 1) return Poly();
    std::vector<Rational> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(c));
}

Rational Poly::eval(const Rational& t0) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t0 + *it;
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / lead());
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        if (a != 1 || i == 0) {
            os << a;
            if (i > 0) os << "*";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

Poly primitive_part(const Poly& p) {
    if (p.is_zero()) return p;
    Int l(1);
    for (const auto& c : p.coeffs()) l = lcm(l, c.get_den());
    Int g(0);
    std::vector<Rational> c(p.coeffs());
    for (auto& x : c) {
        x *= Rational(l);
        g = gcd(g, x.get_num());
    }
    for (auto& x : c) x /= Rational(g);
    Poly r{std::move(c)};
    if (r.lead() < 0) r = -r;
    return r;
}

Poly gcd_poly(Poly a, Poly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.is_zero()) {
        Poly r = Poly::divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? Poly() : primitive_part(r);
    }
    return a.monic();
}

namespace {

// Yun's algorithm: p monic squarefree-decomposed as prod s_i^i
std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    Poly g = gcd_poly(p, p.derivative());
    Poly c = Poly::divrem(p, g).first;
    Poly d = Poly::divrem(p.derivative(), g).first - c.derivative();
    int i = 1;
    while (c.deg() > 0) {
        Poly s = gcd_poly(c, d);
        if (s.deg() > 0) out.emplace_back(s, i);
        c = Poly::divrem(c, s).first;
        d = Poly::divrem(d, s).first - c.derivative();
        ++i;
    }
    return out;
}

std::vector<Int> divisors_of(const Int& n) {
    std::vector<Int> out{Int(1)};
    for (auto [p, e] : factor_int(n)) {
        size_t base = out.size();
        Int pk(1);
        for (int k = 1; k <= e; ++k) {
            pk *= static_cast<long>(p);
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

// Lagrange interpolation through (xs[i], ys[i])
Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    Poly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        Poly li(Rational(1));
        Rational denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            li = li * Poly({-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + li * (ys[i] / denom);
    }
    return acc;
}

// rational roots of a squarefree monic polynomial, dividing them out of p
std::vector<Rational> extract_rational_roots(Poly& p) {
    std::vector<Rational> roots;
    if (p.deg() < 1) return roots;
    while (p.coeff(0) == 0 && p.deg() >= 1) {
        roots.push_back(Rational(0));
        p = Poly::divrem(p, Poly::var()).first;
    }
    if (p.deg() < 1) return roots;
    Poly z = primitive_part(p);
    Int c0 = z.coeff(0).get_num();
    Int cn = z.lead().get_num();
    for (const Int& r : divisors_of(c0))
        for (const Int& s : divisors_of(cn)) {
            Rational cand = make_rational(r, s);
            for (int sign = 0; sign < 2; ++sign) {
                Rational a = sign ? -cand : cand;
                if (p.deg() >= 1 && p.eval(a) == 0) {
                    roots.push_back(a);
                    p = Poly::divrem(p, Poly({-a, Rational(1)})).first;
                }
            }
        }
    return roots;
}

void factor_squarefree(Poly p, std::vector<Poly>& out);

// Kronecker search: find a factor of degree in [2, deg(p)/2], or conclude
// irreducible
bool kronecker_split(const Poly& p, Poly& f1, Poly& f2) {
    Poly z = primitive_part(p);
    int n = z.deg();
    for (int m = 2; m <= n / 2; ++m) {
        std::vector<Rational> xs;
        std::vector<Int> vals;
        long x = 0;
        while (static_cast<int>(xs.size()) < m + 1) {
            Rational v = z.eval(Rational(x));
            if (v != 0) {
                xs.push_back(Rational(x));
                vals.push_back(v.get_num());
            }
            x = (x > 0) ? -x : -x + 1;
        }
        std::vector<std::vector<Int>> divs(m + 1);
        for (int i = 0; i <= m; ++i) {
            for (const Int& d : divisors_of(vals[i])) {
                divs[i].push_back(d);
                if (i > 0) divs[i].push_back(-d);
            }
        }
        std::vector<size_t> idx(m + 1, 0);
        while (true) {
            std::vector<Rational> ys(m + 1);
            for (int i = 0; i <= m; ++i) ys[i] = Rational(divs[i][idx[i]]);
            Poly cand = interpolate(xs, ys);
            if (cand.deg() >= 1) {
                auto [q, r] = Poly::divrem(z, cand);
                if (r.is_zero()) {
                    f1 = cand;
                    f2 = q;
                    return true;
                }
            }
            int i = 0;
            for (; i <= m; ++i) {
                if (++idx[i] < divs[i].size()) break;
                idx[i] = 0;
            }
            if (i > m) break;
        }
    }
    return false;
}

void factor_squarefree(Poly p, std::vector<Poly>& out) {
    for (const Rational& a : extract_rational_roots(p))
        out.push_back(Poly({-a, Rational(1)}));
    if (p.deg() < 1) return;
    if (p.deg() == 1) {
        out.push_back(p.monic());
        return;
    }
    if (p.deg() > 8)
        throw FactorRangeError(
            "polynomial factorization degree cap exceeded (residual degree " +
            std::to_string(p.deg()) + " > 8)");
    Poly f1, f2;
    if (kronecker_split(p, f1, f2)) {
        factor_squarefree(f1, out);
        factor_squarefree(f2, out);
    } else {
        out.push_back(p.monic());
    }
}

}  // namespace

PolyFactorization factor_poly(const Poly& q) {
    if (q.is_zero()) throw Error("factoring the zero polynomial");
    PolyFactorization res;
    res.content = q.lead();
    Poly p = q.monic();
    if (p.deg() == 0) return res;
    for (const auto& [s, mult] : squarefree_decompose(p)) {
        std::vector<Poly> irr;
        factor_squarefree(s, irr);
        for (const Poly& f : irr) {
            bool merged = false;
            for (auto& [g, e] : res.factors) {
                if (g == f) {
                    e += mult;
                    merged = true;
                    break;
                }
            }
            if (!merged) res.factors.emplace_back(f, mult);
        }
    }
    std::sort(res.factors.begin(), res.factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.deg() != b.first.deg())
                      return a.first.deg() < b.first.deg();
                  return a.first.coeffs() < b.first.coeffs();
              });
    return res;
}

ClosedPoint ClosedPoint::infinity() {
    ClosedPoint c;
    c.inf_ = true;
    return c;
}

ClosedPoint ClosedPoint::finite(Poly q, bool assume_irreducible) {
    if (q.deg() < 1) throw Error("closed point requires degree >= 1");
    q = q.monic();
    if (!assume_irreducible) {
        auto f = factor_poly(q);
        if (f.factors.size() != 1 || f.factors[0].second != 1)
            throw Error("closed point polynomial is not irreducible: " + q.str());
    }
    ClosedPoint c;
    c.q_ = std::move(q);
    return c;
}

const Poly& ClosedPoint::poly() const {
    if (inf_) throw InternalError("poly() of the infinite place");
    return q_;
}

std::optional<Rational> ClosedPoint::rational_value() const {
    if (inf_ || q_.deg() != 1) return std::nullopt;
    return -q_.coeff(0);
}

bool ClosedPoint::operator==(const ClosedPoint& o) const {
    return inf_ == o.inf_ && q_ == o.q_;
}

bool ClosedPoint::operator<(const ClosedPoint& o) const {
    if (inf_ != o.inf_) return !inf_;  // finite points first, infinity last
    if (inf_) return false;
    if (q_.deg() != o.q_.deg()) return q_.deg() < o.q_.deg();
    return q_.coeffs() < o.q_.coeffs();
}

std::string ClosedPoint::str() const {
    return inf_ ? "inf" : q_.str();
}

void RatFunc::normalize() {
    if (den_.is_zero()) throw Error("zero denominator in rational function");
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = gcd_poly(num_, den_);
    if (g.deg() > 0) {
        num_ = Poly::divrem(num_, g).first;
        den_ = Poly::divrem(den_, g).first;
    }
    Rational l = den_.lead();
    if (l != 1) {
        Rational inv = Rational(1) / l;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc::RatFunc() : num_(), den_(Rational(1)) {}

RatFunc::RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}

RatFunc::RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
}

RatFunc RatFunc::var() { return RatFunc(Poly::var(), Poly(Rational(1))); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    // cross-cancel before multiplying to keep the gcd steps small
    Poly g1 = gcd_poly(a.num_, b.den_);
    Poly g2 = gcd_poly(b.num_, a.den_);
    Poly n1 = g1.deg() > 0 ? Poly::divrem(a.num_, g1).first : a.num_;
    Poly d2 = g1.deg() > 0 ? Poly::divrem(b.den_, g1).first : b.den_;
    Poly n2 = g2.deg() > 0 ? Poly::divrem(b.num_, g2).first : b.num_;
    Poly d1 = g2.deg() > 0 ? Poly::divrem(a.den_, g2).first : a.den_;
    return RatFunc(n1 * n2, d1 * d2);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error("division by the zero rational function");
    return a * RatFunc(b.den_, b.num_);
}

RatFunc RatFunc::pow(unsigned e) const {
    RatFunc r(Rational(1));
    RatFunc base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool RatFunc::operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

std::string RatFunc::str(const std::string& var) const {
    if (den_.deg() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

namespace {

long multiplicity_of(const Poly& p, const Poly& q) {
    long m = 0;
    Poly r = p;
    while (true) {
        auto [quot, rem] = Poly::divrem(r, q);
        if (!rem.is_zero()) return m;
        ++m;
        r = quot;
    }
}

}  // namespace

long ord_at(const RatFunc& r, const ClosedPoint& c) {
    if (r.is_zero()) throw Error("ord of the zero function");
    if (c.is_infinity()) return r.den().deg() - r.num().deg();
    return multiplicity_of(r.num(), c.poly()) - multiplicity_of(r.den(), c.poly());
}

Rational eval_ratfunc(const RatFunc& r, const Rational& t0) {
    Rational d = r.den().eval(t0);
    if (d == 0) throw PoleError(to_string(t0));
    return r.num().eval(t0) / d;
}

}  // namespace hauteur
