#include "hauteur/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "hauteur/errors.hpp"

namespace hauteur {

namespace {
constexpr long kWindowCap = 200000;

void check_window(long val, long prec) {
    if (prec - val > kWindowCap)
        throw ResourceError("series window exceeds " + std::to_string(kWindowCap) +
                            " coefficients");
}
}  // namespace

LaurentSeries::LaurentSeries() = default;

LaurentSeries::LaurentSeries(std::vector<Rational> coeffs, long val, long prec)
    : c_(std::move(coeffs)), val_(val), prec_(prec) {
    check_window(std::min(val_, prec_), prec_);
    c_.resize(static_cast<size_t>(prec_ - std::min(val_, prec_)));
    normalize();
}

void LaurentSeries::normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<long>(lead);
}

LaurentSeries LaurentSeries::zero(long prec) { return LaurentSeries({}, prec, prec); }

LaurentSeries LaurentSeries::one(long prec) { return monomial(Rational(1), 0, prec); }

LaurentSeries LaurentSeries::monomial(const Rational& c, long exp, long prec) {
    if (c == 0 || exp >= prec) return zero(prec);
    check_window(exp, prec);
    std::vector<Rational> v(static_cast<size_t>(prec - exp));
    v[0] = c;
    return LaurentSeries(std::move(v), exp, prec);
}

Rational LaurentSeries::coeff(long e) const {
    if (e >= prec_)
        throw InternalError("coefficient of w^" + std::to_string(e) +
                            " requested beyond precision O(w^" + std::to_string(prec_) + ")");
    if (c_.empty() || e < val_ || e >= val_ + static_cast<long>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(e - val_)];
}

Rational LaurentSeries::lead() const {
    if (c_.empty()) throw PrecisionExhausted("leading coefficient of an all-zero window");
    return c_[0];
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LaurentSeries LaurentSeries::truncated(long new_prec) const {
    if (new_prec >= prec_) return *this;
    if (c_.empty() || new_prec <= val_) return zero(new_prec);
    std::vector<Rational> v(c_.begin(), c_.begin() + (new_prec - val_));
    return LaurentSeries(std::move(v), val_, new_prec);
}

LaurentSeries LaurentSeries::shifted(long k) const {
    LaurentSeries r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o, long upto) const {
    if (prec_ < upto || o.prec_ < upto)
        throw PrecisionExhausted("series comparison beyond stored precision");
    long lo = std::min(val(), o.val());
    for (long e = lo; e < upto; ++e)
        if (coeff(e) != o.coeff(e)) return false;
    return true;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    return val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
}

std::string LaurentSeries::str(const std::string& var) const {
    std::ostringstream out;
    bool first = true;
    for (long e = val(); e < prec_; ++e) {
        Rational c = coeff(e);
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        Rational a = abs(c);
        bool unit_coeff = (a == 1) && e != 0;
        if (!unit_coeff) out << to_string(a);
        if (e != 0) {
            if (!unit_coeff) out << "*";
            out << var;
            if (e != 1) out << "^" << e;
        }
        first = false;
    }
    if (first) out << "0";
    out << " + O(" << var << "^" << prec_ << ")";
    return out.str();
}

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    long prec = std::min(a.prec(), b.prec());
    long lo = std::min(std::min(a.val(), b.val()), prec);
    check_window(lo, prec);
    std::vector<Rational> v(static_cast<size_t>(prec - lo));
    for (long e = lo; e < prec; ++e) {
        Rational s(0);
        if (e >= a.val() && e < a.prec()) s += a.coeff(e);
        if (e >= b.val() && e < b.prec()) s += b.coeff(e);
        v[static_cast<size_t>(e - lo)] = s;
    }
    return LaurentSeries(std::move(v), lo, prec);
}

LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b) {
    return series_add(a, -b);
}

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    long prec = std::min(a.val() + b.prec(), b.val() + a.prec());
    if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(prec);
    long lo = a.val() + b.val();
    if (lo >= prec) return LaurentSeries::zero(prec);
    check_window(lo, prec);
    std::vector<Rational> v(static_cast<size_t>(prec - lo));
    long na = std::min(a.prec(), a.val() + (prec - lo)) - a.val();
    long nb = std::min(b.prec(), b.val() + (prec - lo)) - b.val();
    for (long i = 0; i < na; ++i) {
        Rational ca = a.coeff(a.val() + i);
        if (ca == 0) continue;
        for (long j = 0; j < nb && i + j < prec - lo; ++j) {
            Rational cb = b.coeff(b.val() + j);
            if (cb == 0) continue;
            v[static_cast<size_t>(i + j)] += ca * cb;
        }
    }
    return LaurentSeries(std::move(v), lo, prec);
}

LaurentSeries series_pow(const LaurentSeries& s, unsigned e) {
    if (e == 0) return LaurentSeries::one(s.prec() - s.val());
    LaurentSeries acc = s;
    LaurentSeries result = LaurentSeries::one(s.prec() - s.val() + 1);
    bool have = false;
    unsigned k = e;
    while (k > 0) {
        if (k & 1u) {
            result = have ? series_mul(result, acc) : acc;
            have = true;
        }
        k >>= 1u;
        if (k > 0) acc = series_mul(acc, acc);
    }
    return result;
}

LaurentSeries series_invert(const LaurentSeries& s) {
    if (s.is_zero())
        throw PrecisionExhausted("inverting a series indistinguishable from 0 at O(w^" +
                                 std::to_string(s.prec()) + ")");
    long v = s.val();
    long m = s.prec() - v;  // relative precision of the unit part
    Rational c0 = s.lead();
    // u = s / (c0 w^v) - 1, then invert 1 + u by the alternating geometric sum
    std::vector<Rational> u(static_cast<size_t>(m));
    for (long i = 0; i < m; ++i) u[static_cast<size_t>(i)] = s.coeff(v + i) / c0;
    std::vector<Rational> inv(static_cast<size_t>(m));
    inv[0] = Rational(1);
    for (long k = 1; k < m; ++k) {
        Rational acc(0);
        for (long j = 1; j <= k; ++j) acc += u[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)];
        inv[static_cast<size_t>(k)] = -acc;
    }
    for (auto& c : inv) c /= c0;
    return LaurentSeries(std::move(inv), -v, m - v);
}

LaurentSeries nth_root(const LaurentSeries& s, unsigned n, const Rational& branch) {
    if (n == 0) throw InternalError("0th root");
    if (s.is_zero())
        throw PrecisionExhausted("root of a series indistinguishable from 0 at O(w^" +
                                 std::to_string(s.prec()) + ")");
    long v = s.val();
    long nn = static_cast<long>(n);
    if (v % nn != 0)
        throw NoRationalBranchError("valuation " + std::to_string(v) + " not divisible by " +
                                    std::to_string(n));
    Rational c0 = s.lead();
    Rational bp = branch;
    for (unsigned i = 1; i < n; ++i) bp *= branch;
    if (bp != c0 || branch == 0)
        throw NoRationalBranchError("branch^" + std::to_string(n) +
                                    " does not match the leading coefficient " +
                                    to_string(c0));
    long m = s.prec() - v;  // relative precision
    // unit part A = 1 + u
    std::vector<Rational> uc(static_cast<size_t>(m));
    for (long i = 0; i < m; ++i) uc[static_cast<size_t>(i)] = s.coeff(v + i) / c0;
    LaurentSeries A(std::move(uc), 0, m);
    // Newton for x^n = A starting from x = 1; each step doubles the number of
    // correct coefficients
    LaurentSeries x = LaurentSeries::one(m);
    Rational ninv(1, static_cast<long>(n));
    long correct = 1;
    while (correct < m) {
        LaurentSeries xn = series_pow(x, n).truncated(m);
        LaurentSeries num = series_sub(xn, A);
        LaurentSeries den = series_mul(LaurentSeries::monomial(Rational(static_cast<long>(n)), 0, m),
                                       series_pow(x, n - 1).truncated(m));
        x = series_sub(x, series_mul(num, series_invert(den)).truncated(m));
        correct *= 2;
    }
    LaurentSeries root = series_mul(x, LaurentSeries::monomial(branch, 0, m));
    return root.shifted(v / nn);
}

LaurentSeries log_unit_series(const LaurentSeries& s) {
    if (s.is_zero() || s.val() != 0 || s.lead() != 1)
        throw Error("log_unit_series requires a series of the form 1 + O(w)");
    long prec = s.prec();
    LaurentSeries u = series_sub(s, LaurentSeries::one(prec));
    LaurentSeries result = LaurentSeries::zero(prec);
    if (u.is_zero()) return result;
    LaurentSeries acc = u;
    for (long k = 1; k * u.val() < prec; ++k) {
        Rational c(((k % 2) == 1) ? 1 : -1, k);
        result = series_add(result, series_mul(acc, LaurentSeries::monomial(c, 0, prec)));
        acc = series_mul(acc, u).truncated(prec);
        if (acc.is_zero()) break;
    }
    return result.truncated(prec);
}

LaurentSeries exp_series(const LaurentSeries& s) {
    long prec = s.prec();
    LaurentSeries result = LaurentSeries::one(prec);
    if (s.is_zero()) return result;
    if (s.val() < 1) throw Error("exp_series requires val >= 1");
    LaurentSeries acc = s;
    Rational fact(1);
    for (long k = 1; k * s.val() < prec; ++k) {
        fact /= Rational(k);
        result = series_add(result, series_mul(acc, LaurentSeries::monomial(fact, 0, prec)));
        acc = series_mul(acc, s).truncated(prec);
        if (acc.is_zero()) break;
    }
    return result.truncated(prec);
}

namespace {

// p(w + a), exact
Poly poly_shift(const Poly& p, const Rational& a) {
    Poly result;
    Poly shift = Poly::var() + Poly(a);
    for (int i = p.deg(); i >= 0; --i) {
        result = result * shift + Poly(p.coeff(i));
    }
    return result;
}

Poly poly_reverse(const Poly& p) {
    std::vector<Rational> v(p.coeffs().rbegin(), p.coeffs().rend());
    return Poly(std::move(v));
}

LaurentSeries poly_to_series(const Poly& p, long prec) {
    std::vector<Rational> v = p.coeffs();
    return LaurentSeries(std::move(v), 0, std::max(prec, static_cast<long>(p.deg()) + 1))
        .truncated(prec);
}

}  // namespace

LaurentSeries expand_at(const RatFunc& r, const ClosedPoint& c, long prec) {
    if (r.is_zero()) throw Error("expand_at requires a nonzero function");
    if (!c.is_infinity() && c.degree() > 1)
        throw ExtensionFieldError("expansion at a point of degree " +
                                  std::to_string(c.degree()) +
                                  " needs an extension field");
    Poly n = r.num(), d = r.den();
    long v;  // valuation of r at c
    if (c.is_infinity()) {
        v = static_cast<long>(d.deg()) - static_cast<long>(n.deg());
        n = poly_reverse(n);
        d = poly_reverse(d);
    } else {
        Rational a = *c.rational_value();
        n = poly_shift(n, a);
        d = poly_shift(d, a);
        long vn = 0, vd = 0;
        while (n.coeff(0) == 0) {
            n = Poly::divrem(n, Poly::var()).first;
            ++vn;
        }
        while (d.coeff(0) == 0) {
            d = Poly::divrem(d, Poly::var()).first;
            ++vd;
        }
        v = vn - vd;
    }
    long m = prec - v;  // relative terms needed
    if (m <= 0) return LaurentSeries::zero(prec);
    LaurentSeries un = poly_to_series(n, m);
    LaurentSeries ud = poly_to_series(d, m);
    LaurentSeries unit = series_mul(un, series_invert(ud)).truncated(m);
    return unit.shifted(v);
}

}  // namespace hauteur
