#include "hauteur/bottcher.hpp"

#include <string>
#include <utility>
#include <vector>

#include "hauteur/errors.hpp"

namespace hauteur {

namespace {

constexpr long kZeroPrec = 1L << 40;
constexpr long long kPowerCap = 1LL << 26;

// coefficient expansions at the place, each with the same relative width
struct LocalFamily {
    int d;
    std::vector<LaurentSeries> a;
    LaurentSeries ad_inv;

    LocalFamily(const DynPair& fp, const ClosedPoint& c, long width) : d(fp.d) {
        a.reserve(fp.d + 1);
        for (int i = 0; i <= fp.d; ++i) {
            if (fp.a[i] == RatFunc())
                a.push_back(LaurentSeries::zero(kZeroPrec));
            else
                a.push_back(expand_at(fp.a[i], c, ord_at(fp.a[i], c) + width));
        }
        ad_inv = series_invert(a[d]);
    }

    LaurentSeries apply(const LaurentSeries& s) const {
        LaurentSeries acc = a[d];
        for (int i = d - 1; i >= 0; --i) acc = series_add(series_mul(acc, s), a[i]);
        return acc;
    }
};

long long pow_ll(int b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > kPowerCap) throw Error("Bottcher stabilization exponent out of range");
    }
    return r;
}

LaurentSeries scalar_mul(const LaurentSeries& s, const Rational& q) {
    if (s.is_zero() || q == 0) return LaurentSeries::zero(s.prec());
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(s.prec() - s.val()));
    for (long e = s.val(); e < s.prec(); ++e) v.push_back(s.coeff(e) * q);
    return LaurentSeries(std::move(v), s.val(), s.prec());
}

}  // namespace

BottcherData bottcher_series(const DynPair& fp, const ClosedPoint& c, long prec,
                             int order_cap) {
    if (prec < 2) throw Error("Bottcher precision must be at least 2");
    RatFunc Q = fp.P;
    int n0 = 0;
    while (!in_basin0_ff(fp, Q, c)) {
        if (n0 >= kDefaultOrbitCap)
            throw Error("orbit does not escape at " + c.str());
        Q = fp.apply(Q);
        ++n0;
    }

    const long W = prec;
    LocalFamily lf(fp, c, W);
    LaurentSeries S = expand_at(Q, c, ord_at(Q, c) + W);
    const long m = -S.val();
    const Rational alpha = S.lead();
    int level = 0;  // S = f^level(Q)-expansion

    // xi_N = f^N(Q) w^{m d^N} a_d^{-(d^N-1)/(d-1)}, a unit series whose
    // d^N-th root with branch alpha converges coefficientwise
    auto G_at = [&](int N) {
        while (level < N) {
            S = lf.apply(S);
            ++level;
        }
        if (level != N) throw InternalError("Bottcher iterate requested out of order");
        long long dn = pow_ll(fp.d, N);
        long long eN = (dn - 1) / (fp.d - 1);
        LaurentSeries xi = series_mul(S.shifted(m * dn),
                                      series_pow(lf.ad_inv, static_cast<unsigned>(eN)));
        if (xi.val() != 0) throw InternalError("Bottcher normalization has wrong order");
        return nth_root(xi, static_cast<unsigned>(dn), alpha);
    };

    LaurentSeries G_prev = G_at(1);
    for (int N = 1; N + 2 <= order_cap; ++N) {
        LaurentSeries G_next = G_at(N + 1);
        if (G_next.agrees_with(G_prev, W)) {
            LaurentSeries G_confirm = G_at(N + 2);
            if (G_confirm.agrees_with(G_next, W))
                return {c, static_cast<int>(m), G_next.shifted(-m), N, n0};
        }
        G_prev = std::move(G_next);
    }
    throw Error("Bottcher series did not stabilize below the order cap");
}

CorrectionData correction_data(const DynPair& fp, const ClosedPoint& c,
                               const HeightPresentation& hp, long order) {
    if (order < 1) throw Error("correction order must be at least 1");
    BottcherData bd = bottcher_series(fp, c, order + 1);
    if (bd.escapeLevel > hp.N)
        throw InternalError("presentation level below the escape level");
    long long k = pow_ll(hp.d, hp.N - bd.escapeLevel);

    const long W = order + 1;
    LaurentSeries Gu = bd.G.shifted(bd.m);  // unit part
    LaurentSeries adexp = expand_at(fp.a[fp.d], c, ord_at(fp.a[fp.d], c) + W);
    LaurentSeries gexp = expand_at(hp.g, c, ord_at(hp.g, c) + W);

    LaurentSeries E = series_mul(
        series_pow(Gu, static_cast<unsigned>((fp.d - 1) * k)),
        series_mul(series_pow(adexp, static_cast<unsigned>(k)), series_invert(gexp)));
    E = E.shifted(-bd.m * (fp.d - 1) * static_cast<long>(k));
    if (E.val() != 0 || E.coeff(0) == 0)
        throw InternalError("correction series is not a unit");

    Rational c0 = E.coeff(0);
    LaurentSeries F = log_unit_series(scalar_mul(E, Rational(1) / c0));
    F = scalar_mul(F, Rational(1) / Rational(hp.scale));
    return {c0, F.truncated(order + 1), hp.scale};
}

LogForm constant_C(const std::map<PlaceQ, ClosedPoint>& assignment,
                   const std::map<ClosedPoint, CorrectionData>& corrections) {
    if (corrections.empty()) throw Error("no correction data");
    const Int& scale = corrections.begin()->second.scale;
    for (const auto& [pt, cd] : corrections)
        if (cd.scale != scale) throw InternalError("mismatched correction scales");

    LogForm total;
    for (const auto& [v, pt] : assignment) {
        auto it = corrections.find(pt);
        if (it == corrections.end())
            throw Error("no correction data at support point " + pt.str());
        const Rational& cb = it->second.c;
        if (v.is_arch())
            total += LogForm::log_abs_exact(cb);
        else
            total += LogForm::log_prime(v.p, Rational(-padic_val(cb, v.p)));
    }
    total *= Rational(1) / Rational(scale);
    return total;
}

Real eval_series_real(const LaurentSeries& s, const Real& w) {
    if (s.is_zero()) return Real();
    Real acc;
    for (long e = s.prec() - 1; e >= s.val(); --e) {
        acc *= w;
        acc += Real(s.coeff(e));
    }
    if (s.val() >= 0) {
        for (long e = 0; e < s.val(); ++e) acc *= w;
    } else {
        for (long e = 0; e < -s.val(); ++e) acc /= w;
    }
    return acc;
}

}  // namespace hauteur
