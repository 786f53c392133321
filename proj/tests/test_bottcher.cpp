#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "hauteur/bottcher.hpp"
#include "hauteur/errors.hpp"
#include "hauteur/specialize.hpp"

using namespace hauteur;

namespace {

const Poly T = Poly::var();

RatFunc rf(const Poly& p) { return RatFunc(p, Poly(Rational(1))); }
RatFunc rc(long c) { return RatFunc(Rational(c)); }

DynPair quad(RatFunc P) { return DynPair(2, {rf(T), RatFunc(), rc(1)}, std::move(P)); }

RatFunc seven_t_plus_inv_t() { return rc(7) * RatFunc::var() + rc(1) / RatFunc::var(); }

Rational q(long n, long d) { return make_rational(Int(n), Int(d)); }

const std::vector<Rational> kGUnit = {
    q(1, 1),       q(1, 2),        q(-1, 8),         q(5, 16),
    q(-53, 128),   q(127, 256),    q(-677, 1024),    q(2221, 2048),
    q(-61133, 32768), q(205563, 65536)};

const std::vector<Rational> kF1 = {
    q(1, 4),   q(-1, 8),   q(5, 24),    q(-5, 16),  q(17, 40),   q(-29, 48),
    q(109, 112), q(-53, 32), q(203, 72), q(-387, 80), q(1489, 176), q(-1441, 96)};

}  // namespace

TEST_CASE("Bottcher series for z^2+t at infinity") {
    auto bd = bottcher_series(quad(rf(T)), ClosedPoint::infinity(), 11);
    CHECK(bd.m == 1);
    CHECK(bd.escapeLevel == 0);
    CHECK(bd.G.val() == -1);
    for (int i = 0; i < 10; ++i) CHECK(bd.G.coeff(i - 1) == kGUnit[i]);

    // starting from P = 0 lands on the same escaped iterate
    auto bd0 = bottcher_series(quad(rc(0)), ClosedPoint::infinity(), 11);
    CHECK(bd0.escapeLevel == 1);
    CHECK(bd0.m == 1);
    CHECK(bd0.G.agrees_with(bd.G, 9));
}

TEST_CASE("Bottcher series on the monomial family") {
    DynPair mono(2, {RatFunc(), RatFunc(), rc(1)}, rf(T));
    auto bd = bottcher_series(mono, ClosedPoint::infinity(), 9);
    CHECK(bd.m == 1);
    CHECK(bd.stabilizedAtN == 1);
    CHECK(bd.G.coeff(-1) == 1);
    for (long e = 0; e < bd.G.prec(); ++e) CHECK(bd.G.coeff(e) == 0);
}

TEST_CASE("Bottcher series at a finite place") {
    auto bd = bottcher_series(quad(seven_t_plus_inv_t()), ClosedPoint::finite(T), 8);
    CHECK(bd.m == 1);
    CHECK(bd.escapeLevel == 0);
    CHECK(bd.G.coeff(-1) == 1);

    auto bi = bottcher_series(quad(seven_t_plus_inv_t()), ClosedPoint::infinity(), 8);
    CHECK(bi.G.coeff(-1) == 7);
    CHECK(bi.G.coeff(0) == q(1, 14));  // 7 * (1/98)
}

TEST_CASE("Bottcher root identity at the stabilized level and beyond") {
    std::vector<std::pair<DynPair, ClosedPoint>> cases = {
        {quad(rc(0)), ClosedPoint::infinity()},
        {quad(seven_t_plus_inv_t()), ClosedPoint::infinity()},
        {quad(seven_t_plus_inv_t()), ClosedPoint::finite(T)}};
    for (const auto& [fp, c] : cases) {
        auto bd = bottcher_series(fp, c, 9);
        RatFunc Q = fp.P;
        for (int i = 0; i < bd.escapeLevel; ++i) Q = fp.apply(Q);
        for (int N : {bd.stabilizedAtN, bd.stabilizedAtN + 1}) {
            long long dn = 1;
            for (int i = 0; i < N; ++i) dn *= fp.d;
            long long eN = (dn - 1) / (fp.d - 1);
            RatFunc fN = Q;
            for (int i = 0; i < N; ++i) fN = fp.apply(fN);
            LaurentSeries rhs = expand_at(fN, c, ord_at(fN, c) + 9);
            LaurentSeries lhs = series_pow(bd.G, static_cast<unsigned>(dn));
            LaurentSeries ad = expand_at(fp.a[fp.d], c, ord_at(fp.a[fp.d], c) + 9);
            lhs = series_mul(lhs, series_pow(ad, static_cast<unsigned>(eN)));
            long upto = std::min(lhs.prec(), rhs.prec());
            CHECK(lhs.agrees_with(rhs, upto));
        }
    }
}

TEST_CASE("correction data reproduces the explicit series") {
    auto fp = quad(rc(0));
    auto pr = present_heights(fp);
    auto cd = correction_data(fp, ClosedPoint::infinity(), pr.hp, 12);
    CHECK(cd.c == 1);
    CHECK(cd.scale == 2);
    CHECK(cd.Fseries.val() == 1);
    for (int e = 1; e <= 12; ++e) CHECK(cd.Fseries.coeff(e) == kF1[e - 1]);
}

TEST_CASE("correction data on the two-place example") {
    auto fp = quad(seven_t_plus_inv_t());
    auto pr = present_heights(fp);
    auto ci = correction_data(fp, ClosedPoint::infinity(), pr.hp, 6);
    CHECK(ci.c == 7);
    CHECK(ci.scale == 1);
    CHECK(ci.Fseries.coeff(1) == q(197, 98));
    CHECK(ci.Fseries.coeff(2) == q(10975, 9604));

    auto c0 = correction_data(fp, ClosedPoint::finite(T), pr.hp, 6);
    CHECK(c0.c == 1);
    CHECK(c0.Fseries.coeff(1) == 2);
    CHECK(c0.Fseries.coeff(2) == 8);
    CHECK(c0.Fseries.coeff(3) == q(7, 6));
    CHECK(c0.Fseries.coeff(4) == -24);
    CHECK(c0.Fseries.coeff(5) == q(-127, 20));
    CHECK(c0.Fseries.coeff(6) == q(1373, 12));
}

TEST_CASE("correction data on the monomial family is trivial") {
    DynPair mono(2, {RatFunc(), RatFunc(), rc(1)}, rf(T));
    auto pr = present_heights(mono);
    auto cd = correction_data(mono, ClosedPoint::infinity(), pr.hp, 8);
    CHECK(cd.c == 1);
    CHECK(cd.Fseries.is_zero());
    CHECK(eval_series_real(cd.Fseries, Real(0.1)).to_double() == 0.0);
}

TEST_CASE("replacing P by f(P) rescales the correction data") {
    // same divisor support, doubled multiplicities; scale bookkeeping halves N
    auto fp = quad(rc(0));
    auto fP = quad(rf(T));
    auto cd = correction_data(fp, ClosedPoint::infinity(), present_heights(fp).hp, 10);
    auto cdf = correction_data(fP, ClosedPoint::infinity(), present_heights(fP).hp, 10);
    CHECK(cd.c == cdf.c);
    CHECK(cd.scale == 2);
    CHECK(cdf.scale == 1);
    for (int e = 1; e <= 10; ++e) CHECK(cdf.Fseries.coeff(e) == 2 * cd.Fseries.coeff(e));

    auto g2 = quad(seven_t_plus_inv_t());
    auto g2f = quad(g2.apply(g2.P));
    auto ca = correction_data(g2, ClosedPoint::infinity(), present_heights(g2).hp, 8);
    auto cb = correction_data(g2f, ClosedPoint::infinity(), present_heights(g2f).hp, 8);
    CHECK(cb.c == ca.c * ca.c);
    for (int e = 1; e <= 8; ++e) CHECK(cb.Fseries.coeff(e) == 2 * ca.Fseries.coeff(e));
}

TEST_CASE("constant C over place assignments") {
    auto fp = quad(seven_t_plus_inv_t());
    auto pr = present_heights(fp);
    std::map<ClosedPoint, CorrectionData> corr;
    corr.emplace(ClosedPoint::infinity(),
                 correction_data(fp, ClosedPoint::infinity(), pr.hp, 4));
    corr.emplace(ClosedPoint::finite(T),
                 correction_data(fp, ClosedPoint::finite(T), pr.hp, 4));

    std::map<PlaceQ, ClosedPoint> to_inf{{PlaceQ::arch(), ClosedPoint::infinity()},
                                         {PlaceQ::finite(7), ClosedPoint::infinity()}};
    std::map<PlaceQ, ClosedPoint> to_zero{{PlaceQ::arch(), ClosedPoint::finite(T)},
                                          {PlaceQ::finite(7), ClosedPoint::finite(T)}};
    std::map<PlaceQ, ClosedPoint> mixed{{PlaceQ::arch(), ClosedPoint::infinity()},
                                        {PlaceQ::finite(7), ClosedPoint::finite(T)}};
    std::map<PlaceQ, ClosedPoint> swapped{{PlaceQ::arch(), ClosedPoint::finite(T)},
                                          {PlaceQ::finite(7), ClosedPoint::infinity()}};

    CHECK(constant_C(mixed, corr) == LogForm::log_prime(7, Rational(1)));
    CHECK(constant_C(swapped, corr) == LogForm::log_prime(7, Rational(-1)));
    CHECK(constant_C(to_inf, corr).is_zero());
    CHECK(constant_C(to_zero, corr).is_zero());
    CHECK(constant_C(mixed, corr).value() == doctest::Approx(std::log(7.0)));

    std::map<PlaceQ, ClosedPoint> dangling{
        {PlaceQ::arch(), ClosedPoint::finite(T - Poly(Rational(3)))}};
    CHECK_THROWS_AS(constant_C(dangling, corr), Error);
}

TEST_CASE("Bottcher errors on bad requests") {
    DynPair fixed(2, {RatFunc(), RatFunc(), rc(1)}, rc(1));
    CHECK_THROWS_AS(bottcher_series(fixed, ClosedPoint::infinity(), 6), Error);
    RatFunc P3(T.pow(3), T * T + Poly(Rational(1)));
    CHECK_THROWS_AS(bottcher_series(quad(P3),
                                    ClosedPoint::finite(T * T + Poly(Rational(1)), true), 6),
                    ExtensionFieldError);
}

TEST_CASE("correction series predicts the height difference numerically") {
    auto fp = quad(rc(0));
    auto pr = present_heights(fp);
    auto cd = correction_data(fp, ClosedPoint::infinity(), pr.hp, 8);
    Real bound_coeff = r_abs(Real(cd.Fseries.coeff(8)));
    for (long t : {10L, 20L, 50L, 100L}) {
        auto s = specialize(fp, Rational(t));
        auto lam = local_height_arch(s, 1e-30);
        REQUIRE(lam.certified);
        Real lamD = r_log(Real(t)) / Real(2L);
        Real pred = eval_series_real(cd.Fseries, Real(1L) / Real(t));
        Real diff = lam.value - lamD - pred;
        Real bound = Real(2L) * bound_coeff;
        for (int i = 0; i < 9; ++i) bound /= Real(t);
        CHECK(r_abs(diff) <= bound);
    }
}
