#include "hauteur/family.hpp"

#include <sstream>

#include "hauteur/errors.hpp"

namespace hauteur {

DynPair::DynPair(int deg, std::vector<RatFunc> coeffs, RatFunc point)
    : d(deg), a(std::move(coeffs)), P(std::move(point)) {
    if (d < 2) throw Error("map degree must be at least 2");
    if (a.size() != static_cast<size_t>(d) + 1)
        throw Error("expected " + std::to_string(d + 1) + " coefficients");
    if (a.back().is_zero()) throw Error("leading coefficient vanishes identically");
}

RatFunc DynPair::apply(const RatFunc& x, long budget) const {
    RatFunc r = a[static_cast<size_t>(d)];
    for (int i = d - 1; i >= 0; --i) {
        // the product cost is checked before multiplying; the size check
        // alone would only fire after the expensive multiply completes
        if (static_cast<long long>(r.size()) * static_cast<long long>(x.size()) >
            64LL * budget)
            throw ResourceError("orbit multiplication cost exceeds the budget (" +
                                std::to_string(r.size()) + " x " +
                                std::to_string(x.size()) + " coefficients)");
        r = r * x + a[static_cast<size_t>(i)];
        if (r.size() > budget)
            throw ResourceError("orbit degree budget exceeded (" + std::to_string(r.size()) +
                                " > " + std::to_string(budget) + " coefficients)");
    }
    return r;
}

void DivisorQ::add(const ClosedPoint& c, const Rational& m) {
    if (m == 0) return;
    auto it = entries_.find(c);
    if (it == entries_.end()) {
        entries_.emplace(c, m);
        return;
    }
    it->second += m;
    if (it->second == 0) entries_.erase(it);
}

Rational DivisorQ::degree() const {
    Rational total(0);
    for (const auto& [c, m] : entries_) total += Rational(c.degree()) * m;
    return total;
}

std::string DivisorQ::str() const {
    if (entries_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [c, m] : entries_) {
        if (!first) out << " + ";
        out << "(" << c.str() << " : " << to_string(m) << ")";
        first = false;
    }
    return out.str();
}

namespace {

void add_factors(std::set<ClosedPoint>& places, const Poly& p) {
    if (p.deg() < 1) return;
    for (const auto& [q, m] : factor_poly(p).factors)
        places.insert(ClosedPoint::finite(q, true));
}

// ord_c extended by ord(0) = +infinity (represented as nullopt)
std::optional<long> ord_or_inf(const RatFunc& r, const ClosedPoint& c) {
    if (r.is_zero()) return std::nullopt;
    return ord_at(r, c);
}

class OrbitCache {
  public:
    OrbitCache(const DynPair& fp, long budget) : fp_(fp), budget_(budget) {
        ys_.push_back(fp.P);
    }
    const RatFunc& get(int n) {
        while (static_cast<int>(ys_.size()) <= n)
            ys_.push_back(fp_.apply(ys_.back(), budget_));
        return ys_[static_cast<size_t>(n)];
    }

  private:
    const DynPair& fp_;
    long budget_;
    std::vector<RatFunc> ys_;
};

// valuation floor at c, the Q(t) twin of the p-adic one: {ord_c >= L} is
// forward invariant when ord(a_1) >= 0, L >= -ord(a_i)/(i-1) for every
// i >= 2 with a_i != 0, and L <= ord(a_0); orbits inside stay bounded at c
bool floor_trap(const DynPair& fp, const ClosedPoint& c, Rational& L) {
    auto o1 = ord_or_inf(fp.a[1], c);
    if (o1 && *o1 < 0) return false;
    L = Rational(-ord_at(fp.a[static_cast<size_t>(fp.d)], c)) / Rational(fp.d - 1);
    for (int i = 2; i < fp.d; ++i) {
        auto oi = ord_or_inf(fp.a[static_cast<size_t>(i)], c);
        if (!oi) continue;
        Rational cand = Rational(-*oi) / Rational(i - 1);
        if (cand > L) L = cand;
    }
    auto o0 = ord_or_inf(fp.a[0], c);
    return !o0 || Rational(*o0) >= L;
}

FfLocalHeight local_height_via(OrbitCache& orbit, const DynPair& fp, const ClosedPoint& c,
                               int cap) {
    Rational L;
    const bool trapFeasible = floor_trap(fp, c, L);
    for (int n = 0; n <= cap; ++n) {
        const RatFunc& y = orbit.get(n);
        if (in_basin0_ff(fp, y, c)) {
            const RatFunc& ad = fp.a[static_cast<size_t>(fp.d)];
            Rational value =
                Rational(-ord_at(ad, c)) / Rational(fp.d - 1) + Rational(-ord_at(y, c));
            for (int k = 0; k < n; ++k) value /= Rational(fp.d);
            return {value, n};
        }
        if (trapFeasible) {
            auto oy = ord_or_inf(y, c);
            if (!oy || Rational(*oy) >= L) return {Rational(0), std::nullopt, true};
        }
    }
    return {Rational(0), std::nullopt, false};
}

}  // namespace

std::set<ClosedPoint> bad_places(const DynPair& fp) {
    std::set<ClosedPoint> places;
    places.insert(ClosedPoint::infinity());
    for (const auto& ai : fp.a)
        if (!ai.is_zero()) add_factors(places, ai.den());
    const RatFunc& ad = fp.a[static_cast<size_t>(fp.d)];
    add_factors(places, ad.num());
    if (!fp.P.is_zero()) add_factors(places, fp.P.den());
    return places;
}

bool in_basin0_ff(const DynPair& fp, const RatFunc& Q, const ClosedPoint& c) {
    if (Q.is_zero()) return false;
    long m = -ord_at(Q, c);  // -ord, so "size" of Q at c
    if (m <= 0) return false;
    const RatFunc& ad = fp.a[static_cast<size_t>(fp.d)];
    long oad = ord_at(ad, c);
    if (Rational(m) * Rational(fp.d - 1) <= Rational(2) * Rational(oad)) return false;
    for (int i = 0; i < fp.d; ++i) {
        auto oai = ord_or_inf(fp.a[static_cast<size_t>(i)], c);
        if (!oai) continue;
        if (Rational(m) * Rational(fp.d - i) <= Rational(oad - *oai)) return false;
    }
    return true;
}

FfLocalHeight ff_local_height(const DynPair& fp, const ClosedPoint& c, int cap, long budget) {
    if (cap < 1) throw Error("iteration cap must be at least 1");
    OrbitCache orbit(fp, budget);
    return local_height_via(orbit, fp, c, cap);
}

DivisorResult divisor(const DynPair& fp, int cap, long budget) {
    DivisorResult result;
    OrbitCache orbit(fp, budget);
    for (const auto& c : bad_places(fp)) {
        FfLocalHeight h = local_height_via(orbit, fp, c, cap);
        if (h.escapeN) {
            result.D.add(c, h.value);
            result.escapeLevels.emplace(c, *h.escapeN);
        } else if (!h.bounded) {
            result.unverified.push_back(c);
        }
    }
    return result;
}

bool is_preperiodic(const DynPair& fp, int cap, long budget) {
    std::vector<RatFunc> ys;
    ys.push_back(fp.P);
    for (int n = 1; n <= cap; ++n) {
        ys.push_back(fp.apply(ys.back(), budget));
        for (size_t i = 0; i + 1 < ys.size(); ++i)
            if (ys[i] == ys.back()) return true;
    }
    return false;
}

}  // namespace hauteur
