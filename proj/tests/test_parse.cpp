#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hauteur/errors.hpp"
#include "hauteur/parse.hpp"

using namespace hauteur;

namespace {

const Poly T = Poly::var();

RatFunc rf(const Poly& p) { return RatFunc(p, Poly(Rational(1))); }
RatFunc rc(long c) { return RatFunc(Rational(c)); }

RatFunc seven_t_plus_inv_t() { return rc(7) * RatFunc::var() + rc(1) / RatFunc::var(); }

std::size_t fail_pos(const std::string& src) {
    try {
        parse_ratfunc(src);
    } catch (const ParseError& e) {
        return e.pos;
    }
    return static_cast<std::size_t>(-1);
}

// random expression over t with its independently computed value; composite
// nodes fully parenthesized so the expected value never depends on precedence
struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    std::pair<std::string, RatFunc> make(int depth) {
        if (depth == 0 || pick(4) == 0) {
            if (pick(2) == 0) return {"t", RatFunc::var()};
            int k = pick(10);
            return {std::to_string(k), RatFunc(Rational(k))};
        }
        auto [as, av] = make(depth - 1);
        switch (pick(5)) {
            case 0: {
                auto [bs, bv] = make(depth - 1);
                return {"(" + as + " + " + bs + ")", av + bv};
            }
            case 1: {
                auto [bs, bv] = make(depth - 1);
                return {"(" + as + " - " + bs + ")", av - bv};
            }
            case 2: {
                auto [bs, bv] = make(depth - 1);
                return {"(" + as + ")*(" + bs + ")", av * bv};
            }
            case 3: {
                int k = pick(9) + 1;
                if (pick(2) == 0)
                    return {"(" + as + ")/(t + " + std::to_string(k) + ")",
                            av / (RatFunc::var() + RatFunc(Rational(k)))};
                return {"(" + as + ")/" + std::to_string(k), av / RatFunc(Rational(k))};
            }
            default: {
                int e = pick(4);
                return {"(" + as + ")^" + std::to_string(e),
                        av.pow(static_cast<unsigned>(e))};
            }
        }
    }
};

}  // namespace

TEST_CASE("parse_dynpair worked examples") {
    auto fp = parse_dynpair("z^2 + t", "0");
    CHECK(fp.d == 2);
    CHECK(fp.a[0] == rf(T));
    CHECK(fp.a[1].is_zero());
    CHECK(fp.a[2] == rc(1));
    CHECK(fp.P.is_zero());

    auto fq = parse_dynpair("z^2 + t", "7*t + 1/t");
    CHECK(fq.P == seven_t_plus_inv_t());
    CHECK(fq.P.num() == Poly({Rational(1), Rational(0), Rational(7)}));
    CHECK(fq.P.den() == T);

    auto fr = parse_dynpair("z^2/t", "t");
    CHECK(fr.d == 2);
    CHECK(fr.a[0].is_zero());
    CHECK(fr.a[1].is_zero());
    CHECK(fr.a[2] == rc(1) / rf(T));
    CHECK(fr.P == rf(T));
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_ratfunc("2^3^2") == rc(64));
    CHECK(parse_ratfunc("2 - 3 - 4") == rc(-5));
    CHECK(parse_ratfunc("12/4/3") == rc(1));
    CHECK(parse_ratfunc("1 + 2*3") == rc(7));
    CHECK(parse_ratfunc("(1 + 2)*3") == rc(9));
    CHECK(parse_ratfunc("2*t^2") == rf(Poly({Rational(0), Rational(0), Rational(2)})));
    CHECK(parse_ratfunc("-2^2") == rc(-4));
    CHECK(parse_ratfunc("- - t") == rf(T));
    CHECK(parse_ratfunc("1/2*t") == rc(1) / rc(2) * rf(T));
    CHECK(parse_ratfunc("t^0") == rc(1));
    CHECK(parse_ratfunc("  7 * t+1/ t ") == seven_t_plus_inv_t());
}

TEST_CASE("collection in z") {
    auto fp = parse_dynpair("z*z + t*z - z*t + t", "0");
    CHECK(fp.d == 2);
    CHECK(fp.a[0] == rf(T));
    CHECK(fp.a[1].is_zero());
    CHECK(fp.a[2] == rc(1));

    auto fq = parse_dynpair("(z + t)^2", "1");
    CHECK(fq.d == 2);
    CHECK(fq.a[0] == rf(T * T));
    CHECK(fq.a[1] == rc(2) * rf(T));
    CHECK(fq.a[2] == rc(1));

    // cancellation drops the z-degree below 2
    CHECK_THROWS_AS(parse_dynpair("(z + t)^2 - z^2 - 2*t*z", "0"), ParseError);
}

TEST_CASE("positioned syntax errors") {
    CHECK(fail_pos("7*t + 1/") == 8);
    CHECK(fail_pos("t + x") == 4);
    CHECK(fail_pos("(t + 1") == 6);
    CHECK(fail_pos("t 5") == 2);
    CHECK(fail_pos("t^z") == 2);
    CHECK(fail_pos("t^-2") == 2);
    CHECK(fail_pos("t^(2)") == 2);
    CHECK(fail_pos("t^999999") == 2);
    CHECK(fail_pos("1/(t - t)") == 1);
    CHECK(fail_pos("") == 0);
    CHECK(fail_pos(")t") == 0);
}

TEST_CASE("semantic errors carry positions and types") {
    try {
        parse_dynpair("z^2 + 1/z", "0");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos == 7);
        CHECK(std::string(e.what()).find("z-dependent") != std::string::npos);
    }
    try {
        parse_dynpair("z^2 + t", "z + 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos == 0);
        CHECK(std::string(e.what()).find("z is not allowed") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_dynpair("z + 1", "0"), ParseError);
    CHECK_THROWS_AS(parse_dynpair("t^2", "0"), ParseError);
    CHECK_THROWS_AS(parse_dynpair("z^2 + t", "1/(2 - 2)"), ParseError);
    CHECK_THROWS_AS(parse_ratfunc("z^2"), ParseError);
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("2^5/8") == 4);
    CHECK(parse_rational("0") == 0);
    CHECK(parse_rational("123456789012345678901234567890") ==
          Rational(Int("123456789012345678901234567890", 10)));
    CHECK_THROWS_AS(parse_rational("t"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("pretty printing round-trips") {
    std::vector<DynPair> cases;
    cases.emplace_back(2, std::vector<RatFunc>{rf(T), RatFunc(), rc(1)}, RatFunc());
    cases.emplace_back(2, std::vector<RatFunc>{rf(T), RatFunc(), rc(1)},
                       seven_t_plus_inv_t());
    cases.emplace_back(2, std::vector<RatFunc>{RatFunc(), RatFunc(), rc(1)}, rf(T));
    cases.emplace_back(2, std::vector<RatFunc>{rf(T), rc(-1) / rc(2), rc(7)},
                       rc(-3) / rc(4));
    cases.emplace_back(
        3,
        std::vector<RatFunc>{rc(1) / rf(T), RatFunc(), rc(-2), rf(T * T + Poly(Rational(1)))},
        rf(T) / (rf(T) + rc(5)));
    for (const auto& fp : cases) {
        std::string fs = pretty_f(fp);
        std::string Ps = pretty_ratfunc(fp.P);
        auto re = parse_dynpair(fs, Ps);
        CHECK(re.d == fp.d);
        for (int i = 0; i <= fp.d; ++i) CHECK(re.a[i] == fp.a[i]);
        CHECK(re.P == fp.P);
        CHECK(pretty_f(re) == fs);
        CHECK(pretty_ratfunc(re.P) == Ps);
    }
    CHECK(pretty_f(cases[0]) == "z^2 + (t)");
    CHECK(pretty_ratfunc(cases[1].P) == "(7*t^2 + 1)/(t)");
}

TEST_CASE("fuzzed well-formed expressions evaluate correctly") {
    Gen gen(20260814);
    for (int it = 0; it < 300; ++it) {
        auto [src, expected] = gen.make(4);
        CHECK(parse_ratfunc(src) == expected);
    }
}

TEST_CASE("fuzzed coefficient assembly collects in z") {
    Gen gen(424242);
    for (int it = 0; it < 60; ++it) {
        int d = 2 + gen.pick(3);
        std::vector<std::pair<std::string, RatFunc>> cs;
        for (int i = 0; i <= d; ++i) cs.push_back(gen.make(2));
        while (cs.back().second.is_zero()) cs.back() = gen.make(2);
        std::string f_src;
        for (int i = d; i >= 0; --i) {
            if (!f_src.empty()) f_src += " + ";
            f_src += "(" + cs[i].first + ")";
            if (i == 1) f_src += "*z";
            else if (i > 1) f_src += "*z^" + std::to_string(i);
        }
        auto [Ps, Pv] = gen.make(3);
        auto fp = parse_dynpair(f_src, Ps);
        CHECK(fp.d == d);
        for (int i = 0; i <= d; ++i) CHECK(fp.a[i] == cs[i].second);
        CHECK(fp.P == Pv);

        auto re = parse_dynpair(pretty_f(fp), pretty_ratfunc(fp.P));
        CHECK(re.d == fp.d);
        for (int i = 0; i <= d; ++i) CHECK(re.a[i] == fp.a[i]);
        CHECK(re.P == fp.P);
    }
}

TEST_CASE("fuzzed malformed inputs fail with typed errors only") {
    Gen gen(777);
    const std::string alphabet = "tz+-*/^() 0123456789x";
    for (int it = 0; it < 400; ++it) {
        std::string s = gen.make(3).first;
        int nmut = 1 + gen.pick(2);
        for (int k = 0; k < nmut; ++k) {
            int op = gen.pick(3);
            if (op == 0 || s.empty()) {
                std::size_t pos = static_cast<std::size_t>(gen.pick(static_cast<int>(s.size()) + 1));
                s.insert(s.begin() + static_cast<long>(pos),
                         alphabet[static_cast<std::size_t>(gen.pick(static_cast<int>(alphabet.size())))]);
            } else if (op == 1) {
                s.erase(s.begin() + gen.pick(static_cast<int>(s.size())));
            } else {
                s[static_cast<std::size_t>(gen.pick(static_cast<int>(s.size())))] =
                    alphabet[static_cast<std::size_t>(gen.pick(static_cast<int>(alphabet.size())))];
            }
        }
        bool handled = false;
        try {
            parse_ratfunc(s);
            handled = true;
        } catch (const Error&) {
            handled = true;
        }
        CHECK(handled);
    }
}
