#include "hauteur/parse.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

#include "hauteur/errors.hpp"

namespace hauteur {

namespace {

constexpr long kExponentCap = 10000;
constexpr long kZDegreeCap = 10000;

enum class Tok { Int, VarT, VarZ, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    Int value;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                digits += src[i++];
            out.push_back({Tok::Int, start, Int(digits, 10)});
            continue;
        }
        ++i;
        switch (ch) {
            case 't': out.push_back({Tok::VarT, start, Int()}); break;
            case 'z': out.push_back({Tok::VarZ, start, Int()}); break;
            case '+': out.push_back({Tok::Plus, start, Int()}); break;
            case '-': out.push_back({Tok::Minus, start, Int()}); break;
            case '*': out.push_back({Tok::Star, start, Int()}); break;
            case '/': out.push_back({Tok::Slash, start, Int()}); break;
            case '^': out.push_back({Tok::Caret, start, Int()}); break;
            case '(': out.push_back({Tok::LParen, start, Int()}); break;
            case ')': out.push_back({Tok::RParen, start, Int()}); break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", start);
        }
    }
    out.push_back({Tok::End, src.size(), Int()});
    return out;
}

// polynomial in z over Q(t); empty means 0, no trailing zero coefficient
using ZPoly = std::vector<RatFunc>;

ZPoly zp_trim(ZPoly v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = (i < a.size() ? a[i] : RatFunc()) + (i < b.size() ? b[i] : RatFunc());
    return zp_trim(std::move(r));
}

ZPoly zp_neg(ZPoly a) {
    for (auto& c : a) c = -c;
    return a;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    long deg = static_cast<long>(a.size() + b.size()) - 2;
    if (deg > kZDegreeCap)
        throw ResourceError("z-degree exceeds " + std::to_string(kZDegreeCap));
    ZPoly r(static_cast<std::size_t>(deg) + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return zp_trim(std::move(r));
}

ZPoly zp_pow(ZPoly base, long e) {
    ZPoly r{RatFunc(Rational(1))};
    while (e > 0) {
        if (e & 1) r = zp_mul(r, base);
        e >>= 1;
        if (e) base = zp_mul(base, base);
    }
    return r;
}

class Parser {
  public:
    Parser(const std::string& src, bool allow_z, bool allow_t)
        : toks_(tokenize(src)), allow_z_(allow_z), allow_t_(allow_t) {}

    ZPoly run() {
        ZPoly e = expr();
        if (cur().kind != Tok::End) throw ParseError("unexpected trailing input", cur().pos);
        return e;
    }

  private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    bool allow_z_;
    bool allow_t_;

    const Token& cur() const { return toks_[i_]; }
    Token eat() { return toks_[i_++]; }

    ZPoly expr() {
        ZPoly node = term();
        while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            bool plus = eat().kind == Tok::Plus;
            ZPoly rhs = term();
            node = plus ? zp_add(node, rhs) : zp_add(node, zp_neg(std::move(rhs)));
        }
        return node;
    }

    ZPoly term() {
        ZPoly node = factor();
        while (cur().kind == Tok::Star || cur().kind == Tok::Slash) {
            Token op = eat();
            ZPoly rhs = factor();
            if (op.kind == Tok::Star) {
                node = zp_mul(node, rhs);
            } else {
                if (rhs.size() > 1)
                    throw ParseError("division by a z-dependent expression", op.pos);
                if (rhs.empty()) throw ParseError("division by zero", op.pos);
                for (auto& c : node) c = c / rhs[0];
            }
        }
        return node;
    }

    ZPoly factor() {
        if (cur().kind == Tok::Minus) {
            eat();
            return zp_neg(factor());
        }
        return power();
    }

    ZPoly power() {
        ZPoly base = atom();
        while (cur().kind == Tok::Caret) {
            eat();
            if (cur().kind != Tok::Int)
                throw ParseError("expected a non-negative integer exponent", cur().pos);
            Token e = eat();
            if (e.value > kExponentCap)
                throw ParseError("exponent exceeds " + std::to_string(kExponentCap), e.pos);
            base = zp_pow(std::move(base), e.value.get_si());
        }
        return base;
    }

    ZPoly atom() {
        switch (cur().kind) {
            case Tok::Int: {
                Token tk = eat();
                if (tk.value == 0) return {};
                return {RatFunc(Rational(tk.value))};
            }
            case Tok::VarT: {
                Token tk = eat();
                if (!allow_t_) throw ParseError("t is not allowed here", tk.pos);
                return {RatFunc::var()};
            }
            case Tok::VarZ: {
                Token tk = eat();
                if (!allow_z_) throw ParseError("z is not allowed here", tk.pos);
                return {RatFunc(), RatFunc(Rational(1))};
            }
            case Tok::LParen: {
                eat();
                ZPoly e = expr();
                if (cur().kind != Tok::RParen) throw ParseError("expected ')'", cur().pos);
                eat();
                return e;
            }
            case Tok::End: throw ParseError("unexpected end of input", cur().pos);
            default: throw ParseError("unexpected token", cur().pos);
        }
    }
};

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace

DynPair parse_dynpair(const std::string& f_src, const std::string& P_src) {
    ZPoly f = Parser(f_src, true, true).run();
    if (f.size() < 3) throw ParseError("f must have z-degree at least 2", 0);
    ZPoly p = Parser(P_src, false, true).run();
    RatFunc P = p.empty() ? RatFunc() : p[0];
    int d = static_cast<int>(f.size()) - 1;
    return DynPair(d, std::move(f), std::move(P));
}

RatFunc parse_ratfunc(const std::string& src) {
    ZPoly p = Parser(src, false, true).run();
    return p.empty() ? RatFunc() : p[0];
}

Rational parse_rational(const std::string& src) {
    ZPoly p = Parser(src, false, false).run();
    if (p.empty()) return Rational(0);
    return p[0].num().coeff(0);
}

std::string pretty_ratfunc(const RatFunc& r) { return r.str("t"); }

std::string pretty_f(const DynPair& fp) {
    std::ostringstream os;
    bool first = true;
    for (int i = fp.d; i >= 0; --i) {
        const RatFunc& c = fp.a[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        std::string zpow = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
        if (c.is_constant()) {
            Rational q = c.num().coeff(0);
            bool neg = q < 0;
            Rational a = abs(q);
            std::string body;
            if (i == 0) body = rational_str(a);
            else if (a == 1) body = zpow;
            else body = rational_str(a) + "*" + zpow;
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + ")) << body;
        } else {
            if (!first) os << " + ";
            os << "(" << c.str("t") << ")";
            if (i > 0) os << "*" << zpow;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace hauteur
