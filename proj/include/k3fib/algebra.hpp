// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_ALGEBRA_HPP
#define K3FIB_ALGEBRA_HPP

#include <cctype>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "k3fib/poly.hpp"
#include "k3fib/ratfunc.hpp"

namespace k3fib {

// ---------------------------------------------------------------------------
// Places of P^1 over F9: t = alpha for a monic irreducible polynomial (the
// catalog only ever needs degree one after base change to F9) and t = inf.

struct Place {
    struct Infinity {};
    std::variant<PolyGF9, Infinity> v;

    static Place at(GF9 alpha) {
        PolyGF9 p;
        p.set_coeff(0, -alpha);
        p.set_coeff(1, GF9::one());
        return Place{p};
    }
    static Place finite(PolyGF9 monic_irreducible) { return Place{std::move(monic_irreducible)}; }
    static Place infinity() { return Place{Infinity{}}; }

    bool is_infinity() const { return std::holds_alternative<Infinity>(v); }
    const PolyGF9& poly() const { return std::get<PolyGF9>(v); }
    int degree() const { return is_infinity() ? 1 : poly().degree(); }
    bool is_rational() const { return is_infinity() || poly().degree() == 1; }
    GF9 alpha() const {
        if (!is_rational() || is_infinity())
            throw std::domain_error("Place: not a finite rational place");
        return -poly().coeff(0);
    }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.is_infinity() != b.is_infinity()) return false;
        if (a.is_infinity()) return true;
        return a.poly() == b.poly();
    }
    friend bool operator<(const Place& a, const Place& b) {
        // finite places first (ordered by the packed F9 index), infinity last
        if (a.is_infinity()) return false;
        if (b.is_infinity()) return true;
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.degree() == 1) return a.alpha().index() < b.alpha().index();
        return a.poly().coeffs() != b.poly().coeffs() &&
               lex_less(a.poly(), b.poly());
    }

  private:
    static bool lex_less(const PolyGF9& p, const PolyGF9& q) {
        for (int k = std::max(p.degree(), q.degree()); k >= 0; --k) {
            if (p.coeff(k).index() != q.coeff(k).index())
                return p.coeff(k).index() < q.coeff(k).index();
        }
        return false;
    }
};

/// Valuation of a nonzero rational function at a place.  With weight = 0
/// this is the plain order of vanishing (deg den - deg num at infinity).
/// A positive weight treats a polynomial as a coefficient of weighted
/// homogeneous degree weight*index, i.e. returns weight*index - deg at
/// infinity; this is only meaningful for polynomial input.
inline int valuation(const RatGF9& r, const Place& v, int weight = 0, int index = 0) {
    if (r.is_zero()) throw std::domain_error("valuation: zero function");
    if (v.is_infinity()) {
        if (weight > 0) {
            if (!r.is_poly()) throw std::domain_error("valuation: weighted form needs a polynomial");
            return weight * index - r.num().degree();
        }
        return r.valuation_at_infinity();
    }
    if (!v.is_rational()) {
        // order along a higher-degree place: multiplicity of the irreducible
        // factor in numerator minus denominator
        auto count = [&](const PolyGF9& p) {
            int m = 0;
            PolyGF9 q = p;
            while (!q.is_zero() && v.poly().divides(q)) {
                q = q / v.poly();
                ++m;
            }
            return m;
        };
        return count(r.num()) - count(r.den());
    }
    return r.valuation_at(v.alpha());
}

/// First `order` coefficients of the expansion of f in the local parameter
/// at v (s = t - alpha, or s = 1/t at infinity).  Requires f regular at v.
inline std::vector<GF9> local_expand(const RatGF9& f, const Place& v, int order) {
    if (!v.is_rational())
        throw std::domain_error("local_expand: place of degree > 1 unsupported");
    if (v.is_infinity()) return f.at_inverse().series_at_zero(order);
    return f.shift(v.alpha()).series_at_zero(order);
}

// ---------------------------------------------------------------------------
// Root finding over F3/F9 by exhaustive evaluation (the catalog never needs
// more), with multiplicities peeled by repeated division.

struct RootList {
    std::vector<std::pair<GF9, int>> roots;
    PolyGF9 remainder;  // factor with no roots in the search field
};

inline RootList roots_with_multiplicity(const PolyGF9& p, Field field = Field::F9) {
    if (p.is_zero()) throw std::domain_error("roots_with_multiplicity: zero polynomial");
    RootList out;
    PolyGF9 rem = p;
    for (GF9 a : GF9::all()) {
        if (field == Field::F3 && !a.in_f3()) continue;
        if (rem.degree() < 1) break;
        int mult = 0;
        PolyGF9 lin;
        lin.set_coeff(0, -a);
        lin.set_coeff(1, GF9::one());
        while (!rem.is_zero() && rem.degree() >= 1 && rem.eval(a).is_zero()) {
            rem = rem / lin;
            ++mult;
        }
        if (mult > 0) out.roots.push_back({a, mult});
    }
    out.remainder = rem;
    return out;
}

// ---------------------------------------------------------------------------
// Text formats.  Polynomials print in descending powers, terms c*t^k with
// coefficients 0|1|2|i|2*i|a+b*i (two-part coefficients parenthesised when
// attached to a power of the variable).

inline std::string poly_to_string(const PolyGF9& p, char var = 't') {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        GF9 c = p.coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c.str();
        bool composite = cs.find('+') != std::string::npos;
        if (k == 0) {
            os << cs;
        } else {
            if (c == GF9::one()) {
                // bare power
            } else if (composite) {
                os << "(" << cs << ")*";
            } else {
                os << cs << "*";
            }
            os << var;
            if (k != 1) os << "^" << k;
        }
    }
    return os.str();
}

inline std::string ratfunc_to_string(const RatGF9& r, char var = 't') {
    if (r.is_poly()) return poly_to_string(r.num(), var);
    std::string n = poly_to_string(r.num(), var);
    std::string d = poly_to_string(r.den(), var);
    bool npar = r.num().degree() > 0 && n.find(' ') != std::string::npos;
    bool dpar = r.den().degree() > 0;
    std::string out = npar ? "(" + n + ")" : n;
    out += "/";
    out += dpar ? "(" + d + ")" : d;
    return out;
}

/// Recursive-descent parser for rational-function expressions in one
/// variable over F9: +, -, *, /, ^, parentheses, the literal i, and the
/// variable (t by default).  Whitespace-insensitive.
class ExprParser {
  public:
    ExprParser(std::string_view s, char var = 't') : s_(s), var_(var) {}

    RatGF9 parse() {
        RatGF9 r = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

  private:
    RatGF9 sum() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        RatGF9 acc = product();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                RatGF9 rhs = product();
                acc = (c == '+') ? acc + rhs : acc - rhs;
            } else {
                return acc;
            }
        }
    }
    RatGF9 product() {
        RatGF9 acc = power();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                get();
                RatGF9 rhs = power();
                acc = (c == '*') ? acc * rhs : acc / rhs;
            } else {
                return acc;
            }
        }
    }
    RatGF9 power() {
        RatGF9 base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                get();
            }
            int e = integer();
            return base.pow(neg ? -e : e);
        }
        return base;
    }
    RatGF9 atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            RatGF9 r = sum();
            skip_ws();
            if (get() != ')') fail("expected ')'");
            return r;
        }
        if (c == var_) {
            get();
            return RatGF9::t();
        }
        if (c == 'i') {
            get();
            return RatGF9(GF9::i());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int n = integer();
            return RatGF9(GF9(n));
        }
        fail("unexpected character");
        return RatGF9();
    }
    int integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long n = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            n = n * 10 + (s_[pos_] - '0');
            if (n > 1000000) fail("integer too large");
            ++pos_;
        }
        return static_cast<int>(n);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::runtime_error("parse error at position " + std::to_string(pos_) + ": " + why +
                                 " in \"" + std::string(s_) + "\"");
    }

    std::string_view s_;
    char var_;
    size_t pos_ = 0;
};

inline RatGF9 parse_ratfunc(std::string_view s, char var = 't') {
    return ExprParser(s, var).parse();
}

inline PolyGF9 parse_poly(std::string_view s, char var = 't') {
    RatGF9 r = parse_ratfunc(s, var);
    if (!r.is_poly()) throw std::runtime_error("expected a polynomial: " + std::string(s));
    return r.num();
}

/// Place literal: an F9 element expression or "inf".
inline Place parse_place(std::string_view s) {
    // trim
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw std::runtime_error("empty place literal");
    std::string_view core = s.substr(b, e - b + 1);
    if (core == "inf" || core == "infinity" || core == "oo") return Place::infinity();
    RatGF9 r = parse_ratfunc(core);
    if (!r.is_poly() || r.num().degree() > 0)
        throw std::runtime_error("place literal must be a field element or inf");
    return Place::at(r.num().coeff(0));
}

inline std::string place_to_string(const Place& v) {
    if (v.is_infinity()) return "inf";
    if (v.is_rational()) return v.alpha().str();
    return poly_to_string(v.poly());
}

}  // namespace k3fib

#endif
