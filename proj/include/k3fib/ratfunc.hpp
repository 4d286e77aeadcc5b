// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_RATFUNC_HPP
#define K3FIB_RATFUNC_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include "k3fib/poly.hpp"

namespace k3fib {

/// Reduced fraction of polynomials over K: denominator monic and coprime
/// to the numerator; zero is 0/1.
template <class K>
class RatFunc {
  public:
    using P = Poly<K>;

    RatFunc() : num_(), den_(P::one()) {}
    RatFunc(const K& c) : num_(P(c)), den_(P::one()) {}
    RatFunc(P n) : num_(std::move(n)), den_(P::one()) {}
    RatFunc(P n, P d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(P::one()); }
    static RatFunc t() { return RatFunc(P::x()); }

    const P& num() const { return num_; }
    const P& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_ == P::one(); }
    const P& as_poly() const {
        if (!is_poly()) throw std::domain_error("RatFunc: not a polynomial");
        return num_;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }

    RatFunc pow(int e) const {
        if (e < 0) return inv().pow(-e);
        RatFunc acc = one(), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Degree of a rational function as a map P^1 -> P^1 is not needed;
    /// this is deg num - deg den, the order of pole at infinity.
    int degree_diff() const {
        if (is_zero()) throw std::domain_error("RatFunc: degree of zero");
        return num_.degree() - den_.degree();
    }

    /// Valuation at t = alpha (negative at poles); throws on zero input.
    int valuation_at(const K& alpha) const {
        if (is_zero()) throw std::domain_error("RatFunc: valuation of zero");
        return local_val(num_, alpha) - local_val(den_, alpha);
    }
    /// Valuation at infinity: deg den - deg num.
    int valuation_at_infinity() const {
        if (is_zero()) throw std::domain_error("RatFunc: valuation of zero");
        return den_.degree() - num_.degree();
    }

    K eval(const K& x) const {
        K d = den_.eval(x);
        if (FieldOps<K>::is_zero(d)) throw std::domain_error("RatFunc: pole at evaluation point");
        return num_.eval(x) / d;
    }

    /// r(alpha + s) as a rational function in s.
    RatFunc shift(const K& alpha) const {
        return RatFunc(num_.taylor_shift(alpha), den_.taylor_shift(alpha));
    }

    /// r(1/s) as a rational function in s.
    RatFunc at_inverse() const {
        if (is_zero()) return zero();
        int dn = num_.degree(), dd = den_.degree();
        int w = std::max(dn, dd);
        return RatFunc(num_.twist(w), den_.twist(w));
    }

    /// Laurent expansion at s = 0: returns the valuation v and the
    /// coefficients of s^v, s^{v+1}, ..., s^{v+count-1}.
    std::pair<int, std::vector<K>> laurent_at_zero(int count) const {
        if (is_zero()) throw std::domain_error("RatFunc: expansion of zero");
        int vn = num_.valuation_at_zero(), vd = den_.valuation_at_zero();
        P n = shift_down(num_, vn), d = shift_down(den_, vd);
        // power series division n/d to 'count' terms; d(0) != 0
        std::vector<K> out;
        out.reserve(count);
        K d0 = FieldOps<K>::inv(d.coeff(0));
        P rem = n;
        for (int k = 0; k < count; ++k) {
            K c = rem.coeff(k) * d0;
            out.push_back(c);
            if (!FieldOps<K>::is_zero(c))
                for (int j = 0; j <= d.degree(); ++j)
                    rem.set_coeff(k + j, rem.coeff(k + j) - c * d.coeff(j));
        }
        return {vn - vd, out};
    }

    /// Truncated regular expansion at s=0 (coefficients of s^0..s^{count-1});
    /// throws if there is a pole.
    std::vector<K> series_at_zero(int count) const {
        if (is_zero()) return std::vector<K>(count, FieldOps<K>::zero());
        auto [v, cs] = laurent_at_zero(count);
        if (v < 0) throw std::domain_error("RatFunc: pole in series expansion");
        std::vector<K> out(count, FieldOps<K>::zero());
        for (int k = 0; k < count; ++k) {
            int src = k - v;
            if (src >= 0 && src < static_cast<int>(cs.size())) out[k] = cs[src];
        }
        return out;
    }

    std::optional<RatFunc> sqrt() const {
        auto sn = num_.sqrt();
        auto sd = den_.sqrt();
        if (!sn || !sd) return std::nullopt;
        return RatFunc(*sn, *sd);
    }

  private:
    static int local_val(const P& p, const K& alpha) {
        // order of vanishing of p at alpha by repeated division
        P q = p.taylor_shift(alpha);
        return q.valuation_at_zero();
    }
    static P shift_down(const P& p, int k) {
        P r;
        for (int j = k; j <= p.degree(); ++j) r.set_coeff(j - k, p.coeff(j));
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = P::one();
            return;
        }
        P g = P::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        K lc = den_.leading();
        if (!(lc == FieldOps<K>::one())) {
            K ilc = FieldOps<K>::inv(lc);
            num_ = ilc * num_;
            den_ = ilc * den_;
        }
    }

    P num_, den_;
};

template <class K>
struct FieldOps<RatFunc<K>> {
    using R = RatFunc<K>;
    static R zero() { return R::zero(); }
    static R one() { return R::one(); }
    static bool is_zero(const R& x) { return x.is_zero(); }
    static R inv(const R& x) { return x.inv(); }
    static std::optional<R> cbrt(const R& x) {
        if (x.is_zero()) return R::zero();
        if (!x.num().is_cube() || !x.den().is_cube()) return std::nullopt;
        return R(x.num().cbrt(), x.den().cbrt());
    }
    static std::optional<R> sqrt(const R& x) { return x.sqrt(); }
};

using RatGF9 = RatFunc<GF9>;

}  // namespace k3fib

#endif
