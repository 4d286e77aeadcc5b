// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_POLY_HPP
#define K3FIB_POLY_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k3fib/gf9.hpp"

namespace k3fib {

/// Field hooks a coefficient type must provide.  The primary
/// instantiations are GF9 and RatFunc<GF9> (rational functions, used as
/// the base field k(w) during fibration changes).
template <class K>
struct FieldOps;

template <>
struct FieldOps<GF9> {
    static GF9 zero() { return GF9::zero(); }
    static GF9 one() { return GF9::one(); }
    static bool is_zero(const GF9& x) { return x.is_zero(); }
    static GF9 inv(const GF9& x) { return x.inv(); }
    static std::optional<GF9> cbrt(const GF9& x) { return x.cbrt(); }
    static std::optional<GF9> sqrt(const GF9& x) { return x.sqrt(); }
};

/// Dense univariate polynomial over a field K, lowest degree first.
/// Canonical form: no trailing zeros, the zero polynomial is the empty
/// coefficient list.  Characteristic-3 aware where it matters (p-th
/// powers, squarefree decomposition).
template <class K>
class Poly {
  public:
    using Ops = FieldOps<K>;

    Poly() = default;
    explicit Poly(const K& c) { set_coeff(0, c); }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Ops::one()); }
    static Poly x() { return monomial(1, Ops::one()); }
    static Poly monomial(int deg, const K& c) {
        Poly p;
        p.set_coeff(deg, c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }

    K coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Ops::zero();
        return c_[k];
    }
    void set_coeff(int k, const K& v) {
        if (k >= static_cast<int>(c_.size())) {
            if (Ops::is_zero(v)) return;
            c_.resize(k + 1, Ops::zero());
        }
        c_[k] = v;
        trim();
    }

    K leading() const {
        if (is_zero()) throw std::domain_error("Poly: leading of zero");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == Ops::one(); }

    /// Order of vanishing at 0 (lowest nonzero exponent); throws on zero.
    int valuation_at_zero() const {
        if (is_zero()) throw std::domain_error("Poly: valuation of zero");
        for (int k = 0; k < static_cast<int>(c_.size()); ++k)
            if (!Ops::is_zero(c_[k])) return k;
        return 0;  // unreachable
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Ops::zero());
        for (size_t k = 0; k < r.c_.size(); ++k) {
            K s = Ops::zero();
            if (k < a.c_.size()) s = s + a.c_[k];
            if (k < b.c_.size()) s = s + b.c_[k];
            r.c_[k] = s;
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = Ops::zero() - c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Ops::zero());
        for (size_t j = 0; j < a.c_.size(); ++j) {
            if (Ops::is_zero(a.c_[j])) continue;
            for (size_t k = 0; k < b.c_.size(); ++k)
                r.c_[j + k] = r.c_[j + k] + a.c_[j] * b.c_[k];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const K& s, const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = s * c;
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        Poly q, r = a;
        K lb = Ops::inv(b.c_.back());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            K f = r.c_.back() * lb;
            q.set_coeff(shift, q.coeff(shift) + f);
            for (size_t k = 0; k < b.c_.size(); ++k)
                r.c_[shift + k] = r.c_[shift + k] - f * b.c_[k];
            r.trim();
        }
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    bool divides(const Poly& a) const { return divrem(a, *this).second.is_zero(); }

    /// Monic gcd; gcd(0,0) = 0.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divrem(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = Ops::inv(a.c_.back()) * a;
        return a;
    }

    K eval(const K& x) const {
        K acc = Ops::zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Formal derivative (exponents reduced mod 3 by the field arithmetic
    /// of K when char K = 3; multiples of the characteristic vanish).
    Poly derivative() const {
        Poly r;
        for (int k = 1; k <= degree(); ++k) {
            K f = c_[k];
            // multiply by k in the prime field
            K kf = Ops::zero();
            for (int j = 0; j < k % 3; ++j) kf = kf + Ops::one();
            r.set_coeff(k - 1, kf * f);
        }
        return r;
    }

    /// f(alpha + s) as a polynomial in s, computed exactly.
    Poly taylor_shift(const K& alpha) const {
        Poly r;
        Poly lin;  // s + alpha
        lin.set_coeff(0, alpha);
        lin.set_coeff(1, Ops::one());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = r * lin;
            r.set_coeff(0, r.coeff(0) + *it);
        }
        return r;
    }

    /// s^weight * f(1/s); requires deg f <= weight.
    Poly twist(int weight) const {
        if (degree() > weight) throw std::domain_error("Poly: twist weight too small");
        Poly r;
        for (int k = 0; k <= degree(); ++k) r.set_coeff(weight - k, c_[k]);
        return r;
    }

    Poly pow(int e) const {
        Poly acc = one(), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// True when every exponent is divisible by 3 and every coefficient
    /// has a cube root, i.e. the polynomial is a cube in K[t] (char 3).
    bool is_cube() const {
        if (is_zero()) return true;
        for (int k = 0; k <= degree(); ++k) {
            if (Ops::is_zero(c_[k])) continue;
            if (k % 3 != 0) return false;
            if (!Ops::cbrt(c_[k])) return false;
        }
        return true;
    }
    Poly cbrt() const {
        Poly r;
        for (int k = 0; k <= degree(); k += 3) {
            if (Ops::is_zero(coeff(k))) continue;
            auto c = Ops::cbrt(coeff(k));
            if (!c || k % 3 != 0) throw std::domain_error("Poly: not a cube");
            r.set_coeff(k / 3, *c);
        }
        if (r.pow(3) != *this) throw std::domain_error("Poly: not a cube");
        return r;
    }

    /// Squarefree decomposition in characteristic 3, as (factor, multiplicity)
    /// pairs with pairwise-coprime squarefree factors and a scalar unit:
    /// f = unit * prod factor_i ^ mult_i.  Factors whose coefficients fail to
    /// be cubes in K stay as inseparable squarefree blocks.
    struct SqfreeDecomposition {
        K unit;
        std::vector<std::pair<Poly, int>> factors;
    };
    SqfreeDecomposition sqfree() const {
        SqfreeDecomposition out;
        out.unit = Ops::one();
        if (is_zero()) throw std::domain_error("Poly: sqfree of zero");
        Poly f = *this;
        out.unit = f.leading();
        f = Ops::inv(f.leading()) * f;
        sqfree_rec(f, 1, out);
        return out;
    }

    /// Largest S (monic) with S^2 | f, together with the cofactor H:
    /// f = unit * S^2 * H.
    void square_part(Poly& S, Poly& H, K& unit) const {
        auto d = sqfree();
        unit = d.unit;
        S = one();
        H = one();
        for (auto& [p, m] : d.factors) {
            S *= p.pow(m / 2);
            if (m % 2) H *= p;
        }
    }

    std::optional<Poly> sqrt() const {
        if (is_zero()) return Poly();
        Poly S, H;
        K u;
        square_part(S, H, u);
        if (H != one()) return std::nullopt;
        auto su = Ops::sqrt(u);
        if (!su) return std::nullopt;
        return *su * S;
    }

  private:
    static void sqfree_rec(const Poly& f, int outer_mult, SqfreeDecomposition& out) {
        if (f == one()) return;
        Poly df = f.derivative();
        if (df.is_zero()) {
            // f lies in K[t^3]; decompose f = g(t^3) through g.
            Poly g;
            for (int k = 0; k <= f.degree(); k += 3) g.set_coeff(k / 3, f.coeff(k));
            auto inner = g.sqfree();
            for (auto& [q, e] : inner.factors) {
                Poly h;  // q(t^3)
                for (int k = 0; k <= q.degree(); ++k) h.set_coeff(3 * k, q.coeff(k));
                if (h.is_cube())
                    sqfree_rec(h.cbrt(), 3 * e * outer_mult, out);
                else
                    out.factors.push_back({h, e * outer_mult});
            }
            return;
        }
        Poly a = gcd(f, df);   // carries multiplicity >= 2 parts and 3|mult parts
        Poly b = f / a;        // product of factors with mult not divisible by 3
        int m = 1;
        // peel factors of multiplicity m not divisible by 3
        while (b != one()) {
            Poly c = gcd(a, b);
            Poly piece = b / c;  // factors of exact multiplicity m (3 does not divide m)
            if (piece != one()) out.factors.push_back({piece, m * outer_mult});
            b = c;
            a = a / c;
            ++m;
        }
        // what is left of a is a product of p^mult with 3 | mult
        if (a != one()) sqfree_rec(a, outer_mult, out);
    }

    void trim() {
        while (!c_.empty() && Ops::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

using PolyGF9 = Poly<GF9>;

}  // namespace k3fib

#endif
