// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_QUARTIC_HPP
#define K3FIB_QUARTIC_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include "k3fib/ratfunc.hpp"

namespace k3fib {

/// Conversion of y^2 = H(t) (H squarefree of degree 3 or 4 over a field K
/// of characteristic 3) into Weierstrass form, given a K-rational point
/// when deg H = 4.  The returned maps convert K-valued points both ways.
///
/// Shape of the degree-4 transformation: after a Mobius move putting the
/// supplied point at infinity the leading coefficient is a square q^2.
/// With g = q t^2 + beta t + gamma chosen so that H - g^2 = delta t + eps
/// is linear, the functions W = y + g and Z = 4qWt + 2 beta W + delta
/// satisfy Z^2 = 8q W^3 + (4 beta^2 - 16 q gamma) W^2
///              + (4 beta delta - 8 q eps) W + delta^2,
/// and (X, Y) = (8qW, 8qZ) is a Weierstrass point.
template <class K>
struct QuarticToWeierstrass {
    using Ops = FieldOps<K>;

    K a2, a4, a6;  // y^2 = x^3 + a2 x^2 + a4 x + a6 over K

    // pre-Mobius: t = t0 + 1/u (applied when `mobius` is set)
    bool mobius = false;
    K t0;

    bool cubic = false;  // degree-3 path (leading-coefficient absorption)
    K lead;              // cubic: leading coefficient l

    // quartic path data
    K q, beta, gamma, delta;

    /// Map a point of y^2 = H(t); the supplied rational point itself may
    /// map to the section at infinity (reported as nullopt).
    std::optional<std::pair<K, K>> forward(const K& t, const K& y) const {
        K u = t, v = y;
        if (mobius) {
            K d = t - t0;
            if (Ops::is_zero(d)) return std::nullopt;  // sent to infinity
            u = Ops::inv(d);
            v = y * u * u;
        }
        if (cubic) return std::make_pair(lead * u, lead * v);
        K W = v + (q * u * u + beta * u + gamma);
        if (Ops::is_zero(W)) return std::nullopt;  // the collapsed branch point
        K four_q = q + q + q + q;
        K Z = four_q * W * u + (beta + beta) * W + delta;
        K eight_q = four_q + four_q;
        return std::make_pair(eight_q * W, eight_q * Z);
    }

    /// Inverse on K-valued points; nullopt at the finitely many special ones.
    std::optional<std::pair<K, K>> backward(const K& X, const K& Y) const {
        K u, v;
        if (cubic) {
            u = X / lead;
            v = Y / lead;
        } else {
            if (Ops::is_zero(X)) return std::nullopt;
            K eight_q = [&] {
                K fq = q + q + q + q;
                return fq + fq;
            }();
            K W = X / eight_q;
            K Z = Y / eight_q;
            K four_q = q + q + q + q;
            u = (Z - (beta + beta) * W - delta) / (four_q * W);
            v = W - (q * u * u + beta * u + gamma);
        }
        if (mobius) {
            if (Ops::is_zero(u)) return std::nullopt;
            return std::make_pair(t0 + Ops::inv(u), v * Ops::inv(u * u));
        }
        return std::make_pair(u, v);
    }
};

namespace detail {

/// Elements a + b*y of K(t)[y]/(y^2 - H) for symbolic verification.
template <class K>
struct FF {
    RatFunc<K> a, b;
};

template <class K>
FF<K> ff_mul(const FF<K>& x, const FF<K>& y, const RatFunc<K>& H) {
    return {x.a * y.a + x.b * y.b * H, x.a * y.b + x.b * y.a};
}
template <class K>
FF<K> ff_add(const FF<K>& x, const FF<K>& y) {
    return {x.a + y.a, x.b + y.b};
}
template <class K>
FF<K> ff_scale(const K& c, const FF<K>& x) {
    RatFunc<K> rc{Poly<K>(c)};
    return {rc * x.a, rc * x.b};
}

}  // namespace detail

/// deg H = 3: absorb the leading coefficient.
template <class K>
QuarticToWeierstrass<K> cubic_to_weierstrass(const Poly<K>& H) {
    if (H.degree() != 3) throw std::domain_error("cubic_to_weierstrass: degree != 3");
    QuarticToWeierstrass<K> out;
    out.cubic = true;
    out.lead = H.coeff(3);
    K l = out.lead;
    out.a2 = H.coeff(2);
    out.a4 = H.coeff(1) * l;
    out.a6 = H.coeff(0) * l * l;
    return out;
}

/// Core degree-4 transformation; the leading coefficient must be a square.
template <class K>
QuarticToWeierstrass<K> quartic_with_square_leading(const Poly<K>& H) {
    using Ops = FieldOps<K>;
    if (H.degree() != 4) throw std::domain_error("quartic: degree != 4");
    auto qs = Ops::sqrt(H.coeff(4));
    if (!qs || Ops::is_zero(*qs))
        throw std::domain_error("quartic: leading coefficient is not a nonzero square");
    QuarticToWeierstrass<K> out;
    K q = *qs;
    K two = Ops::one() + Ops::one();
    K half_inv_q = Ops::inv(two * q);  // 1/(2q)
    K beta = H.coeff(3) * half_inv_q;
    K gamma = (H.coeff(2) - beta * beta) * half_inv_q;
    K delta = H.coeff(1) - two * beta * gamma;
    K eps = H.coeff(0) - gamma * gamma;
    out.q = q;
    out.beta = beta;
    out.gamma = gamma;
    out.delta = delta;
    K four = two * two, eight = four * two, sixteen = eight * two, sixtyfour = eight * eight;
    out.a2 = four * beta * beta - sixteen * q * gamma;
    out.a4 = eight * q * (four * beta * delta - eight * q * eps);
    out.a6 = sixtyfour * q * q * delta * delta;

    // symbolic verification: the forward map lands on the claimed model
    using RF = RatFunc<K>;
    RF Hr{H};
    detail::FF<K> y{RF::zero(), RF::one()};
    detail::FF<K> g{RF{Poly<K>{std::vector<K>{gamma, beta, q}}}, RF::zero()};
    detail::FF<K> W = detail::ff_add(y, g);
    detail::FF<K> t{RF::t(), RF::zero()};
    detail::FF<K> Z = detail::ff_add(
        detail::ff_add(detail::ff_scale(four * q, detail::ff_mul(W, t, Hr)),
                       detail::ff_scale(two * beta, W)),
        detail::FF<K>{RF{Poly<K>(delta)}, RF::zero()});
    detail::FF<K> X = detail::ff_scale(eight, detail::ff_scale(q, W));
    detail::FF<K> Y = detail::ff_scale(eight, detail::ff_scale(q, Z));
    // ((X + a2) X + a4) X + a6
    detail::FF<K> rhs = detail::ff_add(X, detail::FF<K>{RF{Poly<K>(out.a2)}, RF::zero()});
    rhs = detail::ff_mul(rhs, X, Hr);
    rhs = detail::ff_add(rhs, detail::FF<K>{RF{Poly<K>(out.a4)}, RF::zero()});
    rhs = detail::ff_mul(rhs, X, Hr);
    rhs = detail::ff_add(rhs, detail::FF<K>{RF{Poly<K>(out.a6)}, RF::zero()});
    detail::FF<K> lhs = detail::ff_mul(Y, Y, Hr);
    if (!((lhs.a - rhs.a).is_zero() && (lhs.b - rhs.b).is_zero()))
        throw std::logic_error("quartic: symbolic verification failed");
    return out;
}

/// Full conversion: degree 3 directly; degree 4 via a Mobius move through
/// the supplied rational point (y0 = 0 lands in the cubic case, otherwise
/// the leading coefficient becomes y0^2).
template <class K>
QuarticToWeierstrass<K> quartic_to_weierstrass(const Poly<K>& H, const K& t0, const K& y0) {
    using Ops = FieldOps<K>;
    if (H.degree() == 3) return cubic_to_weierstrass(H);
    if (H.degree() != 4) throw std::domain_error("quartic_to_weierstrass: degree not 3 or 4");
    {
        K val = H.eval(t0);
        if (!(val == y0 * y0))
            throw std::domain_error("quartic_to_weierstrass: supplied point not on the curve");
    }
    // u^4 H(t0 + 1/u): reverse the Taylor expansion at t0
    Poly<K> sh = H.taylor_shift(t0);
    Poly<K> rev;
    for (int k = 0; k <= 4; ++k) rev.set_coeff(4 - k, sh.coeff(k));
    QuarticToWeierstrass<K> out;
    if (Ops::is_zero(y0)) {
        if (rev.degree() > 3) throw std::logic_error("quartic_to_weierstrass: root not absorbed");
        out = cubic_to_weierstrass(rev);
    } else {
        out = quartic_with_square_leading(rev);
    }
    out.mobius = true;
    out.t0 = t0;
    return out;
}

}  // namespace k3fib

#endif
