// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_MORDELL_HPP
#define K3FIB_MORDELL_HPP

#include <optional>
#include <set>
#include <vector>

#include "k3fib/rational.hpp"
#include "k3fib/tate.hpp"

namespace k3fib {

/// Everything height computations need about one fibration.  chi = 2 is
/// the K3 Euler characteristic; rho = 22 and sigma = 1 pin the ambient
/// lattice, whose discriminant must come out as -3^(2 sigma) = -9.
struct HeightContext {
    WeierstrassModel model;
    FiberConfiguration cfg;
    static constexpr int chi = 2;
    static constexpr int rho = 22;
    static constexpr int sigma = 1;

    int mw_rank() const { return rho - cfg.trivial_rank(); }
};

inline HeightContext make_height_context(const WeierstrassModel& m) {
    return HeightContext{m, classify_all(m)};
}

/// Intersection number of a section with the zero section: the section
/// meets O exactly above the poles of its x-coordinate on the locally
/// minimal chart, with multiplicity half the (even) pole order.  At
/// infinity the chart coordinate is X = s^4 x(1/s) (weight 4).
inline int intersect_with_zero(const HeightContext& ctx, const SurfacePoint& p) {
    if (p.is_zero()) throw std::domain_error("intersect_with_zero: zero section");
    int total = 0;
    // finite places: pole orders of x from the denominator's factorization
    const PolyGF9& den = p.x.den();
    if (den.degree() > 0) {
        auto dec = den.sqfree();
        for (auto& [f, mult] : dec.factors) {
            if (f.degree() == 0) continue;
            if (mult % 2 != 0)
                throw std::domain_error("intersect_with_zero: odd pole order of x");
            total += f.degree() * (mult / 2);
        }
    }
    // infinity
    RatGF9 X = RatGF9(PolyGF9::monomial(4, GF9::one())) * p.x.at_inverse();
    if (!X.is_zero()) {
        int v = X.valuation_at(GF9::zero());
        if (v < 0) {
            if ((-v) % 2 != 0)
                throw std::domain_error("intersect_with_zero: odd pole order of x at infinity");
            total += (-v) / 2;
        }
    }
    return total;
}

/// Canonical height h(P) = 2 chi + 2 P.O - sum of fiber corrections.
inline Rational height(const HeightContext& ctx, const SurfacePoint& p) {
    if (p.is_zero()) return Rational(0);
    if (!is_on_curve(ctx.model, p)) throw std::domain_error("height: point not on the curve");
    Rational h(2 * HeightContext::chi + 2 * intersect_with_zero(ctx, p));
    for (const FiberData& f : ctx.cfg.fibers) {
        auto label = f.lattice_label();
        if (!label) continue;
        CompId c = component_of_section(ctx.model, p, f);
        h -= contribution(*label, c, c);
    }
    return h;
}

/// Height pairing via bilinearity: <P,Q> = (h(P+Q) - h(P) - h(Q)) / 2.
/// This only ever uses single-section component data, so it is independent
/// of the orientation conventions of the cyclic component labels.
inline Rational height_pairing(const HeightContext& ctx, const SurfacePoint& p,
                               const SurfacePoint& q) {
    if (p.is_zero() || q.is_zero()) return Rational(0);
    if (p == q) return height(ctx, p);
    SurfacePoint s = add_points(ctx.model, p, q);
    Rational hs = s.is_zero() ? Rational(0) : height(ctx, s);
    return (hs - height(ctx, p) - height(ctx, q)) / Rational(2);
}

/// Least n <= bound with nP = O, or nullopt if P is not torsion up to the
/// bound.  The catalog's maximum order is 5 (elliptic) and 3
/// (quasi-elliptic); 12 is a safe cap.
inline std::optional<int> torsion_order(const HeightContext& ctx, const SurfacePoint& p,
                                        int bound = 12) {
    if (p.is_zero()) return 1;
    SurfacePoint acc = p;
    for (int n = 1; n <= bound; ++n) {
        if (acc.is_zero()) return n;
        acc = add_points(ctx.model, acc, p);
    }
    return std::nullopt;
}

/// All 2-torsion sections with polynomial x-coordinate: the polynomial
/// roots x0(t) of x^3 + a2 x^2 + a4 x + a6 found by evaluation and
/// interpolation.  For a monic cubic with deg a2 <= 4, deg a4 <= 8 and
/// deg a6 <= 12 any polynomial root has degree at most 4 (the x0^3 term
/// dominates beyond that), so five sample points suffice.
inline std::vector<SurfacePoint> find_two_torsion(const HeightContext& ctx) {
    const WeierstrassModel& m = ctx.model;
    constexpr int kSamples = 5;
    GF9 pts[kSamples];
    for (int k = 0; k < kSamples; ++k) pts[k] = GF9::from_index(k);
    std::vector<std::vector<GF9>> choices(kSamples);
    for (int k = 0; k < kSamples; ++k) {
        // roots of the specialized cubic at t = pts[k]
        PolyGF9 cubic;
        cubic.set_coeff(3, GF9::one());
        cubic.set_coeff(2, m.a2.eval(pts[k]));
        cubic.set_coeff(1, m.a4.eval(pts[k]));
        cubic.set_coeff(0, m.a6.eval(pts[k]));
        auto rl = roots_with_multiplicity(cubic, Field::F9);
        for (auto& [r, mult] : rl.roots) choices[k].push_back(r);
        if (choices[k].empty()) return {};  // no root over F9 at a sample: no polynomial root
    }
    // Lagrange basis through the five sample points
    std::vector<PolyGF9> basis(kSamples);
    for (int k = 0; k < kSamples; ++k) {
        PolyGF9 b = PolyGF9::one();
        GF9 denom = GF9::one();
        for (int j = 0; j < kSamples; ++j) {
            if (j == k) continue;
            PolyGF9 lin;
            lin.set_coeff(0, -pts[j]);
            lin.set_coeff(1, GF9::one());
            b *= lin;
            denom *= pts[k] - pts[j];
        }
        basis[k] = denom.inv() * b;
    }
    std::vector<SurfacePoint> out;
    std::vector<PolyGF9> seen;
    std::vector<int> idx(kSamples, 0);
    for (;;) {
        PolyGF9 cand;
        for (int k = 0; k < kSamples; ++k) cand += choices[k][idx[k]] * basis[k];
        if (cand.degree() <= 4) {
            RatGF9 x0{cand};
            if (curve_rhs(m, x0).is_zero()) {
                bool dup = false;
                for (auto& s : seen) dup = dup || s == cand;
                if (!dup) {
                    seen.push_back(cand);
                    out.push_back(SurfacePoint::affine(x0, RatGF9::zero()));
                }
            }
        }
        int k = 0;
        while (k < kSamples && ++idx[k] == static_cast<int>(choices[k].size())) idx[k++] = 0;
        if (k == kSamples) break;
    }
    return out;
}

/// Exact determinant of a rational Gram matrix by Gaussian elimination.
inline Rational rational_det(std::vector<std::vector<Rational>> g) {
    int n = static_cast<int>(g.size());
    Rational det(1);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (!g[r][k].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != k) {
            std::swap(g[piv], g[k]);
            det = -det;
        }
        det *= g[k][k];
        for (int r = k + 1; r < n; ++r) {
            if (g[r][k].is_zero()) continue;
            Rational f = g[r][k] / g[k][k];
            for (int c = k; c < n; ++c) g[r][c] -= f * g[k][c];
        }
    }
    return det;
}

struct DiscCheck {
    Rational value;
    bool pass;
};

/// Ambient-lattice discriminant identity:
///   disc(NS) = (-1)^rank disc(T) disc(MWL) / |tor|^2,
/// which for this surface must equal -9.  For rank > 0 a full Gram matrix
/// of Mordell-Weil generators must be supplied; rank 0 uses disc(MWL) = 1.
inline DiscCheck ns_disc_check(const HeightContext& ctx, int torsion_order,
                               const std::vector<std::vector<Rational>>& mwl_gram = {}) {
    int rank = ctx.mw_rank();
    if (rank > 0 && mwl_gram.empty())
        throw std::domain_error("ns_disc_check: rank > 0 needs a Mordell-Weil Gram matrix");
    if (!mwl_gram.empty() && static_cast<int>(mwl_gram.size()) != rank)
        throw std::domain_error("ns_disc_check: Gram size does not match the rank");
    TrivialLattice t = trivial_lattice_of(ctx.cfg.reducible_labels());
    Rational disc_mwl = mwl_gram.empty() ? Rational(1) : rational_det(mwl_gram);
    Rational value = Rational((rank % 2 == 0) ? 1 : -1) * Rational(t.disc) * disc_mwl /
                     Rational(static_cast<int64_t>(torsion_order) * torsion_order);
    return {value, value == Rational(-9)};
}

}  // namespace k3fib

#endif
