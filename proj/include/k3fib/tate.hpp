// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_TATE_HPP
#define K3FIB_TATE_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "k3fib/lattice.hpp"
#include "k3fib/model.hpp"

namespace k3fib {

// ---------------------------------------------------------------------------
// Kodaira types.

enum class KodairaSymbol : uint8_t { I0, In, II, III, IV, IStar, IVStar, IIIStar, IIStar };

struct KodairaType {
    KodairaSymbol sym = KodairaSymbol::I0;
    int n = 0;  // for In (n >= 1) and IStar (n >= 0)

    static KodairaType I(int n) { return {n == 0 ? KodairaSymbol::I0 : KodairaSymbol::In, n}; }
    static KodairaType Istar(int n) { return {KodairaSymbol::IStar, n}; }

    friend bool operator==(const KodairaType& a, const KodairaType& b) {
        return a.sym == b.sym && a.n == b.n;
    }
    friend bool operator!=(const KodairaType& a, const KodairaType& b) { return !(a == b); }

    int component_count() const {
        switch (sym) {
            case KodairaSymbol::I0: return 1;
            case KodairaSymbol::In: return n;
            case KodairaSymbol::II: return 1;
            case KodairaSymbol::III: return 2;
            case KodairaSymbol::IV: return 3;
            case KodairaSymbol::IStar: return n + 5;
            case KodairaSymbol::IVStar: return 7;
            case KodairaSymbol::IIIStar: return 8;
            case KodairaSymbol::IIStar: return 9;
        }
        return 0;
    }

    /// Euler number; equals v(delta) in the absence of wild ramification.
    /// In residue characteristic 3 the additive types II..II* may carry an
    /// extra wild contribution, so v(delta) >= this value with equality for
    /// I_n and I*_n.
    int euler_number() const {
        switch (sym) {
            case KodairaSymbol::I0: return 0;
            case KodairaSymbol::In: return n;
            case KodairaSymbol::II: return 2;
            case KodairaSymbol::III: return 3;
            case KodairaSymbol::IV: return 4;
            case KodairaSymbol::IStar: return n + 6;
            case KodairaSymbol::IVStar: return 8;
            case KodairaSymbol::IIIStar: return 9;
            case KodairaSymbol::IIStar: return 10;
        }
        return 0;
    }

    std::optional<RootLabel> lattice_label() const {
        switch (sym) {
            case KodairaSymbol::In:
                if (n >= 2) return RootLabel('A', n - 1);
                return std::nullopt;
            case KodairaSymbol::III: return RootLabel('A', 1);
            case KodairaSymbol::IV: return RootLabel('A', 2);
            case KodairaSymbol::IStar: return RootLabel('D', n + 4);
            case KodairaSymbol::IVStar: return RootLabel('E', 6);
            case KodairaSymbol::IIIStar: return RootLabel('E', 7);
            case KodairaSymbol::IIStar: return RootLabel('E', 8);
            default: return std::nullopt;
        }
    }

    std::string str() const {
        switch (sym) {
            case KodairaSymbol::I0: return "I0";
            case KodairaSymbol::In: return "I" + std::to_string(n);
            case KodairaSymbol::II: return "II";
            case KodairaSymbol::III: return "III";
            case KodairaSymbol::IV: return "IV";
            case KodairaSymbol::IStar: return "I" + std::to_string(n) + "*";
            case KodairaSymbol::IVStar: return "IV*";
            case KodairaSymbol::IIIStar: return "III*";
            case KodairaSymbol::IIStar: return "II*";
        }
        return "?";
    }

    static KodairaType parse(std::string_view s) {
        std::string t(s);
        if (t == "II") return {KodairaSymbol::II, 0};
        if (t == "III") return {KodairaSymbol::III, 0};
        if (t == "IV") return {KodairaSymbol::IV, 0};
        if (t == "II*") return {KodairaSymbol::IIStar, 0};
        if (t == "III*") return {KodairaSymbol::IIIStar, 0};
        if (t == "IV*") return {KodairaSymbol::IVStar, 0};
        if (!t.empty() && t[0] == 'I') {
            bool star = t.back() == '*';
            std::string digits = t.substr(1, t.size() - 1 - (star ? 1 : 0));
            int n = std::stoi(digits);
            return star ? Istar(n) : I(n);
        }
        throw std::runtime_error("bad Kodaira symbol: " + t);
    }
};

// ---------------------------------------------------------------------------
// Per-fiber data produced by classification.  The frame keeps the local
// model and the blow-up bookkeeping so that component membership of a
// section can be decided later without a second resolution pass, and so
// that pole conditions of fibration changes can replay the same charts.

/// One class of components reachable at this fiber (branch pairs share a
/// class).  `xi` is the order of vanishing of x - offset along the
/// component(s); `m` their multiplicity in the fiber.  `x_param` records
/// whether the chart x-coordinate is non-constant along the component, so
/// that no cancellation with numerator terms is possible.
struct CompClass {
    CompId id;
    int m = 1;
    int xi = 0;
    PolyGF9 offset;
    bool x_param = true;
    int count = 1;
};

struct TateFrame {
    WeierstrassModel local;         // model in the local parameter (place at s = 0)
    std::vector<PolyGF9> rescales;  // pre-shift at each non-minimality reduction
    PolyGF9 rho;                    // accumulated x-shift
    GF9 beta2;                      // In: residue of a2 (node slope squared)
    int terminal_scale = 0;         // In: n/2 for even n; IStar: terminal chart scale
    GF9 branch_c;                   // IV / IV* / odd I*n: branch residue (y^2 = c)
    std::vector<GF9> pt_roots;      // I0*: rational roots of P; IStar: {T_d, T_s}
    std::vector<GF9> far_roots;     // even-terminal IStar: roots of the quadratic
    bool far_rational = true;
};

struct FiberData {
    Place place = Place::infinity();
    KodairaType type;
    int v_delta = -1;  // -1 for quasi-elliptic fibers
    int m = 1;
    bool quasi = false;
    TateFrame frame;
    std::vector<CompClass> comps;

    // quasi-elliptic local data
    PolyGF9 quasi_shift;  // h(s): x + h moves the cusp section to x = 0
    int quasi_mu = 0;
    GF9 quasi_c;  // leading reduced coefficient

    std::optional<RootLabel> lattice_label() const { return type.lattice_label(); }
};

struct FiberConfiguration {
    std::vector<FiberData> fibers;  // singular fibers at F9-rational places
    int extra_i1 = 0;               // I1 fibers grouped at places of higher degree
    bool is_quasi_elliptic = false;

    std::vector<RootLabel> reducible_labels() const {
        std::vector<RootLabel> out;
        for (auto& f : fibers)
            if (auto l = f.lattice_label()) out.push_back(*l);
        std::sort(out.begin(), out.end());
        return out;
    }
    int sum_v_delta() const {
        int s = extra_i1;
        for (auto& f : fibers) s += f.v_delta;
        return s;
    }
    int trivial_rank() const {
        int r = 2;
        for (auto& f : fibers) r += f.m - 1;
        return r;
    }
};

namespace detail {

inline int val_or_large(const PolyGF9& p) {
    return p.is_zero() ? 1 << 20 : p.valuation_at_zero();
}

struct ShiftedModel {
    // a2 is shift-invariant in characteristic 3; a4c and a6c are the
    // coefficients after x -> x + rho.
    PolyGF9 a2, a4, a6;  // original local coefficients
    PolyGF9 rho, a4c, a6c;

    void set_shift(const PolyGF9& r) {
        rho = r;
        a4c = GF9(2) * a2 * rho + a4;
        a6c = rho * rho * rho + a2 * rho * rho + a4 * rho + a6;
    }
    void add_shift(const PolyGF9& dr) { set_shift(rho + dr); }
};

}  // namespace detail

/// Classify the fiber of an elliptic model at s = 0 of the given local
/// model.  This is the standard place-by-place reduction-type algorithm,
/// valid in residue characteristic 3 (no c4/c6 shortcuts are used); the
/// chart trail is recorded as it runs.
inline FiberData classify_local(const WeierstrassModel& local) {
    using detail::val_or_large;
    FiberData fd;
    fd.frame.local = local;

    detail::ShiftedModel M;
    M.a2 = local.a2;
    M.a4 = local.a4;
    M.a6 = local.a6;
    M.set_shift(PolyGF9());

    PolyGF9 delta = discriminant(local);
    if (delta.is_zero()) throw std::domain_error("classify_local: quasi-elliptic model");
    int vD = delta.valuation_at_zero();
    fd.v_delta = vD;

    auto push = [&](CompId id, int m, int xi, PolyGF9 offset, bool xp, int count) {
        fd.comps.push_back({id, m, xi, std::move(offset), xp, count});
    };

    if (vD == 0) {
        fd.type = KodairaType::I(0);
        fd.m = 1;
        return fd;
    }

    // Locate the singular point of the reduced fiber and move it to x = 0.
    GF9 c2 = M.a2.coeff(0), c4 = M.a4.coeff(0), c6 = M.a6.coeff(0);
    GF9 x0;
    if (!c2.is_zero()) {
        x0 = -c4 / (GF9(2) * c2);
    } else {
        if (!c4.is_zero())
            throw std::logic_error("classify_local: inconsistent singular reduction");
        x0 = (-c6).cbrt();
    }
    M.set_shift(PolyGF9(x0));
    if (!M.a6c.is_zero() && M.a6c.coeff(0) != GF9::zero())
        throw std::logic_error("classify_local: singular point not on curve");

    push(CompId::identity(), 1, 0, M.rho, true, 1);

    if (!M.a2.coeff(0).is_zero()) {
        // Multiplicative reduction: type I_n with n = v(delta).
        int n = vD;
        fd.type = KodairaType::I(n);
        fd.m = n;
        fd.frame.beta2 = M.a2.coeff(0);
        GF9 beta2 = fd.frame.beta2;
        for (int j = 1; 2 * j <= n; ++j) {
            if (val_or_large(M.a4c) < j || val_or_large(M.a6c) < 2 * j)
                throw std::logic_error("classify_local: I_n chart valuations broken");
            GF9 cj = M.a4c.coeff(j), c2j = M.a6c.coeff(2 * j);
            GF9 dis = cj * cj - beta2 * c2j;  // 4 == 1 mod 3
            if (!dis.is_zero()) {
                if (2 * j != n) throw std::logic_error("classify_local: I_n depth mismatch");
                fd.frame.terminal_scale = j;
                push({CompId::Cyclic, j}, 1, j, M.rho, true, 1);
                break;
            }
            if (2 * j == n) throw std::logic_error("classify_local: I_n terminal not reached");
            push({CompId::Cyclic, j}, 1, j, M.rho, true, 2);
            GF9 uj = -cj / (GF9(2) * beta2);
            M.add_shift(PolyGF9::monomial(j, uj));
            if (2 * j + 1 == n) break;  // crossing of the last pair is smooth
        }
        fd.frame.rho = M.rho;
        return fd;
    }

    // Additive reduction.
    if (val_or_large(M.a6c) == 1) {
        fd.type = {KodairaSymbol::II, 0};
        fd.m = 1;
        fd.frame.rho = M.rho;
        return fd;
    }
    PolyGF9 b8 = M.a2 * M.a6c - M.a4c * M.a4c;
    if (val_or_large(b8) <= 2) {
        fd.type = {KodairaSymbol::III, 0};
        fd.m = 2;
        push({CompId::Simple, 0}, 1, 1, M.rho, true, 1);
        fd.frame.rho = M.rho;
        return fd;
    }
    if (val_or_large(M.a6c) == 2) {
        fd.type = {KodairaSymbol::IV, 0};
        fd.m = 3;
        fd.frame.branch_c = M.a6c.coeff(2);
        push({CompId::Simple, 0}, 1, 1, M.rho, true, 2);
        fd.frame.rho = M.rho;
        return fd;
    }

    //: P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3 over the residue field.
    PolyGF9 P;
    P.set_coeff(3, GF9::one());
    P.set_coeff(2, M.a2.coeff(1));
    P.set_coeff(1, M.a4c.coeff(2));
    P.set_coeff(0, M.a6c.coeff(3));
    PolyGF9 dP = P.derivative();
    PolyGF9 g = dP.is_zero() ? P : PolyGF9::gcd(P, dP);

    if (dP.is_zero() || g.degree() == 3) {
        // triple root T0: P = (T - T0)^3, forced coefficients a2,1 = a4,2 = 0
        GF9 T0 = (-P.coeff(0)).cbrt();
        M.add_shift(PolyGF9::monomial(1, T0));
        push({CompId::Trunk, 1}, 2, 2, M.rho, true, 1);
        if (val_or_large(M.a6c) == 4) {
            fd.type = {KodairaSymbol::IVStar, 0};
            fd.m = 7;
            fd.frame.branch_c = M.a6c.coeff(4);
            push({CompId::Simple, 0}, 1, 2, M.rho, true, 2);
            fd.frame.rho = M.rho;
            return fd;
        }
        if (val_or_large(M.a4c) == 3) {
            fd.type = {KodairaSymbol::IIIStar, 0};
            fd.m = 8;
            push({CompId::Simple, 0}, 1, 4, M.rho, false, 1);
            fd.frame.rho = M.rho;
            return fd;
        }
        if (val_or_large(M.a6c) == 5) {
            fd.type = {KodairaSymbol::IIStar, 0};
            fd.m = 9;
            fd.frame.rho = M.rho;
            return fd;
        }
        // Non-minimal: rescale x -> s^2 x, y -> s^3 y and start over.
        WeierstrassModel down;
        down.field = local.field;
        auto divpow = [](const PolyGF9& p, int k) {
            PolyGF9 r;
            for (int d = k; d <= p.degree(); ++d) r.set_coeff(d - k, p.coeff(d));
            if (!p.is_zero() && p.valuation_at_zero() < k)
                throw std::logic_error("classify_local: invalid rescale");
            return r;
        };
        down.a2 = divpow(M.a2, 2);
        down.a4 = divpow(M.a4c, 4);
        down.a6 = divpow(M.a6c, 6);
        FiberData inner = classify_local(down);
        inner.frame.rescales.insert(inner.frame.rescales.begin(), M.rho);
        inner.frame.local = local;
        inner.v_delta = vD;
        return inner;
    }

    if (g.degree() == 0) {
        // distinct roots: I0*
        fd.type = KodairaType::Istar(0);
        fd.m = 5;
        auto rl = roots_with_multiplicity(P, Field::F9);
        for (size_t k = 0; k < rl.roots.size(); ++k) {
            fd.frame.pt_roots.push_back(rl.roots[k].first);
            push({CompId::Far, static_cast<int>(k)}, 1, 2,
                 M.rho + PolyGF9::monomial(1, rl.roots[k].first), false, 1);
        }
        fd.frame.far_rational = rl.remainder.degree() <= 0;
        push({CompId::Trunk, 1}, 2, 2, M.rho, true, 1);
        fd.frame.rho = M.rho;
        return fd;
    }

    // double root T_d plus single root T_s: the I*_n sub-loop
    if (g.degree() != 1) throw std::logic_error("classify_local: bad P(T) gcd");
    GF9 Td = -g.coeff(0) / g.coeff(1);
    PolyGF9 lin;
    lin.set_coeff(0, -Td);
    lin.set_coeff(1, GF9::one());
    PolyGF9 rest = P / (lin * lin);
    GF9 Ts = -rest.coeff(0) / rest.coeff(1);
    fd.frame.pt_roots = {Td, Ts};

    push({CompId::Near, 0}, 1, 2, M.rho + PolyGF9::monomial(1, Ts), false, 1);
    M.add_shift(PolyGF9::monomial(1, Td));
    push({CompId::Trunk, 1}, 2, 2, M.rho, true, 1);
    GF9 beta1 = M.a2.coeff(1);
    if (beta1.is_zero()) throw std::logic_error("classify_local: I*n with a2,1 = 0");

    for (int nu = 1;; ++nu) {
        if (nu > 20) throw std::logic_error("classify_local: I*n loop runaway");
        int scale = (nu + 3) / 2;
        push({CompId::Trunk, nu + 1}, 2, 2 * scale, M.rho, true, 1);
        if (nu % 2 == 1) {
            GF9 c = M.a6c.coeff(nu + 3);
            if (!c.is_zero()) {
                fd.type = KodairaType::Istar(nu);
                fd.m = nu + 5;
                fd.frame.branch_c = c;
                fd.frame.terminal_scale = (nu + 3) / 2;
                push({CompId::Far, 0}, 1, (nu + 3) / 2, M.rho, true, 2);
                break;
            }
        } else {
            GF9 qa = beta1, qb = M.a4c.coeff((nu + 4) / 2), qc = M.a6c.coeff(nu + 3);
            GF9 dis = qb * qb - qa * qc;  // 4 == 1
            if (!dis.is_zero()) {
                fd.type = KodairaType::Istar(nu);
                fd.m = nu + 5;
                fd.frame.terminal_scale = (nu + 2) / 2;
                PolyGF9 Q;
                Q.set_coeff(2, qa);
                Q.set_coeff(1, qb);
                Q.set_coeff(0, qc);
                auto rl = roots_with_multiplicity(Q, Field::F9);
                fd.frame.far_rational = rl.remainder.degree() <= 0;
                for (size_t k = 0; k < rl.roots.size(); ++k) {
                    fd.frame.far_roots.push_back(rl.roots[k].first);
                    push({CompId::Far, static_cast<int>(k)}, 1, (nu + 4) / 2,
                         M.rho + PolyGF9::monomial((nu + 2) / 2, rl.roots[k].first), false, 1);
                }
                break;
            }
            GF9 us = -qb / (GF9(2) * qa);
            M.add_shift(PolyGF9::monomial((nu + 2) / 2, us));
        }
    }
    if (vD < fd.type.euler_number())
        throw std::logic_error("classify_local: v(delta) below Euler number");
    fd.frame.rho = M.rho;
    return fd;
}

/// Translate the model so the place sits at s = 0, then classify.
inline FiberData classify_place(const WeierstrassModel& m, const Place& v) {
    if (!v.is_rational())
        throw std::domain_error("classify_place: place of degree > 1 unsupported");
    WeierstrassModel local;
    local.field = m.field;
    if (v.is_infinity()) {
        local = model_at_infinity(m);
    } else {
        GF9 a = v.alpha();
        local.a2 = m.a2.taylor_shift(a);
        local.a4 = m.a4.taylor_shift(a);
        local.a6 = m.a6.taylor_shift(a);
    }
    FiberData fd = classify_local(local);
    fd.place = v;
    return fd;
}

// ---------------------------------------------------------------------------
// Quasi-elliptic classification for y^2 = x^3 + f(t): cube-reduced
// valuation rule.  Cubing acts coefficient-wise on exponents divisible by
// 3 in characteristic 3, so subtracting an exact cube removes exactly the
// exponents = 0 mod 3 of the local expansion; the smallest surviving
// exponent mu (mod 6 after weighted rescaling) decides the type:
// 1 -> II, 2 -> IV, 4 -> IV*, 5 -> II*.
inline FiberData quasi_fiber_type_local(const PolyGF9& f_local, const Place& v) {
    FiberData fd;
    fd.place = v;
    fd.quasi = true;
    PolyGF9 reduced, shift;
    for (int k = 0; k <= f_local.degree(); ++k) {
        if (f_local.coeff(k).is_zero()) continue;
        if (k % 3 == 0)
            shift.set_coeff(k / 3, f_local.coeff(k).cbrt());
        else
            reduced.set_coeff(k, f_local.coeff(k));
    }
    if (reduced.is_zero())
        throw std::domain_error("quasi_fiber_type: f is locally a perfect cube");
    int mu = reduced.valuation_at_zero();
    fd.quasi_shift = shift;
    fd.quasi_mu = mu;
    fd.quasi_c = reduced.coeff(mu);
    int mu6 = mu % 6;
    switch (mu6) {
        case 1: fd.type = {KodairaSymbol::II, 0}; break;
        case 2: fd.type = {KodairaSymbol::IV, 0}; break;
        case 4: fd.type = {KodairaSymbol::IVStar, 0}; break;
        case 5: fd.type = {KodairaSymbol::IIStar, 0}; break;
        default:
            throw std::logic_error("quasi_fiber_type: mu divisible by 3");
    }
    fd.m = fd.type.component_count();
    return fd;
}

inline KodairaType quasi_fiber_type(const PolyGF9& f, const Place& v) {
    if (!v.is_rational())
        throw std::domain_error("quasi_fiber_type: place of degree > 1 unsupported");
    PolyGF9 local = v.is_infinity() ? f.twist(12) : f.taylor_shift(v.alpha());
    return quasi_fiber_type_local(local, v).type;
}

// ---------------------------------------------------------------------------
// Whole-configuration classification.

inline FiberConfiguration classify_all(const WeierstrassModel& m) {
    FiberConfiguration cfg;
    K3Report rep = validate_k3(m);
    if (rep.verdict == K3Verdict::QuasiElliptic) {
        cfg.is_quasi_elliptic = true;
        const PolyGF9& f = m.a6;
        PolyGF9 df = f.derivative();
        if (df.is_zero()) throw std::domain_error("classify_all: f is a perfect cube");
        auto rl = roots_with_multiplicity(df, Field::F9);
        if (rl.remainder.degree() > 0)
            throw std::domain_error(
                "classify_all: quasi-elliptic reducible fiber at a place not rational over F9");
        for (auto& [alpha, mult] : rl.roots) {
            FiberData fd = quasi_fiber_type_local(f.taylor_shift(alpha), Place::at(alpha));
            if (fd.type.sym != KodairaSymbol::II) cfg.fibers.push_back(std::move(fd));
        }
        FiberData fi = quasi_fiber_type_local(f.twist(12), Place::infinity());
        if (fi.type.sym != KodairaSymbol::II) cfg.fibers.push_back(std::move(fi));
        if (cfg.trivial_rank() > 22)
            throw std::domain_error("classify_all: trivial lattice rank exceeds 22");
        return cfg;
    }
    if (rep.verdict != K3Verdict::Elliptic)
        throw std::domain_error("classify_all: model is not an elliptic or quasi-elliptic K3");

    PolyGF9 delta = discriminant(m);
    auto rl = roots_with_multiplicity(delta, Field::F9);
    if (rl.remainder.degree() > 0) {
        // Any multiple root of the remainder would be a reducible fiber at
        // an unsupported place; simple roots are harmless I1 fibers.
        PolyGF9 dr = rl.remainder.derivative();
        if (dr.is_zero() || PolyGF9::gcd(rl.remainder, dr).degree() > 0)
            throw std::domain_error(
                "classify_all: reducible fiber at a place not rational over F9");
        cfg.extra_i1 = rl.remainder.degree();
    }
    for (auto& [alpha, mult] : rl.roots) {
        if (mult == 1) {
            // order-1 zero of delta is always a nodal fiber
            FiberData fd;
            fd.place = Place::at(alpha);
            fd.type = KodairaType::I(1);
            fd.v_delta = 1;
            fd.m = 1;
            cfg.fibers.push_back(std::move(fd));
            continue;
        }
        cfg.fibers.push_back(classify_place(m, Place::at(alpha)));
    }
    if (delta.degree() < 24) cfg.fibers.push_back(classify_place(m, Place::infinity()));
    std::sort(cfg.fibers.begin(), cfg.fibers.end(), [](const FiberData& a, const FiberData& b) {
        return a.place < b.place;
    });
    if (cfg.sum_v_delta() != 24)
        throw std::domain_error("classify_all: discriminant valuations do not sum to 24");
    if (cfg.trivial_rank() > 22)
        throw std::domain_error("classify_all: trivial lattice rank exceeds 22");
    return cfg;
}

// ---------------------------------------------------------------------------
// Component membership of a section: replay the recorded charts.

namespace detail {

struct LocalPoint {
    RatGF9 x, y;
};

inline LocalPoint localize_point(const SurfacePoint& p, const Place& v) {
    if (v.is_infinity()) {
        RatGF9 s4 = RatGF9(PolyGF9::monomial(4, GF9::one()));
        RatGF9 s6 = RatGF9(PolyGF9::monomial(6, GF9::one()));
        return {s4 * p.x.at_inverse(), s6 * p.y.at_inverse()};
    }
    GF9 a = v.alpha();
    return {p.x.shift(a), p.y.shift(a)};
}

inline GF9 residue_of(const RatGF9& r, int shift_down) {
    // coefficient of s^shift_down of a function regular to that order
    auto coeffs = r.series_at_zero(shift_down + 1);
    return coeffs[shift_down];
}

}  // namespace detail

/// Which component of the fiber `fd` the section P meets.  P must lie on
/// the curve and not be the zero section.
inline CompId component_of_section(const WeierstrassModel& m, const SurfacePoint& p,
                                   const FiberData& fd) {
    if (p.is_zero()) throw std::domain_error("component_of_section: zero section");
    detail::LocalPoint lp = detail::localize_point(p, fd.place);

    if (fd.quasi) {
        // y^2 = x^3 + f with cusp section x = -h (after the cube shift).
        if (!lp.x.is_zero() && lp.x.valuation_at(GF9::zero()) < 0) return CompId::identity();
        RatGF9 xs = lp.x + RatGF9(fd.quasi_shift);
        bool sing = (xs.is_zero() || xs.valuation_at(GF9::zero()) >= 1) &&
                    (lp.y.is_zero() || lp.y.valuation_at(GF9::zero()) >= 1);
        if (!sing) return CompId::identity();
        if (fd.type.sym == KodairaSymbol::II || fd.type.sym == KodairaSymbol::IIStar)
            throw std::domain_error("component_of_section: section through an unreachable cusp");
        int yscale = fd.quasi_mu / 2;  // IV: 1, IV*: 2
        GF9 yres = detail::residue_of(lp.y, yscale);
        auto sq = fd.quasi_c.sqrt();
        if (sq && !sq->is_zero()) {
            if (yres == *sq) return {CompId::Simple, 0};
            if (yres == -*sq) return {CompId::Simple, 1};
            throw std::domain_error("component_of_section: section misses quasi branches");
        }
        return {CompId::Simple, 0};
    }

    // rescale levels (non-minimal local models)
    RatGF9 x = lp.x, y = lp.y;
    for (const PolyGF9& pre : fd.frame.rescales) {
        RatGF9 s2 = RatGF9(PolyGF9::monomial(2, GF9::one()));
        RatGF9 s3 = RatGF9(PolyGF9::monomial(3, GF9::one()));
        x = (x - RatGF9(pre)) / s2;
        y = y / s3;
    }

    if (!x.is_zero() && x.valuation_at(GF9::zero()) < 0) return CompId::identity();

    const TateFrame& fr = fd.frame;
    auto vat = [](const RatGF9& r) {
        return r.is_zero() ? (1 << 20) : r.valuation_at(GF9::zero());
    };

    // does the section reduce into the singular point of the Weierstrass fiber?
    {
        RatGF9 xs0 = x - RatGF9(PolyGF9(fr.rho.coeff(0)));
        if (fd.type.sym != KodairaSymbol::I0 && (vat(xs0) < 1 || vat(y) < 1))
            return CompId::identity();
    }

    switch (fd.type.sym) {
        case KodairaSymbol::I0:
            return CompId::identity();
        case KodairaSymbol::In: {
            int n = fd.type.n;
            if (n == 1)
                throw std::domain_error("component_of_section: section through the node of I1");
            auto sb = fr.beta2.sqrt();
            for (int j = 1; 2 * j <= n; ++j) {
                // enter depth j; chart coordinates u = (x - rho_{<=j})/s^j
                GF9 uj = fr.rho.coeff(j);  // 0 beyond the recorded trail
                RatGF9 xr = x;
                for (int k = 0; k < j; ++k) xr = xr - RatGF9(PolyGF9::monomial(k, fr.rho.coeff(k)));
                GF9 ures = detail::residue_of(xr, j);
                GF9 yres = detail::residue_of(y, j);
                if (fr.terminal_scale == j && 2 * j == n) return {CompId::Cyclic, j};
                if (ures == uj && yres.is_zero()) {
                    if (2 * j + 1 == n)
                        throw std::domain_error(
                            "component_of_section: section through a smooth crossing");
                    continue;
                }
                // on one of the two lines y = +-beta (u - uj)
                if (sb && !sb->is_zero()) {
                    if (yres == *sb * (ures - uj)) return {CompId::Cyclic, j};
                    if (yres == -*sb * (ures - uj)) return {CompId::Cyclic, n - j};
                    throw std::domain_error("component_of_section: section misses both branches");
                }
                return {CompId::Cyclic, j};
            }
            throw std::domain_error("component_of_section: I_n replay exhausted");
        }
        case KodairaSymbol::II:
            throw std::domain_error("component_of_section: section through the cusp of II");
        case KodairaSymbol::III:
        case KodairaSymbol::IIIStar:
            return {CompId::Simple, 0};
        case KodairaSymbol::IV:
        case KodairaSymbol::IVStar: {
            int sc = (fd.type.sym == KodairaSymbol::IV) ? 1 : 2;
            GF9 yres = detail::residue_of(y, sc);
            auto sq = fr.branch_c.sqrt();
            if (sq && !sq->is_zero()) {
                if (yres == *sq) return {CompId::Simple, 0};
                if (yres == -*sq) return {CompId::Simple, 1};
                throw std::domain_error("component_of_section: section misses IV branches");
            }
            return {CompId::Simple, 0};
        }
        case KodairaSymbol::IIStar:
            throw std::domain_error("component_of_section: II* has no reachable component");
        case KodairaSymbol::IStar: {
            int n = fd.type.n;
            RatGF9 xr = x - RatGF9(PolyGF9(fr.rho.coeff(0)));
            GF9 Tres = detail::residue_of(xr, 1);
            if (n == 0) {
                for (size_t k = 0; k < fr.pt_roots.size(); ++k)
                    if (Tres == fr.pt_roots[k]) return {CompId::Far, static_cast<int>(k)};
                throw std::domain_error("component_of_section: I0* residue not a root");
            }
            GF9 Td = fr.pt_roots[0], Ts = fr.pt_roots[1];
            if (Tres == Ts) return {CompId::Near, 0};
            if (Tres != Td)
                throw std::domain_error("component_of_section: I*n residue not a root");
            // follows the trunk to the terminal chart
            RatGF9 xs = x;
            for (int k = 0; k <= fr.rho.degree(); ++k)
                xs = xs - RatGF9(PolyGF9::monomial(k, fr.rho.coeff(k)));
            if (n % 2 == 1) {
                // far components at y-residue +-sqrt(c)
                int ysc = (n + 3) / 2;
                GF9 yres = detail::residue_of(y, ysc);
                auto sq = fr.branch_c.sqrt();
                if (sq && !sq->is_zero()) {
                    if (yres == *sq) return {CompId::Far, 0};
                    if (yres == -*sq) return {CompId::Far, 1};
                    throw std::domain_error("component_of_section: section misses far branches");
                }
                return {CompId::Far, 0};
            }
            int usc = fr.terminal_scale;
            GF9 ures = detail::residue_of(xs, usc);
            for (size_t k = 0; k < fr.far_roots.size(); ++k)
                if (ures == fr.far_roots[k]) return {CompId::Far, static_cast<int>(k)};
            throw std::domain_error("component_of_section: I*n far residue not a root");
        }
    }
    throw std::logic_error("component_of_section: unhandled type");
}

// ---------------------------------------------------------------------------
// Report line per fiber.

inline std::string fiber_report_line(const FiberData& fd) {
    std::ostringstream os;
    os << "place=" << place_to_string(fd.place);
    os << " kodaira=" << fd.type.str();
    auto l = fd.lattice_label();
    os << " lattice=" << (l ? l->str() : "-");
    if (fd.v_delta >= 0)
        os << " v_delta=" << fd.v_delta;
    else
        os << " v_delta=-";
    os << " m=" << fd.m;
    return os.str();
}

}  // namespace k3fib

#endif
