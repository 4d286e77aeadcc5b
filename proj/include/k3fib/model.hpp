// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_MODEL_HPP
#define K3FIB_MODEL_HPP

#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include "k3fib/algebra.hpp"

namespace k3fib {

// ---------------------------------------------------------------------------
// Weierstrass models y^2 = x^3 + a2(t) x^2 + a4(t) x + a6(t) over F3(t) or
// F9(t).  In characteristic 3 the a1 and a3 coefficients vanish after the
// standard completion of the square, so this shape is fully general here.

struct WeierstrassModel {
    PolyGF9 a2, a4, a6;
    Field field = Field::F9;

    friend bool operator==(const WeierstrassModel& a, const WeierstrassModel& b) {
        return a.a2 == b.a2 && a.a4 == b.a4 && a.a6 == b.a6;
    }
};

/// Discriminant of y^2 = x^3 + a2 x^2 + a4 x + a6 in characteristic 3,
/// obtained by reducing the universal expression
///   -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6,
/// b2 = 4a2, b4 = 2a4, b6 = 4a6, b8 = 4a2a6 - a4^2, modulo 3:
///   delta = a2^2 a4^2 - a2^3 a6 - a4^3.
inline PolyGF9 discriminant(const WeierstrassModel& m) {
    return m.a2 * m.a2 * m.a4 * m.a4 - m.a2 * m.a2 * m.a2 * m.a6 - m.a4 * m.a4 * m.a4;
}

/// Coefficients of the chart at t = infinity: a_i'(s) = s^{2i} a_i(1/s),
/// polynomial exactly when the K3 degree bounds deg a_i <= 2i hold.
/// Involutive: applying it twice returns the original model.
inline WeierstrassModel model_at_infinity(const WeierstrassModel& m) {
    WeierstrassModel r;
    r.field = m.field;
    r.a2 = m.a2.twist(4);
    r.a4 = m.a4.twist(8);
    r.a6 = m.a6.twist(12);
    return r;
}

enum class K3Verdict { Elliptic, QuasiElliptic, RationalSurface, Invalid };

struct K3Report {
    K3Verdict verdict;
    std::string detail;
};

inline K3Report validate_k3(const WeierstrassModel& m) {
    if (m.a2.degree() > 4 || m.a4.degree() > 8 || m.a6.degree() > 12)
        return {K3Verdict::Invalid, "coefficient degree bound deg a_i <= 2i violated"};
    PolyGF9 d = discriminant(m);
    if (d.is_zero()) {
        if (!m.a2.is_zero() || !m.a4.is_zero())
            return {K3Verdict::Invalid,
                    "vanishing discriminant with a2 or a4 nonzero (unsupported shape)"};
        if (m.a6.is_zero() || m.a6.is_cube())
            return {K3Verdict::Invalid, "y^2 = x^3 + cube is not a fibration"};
        if (m.a6.degree() <= 6)
            return {K3Verdict::RationalSurface, "quasi-elliptic but deg a6 <= 6"};
        return {K3Verdict::QuasiElliptic, ""};
    }
    if (d.degree() == 0)
        return {K3Verdict::Invalid, "constant nonzero discriminant: no singular fiber"};
    if (m.a2.degree() <= 2 && m.a4.degree() <= 4 && m.a6.degree() <= 6)
        return {K3Verdict::RationalSurface, "all deg a_i <= i"};
    return {K3Verdict::Elliptic, ""};
}

// ---------------------------------------------------------------------------
// Points of the generic fiber (sections of the fibration).

struct SurfacePoint {
    bool at_zero = true;  // the zero section O
    RatGF9 x, y;

    static SurfacePoint zero() { return SurfacePoint{}; }
    static SurfacePoint affine(RatGF9 px, RatGF9 py) {
        SurfacePoint p;
        p.at_zero = false;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
    bool is_zero() const { return at_zero; }

    friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
        if (a.at_zero != b.at_zero) return false;
        if (a.at_zero) return true;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const SurfacePoint& a, const SurfacePoint& b) { return !(a == b); }
};

inline RatGF9 curve_rhs(const WeierstrassModel& m, const RatGF9& x) {
    return x * x * x + RatGF9(m.a2) * x * x + RatGF9(m.a4) * x + RatGF9(m.a6);
}

inline bool is_on_curve(const WeierstrassModel& m, const SurfacePoint& p) {
    if (p.is_zero()) return true;
    return (p.y * p.y - curve_rhs(m, p.x)).is_zero();
}

inline SurfacePoint negate_point(const SurfacePoint& p) {
    if (p.is_zero()) return p;
    return SurfacePoint::affine(p.x, -p.y);
}

/// Chord-tangent addition on the generic fiber.  In characteristic 3 the
/// tangent slope is (2 a2 x + a4) / (2y) since the 3x^2 term vanishes.
inline SurfacePoint add_points(const WeierstrassModel& m, const SurfacePoint& p,
                               const SurfacePoint& q) {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    RatGF9 lambda;
    if (p.x == q.x) {
        if ((p.y + q.y).is_zero()) return SurfacePoint::zero();
        // tangent case (p == q with y != 0)
        RatGF9 num = RatGF9(GF9(2)) * RatGF9(m.a2) * p.x + RatGF9(m.a4);
        lambda = num / (RatGF9(GF9(2)) * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    RatGF9 x3 = lambda * lambda - RatGF9(m.a2) - p.x - q.x;
    RatGF9 y3 = lambda * (p.x - x3) - p.y;
    return SurfacePoint::affine(x3, y3);
}

inline SurfacePoint multiply_point(const WeierstrassModel& m, const SurfacePoint& p, int n) {
    if (n < 0) return multiply_point(m, negate_point(p), -n);
    SurfacePoint acc = SurfacePoint::zero();
    for (int k = 0; k < n; ++k) acc = add_points(m, acc, p);
    return acc;
}

// ---------------------------------------------------------------------------
// Coordinate changes x = u^2 x' + r, y = u^3 y'.  With a1 = a3 = 0 in
// characteristic 3 no shear parameters are ever needed.

struct ModelMap {
    RatGF9 u = RatGF9::one();
    RatGF9 r = RatGF9::zero();

    static ModelMap identity() { return ModelMap{}; }
    bool is_identity() const { return u == RatGF9::one() && r.is_zero(); }

    /// Composition: apply `first`, then `second` (x = u1^2(u2^2 x'' + r2) + r1).
    static ModelMap compose(const ModelMap& first, const ModelMap& second) {
        ModelMap m;
        m.u = first.u * second.u;
        m.r = first.u * first.u * second.r + first.r;
        return m;
    }

    /// Pull a point of the source model back to the target model's
    /// coordinates: x' = (x - r)/u^2, y' = y/u^3.
    SurfacePoint pullback(const SurfacePoint& p) const {
        if (p.is_zero()) return p;
        return SurfacePoint::affine((p.x - r) / (u * u), p.y / (u * u * u));
    }
    /// Push a point of the target model to the source model's coordinates.
    SurfacePoint pushforward(const SurfacePoint& p) const {
        if (p.is_zero()) return p;
        return SurfacePoint::affine(u * u * p.x + r, u * u * u * p.y);
    }
};

/// Transform a model by x = u^2 x' + r, y = u^3 y'.  The result must have
/// polynomial coefficients within the K3 degree bounds.
inline WeierstrassModel apply_map(const WeierstrassModel& m, const ModelMap& map) {
    if (map.u.is_zero()) throw std::domain_error("apply_map: u must be nonzero");
    RatGF9 u2 = map.u * map.u;
    RatGF9 u4 = u2 * u2;
    RatGF9 u6 = u4 * u2;
    RatGF9 a2 = RatGF9(m.a2) / u2;
    RatGF9 a4 = (RatGF9(GF9(2)) * RatGF9(m.a2) * map.r + RatGF9(m.a4)) / u4;
    RatGF9 a6 = (map.r.pow(3) + RatGF9(m.a2) * map.r * map.r + RatGF9(m.a4) * map.r +
                 RatGF9(m.a6)) /
                u6;
    if (!a2.is_poly() || !a4.is_poly() || !a6.is_poly())
        throw std::domain_error("apply_map: non-polynomial result");
    WeierstrassModel out{a2.num(), a4.num(), a6.num(), m.field};
    if (out.a2.degree() > 4 || out.a4.degree() > 8 || out.a6.degree() > 12)
        throw std::domain_error("apply_map: degree bounds violated");
    return out;
}

// ---------------------------------------------------------------------------
// Text formats.

inline std::string model_to_string(const WeierstrassModel& m) {
    std::ostringstream os;
    os << "field = " << (m.field == Field::F3 ? "F3" : "F9") << "\n";
    os << "a2 = " << poly_to_string(m.a2) << "\n";
    os << "a4 = " << poly_to_string(m.a4) << "\n";
    os << "a6 = " << poly_to_string(m.a6) << "\n";
    return os.str();
}

inline WeierstrassModel parse_model(std::istream& in) {
    WeierstrassModel m;
    std::string line;
    bool saw_any = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [](std::string& s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
        };
        strip(key);
        strip(val);
        if (key == "field") {
            if (val == "F3")
                m.field = Field::F3;
            else if (val == "F9")
                m.field = Field::F9;
            else
                throw std::runtime_error("model: unknown field " + val);
        } else if (key == "a2") {
            m.a2 = parse_poly(val);
            saw_any = true;
        } else if (key == "a4") {
            m.a4 = parse_poly(val);
            saw_any = true;
        } else if (key == "a6") {
            m.a6 = parse_poly(val);
            saw_any = true;
        }
    }
    if (!saw_any) throw std::runtime_error("model: no coefficients found");
    if (m.field == Field::F3) {
        for (const PolyGF9* p : {&m.a2, &m.a4, &m.a6})
            for (int k = 0; k <= p->degree(); ++k)
                if (!p->coeff(k).in_f3())
                    throw std::runtime_error("model: F9 coefficient in an F3 model");
    }
    return m;
}

inline WeierstrassModel parse_model(const std::string& text) {
    std::istringstream is(text);
    return parse_model(is);
}

/// Section literal: `O` for the zero section, else `(x-expr ; y-expr)`.
inline SurfacePoint parse_section(std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw std::runtime_error("empty section literal");
    std::string_view core = s.substr(b, e - b + 1);
    if (core == "O" || core == "zero" || core == "0-section") return SurfacePoint::zero();
    if (core.front() != '(' || core.back() != ')')
        throw std::runtime_error("section literal must be O or (x ; y)");
    core = core.substr(1, core.size() - 2);
    // split on the top-level ';'
    int depth = 0;
    size_t split = std::string_view::npos;
    for (size_t k = 0; k < core.size(); ++k) {
        if (core[k] == '(') ++depth;
        if (core[k] == ')') --depth;
        if (core[k] == ';' && depth == 0) {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos)
        throw std::runtime_error("section literal needs `;` between coordinates");
    return SurfacePoint::affine(parse_ratfunc(core.substr(0, split)),
                                parse_ratfunc(core.substr(split + 1)));
}

inline std::string section_to_string(const SurfacePoint& p) {
    if (p.is_zero()) return "O";
    return "(" + ratfunc_to_string(p.x) + " ; " + ratfunc_to_string(p.y) + ")";
}

}  // namespace k3fib

#endif
