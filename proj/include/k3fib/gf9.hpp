// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_GF9_HPP
#define K3FIB_GF9_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace k3fib {

/// Which coefficient field a model or computation lives over.  F9 is
/// F3[i]/(i^2+1); F3 embeds as the elements with vanishing i-part.
enum class Field : uint8_t { F3, F9 };

/// An element a + b*i of F9 = F3[i], i^2 = -1.  Components are kept
/// reduced to {0,1,2}; the value is packed as a + 3*b.
class GF9 {
  public:
    constexpr GF9() noexcept : v_(0) {}
    constexpr GF9(int a) noexcept : v_(static_cast<uint8_t>(mod3(a))) {}
    constexpr GF9(int a, int b) noexcept
        : v_(static_cast<uint8_t>(mod3(a) + 3 * mod3(b))) {}

    static constexpr GF9 zero() noexcept { return GF9(0); }
    static constexpr GF9 one() noexcept { return GF9(1); }
    static constexpr GF9 i() noexcept { return GF9(0, 1); }

    constexpr int re() const noexcept { return v_ % 3; }
    constexpr int im() const noexcept { return v_ / 3; }
    constexpr uint8_t index() const noexcept { return v_; }
    static constexpr GF9 from_index(int k) noexcept {
        GF9 x;
        x.v_ = static_cast<uint8_t>(k);
        return x;
    }

    constexpr bool is_zero() const noexcept { return v_ == 0; }
    constexpr bool in_f3() const noexcept { return im() == 0; }
    constexpr bool in_field(Field f) const noexcept {
        return f == Field::F9 || in_f3();
    }

    friend constexpr bool operator==(GF9 a, GF9 b) noexcept { return a.v_ == b.v_; }
    friend constexpr bool operator!=(GF9 a, GF9 b) noexcept { return a.v_ != b.v_; }
    friend constexpr bool operator<(GF9 a, GF9 b) noexcept { return a.v_ < b.v_; }

    friend constexpr GF9 operator+(GF9 a, GF9 b) noexcept {
        return GF9(a.re() + b.re(), a.im() + b.im());
    }
    friend constexpr GF9 operator-(GF9 a, GF9 b) noexcept {
        return GF9(a.re() - b.re(), a.im() - b.im());
    }
    friend constexpr GF9 operator-(GF9 a) noexcept { return GF9(-a.re(), -a.im()); }
    friend constexpr GF9 operator*(GF9 a, GF9 b) noexcept {
        // (a1 + b1 i)(a2 + b2 i) = a1a2 - b1b2 + (a1b2 + a2b1) i
        return GF9(a.re() * b.re() - a.im() * b.im(),
                   a.re() * b.im() + a.im() * b.re());
    }

    constexpr GF9& operator+=(GF9 o) noexcept { return *this = *this + o; }
    constexpr GF9& operator-=(GF9 o) noexcept { return *this = *this - o; }
    constexpr GF9& operator*=(GF9 o) noexcept { return *this = *this * o; }

    /// Multiplicative inverse; throws on zero.
    constexpr GF9 inv() const {
        if (is_zero()) throw std::domain_error("GF9: division by zero");
        // (a + bi)^-1 = (a - bi) / (a^2 + b^2); the norm is nonzero in F3.
        int n = mod3(re() * re() + im() * im());
        int ninv = (n == 1) ? 1 : 2;  // 2*2 = 4 = 1
        return GF9(re() * ninv, -im() * ninv);
    }

    friend constexpr GF9 operator/(GF9 a, GF9 b) { return a * b.inv(); }
    constexpr GF9& operator/=(GF9 o) { return *this = *this / o; }

    constexpr GF9 pow(long e) const {
        if (is_zero()) {
            if (e < 0) throw std::domain_error("GF9: zero to negative power");
            return e == 0 ? one() : zero();
        }
        long r = e % 8;  // multiplicative order divides 8
        if (r < 0) r += 8;
        GF9 acc = one(), base = *this;
        while (r) {
            if (r & 1) acc *= base;
            base *= base;
            r >>= 1;
        }
        return acc;
    }

    /// Frobenius x -> x^3 (an automorphism of F9); also the cube root,
    /// since cubing is an automorphism as well.
    constexpr GF9 frob() const noexcept { return GF9(re(), -im()); }
    constexpr GF9 cbrt() const noexcept { return frob(); }

    constexpr bool is_square() const noexcept {
        if (is_zero()) return true;
        GF9 p = pow(4);
        return p == one();
    }

    std::optional<GF9> sqrt() const noexcept {
        for (int k = 0; k < 9; ++k) {
            GF9 c = from_index(k);
            if (c * c == *this) return c;
        }
        return std::nullopt;
    }

    static constexpr std::array<GF9, 9> all() noexcept {
        std::array<GF9, 9> r{};
        for (int k = 0; k < 9; ++k) r[k] = from_index(k);
        return r;
    }

    /// Canonical literal: 0, 1, 2, i, 2*i, 1+i, 1+2*i, 2+i, 2+2*i.
    std::string str() const {
        int a = re(), b = im();
        if (b == 0) return std::to_string(a);
        std::string im_part = (b == 1) ? "i" : "2*i";
        if (a == 0) return im_part;
        return std::to_string(a) + "+" + im_part;
    }

  private:
    static constexpr int mod3(int x) noexcept {
        int r = x % 3;
        return r < 0 ? r + 3 : r;
    }
    uint8_t v_;
};

inline GF9 operator*(int a, GF9 b) noexcept { return GF9(a) * b; }

}  // namespace k3fib

#endif
