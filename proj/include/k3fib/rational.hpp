// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_RATIONAL_HPP
#define K3FIB_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace k3fib {

/// Exact rational number on int64 (plenty for height pairings and lattice
/// discriminants in this catalog).
class Rational {
  public:
    constexpr Rational() : n_(0), d_(1) {}
    constexpr Rational(int64_t n) : n_(n), d_(1) {}
    Rational(int64_t n, int64_t d) : n_(n), d_(d) { normalize(); }

    int64_t num() const { return n_; }
    int64_t den() const { return d_; }
    bool is_zero() const { return n_ == 0; }
    bool is_integer() const { return d_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.n_ * b.d_ - b.n_ * a.d_, a.d_ * b.d_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.n_ * b.n_, a.d_ * b.d_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.n_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.n_ * b.d_, a.d_ * b.n_);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.n_, a.d_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.n_ * b.d_ < b.n_ * a.d_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

    std::string str() const {
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

  private:
    void normalize() {
        if (d_ == 0) throw std::domain_error("Rational: zero denominator");
        if (d_ < 0) {
            n_ = -n_;
            d_ = -d_;
        }
        int64_t g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) {
            n_ /= g;
            d_ /= g;
        }
    }
    int64_t n_, d_;
};

}  // namespace k3fib

#endif
