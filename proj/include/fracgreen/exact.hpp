#pragma once

// Exact coefficient arithmetic for the symbolic identity checks.
//
// Two exact scalar types back the feature-flagged exact mode of the atom
// algebra:
//   * BigRat       — rationals, for a fixed rational gamma;
//   * RationalFnW  — rational functions in one formal parameter w standing
//                    for 2*gamma, so an identity that reduces to the zero
//                    rational function holds for every admissible gamma.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fracgreen {

using BigRat = boost::multiprecision::cpp_rational;

/// Univariate polynomial over BigRat, dense ascending coefficients.
class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(BigRat c) {
        if (c != 0) coeffs_.push_back(std::move(c));
    }
    RatPoly(BigRat c0, BigRat c1) {
        coeffs_ = {std::move(c0), std::move(c1)};
        trim();
    }

    static RatPoly w() { return RatPoly(BigRat(0), BigRat(1)); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigRat& operator[](std::size_t i) const { return coeffs_[i]; }
    const BigRat& leading() const { return coeffs_.back(); }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        RatPoly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
            if (i < a.coeffs_.size()) r.coeffs_[i] += a.coeffs_[i];
            if (i < b.coeffs_.size()) r.coeffs_[i] += b.coeffs_[i];
        }
        r.trim();
        return r;
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
    RatPoly operator-() const {
        RatPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        RatPoly r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        r.trim();
        return r;
    }

    /// Euclidean division; returns {quotient, remainder}.
    static std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
        if (b.is_zero()) throw std::domain_error("RatPoly: division by zero polynomial");
        RatPoly q;
        q.coeffs_.assign(a.coeffs_.size(), BigRat(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            const int d = a.degree() - b.degree();
            BigRat f = a.leading() / b.leading();
            q.coeffs_[d] += f;
            for (std::size_t i = 0; i < b.coeffs_.size(); ++i) a.coeffs_[i + d] -= f * b.coeffs_[i];
            a.trim();
        }
        q.trim();
        return {q, a};
    }

    static RatPoly gcd(RatPoly a, RatPoly b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            a = b;
            b = r;
        }
        if (!a.is_zero()) {
            BigRat lead = a.leading();
            for (auto& c : a.coeffs_) c /= lead;
        }
        return a;
    }

    BigRat eval(const BigRat& x) const {
        BigRat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<BigRat> coeffs_;
};

/// Rational function num/den in the formal parameter w (= 2*gamma).
/// Canonical form: gcd-reduced, monic denominator.
class RationalFnW {
  public:
    RationalFnW() : num_(), den_(RatPoly(BigRat(1))) {}
    RationalFnW(int v) : num_(RatPoly(BigRat(v))), den_(RatPoly(BigRat(1))) {}  // NOLINT(google-explicit-constructor)
    explicit RationalFnW(BigRat v) : num_(RatPoly(std::move(v))), den_(RatPoly(BigRat(1))) {}
    RationalFnW(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RationalFnW w() { return RationalFnW(RatPoly::w(), RatPoly(BigRat(1))); }
    /// The linear polynomial i + g*w, the value of a lattice exponent.
    static RationalFnW linear(std::int64_t i, std::int64_t g) {
        return RationalFnW(RatPoly(BigRat(i), BigRat(g)), RatPoly(BigRat(1)));
    }

    bool is_zero() const { return num_.is_zero(); }
    const RatPoly& num() const { return num_; }
    const RatPoly& den() const { return den_; }

    friend RationalFnW operator+(const RationalFnW& a, const RationalFnW& b) {
        return RationalFnW(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFnW operator-(const RationalFnW& a, const RationalFnW& b) {
        return RationalFnW(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFnW operator*(const RationalFnW& a, const RationalFnW& b) {
        return RationalFnW(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFnW operator/(const RationalFnW& a, const RationalFnW& b) {
        if (b.is_zero()) throw std::domain_error("RationalFnW: division by zero");
        return RationalFnW(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFnW operator-() const { return RationalFnW(-num_, den_); }
    RationalFnW& operator+=(const RationalFnW& b) { return *this = *this + b; }
    RationalFnW& operator-=(const RationalFnW& b) { return *this = *this - b; }
    RationalFnW& operator*=(const RationalFnW& b) { return *this = *this * b; }
    RationalFnW& operator/=(const RationalFnW& b) { return *this = *this / b; }

    friend bool operator==(const RationalFnW& a, const RationalFnW& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Evaluate at a rational value of w.  Throws if w is a pole.
    BigRat eval(const BigRat& w_value) const {
        BigRat d = den_.eval(w_value);
        if (d == 0) throw std::domain_error("RationalFnW: evaluation at pole");
        return num_.eval(w_value) / d;
    }

  private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RationalFnW: zero denominator");
        if (num_.is_zero()) {
            den_ = RatPoly(BigRat(1));
            return;
        }
        RatPoly g = RatPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = RatPoly::divmod(num_, g).first;
            den_ = RatPoly::divmod(den_, g).first;
        }
        BigRat lead = den_.leading();
        if (lead != 1) {
            num_ = num_ * RatPoly(BigRat(1) / lead);
            den_ = den_ * RatPoly(BigRat(1) / lead);
        }
    }

    RatPoly num_;
    RatPoly den_;
};

}  // namespace fracgreen
