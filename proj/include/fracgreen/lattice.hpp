#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fracgreen {

/// Exact exponent on the lattice Z + 2*gamma*Z.
///
/// Exponents of y and |z| in the graded algebra live on this lattice; term
/// merging and solvability decisions depend on exact equality, so the value
/// is never stored as a float.  Equality and the canonical ordering compare
/// the (integer_part, gamma_multiple) pair; two exponents whose numeric
/// values collide for a particular gamma (e.g. 4*gamma = 1) stay distinct.
struct LatticeExponent {
    std::int32_t integer_part = 0;
    std::int32_t gamma_multiple = 0;

    constexpr LatticeExponent() = default;
    constexpr LatticeExponent(std::int32_t i, std::int32_t g) : integer_part(i), gamma_multiple(g) {}

    static constexpr LatticeExponent integer(std::int32_t i) { return {i, 0}; }
    static constexpr LatticeExponent two_gamma_times(std::int32_t g) { return {0, g}; }

    constexpr bool is_zero() const { return integer_part == 0 && gamma_multiple == 0; }
    constexpr bool is_integer() const { return gamma_multiple == 0; }

    /// Numeric value for a fixed gamma.
    constexpr double value(double two_gamma) const {
        return static_cast<double>(integer_part) + two_gamma * static_cast<double>(gamma_multiple);
    }

    friend constexpr LatticeExponent operator+(LatticeExponent a, LatticeExponent b) {
        return {a.integer_part + b.integer_part, a.gamma_multiple + b.gamma_multiple};
    }
    friend constexpr LatticeExponent operator-(LatticeExponent a, LatticeExponent b) {
        return {a.integer_part - b.integer_part, a.gamma_multiple - b.gamma_multiple};
    }
    friend constexpr LatticeExponent operator*(std::int32_t k, LatticeExponent a) {
        return {k * a.integer_part, k * a.gamma_multiple};
    }
    LatticeExponent& operator+=(LatticeExponent b) { return *this = *this + b; }
    LatticeExponent& operator-=(LatticeExponent b) { return *this = *this - b; }

    friend constexpr bool operator==(LatticeExponent a, LatticeExponent b) = default;
    /// Structural (pair-lexicographic) order; used for canonical term order.
    friend constexpr auto operator<=>(LatticeExponent a, LatticeExponent b) {
        if (auto c = a.integer_part <=> b.integer_part; c != 0) return c;
        return a.gamma_multiple <=> b.gamma_multiple;
    }

    std::string str() const {
        std::string s = std::to_string(integer_part);
        if (gamma_multiple != 0) {
            s += (gamma_multiple > 0 ? "+" : "-");
            s += std::to_string(gamma_multiple > 0 ? gamma_multiple : -gamma_multiple);
            s += "*2g";
        }
        return s;
    }
};

/// Order by numeric value at a fixed gamma, ties broken structurally.
/// Grading maps use this so "lowest homogeneity first" is well defined even
/// when distinct lattice points share a value (e.g. gamma = 1/4).
struct LatticeValueLess {
    double two_gamma;
    bool operator()(LatticeExponent a, LatticeExponent b) const {
        const double va = a.value(two_gamma);
        const double vb = b.value(two_gamma);
        if (va < vb) return true;
        if (va > vb) return false;
        return a < b;
    }
};

}  // namespace fracgreen
