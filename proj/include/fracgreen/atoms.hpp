#pragma once

// Closed algebra of graded terms c * y^a * x^beta * |z|^t on the punctured
// half space, z = (y, x), |z| = (y^2 + |x|^2)^(1/2).  Exponents a, t live on
// the exact lattice Z + 2*gamma*Z; coefficients are double in the default
// mode and exact rationals (or rational functions of the formal parameter
// w = 2*gamma) in the feature-flagged exact mode.
//
// All values are immutable after construction and every operation is a pure
// function, so atom sums can be shared freely across threads.

#include "fracgreen/errors.hpp"
#include "fracgreen/exact.hpp"
#include "fracgreen/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracgreen {

struct FracConfig {
    int n = 1;          ///< boundary dimension
    double gamma = 0.25;

    double s() const { return 0.5 * n + gamma; }
    double two_gamma() const { return 2.0 * gamma; }

    void validate() const {
        if (n < 1) throw ConfigError("FracConfig: n must be >= 1, got " + std::to_string(n));
        if (!(gamma > 0.0 && gamma < 1.0))
            throw ConfigError("FracConfig: gamma must lie in (0,1), got " + std::to_string(gamma));
        if (std::abs(gamma - 0.5) < 1e-12)
            throw ConfigError("FracConfig: gamma = 1/2 is excluded (logarithmic terms outside this algebra)");
    }
};

// ---------------------------------------------------------------------------
// Scalar contexts.  ctx.lat(e) maps a lattice exponent to its value in the
// coefficient field; this is the only place exponent values enter
// coefficients, so structural cancellations (e.g. a*(a-2g) at a = 2g) are
// exact in every mode including plain double.
// ---------------------------------------------------------------------------

struct DoubleContext {
    using Scalar = double;
    FracConfig cfg;

    explicit DoubleContext(FracConfig c) : cfg(c) { cfg.validate(); }
    double lat(LatticeExponent e) const { return e.value(cfg.two_gamma()); }
    static double from_int(std::int64_t v) { return static_cast<double>(v); }
    static bool is_zero(double v) { return v == 0.0; }
};

struct ExactContext {
    using Scalar = BigRat;
    FracConfig cfg;
    BigRat two_gamma_exact;

    ExactContext(FracConfig c, BigRat tg) : cfg(c), two_gamma_exact(std::move(tg)) {
        cfg.validate();
        if (two_gamma_exact <= 0 || two_gamma_exact >= 2 || two_gamma_exact == 1)
            throw ConfigError("ExactContext: 2*gamma must lie in (0,2) \\ {1}");
    }
    BigRat lat(LatticeExponent e) const {
        return BigRat(e.integer_part) + two_gamma_exact * BigRat(e.gamma_multiple);
    }
    static BigRat from_int(std::int64_t v) { return BigRat(v); }
    static bool is_zero(const BigRat& v) { return v == 0; }
};

/// Coefficients are rational functions of w = 2*gamma; identities proved in
/// this context hold for every gamma outside the poles (which the harmonic
/// recursion never hits for gamma in (0,1) \ {1/2}).
struct FormalContext {
    using Scalar = RationalFnW;
    FracConfig cfg;  ///< gamma is only used for grading order, never in coefficients

    explicit FormalContext(FracConfig c) : cfg(c) { cfg.validate(); }
    RationalFnW lat(LatticeExponent e) const {
        return RationalFnW::linear(e.integer_part, e.gamma_multiple);
    }
    static RationalFnW from_int(std::int64_t v) { return RationalFnW(BigRat(v)); }
    static bool is_zero(const RationalFnW& v) { return v.is_zero(); }
};

// ---------------------------------------------------------------------------
// Atoms
// ---------------------------------------------------------------------------

using MultiIndex = std::vector<std::int32_t>;

inline int multi_abs(const MultiIndex& b) {
    int s = 0;
    for (int v : b) s += v;
    return s;
}

template <class S>
struct GradedAtom {
    S coeff{};
    LatticeExponent y_exp{};   ///< exponent a of y
    MultiIndex x_multi{};      ///< multi-index beta over the n boundary variables
    LatticeExponent r_exp{};   ///< exponent t of |z|

    LatticeExponent homogeneity() const {
        return y_exp + LatticeExponent::integer(multi_abs(x_multi)) + r_exp;
    }

    /// Canonical key; coefficientless identity of the term.
    friend bool key_less(const GradedAtom& a, const GradedAtom& b) {
        if (a.y_exp != b.y_exp) return a.y_exp < b.y_exp;
        if (a.x_multi != b.x_multi) return a.x_multi < b.x_multi;
        return a.r_exp < b.r_exp;
    }
    friend bool key_equal(const GradedAtom& a, const GradedAtom& b) {
        return a.y_exp == b.y_exp && a.x_multi == b.x_multi && a.r_exp == b.r_exp;
    }
};

/// Canonical-form sum of graded atoms: sorted by (y_exp, x_multi, r_exp) with
/// merged duplicates, no zero coefficients, and no |z|^(2k) factors with
/// k >= 0 integer (those are expanded into polynomial atoms).
template <class S>
class AtomSum {
  public:
    AtomSum() = default;
    explicit AtomSum(int n) : n_(n) {}
    AtomSum(int n, std::vector<GradedAtom<S>> atoms) : n_(n), atoms_(std::move(atoms)) { canonicalize(); }

    int n() const { return n_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }
    const std::vector<GradedAtom<S>>& atoms() const { return atoms_; }

    static AtomSum zero(int n) { return AtomSum(n); }

    static AtomSum monomial(int n, S coeff, LatticeExponent y_exp, MultiIndex beta, LatticeExponent r_exp) {
        AtomSum s(n);
        if (static_cast<int>(beta.size()) != n) beta.resize(n, 0);
        s.atoms_.push_back({std::move(coeff), y_exp, std::move(beta), r_exp});
        s.canonicalize();
        return s;
    }

    AtomSum& operator+=(const AtomSum& o) {
        check_dim(o);
        atoms_.insert(atoms_.end(), o.atoms_.begin(), o.atoms_.end());
        canonicalize();
        return *this;
    }
    AtomSum& operator-=(const AtomSum& o) { return *this += o.scaled(S(-1)); }
    friend AtomSum operator+(AtomSum a, const AtomSum& b) { return a += b; }
    friend AtomSum operator-(AtomSum a, const AtomSum& b) { return a -= b; }

    AtomSum scaled(const S& c) const {
        AtomSum r = *this;
        for (auto& a : r.atoms_) a.coeff = a.coeff * c;
        r.canonicalize();
        return r;
    }

    friend AtomSum operator*(const AtomSum& a, const AtomSum& b) {
        a.check_dim(b);
        AtomSum r(a.n_);
        r.atoms_.reserve(a.atoms_.size() * b.atoms_.size());
        for (const auto& p : a.atoms_)
            for (const auto& q : b.atoms_) {
                GradedAtom<S> m;
                m.coeff = p.coeff * q.coeff;
                m.y_exp = p.y_exp + q.y_exp;
                m.x_multi = p.x_multi;
                for (int i = 0; i < a.n_; ++i) m.x_multi[i] += q.x_multi[i];
                m.r_exp = p.r_exp + q.r_exp;
                r.atoms_.push_back(std::move(m));
            }
        r.canonicalize();
        return r;
    }

    friend bool operator==(const AtomSum& a, const AtomSum& b) {
        if (a.n_ != b.n_ || a.atoms_.size() != b.atoms_.size()) return false;
        for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
            if (!key_equal(a.atoms_[i], b.atoms_[i])) return false;
            if (!(a.atoms_[i].coeff == b.atoms_[i].coeff)) return false;
        }
        return true;
    }

    /// Exact total degree when the sum is homogeneous; throws otherwise.
    LatticeExponent homogeneity() const {
        if (atoms_.empty()) throw EvaluationError("AtomSum::homogeneity: zero sum has no degree");
        LatticeExponent d = atoms_.front().homogeneity();
        for (const auto& a : atoms_)
            if (a.homogeneity() != d) throw EvaluationError("AtomSum::homogeneity: sum is not homogeneous");
        return d;
    }

    bool is_homogeneous() const {
        if (atoms_.empty()) return true;
        LatticeExponent d = atoms_.front().homogeneity();
        for (const auto& a : atoms_)
            if (a.homogeneity() != d) return false;
        return true;
    }

    double max_abs_coeff() const
        requires std::is_same_v<S, double>
    {
        double m = 0.0;
        for (const auto& a : atoms_) m = std::max(m, std::abs(a.coeff));
        return m;
    }

    /// Drop coefficients at or below a threshold (double mode only); used to
    /// clear float dust after a solve declared exact at tolerance.
    AtomSum pruned(double abs_tol) const
        requires std::is_same_v<S, double>
    {
        AtomSum r(n_);
        for (const auto& a : atoms_)
            if (std::abs(a.coeff) > abs_tol) r.atoms_.push_back(a);
        return r;
    }

  private:
    void check_dim(const AtomSum& o) const {
        if (n_ != o.n_) throw EvaluationError("AtomSum: mixed boundary dimensions");
    }

    // |z|^(2k), k >= 1 integer, is the polynomial (y^2 + sum x_i^2)^k; expand
    // so the canonical form is unique.
    void expand_even_r_powers() {
        bool any = false;
        for (const auto& a : atoms_)
            if (a.r_exp.gamma_multiple == 0 && a.r_exp.integer_part > 0 && a.r_exp.integer_part % 2 == 0)
                any = true;
        if (!any) return;
        std::vector<GradedAtom<S>> out;
        out.reserve(atoms_.size());
        for (auto& a : atoms_) {
            if (!(a.r_exp.gamma_multiple == 0 && a.r_exp.integer_part > 0 && a.r_exp.integer_part % 2 == 0)) {
                out.push_back(std::move(a));
                continue;
            }
            int k = a.r_exp.integer_part / 2;
            std::vector<GradedAtom<S>> cur{a};
            cur.front().r_exp = LatticeExponent::integer(0);
            for (int step = 0; step < k; ++step) {
                std::vector<GradedAtom<S>> next;
                next.reserve(cur.size() * (n_ + 1));
                for (const auto& t : cur) {
                    GradedAtom<S> ty = t;
                    ty.y_exp += LatticeExponent::integer(2);
                    next.push_back(std::move(ty));
                    for (int i = 0; i < n_; ++i) {
                        GradedAtom<S> tx = t;
                        tx.x_multi[i] += 2;
                        next.push_back(std::move(tx));
                    }
                }
                cur = std::move(next);
            }
            for (auto& t : cur) out.push_back(std::move(t));
        }
        atoms_ = std::move(out);
    }

    void canonicalize() {
        for (auto& a : atoms_)
            if (static_cast<int>(a.x_multi.size()) != n_) a.x_multi.resize(n_, 0);
        expand_even_r_powers();
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const GradedAtom<S>& a, const GradedAtom<S>& b) { return key_less(a, b); });
        std::vector<GradedAtom<S>> out;
        out.reserve(atoms_.size());
        for (auto& a : atoms_) {
            if (!out.empty() && key_equal(out.back(), a))
                out.back().coeff = out.back().coeff + a.coeff;
            else
                out.push_back(std::move(a));
        }
        std::erase_if(out, [](const GradedAtom<S>& a) {
            if constexpr (std::is_same_v<S, double>)
                return a.coeff == 0.0;
            else
                return a.coeff == S(0);
        });
        atoms_ = std::move(out);
    }

    int n_ = 0;
    std::vector<GradedAtom<S>> atoms_;
};

// ---------------------------------------------------------------------------
// Calculus on atoms
// ---------------------------------------------------------------------------

/// Derivative direction: -1 for y, 0..n-1 for x_i.
template <class Ctx>
AtomSum<typename Ctx::Scalar> differentiate(const Ctx& ctx, const AtomSum<typename Ctx::Scalar>& u, int dir) {
    using S = typename Ctx::Scalar;
    std::vector<GradedAtom<S>> out;
    out.reserve(2 * u.size());
    for (const auto& a : u.atoms()) {
        if (dir < 0) {
            if (!(a.y_exp.is_zero())) {
                GradedAtom<S> t = a;
                t.coeff = a.coeff * ctx.lat(a.y_exp);
                t.y_exp -= LatticeExponent::integer(1);
                out.push_back(std::move(t));
            }
            if (!a.r_exp.is_zero()) {
                // d/dy |z|^t = t * y * |z|^(t-2)
                GradedAtom<S> t = a;
                t.coeff = a.coeff * ctx.lat(a.r_exp);
                t.y_exp += LatticeExponent::integer(1);
                t.r_exp -= LatticeExponent::integer(2);
                out.push_back(std::move(t));
            }
        } else {
            if (a.x_multi[dir] > 0) {
                GradedAtom<S> t = a;
                t.coeff = a.coeff * Ctx::from_int(a.x_multi[dir]);
                t.x_multi[dir] -= 1;
                out.push_back(std::move(t));
            }
            if (!a.r_exp.is_zero()) {
                GradedAtom<S> t = a;
                t.coeff = a.coeff * ctx.lat(a.r_exp);
                t.x_multi[dir] += 1;
                t.r_exp -= LatticeExponent::integer(2);
                out.push_back(std::move(t));
            }
        }
    }
    return AtomSum<S>(u.n(), std::move(out));
}

/// The flat degenerate operator D = -d_y(y^(1-2g) d_y .) - y^(1-2g) Dx(.)
/// applied atomwise:
///   D(y^a x^b |z|^t) = -a(a-2g) y^(a-1-2g) x^b |z|^t
///                      -t(2a + 2|b| + n + t - 2g) y^(a+1-2g) x^b |z|^(t-2)
///                      -y^(a+1-2g) Dx(x^b) |z|^t .
/// Every coefficient factor is assembled on the exponent lattice before it
/// is mapped into the coefficient field, so D annihilates y^(2g),
/// y^(2g)|z|^(-n-2g) and |z|^(2g-n) with exact zeros in all scalar modes.
template <class Ctx>
AtomSum<typename Ctx::Scalar> apply_flat_D(const Ctx& ctx, const AtomSum<typename Ctx::Scalar>& u) {
    using S = typename Ctx::Scalar;
    const int n = u.n();
    const LatticeExponent down{-1, -1};  // a -> a - 1 - 2g
    const LatticeExponent up{1, -1};     // a -> a + 1 - 2g
    std::vector<GradedAtom<S>> out;
    out.reserve(3 * u.size());
    for (const auto& a : u.atoms()) {
        const int ab = multi_abs(a.x_multi);
        // -a(a-2g) y^(a-1-2g) x^b |z|^t
        {
            const LatticeExponent am2g = a.y_exp - LatticeExponent::two_gamma_times(1);
            if (!a.y_exp.is_zero() && !am2g.is_zero()) {
                GradedAtom<S> t = a;
                t.coeff = -(a.coeff * ctx.lat(a.y_exp) * ctx.lat(am2g));
                t.y_exp += down;
                out.push_back(std::move(t));
            }
        }
        // -t(2a + 2|b| + n + t - 2g) y^(a+1-2g) x^b |z|^(t-2)
        if (!a.r_exp.is_zero()) {
            const LatticeExponent factor =
                2 * a.y_exp + a.r_exp + LatticeExponent{2 * ab + n, -1};
            if (!factor.is_zero()) {
                GradedAtom<S> t = a;
                t.coeff = -(a.coeff * ctx.lat(a.r_exp) * ctx.lat(factor));
                t.y_exp += up;
                t.r_exp -= LatticeExponent::integer(2);
                out.push_back(std::move(t));
            }
        }
        // -y^(a+1-2g) Dx(x^b) |z|^t
        for (int i = 0; i < n; ++i) {
            if (a.x_multi[i] >= 2) {
                GradedAtom<S> t = a;
                t.coeff = -(a.coeff * Ctx::from_int(static_cast<std::int64_t>(a.x_multi[i]) *
                                                    (a.x_multi[i] - 1)));
                t.y_exp += up;
                t.x_multi[i] -= 2;
                out.push_back(std::move(t));
            }
        }
    }
    return AtomSum<S>(n, std::move(out));
}

/// Split into homogeneous graded pieces, keyed by exact total degree and
/// ordered by numeric value (structural tiebreak).
template <class Ctx>
std::map<LatticeExponent, AtomSum<typename Ctx::Scalar>, LatticeValueLess> homogeneity_grading(
    const Ctx& ctx, const AtomSum<typename Ctx::Scalar>& u) {
    using S = typename Ctx::Scalar;
    std::map<LatticeExponent, AtomSum<S>, LatticeValueLess> g{LatticeValueLess{ctx.cfg.two_gamma()}};
    for (const auto& a : u.atoms()) {
        auto it = g.try_emplace(a.homogeneity(), AtomSum<S>(u.n())).first;
        it->second += AtomSum<S>(u.n(), {a});
    }
    return g;
}

struct Point {
    double y = 0.0;
    std::vector<double> x;
    double r() const {
        double s = y * y;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
};

/// Numeric evaluation.  y = 0 is allowed only where the limit is finite:
/// every atom needs y-exponent value >= 0 (positive values contribute 0,
/// exact zero contributes the x-part), and negative |z| powers reject the
/// origin.
inline double evaluate(const DoubleContext& ctx, const AtomSum<double>& u, const Point& p) {
    if (static_cast<int>(p.x.size()) != u.n()) throw EvaluationError("evaluate: point dimension mismatch");
    const double tg = ctx.cfg.two_gamma();
    const double r = p.r();
    double acc = 0.0;
    for (const auto& a : u.atoms()) {
        const double ay = a.y_exp.value(tg);
        double term = a.coeff;
        if (p.y == 0.0) {
            if (ay < 0.0) throw EvaluationError("evaluate: negative y-power at y = 0");
            if (ay > 0.0) continue;  // y^a -> 0
            // ay == 0: y^0 = 1
        } else {
            term *= std::pow(p.y, ay);
        }
        for (int i = 0; i < u.n(); ++i)
            for (int k = 0; k < a.x_multi[i]; ++k) term *= p.x[i];
        if (!a.r_exp.is_zero()) {
            if (r == 0.0) throw EvaluationError("evaluate: |z| power at the origin");
            term *= std::pow(r, a.r_exp.value(tg));
        }
        acc += term;
    }
    return acc;
}

}  // namespace fracgreen
