#include "fracgreen/atoms.hpp"
#include "fracgreen/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fracgreen;

namespace {

AtomSum<double> atom(int n, double c, LatticeExponent y, MultiIndex b, LatticeExponent r) {
    return AtomSum<double>::monomial(n, c, y, std::move(b), r);
}

AtomSum<RationalFnW> atom_w(int n, int c, LatticeExponent y, MultiIndex b, LatticeExponent r) {
    return AtomSum<RationalFnW>::monomial(n, RationalFnW(c), y, std::move(b), r);
}

// Independent route to D: compose -d_y(y^(1-2g) d_y u) - y^(1-2g) Dx u from
// first derivatives and atom products only.
template <class Ctx>
AtomSum<typename Ctx::Scalar> apply_D_composed(const Ctx& ctx, const AtomSum<typename Ctx::Scalar>& u) {
    using S = typename Ctx::Scalar;
    const int n = u.n();
    auto y_pow = AtomSum<S>::monomial(n, Ctx::from_int(1), LatticeExponent{1, -1}, MultiIndex(n, 0),
                                      LatticeExponent{0, 0});
    AtomSum<S> res = differentiate(ctx, y_pow * differentiate(ctx, u, -1), -1).scaled(Ctx::from_int(-1));
    for (int i = 0; i < n; ++i)
        res -= y_pow * differentiate(ctx, differentiate(ctx, u, i), i);
    return res;
}

std::vector<AtomSum<double>> random_atoms(int n, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> yi(0, 3), yg(0, 1), bi(0, 2), ri(-5, 3), rg(-1, 1);
    std::uniform_real_distribution<double> co(-2.0, 2.0);
    std::vector<AtomSum<double>> out;
    while (static_cast<int>(out.size()) < count) {
        MultiIndex b(n, 0);
        for (int i = 0; i < n; ++i) b[i] = bi(rng);
        LatticeExponent r{ri(rng), rg(rng)};
        AtomSum<double> a = atom(n, co(rng), {yi(rng), yg(rng)}, b, r);
        if (!a.empty()) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST_CASE("lattice exponents: exact arithmetic and ordering") {
    LatticeExponent a{1, 2}, b{3, -1};
    CHECK(a + b == LatticeExponent{4, 1});
    CHECK(a - b == LatticeExponent{-2, 3});
    CHECK(3 * a == LatticeExponent{3, 6});
    CHECK(a.value(0.5) == Catch::Approx(2.0));
    // value collision at 2g = 1/2: 4*gamma = 1, but the pair order keeps them apart
    LatticeExponent p{1, -1}, q{0, 1};
    CHECK(p.value(0.5) == q.value(0.5));
    CHECK(p != q);
    LatticeValueLess less{0.5};
    CHECK((less(p, q) ^ less(q, p)));
}

TEST_CASE("gamma = 1/2 rejected at context construction") {
    CHECK_THROWS_AS(DoubleContext(FracConfig{1, 0.5}), ConfigError);
    CHECK_THROWS_AS(DoubleContext(FracConfig{2, 1.2}), ConfigError);
    CHECK_NOTHROW(DoubleContext(FracConfig{2, 0.25}));
}

TEST_CASE("canonical form: merging, zero removal, |z|^2 expansion") {
    const int n = 2;
    auto u = atom(n, 1.5, {0, 1}, {1, 0}, {-3, 0}) + atom(n, -0.5, {0, 1}, {1, 0}, {-3, 0});
    REQUIRE(u.size() == 1);
    CHECK(u.atoms()[0].coeff == Catch::Approx(1.0));
    auto z2 = atom(n, 1.0, {0, 0}, {0, 0}, {2, 0});
    auto expanded = atom(n, 1.0, {2, 0}, {0, 0}, {0, 0}) + atom(n, 1.0, {0, 0}, {2, 0}, {0, 0}) +
                    atom(n, 1.0, {0, 0}, {0, 2}, {0, 0});
    CHECK(z2 == expanded);
    CHECK((u - u).empty());
}

TEST_CASE("differentiate: power rule and chain rule examples") {
    const int n = 2;
    DoubleContext ctx(FracConfig{n, 0.3});
    const double tg = 0.6;

    auto dy = differentiate(ctx, atom(n, 1.0, {0, 1}, {0, 0}, {0, 0}), -1);
    CHECK(dy == atom(n, tg, {-1, 1}, {0, 0}, {0, 0}));

    auto dx = differentiate(ctx, atom(n, 1.0, {0, 0}, {0, 0}, {-n, 1}), 0);
    CHECK(dx == atom(n, tg - n, {0, 0}, {1, 0}, {-n - 2, 1}));

    auto dk = differentiate(ctx, atom(n, 1.0, {0, 1}, {0, 0}, {-n, -1}), -1);
    auto expected = atom(n, tg, {-1, 1}, {0, 0}, {-n, -1}) + atom(n, -n - tg, {1, 1}, {0, 0}, {-n - 2, -1});
    REQUIRE(dk.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(key_equal(dk.atoms()[i], expected.atoms()[i]));
        CHECK(dk.atoms()[i].coeff == Catch::Approx(expected.atoms()[i].coeff).margin(1e-15));
    }
}

TEST_CASE("flat operator annihilates constants, y^2g and both model kernels exactly") {
    for (int n : {1, 2, 3}) {
        for (double g : {0.25, 0.3121, 0.75, 0.9}) {
            DoubleContext ctx(FracConfig{n, g});
            CHECK(apply_flat_D(ctx, atom(n, 1.0, {0, 0}, MultiIndex(n, 0), {0, 0})).empty());
            CHECK(apply_flat_D(ctx, atom(n, 1.0, {0, 1}, MultiIndex(n, 0), {0, 0})).empty());
            // Poisson-type kernel y^2g |z|^(-n-2g)
            CHECK(apply_flat_D(ctx, atom(n, 1.0, {0, 1}, MultiIndex(n, 0), {-n, -1})).empty());
            // Green-type kernel |z|^(2g-n)
            CHECK(apply_flat_D(ctx, atom(n, 1.0, {0, 0}, MultiIndex(n, 0), {-n, 1})).empty());
        }
    }
}

TEST_CASE("flat operator annihilates kernels as an identity in the formal parameter") {
    for (int n : {1, 2, 3}) {
        FormalContext ctx(FracConfig{n, 0.25});
        CHECK(apply_flat_D(ctx, atom_w(n, 1, {0, 1}, MultiIndex(n, 0), {-n, -1})).empty());
        CHECK(apply_flat_D(ctx, atom_w(n, 1, {0, 0}, MultiIndex(n, 0), {-n, 1})).empty());
    }
}

TEST_CASE("flat operator formula agrees with the composed definition") {
    const int n = 2;
    DoubleContext ctx(FracConfig{n, 0.41});
    for (const auto& u : random_atoms(n, 40, 1234)) {
        auto diff = apply_flat_D(ctx, u) - apply_D_composed(ctx, u);
        double scale = std::max(1.0, apply_flat_D(ctx, u).max_abs_coeff());
        CHECK(diff.pruned(1e-12 * scale).empty());
    }
    // and exactly, coefficientwise, over rational functions of w
    FormalContext fx(FracConfig{n, 0.25});
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> yi(0, 3), yg(0, 1), bi(0, 2), ri(-5, 3), rg(-1, 1);
    for (int t = 0; t < 25; ++t) {
        MultiIndex b{bi(rng), bi(rng)};
        auto u = atom_w(n, 1 + (t % 3), {yi(rng), yg(rng)}, b, {ri(rng), rg(rng)});
        if (u.empty()) continue;
        CHECK((apply_flat_D(fx, u) - apply_D_composed(fx, u)).empty());
    }
}

TEST_CASE("homogeneity grading splits exactly on the lattice") {
    const int n = 2;
    DoubleContext ctx(FracConfig{n, 0.25});
    auto u = atom(n, 1.0, {1, 0}, {0, 0}, {0, 0}) + atom(n, 1.0, {2, 0}, {0, 0}, {0, 0});
    auto g = homogeneity_grading(ctx, u);
    REQUIRE(g.size() == 2);
    CHECK(g.begin()->first == LatticeExponent{1, 0});
    CHECK(std::next(g.begin())->first == LatticeExponent{2, 0});

    CHECK(homogeneity_grading(ctx, AtomSum<double>::zero(n)).empty());

    auto v = atom(n, 2.0, {0, 1}, {1, 0}, {0, 0}) + atom(n, 3.0, {1, 0}, {0, 0}, {-n, 0});
    auto gv = homogeneity_grading(ctx, v);
    REQUIRE(gv.size() == 2);
    CHECK(gv.count(LatticeExponent{1, 1}) == 1);      // 1 + 2g
    CHECK(gv.count(LatticeExponent{1 - n, 0}) == 1);  // 1 - n
    // graded pieces sum back to the original
    AtomSum<double> total(n);
    for (auto& [k, piece] : gv) {
        CHECK(piece.homogeneity() == k);
        total += piece;
    }
    CHECK(total == v);
}

TEST_CASE("evaluate: direct power evaluation and y = 0 limits") {
    {
        DoubleContext ctx(FracConfig{1, 0.3});
        CHECK(evaluate(ctx, atom(1, 1.0, {0, 1}, {0}, {0, 0}), Point{1.0, {5.0}}) == Catch::Approx(1.0));
    }
    {
        const int n = 2;
        DoubleContext ctx(FracConfig{n, 0.25});
        auto green = atom(n, 1.0, {0, 0}, {0, 0}, {-n, 1});  // |z|^(2g-n)
        double v = evaluate(ctx, green, Point{0.0, {2.0, 0.0}});
        CHECK(v == Catch::Approx(std::pow(2.0, -1.5)));
        auto poisson = atom(n, 1.0, {0, 1}, {0, 0}, {-n, -1});
        for (double y : {0.5, 1.0, 2.0})
            CHECK(evaluate(ctx, poisson, Point{y, {0.0, 0.0}}) == Catch::Approx(std::pow(y, -n)));
        CHECK_THROWS_AS(evaluate(ctx, poisson, Point{0.0, {0.0, 0.0}}), EvaluationError);
        auto neg_y = atom(n, 1.0, {-1, 0}, {0, 0}, {0, 0});
        CHECK_THROWS_AS(evaluate(ctx, neg_y, Point{0.0, {1.0, 0.0}}), EvaluationError);
    }
}

TEST_CASE("homogeneity bookkeeping under derivative and flat operator") {
    const int n = 2;
    DoubleContext ctx(FracConfig{n, 0.37});
    for (const auto& u : random_atoms(n, 30, 99)) {
        auto d = u.homogeneity();
        auto du = differentiate(ctx, u, -1);
        if (!du.empty()) CHECK(du.homogeneity() == d - LatticeExponent{1, 0});
        auto dx = differentiate(ctx, u, 1);
        if (!dx.empty()) CHECK(dx.homogeneity() == d - LatticeExponent{1, 0});
        auto Du = apply_flat_D(ctx, u);
        if (!Du.empty()) CHECK(Du.homogeneity() == d - LatticeExponent{1, 1});
    }
}

TEST_CASE("Euler identity and scaling for homogeneous sums") {
    const int n = 2;
    DoubleContext ctx(FracConfig{n, 0.29});
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> lam(0.1, 10.0), pt(0.3, 1.7);
    for (const auto& u : random_atoms(n, 25, 555)) {
        const double d = u.homogeneity().value(ctx.cfg.two_gamma());
        // y d_y u + sum_i x_i d_i u = d * u, symbolically
        auto y1 = atom(n, 1.0, {1, 0}, {0, 0}, {0, 0});
        auto euler = y1 * differentiate(ctx, u, -1);
        for (int i = 0; i < n; ++i) {
            auto xi = atom(n, 1.0, {0, 0}, [&] { MultiIndex b(n, 0); b[i] = 1; return b; }(), {0, 0});
            euler += xi * differentiate(ctx, u, i);
        }
        auto resid = euler - u.scaled(d);
        CHECK(resid.pruned(1e-12 * std::max(1.0, u.max_abs_coeff() * std::abs(d))).empty());

        Point p{pt(rng), {pt(rng), pt(rng)}};
        const double l = lam(rng);
        Point lp{l * p.y, {l * p.x[0], l * p.x[1]}};
        const double lhs = evaluate(ctx, u, lp);
        const double rhs = std::pow(l, d) * evaluate(ctx, u, p);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("JSON round trip is lossless in exponents and bit identical in coefficients") {
    const int n = 3;
    auto u = atom(n, 0.1 + 1.0 / 3.0, {2, 1}, {1, 0, 2}, {-5, -1}) +
             atom(n, -7.25e-3, {0, 0}, {0, 1, 0}, {3, 1}) + atom(n, 1e-120, {1, 0}, {0, 0, 0}, {0, 0});
    json j = to_json(u);
    auto back = atom_sum_from_json(json::parse(j.dump()), n);
    REQUIRE(back.size() == u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(key_equal(back.atoms()[i], u.atoms()[i]));
        CHECK(back.atoms()[i].coeff == u.atoms()[i].coeff);  // bit identical
    }
    CHECK_THROWS_AS(atom_sum_from_json(json::parse("[{\"coeff\":1}]"), n), ConfigError);
}
