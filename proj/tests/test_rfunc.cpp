#include <doctest.h>

#include <cstdlib>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "hypgen/errors.hpp"
#include "hypgen/rfunc.hpp"

using namespace hypgen;
using std::numbers::pi;

namespace
{

// R = r - t P'/P + t Q'/Q from the dense expansions.
cplx dense_r(const GeneratorSpec& spec, cplx t)
{
    const auto P = expand(spec.P), Q = expand(spec.Q);
    return double(spec.r) - t * eval_at(derivative(P), t) / eval_at(P, t) + t * eval_at(derivative(Q), t) / eval_at(Q, t);
}

// Numerator of R over P Q: r P Q - t P' Q + t P Q', evaluated densely on the real line.
double dense_r_numerator(const GeneratorSpec& spec, double t)
{
    const auto P = expand(spec.P), Q = expand(spec.Q);
    return spec.r * eval_at(P, t) * eval_at(Q, t) - t * eval_at(derivative(P), t) * eval_at(Q, t) +
           t * eval_at(P, t) * eval_at(derivative(Q), t);
}

// Fine-grid sign scan then bisection on the dense numerator.
double scan_sign_change(const GeneratorSpec& spec, double lo, double hi, int cells)
{
    double prev_x = lo + (hi - lo) / cells;
    double prev = dense_r_numerator(spec, prev_x);
    for (int i = 2; i < cells; ++i)
    {
        const double x = lo + i * (hi - lo) / cells;
        const double v = dense_r_numerator(spec, x);
        if ((prev < 0) != (v < 0))
        {
            double a = prev_x, b = x;
            for (int k = 0; k < 200 && b - a > 1e-15; ++k)
            {
                const double m = 0.5 * (a + b);
                ((dense_r_numerator(spec, m) < 0) == (prev < 0) ? a : b) = m;
            }
            return 0.5 * (a + b);
        }
        prev_x = x;
        prev = v;
    }
    return -1;
}

} // namespace

TEST_CASE("R at the origin and at poles")
{
    const auto spec = fixtures::example();
    CHECK(r_func(spec, cplx(0)) == cplx(3));
    CHECK_THROWS_AS(r_func(spec, cplx(1)), PoleError);
    CHECK_THROWS_AS(r_func(spec, cplx(3)), PoleError);
    const cplx half = r_func(spec, cplx(0.5));
    CHECK(std::abs(half - dense_r(spec, 0.5)) <= 1e-12 * (1 + std::abs(half)));
}

TEST_CASE("partial fractions match the logarithmic-derivative form")
{
    const auto spec = fixtures::example();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-6, 6);
    for (int i = 0; i < 200; ++i)
    {
        const cplx t(u(rng), u(rng));
        const cplx want = dense_r(spec, t);
        CHECK(std::abs(r_func(spec, t) - want) <= 1e-9 * (1 + std::abs(want)));
    }
}

TEST_CASE("Im R = w Im t in the upper half plane")
{
    for (const auto& spec : {fixtures::example(), fixtures::interlacing(), fixtures::positive_z()})
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> re(-6, 6), im(1e-3, 4);
        for (int i = 0; i < 200; ++i)
        {
            const cplx t(re(rng), im(rng));
            const cplx R = r_func(spec, t);
            CHECK(std::abs(R.imag() - im_r_weight(spec, t) * t.imag()) <= 1e-10 * (1 + std::abs(R)));
        }
    }
}

TEST_CASE("weight is positive when P zeros are positive and Q zeros negative")
{
    const auto spec = fixtures::positive_negative();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 500; ++i)
        CHECK(im_r_weight(spec, cplx(u(rng), u(rng))) > 0);
}

TEST_CASE("on the real axis the weight is R' by finite differences")
{
    const auto spec = fixtures::example();
    for (double t : {0.1, 0.4, 0.8, 1.2, 1.5, 1.9})
    {
        const double h = 1e-6;
        const double fd = (r_func(spec, cplx(t + h)).real() - r_func(spec, cplx(t - h)).real()) / (2 * h);
        CHECK(im_r_weight(spec, cplx(t)) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(r_func_derivative(spec, cplx(t)).real() == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("P R stays finite at zeros of P")
{
    const auto spec = fixtures::example();
    const auto P = expand(spec.P);
    const auto dP = derivative(P);
    for (double tau : spec.P.zeros())
    {
        // P R = r P - t P' + t P Q'/Q, which is -tau P'(tau) at a simple zero
        const cplx v = p_times_r(spec, cplx(tau));
        CHECK(v.real() == doctest::Approx(-tau * eval_at(dP, tau)));
        CHECK(v.imag() == 0.0);
    }
    const cplx t(0.3, 0.7);
    CHECK(std::abs(p_times_r(spec, t) - eval_at(P, t) * dense_r(spec, t)) <= 1e-10 * std::abs(p_times_r(spec, t)));
}

TEST_CASE("z map")
{
    const auto spec = fixtures::example();
    const auto P = expand(spec.P), Q = expand(spec.Q);
    const cplx t(0.6, 0.9);
    const cplx want = -eval_at(P, t) / (std::pow(t, 3) * eval_at(Q, t));
    CHECK(std::abs(z_map(spec, t) - want) <= 1e-12 * std::abs(want));
}

TEST_CASE("condition (1) and (2) follow the zero counts")
{
    // Count oracle straight from the counting functions: the example has
    // n+P(3) - n+Q(3) = 2 - 1, so the literal condition (1) fails at x = 3.
    const auto ex = fixtures::example();
    CHECK(count_pos(ex.P, 3) - count_pos(ex.Q, 3) == 1);
    const auto c1 = check_condition1(ex);
    CHECK_FALSE(c1.holds);
    REQUIRE(c1.violation);
    CHECK(*c1.violation == 3.0);
    CHECK(check_condition2(ex).holds);
    CHECK(check_zero_free_window(ex).holds);

    const auto il = check_condition1(fixtures::interlacing());
    CHECK_FALSE(il.holds);
    REQUIRE(il.violation);
    CHECK(*il.violation == 2.0);
    CHECK_FALSE(check_zero_free_window(fixtures::interlacing()).holds);

    CHECK(check_condition1(fixtures::positive_z()).holds);
    CHECK(check_condition2(fixtures::positive_z()).holds);

    // more P zeros than Q zeros in [x, 0) breaks condition (2)
    const auto bad2 = fixtures::exact_spec({-1, -2, 1, 2, 4}, {-3}, 3);
    const auto c2 = check_condition2(bad2);
    CHECK_FALSE(c2.holds);
    REQUIRE(c2.violation);
    CHECK(*c2.violation == -1.0);
}

TEST_CASE("condition checks agree with a dense count scan on random specs")
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> u(-6, 6);
    for (int trial = 0; trial < 60; ++trial)
    {
        auto draw = [&](int n) {
            std::vector<long> v;
            for (int i = 0; i < n; ++i)
            {
                int x = u(rng);
                v.push_back(x == 0 ? 1 : x);
            }
            return v;
        };
        const auto spec = fixtures::exact_spec(draw(5), draw(3), 2);
        if (spec.P.pos_count() < 2)
            continue;
        const double tau2 = spec.P.positive_zeros()[1];
        bool ok1 = true, ok2 = true;
        for (double x = 0.125; x < 8; x += 0.125)
        {
            if (x <= tau2 && count_pos(spec.Q, x) != 0)
                ok1 = false;
            if (x >= tau2 && count_pos(spec.P, x) - count_pos(spec.Q, x) < 2)
                ok1 = false;
        }
        for (double x = -0.125; x > -8; x -= 0.125)
            if (count_neg(spec.Q, x) - count_neg(spec.P, x) < 0)
                ok2 = false;
        CHECK(check_condition1(spec).holds == ok1);
        CHECK(check_condition2(spec).holds == ok2);
    }
}

TEST_CASE("tau1 and tau2")
{
    const auto [t1, t2] = tau1_tau2(fixtures::example());
    CHECK(t1 == 1.0);
    CHECK(t2 == 2.0);
    CHECK_THROWS_AS(tau1_tau2(fixtures::exact_spec({-1, 1}, {-2}, 2)), HypothesisError);
}

TEST_CASE("sector and semi-disk sampling")
{
    const auto ex = fixtures::example();
    const double t_a = find_t_a(ex);
    const auto sec = check_sector(ex, 2.0);
    const auto semi = check_semidisk(ex, t_a);
    CHECK(sec.holds);
    CHECK(semi.holds);
    CHECK(sec.min_margin > 0);
    CHECK(sec.condition_id == RegionKind::sector);
    CHECK(semi.condition_id == RegionKind::semidisk);
    CHECK(sec.top_angle == doctest::Approx(pi / 3));
    CHECK(semi.top_angle == doctest::Approx(pi));
    CHECK(std::abs(sec.argmin_point) < 2.0);
    CHECK(std::arg(sec.argmin_point) < pi / 3);
    CHECK(sec.grid_size >= 256 * 256);

    const auto fig = fixtures::positive_z();
    CHECK(check_sector(fig, 2.0).holds);
    CHECK(check_semidisk(fig, find_t_a(fig)).holds);

    const auto pn = fixtures::positive_negative();
    for (int n : {4, 17, 64, 200})
    {
        GridParams g;
        g.radii = n;
        g.angles = n + 3;
        CHECK(check_sector(pn, 2.0, g).min_margin > 0);
        CHECK(check_semidisk(pn, 1.5, g).min_margin > 0);
    }

    // interlacing P and Q: the Q zero at 2 inside the sector radius 3 spoils the sign
    const auto il = check_sector(fixtures::interlacing(), 3.0);
    CHECK_FALSE(il.holds);
    CHECK(il.min_margin < 0);
}

TEST_CASE("region minimum is the minimum over the samples")
{
    const auto ex = fixtures::example();
    GridParams g;
    g.radii = 40;
    g.angles = 30;
    g.refine_depth = 0;
    const auto samples = sample_region(ex, 2.0, pi / 3, g);
    CHECK(samples.size() == 40u * 30u);
    double lo = samples.front().weight;
    for (const auto& s : samples)
    {
        lo = std::min(lo, s.weight);
        CHECK(std::abs(s.t) <= 2.0);
        CHECK(std::arg(s.t) > 0);
        CHECK(std::arg(s.t) < pi / 3);
    }
    CHECK(check_sector(ex, 2.0, g).min_margin == lo);
}

TEST_CASE("t_a")
{
    const double ex = find_t_a(fixtures::example());
    CHECK(ex == doctest::Approx(1.3).epsilon(0.05 / 1.3));
    CHECK(ex == doctest::Approx(scan_sign_change(fixtures::example(), 1.0, 2.0, 100000)).epsilon(1e-10));

    const double fig = find_t_a(fixtures::positive_z());
    CHECK(fig > 1.0);
    CHECK(fig < 2.0);
    CHECK(fig == doctest::Approx(scan_sign_change(fixtures::positive_z(), 1.0, 2.0, 100000)).epsilon(1e-10));

    CHECK(find_t_a(fixtures::exact_spec({-1, 1, 1, 4}, {-3}, 3)) == 1.0);
    CHECK_THROWS_AS(find_t_a(fixtures::interlacing()), BracketError);
}

TEST_CASE("hypothesis report")
{
    const auto ex = hypothesis_report(fixtures::example());
    REQUIRE(ex.t_a);
    REQUIRE(ex.a);
    CHECK(*ex.a == doctest::Approx(-0.0589).epsilon(0.01));
    CHECK(ex.sign_exponent == -1);
    CHECK(ex.cond2.holds);
    CHECK(ex.cond3->holds);
    CHECK(ex.cond4->holds);
    CHECK_FALSE(ex.cond1.holds);
    CHECK_FALSE(ex.all_hold());
    CHECK_NOTHROW(require_curve_hypotheses(ex, true));

    for (const auto& spec : {fixtures::positive_z(), fixtures::positive_negative()})
    {
        const auto rep = hypothesis_report(spec);
        CHECK(rep.all_hold());
        REQUIRE(rep.t_a);
        CHECK(*rep.tau1 <= *rep.t_a);
        CHECK(*rep.t_a <= *rep.tau2);
        CHECK(*rep.a == doctest::Approx(endpoint_a(spec, *rep.t_a)));
        const cplx t = *rep.t_a;
        CHECK(*rep.a == doctest::Approx((-eval_at(spec.P, t) / (std::pow(t, spec.r) * eval_at(spec.Q, t))).real()));
    }

    const auto il = hypothesis_report(fixtures::interlacing());
    CHECK_FALSE(il.cond1.holds);
    CHECK_FALSE(il.t_a);
    CHECK_FALSE(il.cond4);
    CHECK_FALSE(il.all_hold());
    CHECK_THROWS_AS(require_curve_hypotheses(il, false), HypothesisError);
}

TEST_CASE("region check does not depend on the thread count")
{
    const auto ex = fixtures::example();
    GridParams g;
    g.radii = 90;
    g.angles = 70;
    setenv("HYPGEN_THREADS", "1", 1);
    const auto one = check_sector(ex, 2.0, g);
    setenv("HYPGEN_THREADS", "7", 1);
    const auto seven = check_sector(ex, 2.0, g);
    unsetenv("HYPGEN_THREADS");
    CHECK(one.min_margin == seven.min_margin);
    CHECK(one.argmin_point == seven.argmin_point);
    CHECK(one.grid_size == seven.grid_size);
}
