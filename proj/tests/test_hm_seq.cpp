#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "hypgen/errors.hpp"
#include "hypgen/hm_seq.hpp"
#include "hypgen/rfunc.hpp"

using namespace hypgen;

namespace
{

// t^m coefficient of 1/P(t) by exact long division of 1 by P.
std::vector<mpq_class> inverse_series(const ExactPoly& P, int m_max)
{
    std::vector<mpq_class> out(m_max + 1), rem(m_max + 1 + P.coeffs.size(), 0);
    rem[0] = 1;
    for (int m = 0; m <= m_max; ++m)
    {
        out[m] = rem[m] / P.coeffs[0];
        for (std::size_t i = 0; i < P.coeffs.size(); ++i)
            rem[m + i] -= out[m] * P.coeffs[i];
    }
    return out;
}

// Same coefficient from partial fractions: -sum 1/(P'(tau) tau^(m+1)) over simple zeros.
double partial_fraction_coeff(const GeneratorSpec& spec, int m)
{
    const auto dP = derivative(expand(spec.P));
    double s = 0;
    for (double tau : spec.P.zeros())
        s -= 1.0 / (eval_at(dP, tau) * std::pow(tau, m + 1));
    return s;
}

std::vector<cplx> random_poly(std::mt19937_64& rng, int degree)
{
    std::normal_distribution<double> n(0, 1);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c)
        x = cplx(n(rng), n(rng));
    return c;
}

double match_distance(std::vector<cplx> a, std::vector<cplx> b)
{
    double worst = 0;
    for (const cplx& x : a)
    {
        auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x) / std::max(1.0, std::abs(x)));
        b.erase(it);
    }
    return worst;
}

} // namespace

TEST_CASE("first terms of the sequence")
{
    const auto spec = fixtures::example();
    const auto seq = generate_hm(spec, 10);
    CHECK(seq.backend == Backend::exact);
    CHECK(seq.exact_polys[0].coeffs == std::vector<mpq_class>{mpq_class(-1, 16)});
    CHECK(seq.exact_polys[1].coeffs == std::vector<mpq_class>{mpq_class(-5, 64)});
    CHECK(seq.polys[0].coeffs.size() == 1);

    const auto series = inverse_series(expand_exact(spec.P), 10);
    for (int m = 0; m < 3; ++m)
    {
        REQUIRE(seq.exact_polys[m].degree() == 0);
        CHECK(seq.exact_polys[m].coeffs[0] == series[m]);
    }
    for (int m = 0; m <= 10; ++m)
        CHECK(seq.exact_polys[m].coeffs[0] == series[m]);
    CHECK(hm_eval(seq, 5, cplx(0)).real() == doctest::Approx(partial_fraction_coeff(spec, 5)).epsilon(1e-12));
    CHECK(hm_eval(seq, 0, cplx(3, 4)) == cplx(-1.0 / 16));
}

TEST_CASE("degree law and backend agreement")
{
    const auto spec = fixtures::example();
    const auto exact = generate_hm(spec, 60, Backend::exact);
    const auto flt = generate_hm(spec, 60, Backend::floating);
    CHECK(flt.exact_polys.empty());
    for (int m = 0; m <= 60; ++m)
    {
        CHECK(exact.polys[m].degree() <= m / 3);
        CHECK(exact.polys[m].degree() == m / 3);
        CHECK(flt.polys[m].degree() == m / 3);
        for (double z : {-2.0, -0.3, 0.5})
        {
            const cplx a = hm_eval(exact, m, z), b = hm_eval(flt, m, z);
            CHECK(std::abs(a - b) <= 1e-9 * (1 + std::abs(a)));
        }
    }
    CHECK_THROWS_AS(hm_eval(exact, 61, cplx(0)), IndexError);
    CHECK_THROWS_AS(hm_eval(exact, -1, cplx(0)), IndexError);

    const auto float_spec = make_spec(make_zero_set(std::vector<double>{0.5, 1.5}), make_zero_set(std::vector<double>{-1.25}), 2);
    CHECK(default_backend(float_spec) == Backend::floating);
    CHECK_THROWS_AS(generate_hm(float_spec, 5, Backend::exact), DomainError);
    CHECK(std::string(to_string(Backend::floating)) == "float");
}

TEST_CASE("degree never exceeds floor(m/r) on random specs")
{
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> u(-5, 5), rr(2, 4);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<long> p, q;
        for (int i = 0; i < 4; ++i)
        {
            int v = u(rng);
            p.push_back(v ? v : 2);
        }
        for (int i = 0; i < 2; ++i)
        {
            int v = u(rng);
            q.push_back(v ? v : -3);
        }
        const int r = rr(rng);
        const auto seq = generate_hm(fixtures::exact_spec(p, q, r), 30);
        for (int m = 0; m <= 30; ++m)
            CHECK(seq.exact_polys[m].degree() <= m / r);
    }
}

TEST_CASE("back-multiplication by D(t, z) is exact")
{
    const auto spec = fixtures::example();
    const auto seq = generate_hm(spec, 30);
    for (const mpq_class z : {mpq_class(-3, 7), mpq_class(5, 2), mpq_class(0)})
    {
        const auto d = d_coeffs_exact(spec, z);
        std::vector<mpq_class> h(31);
        for (int m = 0; m <= 30; ++m)
        {
            mpq_class v = 0, zp = 1;
            for (const auto& c : seq.exact_polys[m].coeffs)
            {
                v += c * zp;
                zp *= z;
            }
            h[m] = v;
        }
        for (int k = 0; k <= 30; ++k)
        {
            mpq_class s = 0;
            for (int i = 0; i <= k && i < static_cast<int>(d.coeffs.size()); ++i)
                s += d.coeffs[i] * h[k - i];
            CHECK(s == (k == 0 ? 1 : 0));
        }
    }
}

TEST_CASE("D coefficients")
{
    const auto spec = fixtures::example();
    const auto d = d_coeffs(spec, cplx(2));
    // P = [-16, 20, 0, -5, 1], t^3 Q = [0, 0, 0, 15, 7, -7, 1]
    const std::vector<double> want{-16, 20, 0, 25, 15, -14, 2};
    REQUIRE(d.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(d[i] == cplx(want[i]));
    const auto e = d_coeffs_exact(spec, 2);
    CHECK(e.coeffs[3] == 25);
}

TEST_CASE("poly_roots")
{
    auto roots = poly_roots(DensePoly{{-16, 20, 0, -5, 1}});
    CHECK(match_distance(roots, {-2, 1, 2, 4}) <= 1e-8);
    CHECK(match_distance(poly_roots(DensePoly{{1, 0, 1}}), {cplx(0, 1), cplx(0, -1)}) <= 1e-12);
    CHECK_THROWS_AS(poly_roots(DensePoly{{3}}), DomainError);

    // clustered and widely scaled roots
    std::vector<cplx> wide{1e-3, 2e-3, 10, 1000, cplx(-5, 5), cplx(-5, -5)};
    std::vector<cplx> c{1};
    for (cplx z : wide)
    {
        std::vector<cplx> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            next[i + 1] += c[i];
            next[i] -= z * c[i];
        }
        c = next;
    }
    CHECK(match_distance(poly_roots(std::span<const cplx>(c)), wide) <= 1e-8);
}

TEST_CASE("Aberth and companion roots agree")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial)
    {
        const auto c = random_poly(rng, 2 + trial % 25);
        const auto a = poly_roots(std::span<const cplx>(c));
        const auto b = companion_roots(std::span<const cplx>(c));
        REQUIRE(a.size() == b.size());
        CHECK(match_distance(a, b) <= 1e-6);
    }
    const auto seq = generate_hm(fixtures::example(), 60);
    for (int m : {20, 40, 60})
    {
        std::vector<cplx> c(seq.polys[m].coeffs.begin(), seq.polys[m].coeffs.end());
        CHECK(match_distance(poly_roots(seq.polys[m]), companion_roots(std::span<const cplx>(c))) <= 1e-6);
    }
}

TEST_CASE("residue sum agrees with the recurrence")
{
    const auto spec = fixtures::example();
    const auto seq = generate_hm(spec, 20);
    CHECK(std::abs(residue_sum(spec, cplx(0.7, 0.2), 0) - cplx(-1.0 / 16)) <= 1e-9);
    const cplx h7 = hm_eval(seq, 7, -1.0);
    CHECK(std::abs(residue_sum(spec, cplx(-1), 7) - h7) <= 1e-8 * std::abs(h7));

    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 30; ++i)
    {
        const cplx z(u(rng), u(rng));
        const int m = i % 21;
        const cplx h = hm_eval(seq, m, z);
        CHECK(std::abs(residue_sum(spec, z, m) - h) <= 1e-8 * (1 + std::abs(h)));
    }
    CHECK_THROWS_AS(residue_sum(spec, cplx(1), -1), DomainError);
}

TEST_CASE("classification on the example")
{
    const auto spec = fixtures::example();
    const auto rep = hypothesis_report(spec);
    const auto seq = generate_hm(spec, 60);
    ClassifyConfig cfg{*rep.a, rep.sign_exponent};
    const auto r30 = classify_roots(seq, 30, cfg);
    CHECK(r30.all_real);
    CHECK(r30.sign_ok);
    CHECK(r30.interval_ok);
    CHECK(r30.degree_observed == 10);
    CHECK(r30.roots.size() == 10);
    for (const cplx& z : r30.roots)
    {
        CHECK(z.real() < *rep.a);
        // each root sits on the range of z(theta), which covers (-inf, a)
        CHECK(z.real() <= *rep.a + 1e-6);
    }
    for (std::size_t i = 1; i < r30.roots.size(); ++i)
        CHECK(r30.roots[i - 1].real() <= r30.roots[i].real());

    const auto r2 = classify_roots(seq, 2, cfg);
    CHECK(r2.degree_observed == 0);
    CHECK(r2.roots.empty());
    CHECK(r2.all_real);
    CHECK(r2.sign_ok);
    CHECK(r2.interval_ok);

    const auto onset = all_real_onset(seq, cfg, 1, 60);
    REQUIRE(onset);
    CHECK(*onset <= 20);
}

TEST_CASE("interlacing zeros give a non-real root")
{
    const auto spec = fixtures::interlacing();
    const auto seq = generate_hm(spec, 16);
    ClassifyConfig cfg{0.0, spec.sign_exponent()};
    const auto r16 = classify_roots(seq, 16, cfg);
    CHECK_FALSE(r16.all_real);
    CHECK(r16.max_abs_im > 0.1);
    CHECK(r16.degree_observed == 5);

    // the root -0.58844 + 0.106817i is carried by the t^15 coefficient
    const auto r15 = classify_roots(seq, 15, cfg);
    double best = 1e300;
    for (const cplx& z : r15.roots)
        best = std::min(best, std::abs(z - cplx(-0.58844, 0.106817)));
    CHECK(best <= 1e-4);
}
