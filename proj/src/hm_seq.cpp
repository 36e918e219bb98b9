#include "hypgen/hm_seq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypgen/errors.hpp"
#include "hypgen/rfunc.hpp"

namespace hypgen
{

namespace
{

// Neumaier's compensated summation.
struct CompensatedSum
{
    double sum = 0.0;
    double carry = 0.0;

    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

template <class T>
T coeff_or_zero(const std::vector<T>& c, int i)
{
    return (i >= 0 && static_cast<std::size_t>(i) < c.size()) ? c[static_cast<std::size_t>(i)] : T(0);
}

int d_degree(const GeneratorSpec& spec)
{
    return std::max(spec.P.total(), spec.r + spec.Q.total());
}

} // namespace

const char* to_string(Backend b)
{
    return b == Backend::exact ? "exact" : "float";
}

Backend default_backend(const GeneratorSpec& spec)
{
    return spec.is_exact() ? Backend::exact : Backend::floating;
}

HmSequence generate_hm(const GeneratorSpec& spec, int m_max)
{
    return generate_hm(spec, m_max, default_backend(spec));
}

HmSequence generate_hm(const GeneratorSpec& spec, int m_max, Backend backend)
{
    if (m_max < 0)
        throw DomainError("m_max must be >= 0");

    HmSequence seq{spec, backend, {}, {}};
    const int deg = d_degree(spec);
    const int r = spec.r;

    if (backend == Backend::exact)
    {
        if (!spec.is_exact())
            throw DomainError("exact backend needs rational zeros for P and Q");
        const auto p = expand_exact(spec.P).coeffs;
        const auto q = expand_exact(spec.Q).coeffs;
        const mpq_class inv_p0 = 1 / p[0];

        auto& H = seq.exact_polys;
        H.reserve(static_cast<std::size_t>(m_max) + 1);
        H.push_back(ExactPoly{{inv_p0}});
        for (int m = 1; m <= m_max; ++m)
        {
            std::vector<mpq_class> acc(static_cast<std::size_t>(m / r) + 1, mpq_class(0));
            for (int i = 1; i <= std::min(m, deg); ++i)
            {
                const mpq_class pi = coeff_or_zero(p, i);
                const mpq_class qi = coeff_or_zero(q, i - r);
                const auto& h = H[static_cast<std::size_t>(m - i)].coeffs;
                for (std::size_t k = 0; k < h.size(); ++k)
                {
                    if (pi != 0)
                        acc[k] += pi * h[k];
                    if (qi != 0)
                        acc[k + 1] += qi * h[k];
                }
            }
            for (auto& v : acc)
                v = -v * inv_p0;
            H.push_back(trim(ExactPoly{std::move(acc)}));
        }
        seq.polys.reserve(H.size());
        for (const auto& h : H)
            seq.polys.push_back(to_dense(h));
        return seq;
    }

    const auto p = expand(spec.P).coeffs;
    const auto q = expand(spec.Q).coeffs;
    auto& H = seq.polys;
    H.reserve(static_cast<std::size_t>(m_max) + 1);
    H.push_back(DensePoly{{1.0 / p[0]}});
    for (int m = 1; m <= m_max; ++m)
    {
        std::vector<CompensatedSum> acc(static_cast<std::size_t>(m / r) + 1);
        for (int i = 1; i <= std::min(m, deg); ++i)
        {
            const double pi = coeff_or_zero(p, i);
            const double qi = coeff_or_zero(q, i - r);
            const auto& h = H[static_cast<std::size_t>(m - i)].coeffs;
            for (std::size_t k = 0; k < h.size(); ++k)
            {
                if (pi != 0.0)
                    acc[k].add(pi * h[k]);
                if (qi != 0.0)
                    acc[k + 1].add(qi * h[k]);
            }
        }
        DensePoly next;
        next.coeffs.reserve(acc.size());
        for (const auto& a : acc)
            next.coeffs.push_back(-a.value() / p[0]);
        H.push_back(trim(std::move(next)));
    }
    return seq;
}

cplx hm_eval(const HmSequence& seq, int m, cplx z)
{
    if (m < 0 || m > seq.m_max())
        throw IndexError("H_" + std::to_string(m) + " not generated (m_max = " + std::to_string(seq.m_max()) + ")");
    return eval_at(seq.polys[static_cast<std::size_t>(m)], z);
}

std::vector<cplx> d_coeffs(const GeneratorSpec& spec, cplx z)
{
    const auto p = expand(spec.P).coeffs;
    const auto q = expand(spec.Q).coeffs;
    const int deg = d_degree(spec);
    std::vector<cplx> d(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i)
        d[static_cast<std::size_t>(i)] = coeff_or_zero(p, i) + z * coeff_or_zero(q, i - spec.r);
    return d;
}

ExactPoly d_coeffs_exact(const GeneratorSpec& spec, const mpq_class& z)
{
    const auto p = expand_exact(spec.P).coeffs;
    const auto q = expand_exact(spec.Q).coeffs;
    const int deg = d_degree(spec);
    ExactPoly d;
    d.coeffs.resize(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i)
        d.coeffs[static_cast<std::size_t>(i)] = coeff_or_zero(p, i) + z * coeff_or_zero(q, i - spec.r);
    return d;
}

cplx residue_sum(const GeneratorSpec& spec, cplx z, int m)
{
    if (m < 0)
        throw DomainError("m must be >= 0");
    const auto c = d_coeffs(spec, z);
    const auto roots = poly_roots(std::span<const cplx>(c));

    double scale = 1.0;
    for (cplx t : roots)
        scale = std::max(scale, std::abs(t));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= 1e-6 * scale)
                throw MultipleRootError("D(t, z) has a (near) multiple root at t = " +
                                        std::to_string(roots[i].real()) + (roots[i].imag() < 0 ? "" : "+") +
                                        std::to_string(roots[i].imag()) + "i");

    cplx sum{};
    for (cplx t : roots)
        sum += 1.0 / (p_times_r(spec, t) * std::pow(t, m));
    return sum;
}

RootReport classify_roots(const HmSequence& seq, int m, const ClassifyConfig& cfg)
{
    if (m < 0 || m > seq.m_max())
        throw IndexError("H_" + std::to_string(m) + " not generated");
    RootReport rep;
    rep.m = m;
    const DensePoly& h = seq.polys[static_cast<std::size_t>(m)];
    rep.degree_observed = h.degree();
    if (h.degree() < 1)
        return rep;

    rep.roots = poly_roots(h);
    std::sort(rep.roots.begin(), rep.roots.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });

    double scale = 1.0;
    for (cplx x : rep.roots)
    {
        scale = std::max(scale, std::abs(x));
        rep.max_abs_im = std::max(rep.max_abs_im, std::abs(x.imag()));
    }
    const double im_tol = cfg.real_tol * scale;
    const double interval_tol = cfg.interval_tol.value_or(1e-6 * (1.0 + std::abs(cfg.a)));
    const double s = cfg.sign_exponent;
    rep.all_real = rep.max_abs_im <= im_tol;
    for (cplx x : rep.roots)
    {
        const bool real = std::abs(x.imag()) <= im_tol;
        rep.classified_real.push_back(real);
        if (!real)
            continue;
        if (!(s * x.real() > 0))
            rep.sign_ok = false;
        if (!(s * x.real() >= s * cfg.a - interval_tol))
            rep.interval_ok = false;
    }
    return rep;
}

std::optional<int> all_real_onset(const HmSequence& seq, const ClassifyConfig& cfg, int m_lo, int m_hi)
{
    std::optional<int> onset;
    for (int m = m_hi; m >= m_lo; --m)
    {
        if (!classify_roots(seq, m, cfg).all_real)
            break;
        onset = m;
    }
    return onset;
}

} // namespace hypgen
