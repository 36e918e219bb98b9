#include "hypgen/poly_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypgen/errors.hpp"

namespace hypgen
{

namespace
{

void validate_reals(const std::vector<double>& zeros)
{
    if (zeros.empty())
        throw EmptyInput("zero list is empty");
    for (double z : zeros)
    {
        if (!std::isfinite(z))
            throw InvalidInput("zero list contains a non-finite entry");
        if (z == 0.0)
            throw ZeroAtOrigin("zero list contains 0; the polynomial must not vanish at the origin");
    }
}

} // namespace

IndexedZeroSet IndexedZeroSet::from_reals(std::vector<double> zeros)
{
    validate_reals(zeros);
    IndexedZeroSet zs;
    zs.zeros_ = std::move(zeros);
    zs.index();
    return zs;
}

IndexedZeroSet IndexedZeroSet::from_rationals(std::vector<mpq_class> zeros)
{
    if (zeros.empty())
        throw EmptyInput("zero list is empty");
    for (auto& q : zeros)
    {
        q.canonicalize();
        if (q == 0)
            throw ZeroAtOrigin("zero list contains 0; the polynomial must not vanish at the origin");
    }
    std::sort(zeros.begin(), zeros.end());

    IndexedZeroSet zs;
    zs.zeros_.reserve(zeros.size());
    for (const auto& q : zeros)
        zs.zeros_.push_back(q.get_d());
    zs.exact_ = std::move(zeros);
    zs.index();
    return zs;
}

void IndexedZeroSet::index()
{
    std::sort(zeros_.begin(), zeros_.end());
    neg_count_ = static_cast<int>(std::count_if(zeros_.begin(), zeros_.end(), [](double z) { return z < 0; }));
    pos_count_ = static_cast<int>(zeros_.size()) - neg_count_;
}

double IndexedZeroSet::zero_at(int k) const
{
    if (k <= -neg_count_ || k > pos_count_)
        throw IndexError("zero index " + std::to_string(k) + " outside (" + std::to_string(-neg_count_) + ", " +
                         std::to_string(pos_count_) + "]");
    return zeros_[static_cast<std::size_t>(k - 1 + neg_count_)];
}

std::span<const double> IndexedZeroSet::positive_zeros() const
{
    return std::span<const double>(zeros_).subspan(static_cast<std::size_t>(neg_count_));
}

std::span<const double> IndexedZeroSet::negative_zeros() const
{
    return std::span<const double>(zeros_).first(static_cast<std::size_t>(neg_count_));
}

IndexedZeroSet make_zero_set(std::vector<double> zeros)
{
    return IndexedZeroSet::from_reals(std::move(zeros));
}

IndexedZeroSet make_zero_set(std::vector<mpq_class> zeros)
{
    return IndexedZeroSet::from_rationals(std::move(zeros));
}

DensePoly trim(DensePoly p, double eps)
{
    double scale = 0.0;
    for (double c : p.coeffs)
        scale = std::max(scale, std::abs(c));
    while (p.coeffs.size() > 1 && std::abs(p.coeffs.back()) <= eps * scale)
        p.coeffs.pop_back();
    if (p.coeffs.empty())
        p.coeffs.push_back(0.0);
    return p;
}

ExactPoly trim(ExactPoly p)
{
    while (p.coeffs.size() > 1 && p.coeffs.back() == 0)
        p.coeffs.pop_back();
    if (p.coeffs.empty())
        p.coeffs.emplace_back(0);
    return p;
}

DensePoly to_dense(const ExactPoly& p)
{
    DensePoly d;
    d.coeffs.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs)
        d.coeffs.push_back(c.get_d());
    return d;
}

DensePoly expand(const IndexedZeroSet& zs)
{
    // Multiply (t - z) factors into c, lowest power first.
    std::vector<double> c{1.0};
    for (double z : zs.zeros())
    {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i)
            c[i] = c[i - 1] - z * c[i];
        c[0] = -z * c[0];
    }
    return DensePoly{std::move(c)};
}

ExactPoly expand_exact(const IndexedZeroSet& zs)
{
    if (!zs.is_exact())
        throw DomainError("zero set has no exact representation");
    std::vector<mpq_class> c{mpq_class(1)};
    for (const auto& z : *zs.exact_zeros())
    {
        c.emplace_back(0);
        for (std::size_t i = c.size() - 1; i > 0; --i)
            c[i] = c[i - 1] - z * c[i];
        c[0] = -z * c[0];
    }
    return ExactPoly{std::move(c)};
}

DensePoly derivative(const DensePoly& p)
{
    if (p.coeffs.size() <= 1)
        return DensePoly{{0.0}};
    std::vector<double> d(p.coeffs.size() - 1);
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
        d[i - 1] = static_cast<double>(i) * p.coeffs[i];
    return DensePoly{std::move(d)};
}

cplx eval_at(const IndexedZeroSet& zs, cplx t)
{
    cplx v{1.0, 0.0};
    for (double z : zs.zeros())
        v *= t - z;
    return v;
}

cplx eval_at(const DensePoly& p, cplx t)
{
    cplx v{0.0, 0.0};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        v = v * t + *it;
    return v;
}

double eval_at(const DensePoly& p, double t)
{
    double v = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        v = v * t + *it;
    return v;
}

int count_pos(const IndexedZeroSet& zs, double x)
{
    if (!(x > 0))
        throw DomainError("count_pos requires x > 0");
    auto pos = zs.positive_zeros();
    return static_cast<int>(std::upper_bound(pos.begin(), pos.end(), x) - pos.begin());
}

int count_neg(const IndexedZeroSet& zs, double x)
{
    if (!(x < 0))
        throw DomainError("count_neg requires x < 0");
    auto neg = zs.negative_zeros();
    return static_cast<int>(neg.end() - std::lower_bound(neg.begin(), neg.end(), x));
}

GeneratorSpec make_spec(IndexedZeroSet P, IndexedZeroSet Q, int r)
{
    if (r < 2)
        throw DomainError("r must be at least 2, got " + std::to_string(r));
    return GeneratorSpec{std::move(P), std::move(Q), r};
}

} // namespace hypgen
