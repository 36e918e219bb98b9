#pragma once

// Real polynomials stored by their zeros or by dense coefficients, and the
// signed zero-counting functions used by the hypothesis checks.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace hypgen
{

using cplx = std::complex<double>;

/// Relative threshold below which a trailing float coefficient is dropped.
inline constexpr double kDegreeEps = 1e-12;

/// A hyperbolic polynomial given by its real zeros, repeated per multiplicity.
///
/// Zeros are sorted ascending. The index convention runs over
/// -neg_count() < k <= pos_count(): zero_at(0) is the largest negative zero
/// and zero_at(1) the smallest positive one. When the zeros were supplied as
/// rationals the exact values are kept alongside the doubles.
class IndexedZeroSet
{
public:
    static IndexedZeroSet from_reals(std::vector<double> zeros);
    static IndexedZeroSet from_rationals(std::vector<mpq_class> zeros);

    std::span<const double> zeros() const { return zeros_; }
    const std::optional<std::vector<mpq_class>>& exact_zeros() const { return exact_; }
    bool is_exact() const { return exact_.has_value(); }

    int pos_count() const { return pos_count_; }
    int neg_count() const { return neg_count_; }
    int total() const { return static_cast<int>(zeros_.size()); }

    /// Zero with signed index k (see above); throws IndexError outside the range.
    double zero_at(int k) const;

    /// Positive zeros only, ascending.
    std::span<const double> positive_zeros() const;
    /// Negative zeros only, ascending.
    std::span<const double> negative_zeros() const;

private:
    IndexedZeroSet() = default;
    void index();

    std::vector<double> zeros_;
    std::optional<std::vector<mpq_class>> exact_;
    int pos_count_ = 0;
    int neg_count_ = 0;
};

IndexedZeroSet make_zero_set(std::vector<double> zeros);
IndexedZeroSet make_zero_set(std::vector<mpq_class> zeros);

/// Dense real coefficients, index = power of the variable.
struct DensePoly
{
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0.0; }
};

/// Dense rational coefficients, index = power of the variable.
struct ExactPoly
{
    std::vector<mpq_class> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Drops trailing coefficients with |c| <= eps * max|c|. Keeps at least one entry.
DensePoly trim(DensePoly p, double eps = kDegreeEps);
/// Drops trailing exact zeros. Keeps at least one entry.
ExactPoly trim(ExactPoly p);

DensePoly to_dense(const ExactPoly& p);

/// Monic product of (t - zero).
DensePoly expand(const IndexedZeroSet& zs);
/// Exact monic product; throws DomainError when the set carries no rationals.
ExactPoly expand_exact(const IndexedZeroSet& zs);

DensePoly derivative(const DensePoly& p);

cplx eval_at(const IndexedZeroSet& zs, cplx t);
cplx eval_at(const DensePoly& p, cplx t);
double eval_at(const DensePoly& p, double t);

/// Number of zeros in (0, x], with multiplicity. Requires x > 0.
int count_pos(const IndexedZeroSet& zs, double x);
/// Number of zeros in [x, 0), with multiplicity. Requires x < 0.
int count_neg(const IndexedZeroSet& zs, double x);

/// The triple (P, Q, r) defining 1 / (P(t) + z t^r Q(t)).
struct GeneratorSpec
{
    IndexedZeroSet P;
    IndexedZeroSet Q;
    int r;

    bool is_exact() const { return P.is_exact() && Q.is_exact(); }
    /// (-1)^(p+ - q+)
    int sign_exponent() const { return (P.pos_count() - Q.pos_count()) % 2 == 0 ? 1 : -1; }
};

/// Validates r >= 2.
GeneratorSpec make_spec(IndexedZeroSet P, IndexedZeroSet Q, int r);

} // namespace hypgen
