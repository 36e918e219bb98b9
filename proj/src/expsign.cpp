#include "hypgen/expsign.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hypgen/errors.hpp"

namespace hypgen
{

using std::numbers::pi;

namespace
{

void require_admissible(int n, int b)
{
    if (n < 2)
        throw DomainError("n must be >= 2 (sin(pi/n) vanishes at n = 1), got " + std::to_string(n));
    if (b < 1)
        throw DomainError("b must be a positive integer, got " + std::to_string(b));
}

} // namespace

int normalize_ell(int n, int ell)
{
    if (n < 1)
        throw DomainError("n must be >= 1");
    const int m = ell % n;
    return m < 0 ? m + n : m;
}

double admissible_x(int n, int ell, int b)
{
    require_admissible(n, b);
    const int l = normalize_ell(n, ell);
    const double x = pi * (b - static_cast<double>(l) / n) / std::sin(pi / n);
    if (x < 0)
        throw DomainError("admissible x is negative");
    return x;
}

std::complex<double> exp_poly_sum(int n, int ell, double x)
{
    if (n < 1)
        throw DomainError("n must be >= 1");
    std::complex<double> s{};
    for (int k = 0; k < n; ++k)
    {
        const double phi = (2.0 * k - 1.0) * pi / n;
        // w_k^l e^{x w_k} = e^{x cos phi} e^{i (l phi + x sin phi)}
        s += std::polar(std::exp(x * std::cos(phi)), ell * phi + x * std::sin(phi));
    }
    return s;
}

double first_term_value(int n, int ell, int b)
{
    require_admissible(n, b);
    const int l = normalize_ell(n, ell);
    const double mag = std::exp(pi * (b - static_cast<double>(l) / n) / std::tan(pi / n));
    return (b % 2 == 0 ? 1.0 : -1.0) * mag;
}

ExpSignCase check_sign_dominance(int n, int ell, int b)
{
    ExpSignCase c;
    c.n = n;
    c.ell = normalize_ell(n, ell);
    c.b = b;
    c.x = admissible_x(n, c.ell, b);
    c.sum_value = exp_poly_sum(n, c.ell, c.x);
    c.first_term = first_term_value(n, c.ell, b);
    c.realness_defect = std::abs(c.sum_value.imag()) / (1.0 + std::abs(c.sum_value));
    c.sign_match = c.sum_value.real() != 0 && std::signbit(c.sum_value.real()) == std::signbit(c.first_term);
    return c;
}

std::vector<ExpSignCase> sign_dominance_sweep(int n, int ell, int b_max, int n_cap)
{
    if (n > n_cap)
        throw DomainError("n = " + std::to_string(n) + " exceeds the sweep cap " + std::to_string(n_cap));
    std::vector<ExpSignCase> out;
    for (int b = 1; b <= b_max; ++b)
        out.push_back(check_sign_dominance(n, ell, b));
    return out;
}

} // namespace hypgen
