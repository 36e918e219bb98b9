#pragma once

// Sign dominance of the exponential sum S(x) = sum_{k<n} w_k^l e^{x w_k},
// w_k = e^{(2k-1) pi i / n}, at the abscissae where the k = 0 and k = 1
// terms coincide and are real.

#include <complex>
#include <vector>

namespace hypgen
{

/// Default cap on n for sweeps; beyond it the terms span magnitudes that
/// double precision cannot resolve in sign.
inline constexpr int kExpSignMaxN = 64;

/// l reduced into [0, n).
int normalize_ell(int n, int ell);

/// x = pi (b - l/n) / sin(pi/n). Requires n >= 2 and b >= 1.
double admissible_x(int n, int ell, int b);

std::complex<double> exp_poly_sum(int n, int ell, double x);

/// w_0^l e^{x w_0} at the admissible x: (-1)^b e^{pi (b - l/n) cot(pi/n)}.
double first_term_value(int n, int ell, int b);

struct ExpSignCase
{
    int n = 0;
    int ell = 0;
    int b = 0;
    double x = 0.0;
    std::complex<double> sum_value;
    double first_term = 0.0;
    double realness_defect = 0.0; ///< |Im sum| / (1 + |sum|)
    bool sign_match = false;
};

ExpSignCase check_sign_dominance(int n, int ell, int b);

/// One case per b in [1, b_max].
std::vector<ExpSignCase> sign_dominance_sweep(int n, int ell, int b_max, int n_cap = kExpSignMaxN);

} // namespace hypgen
