#pragma once

// H_m(z) from sum H_m(z) t^m = 1 / D(t, z), D(t, z) = P(t) + z t^r Q(t),
// together with the root finder, the residue-sum representation of H_m,
// and the classification of its roots.

#include <optional>
#include <span>
#include <vector>

#include "hypgen/poly_core.hpp"

namespace hypgen
{

enum class Backend
{
    exact,
    floating
};

const char* to_string(Backend b);

/// exact when every zero of P and Q is rational, floating otherwise.
Backend default_backend(const GeneratorSpec& spec);

struct HmSequence
{
    GeneratorSpec spec;
    Backend backend = Backend::floating;
    std::vector<DensePoly> polys;       ///< H_m as a polynomial in z, trimmed
    std::vector<ExactPoly> exact_polys; ///< filled on the exact backend only

    int m_max() const { return static_cast<int>(polys.size()) - 1; }
};

/// Runs the recurrence H_m = -(1/p_0) sum_{i >= 1} d_i(z) H_{m-i}(z) with
/// d_i(z) = p_i + z q_{i-r}. The exact backend requires rational zeros
/// (DomainError otherwise); the float backend uses compensated summation.
HmSequence generate_hm(const GeneratorSpec& spec, int m_max, Backend backend);
HmSequence generate_hm(const GeneratorSpec& spec, int m_max);

cplx hm_eval(const HmSequence& seq, int m, cplx z);

/// Coefficients of D(t, z) in t, degree max(n, r + s) before trimming.
std::vector<cplx> d_coeffs(const GeneratorSpec& spec, cplx z);
ExactPoly d_coeffs_exact(const GeneratorSpec& spec, const mpq_class& z);

/// All complex roots of sum c_i x^i: Aberth-Ehrlich iteration from
/// Newton-polygon starting points, then Newton polishing. Falls back to the
/// companion matrix when the iteration stalls. Throws DomainError for
/// degree < 1 and NonConvergence when neither route meets the residual bound.
std::vector<cplx> poly_roots(std::span<const cplx> coeffs);
std::vector<cplx> poly_roots(const DensePoly& p);

/// Eigenvalues of the companion matrix, polished by Newton steps.
std::vector<cplx> companion_roots(std::span<const cplx> coeffs);

/// sum_k 1 / (P(t_k) R(t_k) t_k^m) over the roots t_k of D(t, z).
/// Throws MultipleRootError when two roots are closer than 1e-6 * scale.
cplx residue_sum(const GeneratorSpec& spec, cplx z, int m);

struct ClassifyConfig
{
    double a = 0.0;
    int sign_exponent = 1;
    double real_tol = 1e-8;
    std::optional<double> interval_tol; ///< default 1e-6 (1 + |a|)
};

struct RootReport
{
    int m = 0;
    std::vector<cplx> roots;
    std::vector<bool> classified_real;
    double max_abs_im = 0.0;
    bool all_real = true;
    bool sign_ok = true;
    bool interval_ok = true;
    int degree_observed = 0;
};

RootReport classify_roots(const HmSequence& seq, int m, const ClassifyConfig& cfg);

/// Smallest m in [m_lo, m_hi] from which every H_m up to m_hi has all_real.
std::optional<int> all_real_onset(const HmSequence& seq, const ClassifyConfig& cfg, int m_lo, int m_hi);

} // namespace hypgen
