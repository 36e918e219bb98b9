#pragma once

// R(t) = r - t P'(t)/P(t) + t Q'(t)/Q(t), its imaginary-part weight, the
// numerical hypothesis checks, and the t_a solver.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypgen/poly_core.hpp"

namespace hypgen
{

/// R(t) in partial-fraction form. Returns exactly r at t = 0.
/// Throws PoleError when t sits on a zero of P or Q.
cplx r_func(const GeneratorSpec& spec, cplx t);

/// R'(t) = sum tau_k/(t - tau_k)^2 - sum gamma_j/(t - gamma_j)^2.
cplx r_func_derivative(const GeneratorSpec& spec, cplx t);

/// w(t) with Im R(t) = w(t) Im t.
double im_r_weight(const GeneratorSpec& spec, cplx t);

/// P(t) R(t) evaluated with the poles of R cancelled against P, so it stays
/// finite (and exact) at zeros of P.
cplx p_times_r(const GeneratorSpec& spec, cplx t);

/// -P(t) / (t^r Q(t)), product form.
cplx z_map(const GeneratorSpec& spec, cplx t);

struct ConditionCheck
{
    bool holds = false;
    std::optional<double> violation; ///< first violating x, when one exists
    std::string reason;
};

/// n+P(x) - n+Q(x) >= 2 for x >= tau2, and n+Q(x) = 0 on (0, tau2].
ConditionCheck check_condition1(const GeneratorSpec& spec);
/// n-Q(x) - n-P(x) >= 0 for all x < 0.
ConditionCheck check_condition2(const GeneratorSpec& spec);
/// The second half of condition (1) alone: Q has no zero in (0, tau2].
/// This is what keeps R pole-free on (tau1, tau2) for the t_a bracket.
ConditionCheck check_zero_free_window(const GeneratorSpec& spec);

/// Smallest and second smallest positive zero of P (with multiplicity).
/// Throws HypothesisError when P has fewer than two positive zeros.
std::pair<double, double> tau1_tau2(const GeneratorSpec& spec);

struct GridParams
{
    int radii = 256;
    int angles = 256;
    double band = 1e-3;     ///< boundary exclusion, relative to each extent
    int refine_factor = 4;
    int refine_depth = 3;
};

enum class RegionKind
{
    sector,
    semidisk
};

const char* to_string(RegionKind kind);

struct RegionCheckReport
{
    RegionKind condition_id = RegionKind::sector;
    bool holds = false;
    double min_margin = 0.0;
    cplx argmin_point{};
    int grid_size = 0;          ///< number of weight evaluations, refinement included
    double boundary_band = 0.0;
    double bound = 0.0;         ///< radius of the region
    double top_angle = 0.0;
    /// Refinement ended with the minimum indistinguishable from zero.
    bool nonconvergence = false;
};

struct RegionSample
{
    cplx t;
    double weight;
};

/// Polar grid samples of im_r_weight over {band*bound < |t| <= (1-band)*bound,
/// band*top < Arg t <= (1-band)*top}, radius-major order.
std::vector<RegionSample> sample_region(const GeneratorSpec& spec, double bound, double top_angle,
                                        const GridParams& grid);

/// Im R > 0 on {0 < |t| < tau2, 0 < Arg t < pi/r}, sampled.
RegionCheckReport check_sector(const GeneratorSpec& spec, double tau2, const GridParams& grid = {});
/// Im R > 0 on {0 < |t| < t_a, 0 < Arg t < pi}, sampled.
RegionCheckReport check_semidisk(const GeneratorSpec& spec, double t_a, const GridParams& grid = {});

/// The unique zero of P R on [tau1, tau2), by bisection on R.
/// Returns tau1 when tau1 = tau2. Throws BracketError if R does not go from
/// negative to positive across the shrunken bracket, or if the bisection
/// settles on a pole.
double find_t_a(const GeneratorSpec& spec, double tol = 1e-12);

/// a = -P(t_a) / (t_a^r Q(t_a)).
double endpoint_a(const GeneratorSpec& spec, double t_a);

struct HypothesisReport
{
    ConditionCheck cond1;
    ConditionCheck cond2;
    ConditionCheck zero_free_window;
    std::optional<RegionCheckReport> cond3;
    std::optional<RegionCheckReport> cond4;
    std::optional<double> t_a;
    std::optional<double> tau1;
    std::optional<double> tau2;
    std::optional<double> a;
    int sign_exponent = 1;
    std::vector<std::string> notes;

    bool all_hold() const;
};

/// Runs conditions (1)-(4) in order. t_a is computed when its bracket is
/// well defined (zero-free window and condition (3)); condition (4) and a
/// follow from t_a.
HypothesisReport hypothesis_report(const GeneratorSpec& spec, const GridParams& grid = {});

/// Throws HypothesisError unless the report supports the tau-curve
/// construction: zero-free window, (2), (3), and (4) when requested.
void require_curve_hypotheses(const HypothesisReport& report, bool need_semidisk);

} // namespace hypgen
