#pragma once

// The implicit curve t = tau(theta) e^{i theta} on which the angle sum
// sum theta_k - sum eta_j - r theta equals (p+ - q+ - 1) pi, the real map
// z(theta) = -P(t)/(t^r Q(t)) along it, and the disk-separation check.

#include <vector>

#include "hypgen/poly_core.hpp"
#include "hypgen/rfunc.hpp"

namespace hypgen
{

/// Angle in (0, pi) with ((t - zero)/(conj(t) - zero)) = e^{2 i angle}.
/// Geometrically the argument of t - zero. Requires Im t > 0.
double angle_of(double zero, cplx t);

/// f(t) = r Log t + sum Log(t - gamma_j) - sum Log(t - tau_k), principal branches.
cplx log_func(const GeneratorSpec& spec, cplx t);

/// Left side minus right side of the angle-sum equation at t = tau e^{i theta}.
double angle_sum_residual(const GeneratorSpec& spec, double tau, double theta);

/// The unique tau in (0, tau2) solving the angle-sum equation, by bisection.
/// Throws DomainError for theta outside (0, pi/r), BracketError when the
/// residual is not (+, -) at the bracket ends.
double solve_tau(const GeneratorSpec& spec, double theta, double rel_tol = 1e-12);

struct ZOfTheta
{
    double tau;
    double z;
    double im_z; ///< diagnostic; zero in exact arithmetic
};

ZOfTheta z_of_theta(const GeneratorSpec& spec, double theta);

struct TauCurveSample
{
    double theta;
    double tau;
    double z;
    double residual;
    double im_z;
    bool low_confidence = false;
};

struct TauCurve
{
    std::vector<TauCurveSample> samples;
    double t_a_limit = 0.0;
    double a_limit = 0.0;
    int sign_exponent = 1;
};

/// Samples at theta_i = i/(n+1) * pi/r, i = 1..n, and checks the curve
/// invariants: |residual| <= 1e-10, tau < tau2, |im_z| <= 1e-8 (1 + |z|),
/// and sign_exponent * z positive and strictly increasing. Low-confidence
/// samples (theta below 10 eps^(1/rho) for a tau1 of multiplicity rho) are
/// exempt from the residual bound. With
/// enforce_hypotheses = false the hypothesis gate is skipped (exploration of
/// failing specs); the invariants are still enforced.
TauCurve trace_curve(const GeneratorSpec& spec, const HypothesisReport& report, int n_samples,
                     bool enforce_hypotheses = true);
TauCurve trace_curve(const GeneratorSpec& spec, int n_samples, const GridParams& grid = {});

struct DiskSeparation
{
    bool separated = false;
    double theta = 0.0;
    double tau = 0.0;
    double z = 0.0;
    int inside_count = 0;             ///< roots with |t| <= tau (1 + 1e-8)
    double min_outside_modulus = 0.0; ///< smallest |t| among the other roots
    std::vector<cplx> roots;          ///< all roots of P(t) + z t^r Q(t)
};

/// Whether exactly the pair tau e^{+-i theta} lies in the closed disk of
/// radius tau(theta) among the roots of P(t) + z(theta) t^r Q(t).
DiskSeparation check_disk_separation(const GeneratorSpec& spec, const HypothesisReport& report, double theta);
DiskSeparation check_disk_separation(const GeneratorSpec& spec, double theta, const GridParams& grid = {});

} // namespace hypgen
