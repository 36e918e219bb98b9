#include "hypgen/tau_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypgen/errors.hpp"
#include "hypgen/hm_seq.hpp"
#include "hypgen/parallel.hpp"

namespace hypgen
{

using std::numbers::pi;

double angle_of(double zero, cplx t)
{
    if (!(t.imag() > 0))
        throw DomainError("angle_of requires Im t > 0");
    const cplx ratio = (t - zero) / (std::conj(t) - zero);
    double half = 0.5 * std::arg(ratio);
    if (half <= 0)
        half += pi;
    return half;
}

cplx log_func(const GeneratorSpec& spec, cplx t)
{
    cplx f = static_cast<double>(spec.r) * std::log(t);
    for (double g : spec.Q.zeros())
        f += std::log(t - g);
    for (double z : spec.P.zeros())
        f -= std::log(t - z);
    return f;
}

double angle_sum_residual(const GeneratorSpec& spec, double tau, double theta)
{
    const cplx t = std::polar(tau, theta);
    double s = 0.0;
    for (double z : spec.P.zeros())
        s += angle_of(z, t);
    for (double g : spec.Q.zeros())
        s -= angle_of(g, t);
    const int k = spec.P.pos_count() - spec.Q.pos_count() - 1;
    return s - spec.r * theta - k * pi;
}

double solve_tau(const GeneratorSpec& spec, double theta, double rel_tol)
{
    if (!(theta > 0 && theta < pi / spec.r))
        throw DomainError("theta must lie in (0, pi/r)");
    const auto [tau1, tau2] = tau1_tau2(spec);
    (void)tau1;

    double lo = 1e-12 * tau2, hi = tau2 * (1 - 1e-12);
    const double f_lo = angle_sum_residual(spec, lo, theta);
    const double f_hi = angle_sum_residual(spec, hi, theta);
    if (!(f_lo > 0 && f_hi < 0))
        throw BracketError("angle-sum residual is not (+, -) on (0, tau2) at theta = " + std::to_string(theta));

    // Stop on the tau tolerance, but keep going while the residual is still
    // visible: near a repeated zero the residual is steep in tau.
    for (;;)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double f = angle_sum_residual(spec, mid, theta);
        if (hi - lo <= rel_tol * mid && std::abs(f) <= 1e-12)
            break;
        (f > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ZOfTheta z_of_theta(const GeneratorSpec& spec, double theta)
{
    const double tau = solve_tau(spec, theta);
    const cplx z = z_map(spec, std::polar(tau, theta));
    return {tau, z.real(), z.imag()};
}

TauCurve trace_curve(const GeneratorSpec& spec, int n_samples, const GridParams& grid)
{
    const HypothesisReport report = hypothesis_report(spec, grid);
    return trace_curve(spec, report, n_samples);
}

TauCurve trace_curve(const GeneratorSpec& spec, const HypothesisReport& report, int n_samples,
                     bool enforce_hypotheses)
{
    if (n_samples < 2)
        throw DomainError("trace_curve needs at least 2 samples");
    if (enforce_hypotheses)
        require_curve_hypotheses(report, false);

    TauCurve curve;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    curve.t_a_limit = report.t_a.value_or(nan);
    curve.a_limit = report.a.value_or(nan);
    curve.sign_exponent = spec.sign_exponent();

    // Multiplicity of tau1 decides how early the theta -> 0 end degrades.
    const auto pos = spec.P.positive_zeros();
    const auto rho = static_cast<int>(std::count(pos.begin(), pos.end(), pos.front()));
    const double low_conf_theta =
        rho > 1 ? 10.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / rho) : 0.0;

    const double tau2 = tau1_tau2(spec).second;
    curve.samples.resize(static_cast<std::size_t>(n_samples));
    parallel_for(curve.samples.size(), [&](std::size_t i) {
        const double theta = static_cast<double>(i + 1) / (n_samples + 1) * pi / spec.r;
        const ZOfTheta zt = z_of_theta(spec, theta);
        curve.samples[i] = TauCurveSample{theta, zt.tau, zt.z, angle_sum_residual(spec, zt.tau, theta), zt.im_z,
                                          theta < low_conf_theta};
    }, 8);

    const int s = curve.sign_exponent;
    for (std::size_t i = 0; i < curve.samples.size(); ++i)
    {
        const auto& smp = curve.samples[i];
        // near a repeated tau1 the residual is ill-conditioned; such samples are flagged instead
        if (!smp.low_confidence && !(std::abs(smp.residual) <= 1e-10))
            throw NonConvergence("angle-sum residual " + std::to_string(smp.residual) + " at theta = " +
                                 std::to_string(smp.theta));
        if (!(smp.tau > 0 && smp.tau < tau2))
            throw NonConvergence("tau outside (0, tau2) at theta = " + std::to_string(smp.theta));
        if (!(std::abs(smp.im_z) <= 1e-8 * (1 + std::abs(smp.z))))
            throw NonConvergence("z(theta) not real at theta = " + std::to_string(smp.theta));
        if (!(s * smp.z > 0))
            throw MonotonicityViolation("sign_exponent * z not positive at theta = " + std::to_string(smp.theta));
        if (i > 0 && !(s * smp.z > s * curve.samples[i - 1].z))
            throw MonotonicityViolation("sign_exponent * z not increasing at theta = " +
                                        std::to_string(smp.theta));
    }
    return curve;
}

DiskSeparation check_disk_separation(const GeneratorSpec& spec, double theta, const GridParams& grid)
{
    const HypothesisReport report = hypothesis_report(spec, grid);
    return check_disk_separation(spec, report, theta);
}

DiskSeparation check_disk_separation(const GeneratorSpec& spec, const HypothesisReport& report, double theta)
{
    require_curve_hypotheses(report, true);

    DiskSeparation out;
    out.theta = theta;
    const ZOfTheta zt = z_of_theta(spec, theta);
    out.tau = zt.tau;
    out.z = zt.z;
    const auto c = d_coeffs(spec, cplx(zt.z, 0.0));
    out.roots = poly_roots(std::span<const cplx>(c));

    const double radius = zt.tau * (1 + 1e-8);
    const cplx expected = std::polar(zt.tau, theta);
    bool pair_found_up = false, pair_found_down = false;
    out.min_outside_modulus = std::numeric_limits<double>::infinity();
    for (cplx t : out.roots)
    {
        if (std::abs(t) <= radius)
        {
            ++out.inside_count;
            pair_found_up = pair_found_up || std::abs(t - expected) <= 1e-6 * zt.tau;
            pair_found_down = pair_found_down || std::abs(t - std::conj(expected)) <= 1e-6 * zt.tau;
        }
        else
        {
            out.min_outside_modulus = std::min(out.min_outside_modulus, std::abs(t));
        }
    }
    out.separated = out.inside_count == 2 && pair_found_up && pair_found_down && out.min_outside_modulus > zt.tau;
    return out;
}

} // namespace hypgen
