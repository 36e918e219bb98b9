#include "hypgen/rfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypgen/errors.hpp"
#include "hypgen/parallel.hpp"

namespace hypgen
{

namespace
{

void require_off_zeros(const IndexedZeroSet& zs, cplx t, const char* name)
{
    for (double z : zs.zeros())
        if (std::abs(t - z) <= 1e-14 * std::max(1.0, std::abs(z)))
            throw PoleError(std::string("t coincides with a zero of ") + name + " at " + std::to_string(z));
}

// Sum of the absolute terms of the weight; the natural scale for deciding
// whether a sampled weight is distinguishable from zero.
double weight_scale(const GeneratorSpec& spec, cplx t)
{
    double s = 0.0;
    for (double z : spec.P.zeros())
        s += std::abs(z) / std::norm(t - z);
    for (double z : spec.Q.zeros())
        s += std::abs(z) / std::norm(t - z);
    return s;
}

// im_r_weight with poles mapped to the infinity of the matching sign.
double pole_safe_weight(const GeneratorSpec& spec, cplx t)
{
    const double inf = std::numeric_limits<double>::infinity();
    for (double z : spec.P.zeros())
        if (std::abs(t - z) <= 1e-14 * std::max(1.0, std::abs(z)))
            return z > 0 ? inf : -inf;
    for (double z : spec.Q.zeros())
        if (std::abs(t - z) <= 1e-14 * std::max(1.0, std::abs(z)))
            return z > 0 ? -inf : inf;
    return im_r_weight(spec, t);
}

std::vector<double> unique_sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

cplx r_func(const GeneratorSpec& spec, cplx t)
{
    if (t == cplx{0.0, 0.0})
        return cplx(static_cast<double>(spec.r), 0.0);
    require_off_zeros(spec.P, t, "P");
    require_off_zeros(spec.Q, t, "Q");
    cplx v(static_cast<double>(spec.r), 0.0);
    for (double z : spec.P.zeros())
        v -= t / (t - z);
    for (double z : spec.Q.zeros())
        v += t / (t - z);
    return v;
}

cplx r_func_derivative(const GeneratorSpec& spec, cplx t)
{
    require_off_zeros(spec.P, t, "P");
    require_off_zeros(spec.Q, t, "Q");
    cplx v{};
    for (double z : spec.P.zeros())
        v += z / ((t - z) * (t - z));
    for (double z : spec.Q.zeros())
        v -= z / ((t - z) * (t - z));
    return v;
}

double im_r_weight(const GeneratorSpec& spec, cplx t)
{
    require_off_zeros(spec.P, t, "P");
    require_off_zeros(spec.Q, t, "Q");
    double w = 0.0;
    for (double z : spec.P.zeros())
        w += z / std::norm(t - z);
    for (double z : spec.Q.zeros())
        w -= z / std::norm(t - z);
    return w;
}

cplx p_times_r(const GeneratorSpec& spec, cplx t)
{
    // P R = r P - sum_k t prod_{i != k} (t - tau_i) + P sum_j t/(t - gamma_j)
    auto zeros = spec.P.zeros();
    const std::size_t n = zeros.size();
    std::vector<cplx> prefix(n + 1, cplx{1.0, 0.0}), suffix(n + 1, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] * (t - zeros[i]);
    for (std::size_t i = n; i > 0; --i)
        suffix[i - 1] = suffix[i] * (t - zeros[i - 1]);

    const cplx p = prefix[n];
    cplx v = static_cast<double>(spec.r) * p;
    for (std::size_t k = 0; k < n; ++k)
        v -= t * prefix[k] * suffix[k + 1];
    if (p != cplx{0.0, 0.0})
    {
        require_off_zeros(spec.Q, t, "Q");
        cplx q_part{};
        for (double z : spec.Q.zeros())
            q_part += t / (t - z);
        v += p * q_part;
    }
    return v;
}

cplx z_map(const GeneratorSpec& spec, cplx t)
{
    cplx tr = std::pow(t, spec.r);
    return -eval_at(spec.P, t) / (tr * eval_at(spec.Q, t));
}

ConditionCheck check_zero_free_window(const GeneratorSpec& spec)
{
    ConditionCheck c;
    if (spec.P.pos_count() < 2)
    {
        c.reason = "P has fewer than two positive zeros";
        return c;
    }
    const double tau2 = spec.P.zero_at(2);
    auto qpos = spec.Q.positive_zeros();
    if (!qpos.empty() && qpos.front() <= tau2)
    {
        c.violation = qpos.front();
        c.reason = "Q has a zero in (0, tau2]";
        return c;
    }
    c.holds = true;
    return c;
}

ConditionCheck check_condition1(const GeneratorSpec& spec)
{
    ConditionCheck c;
    if (spec.P.pos_count() < 2)
    {
        c.reason = "P has fewer than two positive zeros";
        return c;
    }
    const double tau2 = spec.P.zero_at(2);

    // n+ are step functions that only move at zeros, so the zeros themselves
    // are the only places a violation can first appear.
    std::vector<double> candidates(spec.P.positive_zeros().begin(), spec.P.positive_zeros().end());
    candidates.insert(candidates.end(), spec.Q.positive_zeros().begin(), spec.Q.positive_zeros().end());
    for (double x : unique_sorted(std::move(candidates)))
    {
        const int np = count_pos(spec.P, x);
        const int nq = count_pos(spec.Q, x);
        if (x <= tau2 && nq != 0)
        {
            c.violation = x;
            c.reason = "n+Q(x) = " + std::to_string(nq) + " != 0 on (0, tau2]";
            return c;
        }
        if (x >= tau2 && np - nq < 2)
        {
            c.violation = x;
            c.reason = "n+P(x) - n+Q(x) = " + std::to_string(np - nq) + " < 2";
            return c;
        }
    }
    c.holds = true;
    return c;
}

ConditionCheck check_condition2(const GeneratorSpec& spec)
{
    ConditionCheck c;
    std::vector<double> candidates(spec.P.negative_zeros().begin(), spec.P.negative_zeros().end());
    candidates.insert(candidates.end(), spec.Q.negative_zeros().begin(), spec.Q.negative_zeros().end());
    auto xs = unique_sorted(std::move(candidates));
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    {
        const int diff = count_neg(spec.Q, *it) - count_neg(spec.P, *it);
        if (diff < 0)
        {
            c.violation = *it;
            c.reason = "n-Q(x) - n-P(x) = " + std::to_string(diff) + " < 0";
            return c;
        }
    }
    c.holds = true;
    return c;
}

std::pair<double, double> tau1_tau2(const GeneratorSpec& spec)
{
    if (spec.P.pos_count() < 2)
        throw HypothesisError("P needs at least two positive zeros");
    return {spec.P.zero_at(1), spec.P.zero_at(2)};
}

const char* to_string(RegionKind kind)
{
    return kind == RegionKind::sector ? "sector" : "semidisk";
}

std::vector<RegionSample> sample_region(const GeneratorSpec& spec, double bound, double top_angle,
                                        const GridParams& grid)
{
    if (!(bound > 0) || grid.radii < 1 || grid.angles < 1)
        throw DomainError("region sampling needs a positive bound and grid sizes >= 1");
    const double r_lo = grid.band * bound, r_hi = (1.0 - grid.band) * bound;
    const double a_lo = grid.band * top_angle, a_hi = (1.0 - grid.band) * top_angle;
    const auto nr = static_cast<std::size_t>(grid.radii), na = static_cast<std::size_t>(grid.angles);

    std::vector<RegionSample> out(nr * na);
    parallel_for(nr, [&](std::size_t i) {
        const double rho = r_lo + static_cast<double>(i + 1) * (r_hi - r_lo) / static_cast<double>(nr);
        for (std::size_t j = 0; j < na; ++j)
        {
            const double phi = a_lo + static_cast<double>(j + 1) * (a_hi - a_lo) / static_cast<double>(na);
            const cplx t = std::polar(rho, phi);
            out[i * na + j] = RegionSample{t, pole_safe_weight(spec, t)};
        }
    }, 8);
    return out;
}

namespace
{

RegionCheckReport check_region(const GeneratorSpec& spec, double bound, double top_angle, RegionKind kind,
                               const GridParams& grid)
{
    if (!(bound > 0))
        throw DomainError(std::string(to_string(kind)) + " check needs a positive radius");

    RegionCheckReport rep;
    rep.condition_id = kind;
    rep.boundary_band = grid.band;
    rep.bound = bound;
    rep.top_angle = top_angle;

    const double r_lo = grid.band * bound, r_hi = (1.0 - grid.band) * bound;
    const double a_lo = grid.band * top_angle, a_hi = (1.0 - grid.band) * top_angle;

    const std::vector<RegionSample> samples = sample_region(spec, bound, top_angle, grid);

    // Deterministic reduction: the lowest index wins ties.
    std::size_t best = 0;
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (samples[k].weight < samples[best].weight)
            best = k;
    double min_w = samples[best].weight;
    cplx arg_t = samples[best].t;
    rep.grid_size = static_cast<int>(samples.size());

    double step_r = (r_hi - r_lo) / grid.radii;
    double step_a = (a_hi - a_lo) / grid.angles;
    for (int depth = 0; depth < grid.refine_depth && min_w > 0; ++depth)
    {
        step_r /= grid.refine_factor;
        step_a /= grid.refine_factor;
        const double rho0 = std::abs(arg_t), phi0 = std::arg(arg_t);
        const int f = grid.refine_factor;
        for (int di = -f; di <= f; ++di)
            for (int dj = -f; dj <= f; ++dj)
            {
                const double rho = std::clamp(rho0 + di * step_r, r_lo, r_hi);
                const double phi = std::clamp(phi0 + dj * step_a, a_lo, a_hi);
                const cplx t = std::polar(rho, phi);
                const double w = pole_safe_weight(spec, t);
                ++rep.grid_size;
                if (w < min_w)
                {
                    min_w = w;
                    arg_t = t;
                }
            }
    }

    rep.min_margin = min_w;
    rep.argmin_point = arg_t;
    rep.holds = min_w > 0;
    if (rep.holds && min_w <= 1e-9 * weight_scale(spec, arg_t))
    {
        rep.holds = false;
        rep.nonconvergence = true;
    }
    return rep;
}

} // namespace

RegionCheckReport check_sector(const GeneratorSpec& spec, double tau2, const GridParams& grid)
{
    return check_region(spec, tau2, std::numbers::pi / spec.r, RegionKind::sector, grid);
}

RegionCheckReport check_semidisk(const GeneratorSpec& spec, double t_a, const GridParams& grid)
{
    return check_region(spec, t_a, std::numbers::pi, RegionKind::semidisk, grid);
}

double find_t_a(const GeneratorSpec& spec, double tol)
{
    const auto [tau1, tau2] = tau1_tau2(spec);
    if (tau1 == tau2)
        return tau1;

    for (double g : spec.Q.zeros())
        if (g > tau1 && g < tau2)
            throw BracketError("R has a pole inside (tau1, tau2) at " + std::to_string(g));

    auto R = [&](double x) { return r_func(spec, cplx(x, 0.0)).real(); };
    const double eps = 1e-9 * (tau2 - tau1);
    double lo = tau1 + eps, hi = tau2 - eps;
    if (!(R(lo) < 0 && R(hi) > 0))
        throw BracketError("R does not change sign from - to + on (tau1, tau2)");

    while (hi - lo > tol)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (R(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double endpoint_a(const GeneratorSpec& spec, double t_a)
{
    return z_map(spec, cplx(t_a, 0.0)).real();
}

bool HypothesisReport::all_hold() const
{
    return cond1.holds && cond2.holds && cond3 && cond3->holds && cond4 && cond4->holds;
}

HypothesisReport hypothesis_report(const GeneratorSpec& spec, const GridParams& grid)
{
    HypothesisReport rep;
    rep.sign_exponent = spec.sign_exponent();
    rep.cond1 = check_condition1(spec);
    rep.cond2 = check_condition2(spec);
    rep.zero_free_window = check_zero_free_window(spec);

    if (spec.P.pos_count() >= 2)
    {
        const auto [tau1, tau2] = tau1_tau2(spec);
        rep.tau1 = tau1;
        rep.tau2 = tau2;
        rep.cond3 = check_sector(spec, tau2, grid);
    }
    else
    {
        rep.notes.emplace_back("condition (3) not evaluated: tau2 undefined");
    }

    if (rep.zero_free_window.holds && rep.cond3 && rep.cond3->holds)
    {
        try
        {
            rep.t_a = find_t_a(spec);
        }
        catch (const BracketError& e)
        {
            rep.notes.emplace_back(std::string("t_a not found: ") + e.what());
        }
    }
    else
    {
        rep.notes.emplace_back("t_a not attempted: bracket prerequisites fail");
    }

    if (rep.t_a)
    {
        rep.a = endpoint_a(spec, *rep.t_a);
        rep.cond4 = check_semidisk(spec, *rep.t_a, grid);
    }
    else
    {
        rep.notes.emplace_back("condition (4) not evaluated: t_a unavailable");
    }
    return rep;
}

void require_curve_hypotheses(const HypothesisReport& report, bool need_semidisk)
{
    if (!report.zero_free_window.holds)
        throw HypothesisError("zero-free window fails: " + report.zero_free_window.reason);
    if (!report.cond2.holds)
        throw HypothesisError("condition (2) fails: " + report.cond2.reason);
    if (!report.cond3 || !report.cond3->holds)
        throw HypothesisError("condition (3) fails: Im R is not positive on the sector");
    if (!report.t_a)
        throw HypothesisError("t_a unavailable");
    if (need_semidisk && (!report.cond4 || !report.cond4->holds))
        throw HypothesisError("condition (4) fails: Im R is not positive on the semi-disk");
}

} // namespace hypgen
