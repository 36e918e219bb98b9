#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hypgen/errors.hpp"
#include "hypgen/hm_seq.hpp"

namespace hypgen
{

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAberthIterations = 2000;
constexpr double kResidualBound = 1e-10;

struct Eval
{
    cplx newton_ratio; // p(z) / p'(z)
    double value_abs;  // |p| (or |reversed p| when |z| > 1)
    double scale;      // matching sum |c_i| |z|^i
};

// Evaluates p/p' and a backward-error pair at z. For |z| > 1 the reversed
// polynomial in 1/z is used so that large roots neither overflow nor lose
// relative accuracy.
Eval evaluate(std::span<const cplx> c, cplx z)
{
    const std::size_t n = c.size() - 1;
    if (std::abs(z) <= 1.0)
    {
        cplx p = c[n], dp{};
        double s = std::abs(c[n]);
        const double az = std::abs(z);
        for (std::size_t i = n; i-- > 0;)
        {
            dp = dp * z + p;
            p = p * z + c[i];
            s = s * az + std::abs(c[i]);
        }
        return {p / dp, std::abs(p), s};
    }
    const cplx y = 1.0 / z;
    const double ay = std::abs(y);
    cplx q = c[0], dq{};
    double s = std::abs(c[0]);
    for (std::size_t i = 1; i <= n; ++i)
    {
        dq = dq * y + q;
        q = q * y + c[i];
        s = s * ay + std::abs(c[i]);
    }
    // p(z) = z^n q(y), so p/p' = z / (n - y q'(y)/q(y)).
    const cplx ratio = z / (static_cast<double>(n) - y * dq / q);
    return {ratio, std::abs(q), s};
}

bool residual_ok(std::span<const cplx> c, cplx z)
{
    const Eval e = evaluate(c, z);
    return std::isfinite(e.value_abs) && e.value_abs <= kResidualBound * e.scale;
}

cplx polish(std::span<const cplx> c, cplx z)
{
    Eval e = evaluate(c, z);
    for (int k = 0; k < 4; ++k)
    {
        if (e.value_abs == 0.0 || !std::isfinite(std::abs(e.newton_ratio)))
            break;
        const cplx next = z - e.newton_ratio;
        const Eval en = evaluate(c, next);
        if (!(en.value_abs / en.scale < e.value_abs / e.scale))
            break;
        z = next;
        e = en;
    }
    return z;
}

// Starting points on circles whose radii come from the upper convex hull of
// (i, log|c_i|) (the Newton polygon).
std::vector<cplx> initial_guesses(std::span<const cplx> c)
{
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<int> idx;
    std::vector<double> lg;
    for (int i = 0; i <= n; ++i)
        if (c[static_cast<std::size_t>(i)] != cplx{})
        {
            idx.push_back(i);
            lg.push_back(std::log(std::abs(c[static_cast<std::size_t>(i)])));
        }

    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k < idx.size(); ++k)
    {
        while (hull.size() >= 2)
        {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (idx[b] - idx[a]) * (lg[k] - lg[a]) - (lg[b] - lg[a]) * (idx[k] - idx[a]);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }

    std::vector<cplx> z;
    z.reserve(static_cast<std::size_t>(n));
    const double sigma = 0.7;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h)
    {
        const int i0 = idx[hull[h]], i1 = idx[hull[h + 1]];
        const int count = i1 - i0;
        const double u = std::exp((lg[hull[h]] - lg[hull[h + 1]]) / count);
        for (int j = 0; j < count; ++j)
        {
            const double ang = 2 * std::numbers::pi * j / count + 2 * std::numbers::pi * i0 / n + sigma;
            z.push_back(std::polar(u, ang));
        }
    }
    return z;
}

bool aberth(std::span<const cplx> c, std::vector<cplx>& z)
{
    const std::size_t n = c.size() - 1;
    z = initial_guesses(c);
    std::vector<bool> done(n, false);
    const double stop = 4.0 * kEps * static_cast<double>(n + 1);
    for (int iter = 0; iter < kMaxAberthIterations; ++iter)
    {
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (done[k])
                continue;
            const Eval e = evaluate(c, z[k]);
            if (e.value_abs <= stop * e.scale)
            {
                done[k] = true;
                continue;
            }
            all_done = false;
            cplx sum{};
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0 / (z[k] - z[j]);
            const cplx ratio = e.newton_ratio;
            const cplx w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                return false;
            z[k] -= w;
            if (std::abs(w) <= kEps * std::abs(z[k]))
                done[k] = true;
        }
        if (all_done)
            return true;
    }
    return false;
}

// Splits off exact zero roots (c_0 = 0) and trailing zero coefficients.
std::vector<cplx> normalize(std::span<const cplx> coeffs, std::size_t& zero_roots)
{
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == cplx{})
        c.pop_back();
    zero_roots = 0;
    while (c.size() > 1 && c.front() == cplx{})
    {
        c.erase(c.begin());
        ++zero_roots;
    }
    if (c.size() + zero_roots < 2)
        throw DomainError("root finding needs a polynomial of degree >= 1");
    return c;
}

std::vector<cplx> eigen_roots(std::span<const cplx> c)
{
    const auto n = static_cast<Eigen::Index>(c.size() - 1);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
        m(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];

    // Parlett-Reinsch balancing with powers of two.
    bool converged = false;
    while (!converged)
    {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            double col = 0.0, row = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != i)
                {
                    col += std::abs(m(j, i));
                    row += std::abs(m(i, j));
                }
            if (col == 0.0 || row == 0.0)
                continue;
            double f = 1.0;
            const double s = col + row;
            while (col < row / 2)
            {
                col *= 2;
                row /= 2;
                f *= 2;
            }
            while (col >= row * 2)
            {
                col /= 2;
                row *= 2;
                f /= 2;
            }
            if ((col + row) < 0.95 * s)
            {
                converged = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("companion eigenvalue solver failed");
    std::vector<cplx> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
    return out;
}

} // namespace

std::vector<cplx> companion_roots(std::span<const cplx> coeffs)
{
    std::size_t zeros = 0;
    const std::vector<cplx> c = normalize(coeffs, zeros);
    std::vector<cplx> out(zeros, cplx{});
    if (c.size() >= 2)
    {
        for (cplx z : eigen_roots(c))
            out.push_back(polish(c, z));
    }
    return out;
}

std::vector<cplx> poly_roots(std::span<const cplx> coeffs)
{
    std::size_t zeros = 0;
    const std::vector<cplx> c = normalize(coeffs, zeros);
    std::vector<cplx> out(zeros, cplx{});
    if (c.size() < 2)
        return out;
    if (c.size() == 2)
    {
        out.push_back(-c[0] / c[1]);
        return out;
    }

    std::vector<cplx> z;
    bool ok = aberth(c, z);
    if (ok)
    {
        for (auto& r : z)
        {
            r = polish(c, r);
            ok = ok && residual_ok(c, r);
        }
    }
    if (!ok)
    {
        z = eigen_roots(c);
        double worst = 0.0;
        for (auto& r : z)
        {
            r = polish(c, r);
            const Eval e = evaluate(c, r);
            worst = std::max(worst, e.value_abs / e.scale);
        }
        if (!(worst <= kResidualBound))
            throw NonConvergence("root finder did not converge: degree " + std::to_string(c.size() - 1) +
                                 ", worst relative residual " + std::to_string(worst));
    }
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

std::vector<cplx> poly_roots(const DensePoly& p)
{
    const DensePoly t = trim(p);
    std::vector<cplx> c(t.coeffs.begin(), t.coeffs.end());
    return poly_roots(std::span<const cplx>(c));
}

} // namespace hypgen
