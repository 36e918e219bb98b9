#include "hypgen/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "hypgen/errors.hpp"
#include "hypgen/expsign.hpp"
#include "hypgen/tau_curve.hpp"

namespace hypgen::cli
{

namespace
{

using ojson = nlohmann::ordered_json;

std::string g17(double v)
{
    return fmt::format("{:.17g}", v);
}

mpq_class parse_rational_string(const std::string& s)
{
    static const std::regex frac(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
    static const std::regex dec(R"(^\s*([+-]?)(\d+)(?:\.(\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, frac))
    {
        mpq_class den(m[2].str(), 10);
        if (den == 0)
            throw InvalidInput("zero denominator in \"" + s + "\"");
        mpq_class q(mpz_class(m[1].str(), 10), den.get_num());
        q.canonicalize();
        return q;
    }
    if (std::regex_match(s, m, dec))
    {
        const std::string frac_digits = m[3].matched ? m[3].str() : "";
        mpz_class num(m[2].str() + frac_digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits.size());
        mpq_class q(num, den);
        q.canonicalize();
        return m[1].str() == "-" ? mpq_class(-q) : q;
    }
    throw InvalidInput("cannot parse zero \"" + s + "\" as an integer, decimal, or p/q rational");
}

IndexedZeroSet parse_zero_list(const nlohmann::json& arr, const char* key)
{
    if (!arr.is_array())
        throw InvalidInput(std::string(key) + " must be an array");
    std::vector<mpq_class> exact;
    std::vector<double> reals;
    bool all_exact = true;
    for (const auto& v : arr)
    {
        if (v.is_number_integer())
        {
            exact.emplace_back(mpz_class(v.dump(), 10));
            reals.push_back(v.get<double>());
        }
        else if (v.is_number_float())
        {
            all_exact = false;
            reals.push_back(v.get<double>());
            exact.emplace_back(0);
        }
        else if (v.is_string())
        {
            exact.push_back(parse_rational_string(v.get<std::string>()));
            reals.push_back(exact.back().get_d());
        }
        else
        {
            throw InvalidInput(std::string(key) + " entries must be numbers or rational strings");
        }
    }
    return all_exact ? make_zero_set(std::move(exact)) : make_zero_set(std::move(reals));
}

ojson zeros_json(const IndexedZeroSet& zs)
{
    ojson a = ojson::array();
    if (zs.is_exact())
        for (const auto& q : *zs.exact_zeros())
            a.push_back(q.get_den() == 1 && q.get_num().fits_slong_p() ? ojson(q.get_num().get_si()) : ojson(q.get_str()));
    else
        for (double z : zs.zeros())
            a.push_back(z);
    return a;
}

ojson optional_json(const std::optional<double>& v)
{
    return v ? ojson(*v) : ojson(nullptr);
}

ojson condition_json(const ConditionCheck& c)
{
    ojson j;
    j["holds"] = c.holds;
    j["violation"] = optional_json(c.violation);
    j["reason"] = c.reason;
    return j;
}

ojson region_json(const std::optional<RegionCheckReport>& r)
{
    if (!r)
        return nullptr;
    ojson j;
    j["condition_id"] = to_string(r->condition_id);
    j["holds"] = r->holds;
    j["min_margin"] = r->min_margin;
    j["argmin_point"] = {{"re", r->argmin_point.real()}, {"im", r->argmin_point.imag()}};
    j["grid_size"] = r->grid_size;
    j["boundary_band"] = r->boundary_band;
    j["bound"] = r->bound;
    j["nonconvergence"] = r->nonconvergence;
    return j;
}

ojson report_json(const GeneratorSpec& spec, const HypothesisReport& rep)
{
    ojson j;
    j["spec"] = {{"P_zeros", zeros_json(spec.P)},
                 {"Q_zeros", zeros_json(spec.Q)},
                 {"r", spec.r},
                 {"exact", spec.is_exact()}};
    j["conditions"] = {{"cond1", condition_json(rep.cond1)},
                       {"cond2", condition_json(rep.cond2)},
                       {"cond3", region_json(rep.cond3)},
                       {"cond4", region_json(rep.cond4)},
                       {"zero_free_window", condition_json(rep.zero_free_window)}};
    j["tau1"] = optional_json(rep.tau1);
    j["tau2"] = optional_json(rep.tau2);
    j["t_a"] = optional_json(rep.t_a);
    j["a"] = optional_json(rep.a);
    j["sign_exponent"] = rep.sign_exponent;
    j["all_hold"] = rep.all_hold();
    j["notes"] = rep.notes;
    return j;
}

bool curve_gate_passes(const HypothesisReport& rep, bool need_semidisk)
{
    try
    {
        require_curve_hypotheses(rep, need_semidisk);
        return true;
    }
    catch (const HypothesisError&)
    {
        return false;
    }
}

// Runs a command body and maps escaping errors onto the exit-code contract.
int guarded(std::ostream& log, const std::function<int()>& body)
{
    try
    {
        return body();
    }
    catch (const HypothesisError& e)
    {
        log << "hypothesis failure: " << e.what() << '\n';
        return kExitFail;
    }
    catch (const NumericalError& e)
    {
        log << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    catch (const Error& e)
    {
        log << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
    catch (const nlohmann::json::exception& e)
    {
        log << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
    catch (const std::exception& e)
    {
        log << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

// Writes to the file at path, or to fallback when path is empty.
template <class Writer>
void with_output(const std::string& path, std::ostream& fallback, Writer&& write)
{
    if (path.empty())
    {
        write(fallback);
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw InvalidInput("cannot open output file " + path);
    write(f);
}

} // namespace

GeneratorSpec parse_spec(const std::string& json_text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw InvalidInput(std::string("malformed spec JSON: ") + e.what());
    }
    if (!j.is_object())
        throw InvalidInput("spec must be a JSON object");
    for (const char* key : {"P_zeros", "Q_zeros", "r"})
        if (!j.contains(key))
            throw InvalidInput(std::string("spec is missing \"") + key + "\"");
    if (!j["r"].is_number_integer())
        throw InvalidInput("r must be an integer");
    return make_spec(parse_zero_list(j["P_zeros"], "P_zeros"), parse_zero_list(j["Q_zeros"], "Q_zeros"),
                     j["r"].get<int>());
}

GeneratorSpec load_spec(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw InvalidInput("cannot read spec file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_spec(ss.str());
}

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        const GeneratorSpec spec = load_spec(opt.spec_path);
        const HypothesisReport rep = hypothesis_report(spec, opt.grid);
        out << report_json(spec, rep).dump(2) << '\n';
        return rep.all_hold() ? kExitOk : kExitFail;
    });
}

int cmd_roots(const RootsOptions& opt, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        const GeneratorSpec spec = load_spec(opt.spec_path);
        const int m_lo = opt.m ? *opt.m : opt.m_min;
        const int m_hi = opt.m ? *opt.m : opt.m_max;
        if (m_lo < 0 || m_hi < m_lo)
            throw InvalidInput("need 0 <= m-min <= m-max");
        if (!(opt.real_tol > 0))
            throw InvalidInput("tolerances must be positive");

        const HypothesisReport rep = hypothesis_report(spec, opt.grid);
        if (!curve_gate_passes(rep, true) && !opt.force)
        {
            log << "hypotheses fail (use --force to continue)\n";
            return kExitFail;
        }

        const Backend backend = opt.backend.value_or(default_backend(spec));
        const HmSequence seq = generate_hm(spec, m_hi, backend);
        ClassifyConfig cfg;
        cfg.a = rep.a.value_or(0.0);
        cfg.sign_exponent = rep.sign_exponent;
        cfg.real_tol = opt.real_tol;

        std::vector<RootReport> reports;
        for (int m = m_lo; m <= m_hi; ++m)
            reports.push_back(classify_roots(seq, m, cfg));

        with_output(opt.out_path, out, [&](std::ostream& os) {
            os << "m,root_index,re,im,classified_real,sign_ok,interval_ok\n";
            const double s = cfg.sign_exponent;
            const double tol = 1e-6 * (1.0 + std::abs(cfg.a));
            for (const auto& r : reports)
                for (std::size_t k = 0; k < r.roots.size(); ++k)
                {
                    const cplx x = r.roots[k];
                    const bool real = r.classified_real[k];
                    const bool sign_ok = real && s * x.real() > 0;
                    const bool interval_ok = real && s * x.real() >= s * cfg.a - tol;
                    os << r.m << ',' << k << ',' << g17(x.real()) << ',' << g17(x.imag()) << ',' << int(real)
                       << ',' << int(sign_ok) << ',' << int(interval_ok) << '\n';
                }
        });

        int all_real = 0;
        for (const auto& r : reports)
            all_real += r.all_real && r.sign_ok && r.interval_ok;
        log << fmt::format("backend={} m=[{}, {}] a={} sign={} : {}/{} polynomials with all roots real, signed, "
                           "and on the predicted side of a\n",
                           to_string(backend), m_lo, m_hi, rep.a ? g17(*rep.a) : "n/a", rep.sign_exponent, all_real,
                           reports.size());
        if (const auto onset = all_real_onset(seq, cfg, m_lo, m_hi))
            log << "observed all-real onset within range: m = " << *onset << '\n';
        else
            log << "observed all-real onset within range: none\n";
        return kExitOk;
    });
}

int cmd_curve(const CurveOptions& opt, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        const GeneratorSpec spec = load_spec(opt.spec_path);
        if (opt.samples < 2)
            throw InvalidInput("--samples must be >= 2");
        const HypothesisReport rep = hypothesis_report(spec, opt.grid);
        if (!curve_gate_passes(rep, false) && !opt.force)
        {
            log << "curve hypotheses fail (use --force to continue)\n";
            return kExitFail;
        }
        const TauCurve curve = trace_curve(spec, rep, opt.samples, !opt.force);
        with_output(opt.out_path, out, [&](std::ostream& os) {
            os << "theta,tau,z,residual,im_z\n";
            for (const auto& s : curve.samples)
                os << g17(s.theta) << ',' << g17(s.tau) << ',' << g17(s.z) << ',' << g17(s.residual) << ','
                   << g17(s.im_z) << '\n';
        });
        log << "t_a=" << g17(curve.t_a_limit) << " a=" << g17(curve.a_limit) << '\n';
        return kExitOk;
    });
}

int cmd_region(const RegionOptions& opt, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        const GeneratorSpec spec = load_spec(opt.spec_path);
        if (opt.grid < 1)
            throw InvalidInput("--grid must be >= 1");
        if (spec.P.pos_count() < 2)
            throw InvalidInput("region export needs P with two positive zeros");
        const auto [tau1, tau2] = tau1_tau2(spec);

        // The semi-disk radius is t_a when it can be found, tau1 otherwise.
        double semidisk_radius = tau1;
        try
        {
            semidisk_radius = find_t_a(spec);
        }
        catch (const NumericalError&)
        {
            log << "t_a unavailable; semi-disk drawn with radius tau1\n";
        }

        GridParams grid;
        grid.radii = grid.angles = opt.grid;
        const auto sector = sample_region(spec, tau2, std::numbers::pi / spec.r, grid);
        const auto semidisk = sample_region(spec, semidisk_radius, std::numbers::pi, grid);
        with_output(opt.out_path, out, [&](std::ostream& os) {
            os << "re,im,weight,region_tag\n";
            for (const auto& s : sector)
                os << g17(s.t.real()) << ',' << g17(s.t.imag()) << ',' << g17(s.weight) << ",sector\n";
            for (const auto& s : semidisk)
                os << g17(s.t.real()) << ',' << g17(s.t.imag()) << ',' << g17(s.weight) << ",semidisk\n";
        });
        return kExitOk;
    });
}

int cmd_expsign(const ExpSignOptions& opt, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        if (opt.n < 2)
            throw InvalidInput("--n must be >= 2");
        if (opt.b_max < 1)
            throw InvalidInput("--b-max must be >= 1");
        const auto cases = sign_dominance_sweep(opt.n, opt.ell, opt.b_max, opt.n_cap);
        bool all = true;
        out << "n,ell,b,x,sum_re,sum_im,first_term,sign_match\n";
        for (const auto& c : cases)
        {
            out << c.n << ',' << c.ell << ',' << c.b << ',' << g17(c.x) << ',' << g17(c.sum_value.real()) << ','
                << g17(c.sum_value.imag()) << ',' << g17(c.first_term) << ',' << int(c.sign_match) << '\n';
            all = all && c.sign_match;
        }
        return all ? kExitOk : kExitFail;
    });
}

int cmd_residue_check(const ResidueOptions& opt, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        const GeneratorSpec spec = load_spec(opt.spec_path);
        if (opt.m < 0)
            throw InvalidInput("--m must be >= 0");
        double z_re = 0.0;
        if (opt.z == "a")
        {
            const HypothesisReport rep = hypothesis_report(spec, opt.grid);
            if (!rep.a)
                throw HypothesisError("endpoint a unavailable for this spec");
            z_re = *rep.a;
        }
        else
        {
            try
            {
                std::size_t used = 0;
                z_re = std::stod(opt.z, &used);
                if (used != opt.z.size())
                    throw InvalidInput("bad --z value " + opt.z);
            }
            catch (const std::logic_error&)
            {
                throw InvalidInput("bad --z value " + opt.z);
            }
        }
        const cplx z(z_re, opt.z_im);
        const HmSequence seq = generate_hm(spec, opt.m);
        const cplx direct = hm_eval(seq, opt.m, z);
        const cplx residue = residue_sum(spec, z, opt.m);
        const double rel = std::abs(residue - direct) / (1.0 + std::abs(direct));

        ojson j;
        j["m"] = opt.m;
        j["z"] = {{"re", z.real()}, {"im", z.imag()}};
        j["hm_eval"] = {{"re", direct.real()}, {"im", direct.imag()}};
        j["residue_sum"] = {{"re", residue.real()}, {"im", residue.imag()}};
        j["relative_difference"] = rel;
        j["tolerance"] = opt.tolerance;
        j["agree"] = rel <= opt.tolerance;
        out << j.dump(2) << '\n';
        return rel <= opt.tolerance ? kExitOk : kExitFail;
    });
}

} // namespace hypgen::cli
