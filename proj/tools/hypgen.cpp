// hypgen: hypothesis checks, H_m roots, tau-curve and region exports, and
// exponential-sum sign sweeps for generating functions 1/(P(t) + z t^r Q(t)).

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "hypgen/cli.hpp"

namespace
{

void add_grid_options(CLI::App* cmd, hypgen::GridParams& grid)
{
    cmd->add_option("--grid-radii", grid.radii, "radial samples for region checks")->check(CLI::PositiveNumber);
    cmd->add_option("--grid-angles", grid.angles, "angular samples for region checks")->check(CLI::PositiveNumber);
    cmd->add_option("--band", grid.band, "boundary exclusion band (relative)")->check(CLI::Range(0.0, 0.5));
}

} // namespace

int main(int argc, char** argv)
{
    using namespace hypgen;

    CLI::App app{"Zero loci of polynomials generated by 1/(P(t) + z t^r Q(t))"};
    app.require_subcommand(1);

    cli::CheckOptions check;
    auto* c_check = app.add_subcommand("check", "verify the hypotheses and report t_a, tau2, a as JSON");
    c_check->add_option("spec", check.spec_path, "spec JSON file")->required();
    add_grid_options(c_check, check.grid);

    cli::RootsOptions roots;
    std::string backend_name;
    auto* c_roots = app.add_subcommand("roots", "roots of H_m(z) as CSV with classification");
    c_roots->add_option("spec", roots.spec_path, "spec JSON file")->required();
    c_roots->add_option("--m", roots.m, "single index m");
    c_roots->add_option("--m-min", roots.m_min, "first m of the range");
    c_roots->add_option("--m-max", roots.m_max, "last m of the range");
    c_roots->add_option("--backend", backend_name, "exact or float (default: exact when all zeros are rational)")
        ->check(CLI::IsMember({"exact", "float"}));
    c_roots->add_option("--out", roots.out_path, "CSV output file (default stdout)");
    c_roots->add_option("--real-tol", roots.real_tol, "relative tolerance for classifying a root as real");
    c_roots->add_flag("--force", roots.force, "run even when the hypotheses fail");
    add_grid_options(c_roots, roots.grid);

    cli::CurveOptions curve;
    auto* c_curve = app.add_subcommand("curve", "sample the tau-curve and z(theta) as CSV");
    c_curve->add_option("spec", curve.spec_path, "spec JSON file")->required();
    c_curve->add_option("--samples", curve.samples, "number of theta samples");
    c_curve->add_option("--out", curve.out_path, "CSV output file (default stdout)");
    c_curve->add_flag("--force", curve.force, "run even when the hypotheses fail");
    add_grid_options(c_curve, curve.grid);

    cli::RegionOptions region;
    auto* c_region = app.add_subcommand("region", "Im R / Im t over the sector and semi-disk as CSV");
    c_region->add_option("spec", region.spec_path, "spec JSON file")->required();
    c_region->add_option("--grid", region.grid, "samples per polar dimension");
    c_region->add_option("--out", region.out_path, "CSV output file (default stdout)");

    cli::ExpSignOptions expsign;
    auto* c_exp = app.add_subcommand("expsign", "sign dominance of the exponential sum at admissible x");
    c_exp->add_option("--n", expsign.n, "number of roots of -1")->required();
    c_exp->add_option("--ell", expsign.ell, "power l");
    c_exp->add_option("--b-max", expsign.b_max, "largest b");
    c_exp->add_option("--n-cap", expsign.n_cap, "largest n accepted");

    cli::ResidueOptions residue;
    auto* c_res = app.add_subcommand("residue-check", "compare the residue sum with the recurrence value");
    c_res->add_option("spec", residue.spec_path, "spec JSON file")->required();
    c_res->add_option("--m", residue.m, "index m")->required();
    c_res->add_option("--z", residue.z, "real part of z, or 'a' for the endpoint")->required();
    c_res->add_option("--z-im", residue.z_im, "imaginary part of z");
    c_res->add_option("--tol", residue.tolerance, "relative tolerance");
    add_grid_options(c_res, residue.grid);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return cli::kExitInvalid;
    }

    if (!backend_name.empty())
        roots.backend = backend_name == "exact" ? Backend::exact : Backend::floating;

    if (c_check->parsed())
        return cli::cmd_check(check, std::cout, std::cerr);
    if (c_roots->parsed())
        return cli::cmd_roots(roots, std::cout, std::cerr);
    if (c_curve->parsed())
        return cli::cmd_curve(curve, std::cout, std::cerr);
    if (c_region->parsed())
        return cli::cmd_region(region, std::cout, std::cerr);
    if (c_exp->parsed())
        return cli::cmd_expsign(expsign, std::cout, std::cerr);
    if (c_res->parsed())
        return cli::cmd_residue_check(residue, std::cout, std::cerr);
    return cli::kExitInvalid;
}
