#pragma once

// Command implementations behind the hypgen executable. Each command writes
// its primary output (JSON or CSV) to `out`, diagnostics to `log`, and
// returns the process exit code:
//   0 success / all hypotheses hold, 1 a hypothesis or check fails,
//   2 invalid input, 3 numerical failure.

#include <iosfwd>
#include <optional>
#include <string>

#include "hypgen/hm_seq.hpp"
#include "hypgen/poly_core.hpp"
#include "hypgen/rfunc.hpp"

namespace hypgen::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// Parses {"P_zeros": [...], "Q_zeros": [...], "r": int}. Entries are JSON
/// numbers or strings holding an integer, a decimal, or "p/q". The spec is
/// exact when no entry is a non-integer JSON number.
GeneratorSpec parse_spec(const std::string& json_text);
GeneratorSpec load_spec(const std::string& path);

struct CheckOptions
{
    std::string spec_path;
    GridParams grid;
};

struct RootsOptions
{
    std::string spec_path;
    std::optional<int> m;
    int m_min = 0;
    int m_max = 0;
    std::optional<Backend> backend;
    std::string out_path; ///< empty: write CSV to `out`
    bool force = false;
    double real_tol = 1e-8;
    GridParams grid;
};

struct CurveOptions
{
    std::string spec_path;
    int samples = 200;
    std::string out_path;
    bool force = false;
    GridParams grid;
};

struct RegionOptions
{
    std::string spec_path;
    int grid = 256;
    std::string out_path;
};

struct ExpSignOptions
{
    int n = 2;
    int ell = 0;
    int b_max = 10;
    int n_cap = 64;
};

struct ResidueOptions
{
    std::string spec_path;
    int m = 0;
    std::string z = "0"; ///< a real number, or "a" for the computed endpoint
    double z_im = 0.0;
    double tolerance = 1e-8;
    GridParams grid;
};

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& log);
int cmd_roots(const RootsOptions& opt, std::ostream& out, std::ostream& log);
int cmd_curve(const CurveOptions& opt, std::ostream& out, std::ostream& log);
int cmd_region(const RegionOptions& opt, std::ostream& out, std::ostream& log);
int cmd_expsign(const ExpSignOptions& opt, std::ostream& out, std::ostream& log);
int cmd_residue_check(const ResidueOptions& opt, std::ostream& out, std::ostream& log);

} // namespace hypgen::cli
