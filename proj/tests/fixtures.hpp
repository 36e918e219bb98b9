#pragma once

// Specs shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "hypgen/poly_core.hpp"

namespace fixtures
{

inline hypgen::GeneratorSpec exact_spec(std::vector<long> p, std::vector<long> q, int r)
{
    std::vector<mpq_class> pq(p.begin(), p.end()), qq(q.begin(), q.end());
    return hypgen::make_spec(hypgen::make_zero_set(pq), hypgen::make_zero_set(qq), r);
}

/// P = (t+2)(t-1)(t-2)(t-4), Q = (t+1)(t-3)(t-5), r = 3.
inline hypgen::GeneratorSpec example() { return exact_spec({-2, 1, 2, 4}, {-1, 3, 5}, 3); }

/// Interlacing P = (t-1)(t-3)(t-5), Q = (t-2)(t-4), r = 3; H_16 is not hyperbolic.
inline hypgen::GeneratorSpec interlacing() { return exact_spec({1, 3, 5}, {2, 4}, 3); }

/// P = (t-1)(t-2)(t-3), Q = (t+3)(t-4), r = 3.
inline hypgen::GeneratorSpec positive_z() { return exact_spec({1, 2, 3}, {-3, 4}, 3); }

/// All P zeros positive, all Q zeros negative.
inline hypgen::GeneratorSpec positive_negative() { return exact_spec({1, 2, 4}, {-1, -2}, 3); }

inline std::string spec_path(const std::string& name) { return std::string(HYPGEN_SPEC_DIR) + "/" + name; }

} // namespace fixtures
