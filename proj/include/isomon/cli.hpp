#pragma once

// Command dispatch for the isomon tool. Exit codes: 0 pass, 1 certificate
// failure, 2 input error, 3 numerical abort.

#include <iosfwd>
#include <string>
#include <vector>

#include "isomon/flows.hpp"
#include "isomon/lax.hpp"

namespace isomon {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3", "0.5,-1", "[0.5, -1]" or "0.5-1i".
cplx parse_complex(const std::string& text);

/// "c[n]", "t[n][j][a]" or "t[inf][j][a]" (1-based n and a).
DeformationParameter parse_parameter(const std::string& text);

/// Residual of u'' = 2u^3 + t u + alpha along sampled (t, u) pairs, using
/// fourth-order differences at interior points. Samples must be evenly spaced.
double painleve2_residual(const std::vector<cplx>& t, const std::vector<cplx>& u, cplx alpha);

}  // namespace isomon
