#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maxrep::cli {

// args excludes the program name; returns the process exit code
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// eq_tol resolution: flag, then MAXREP_TOL, then the file option, then the default
double resolve_eq_tol(const double* flag, const char* env, const double* file);

}  // namespace maxrep::cli
