#pragma once

#include "phantom/cnf.hpp"

#include <string>
#include <vector>

namespace phantom {

enum class SolveStatus { Sat, Unsat, Timeout, Error };

struct SolveResult {
    SolveStatus status = SolveStatus::Error;
    std::vector<bool> model;  // indexed by variable, [0] unused
    std::string message;
    bool sat() const { return status == SolveStatus::Sat; }
};

/// Where to solve: the built-in CDCL solver, or an external binary speaking
/// DIMACS in / SAT-competition output. The external path is resolved from the
/// PHANTOM_SAT_SOLVER environment variable when constructed via from_env.
struct SolverHandle {
    enum class Mode { Internal, External };
    Mode mode = Mode::Internal;
    std::string path;
    std::vector<std::string> args;
    double timeout_seconds = 0;  // 0: no limit

    static SolverHandle internal(double timeout_seconds = 0);
    static SolverHandle external(std::string path, std::vector<std::string> args = {},
                                 double timeout_seconds = 0);
    /// External if PHANTOM_SAT_SOLVER is set, internal otherwise.
    static SolverHandle from_env(double timeout_seconds = 0);
};

SolveResult solve(const CnfFormula& f, const SolverHandle& handle);

/// Built-in CDCL: watched literals, VSIDS, phase saving, Luby restarts,
/// LBD-based clause reduction.
SolveResult solve_internal(const CnfFormula& f, double timeout_seconds = 0);

SolveResult solve_external(const CnfFormula& f, const SolverHandle& handle);

}  // namespace phantom
