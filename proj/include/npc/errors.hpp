#ifndef NPC_ERRORS_HPP
#define NPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace npc
{
// Structured no-solution outcome (e.g. phase matching infeasible at the
// requested operating point). Distinct from config/validation problems.
struct NoSolutionError : std::runtime_error
{
    explicit NoSolutionError(const std::string &what_arg) : std::runtime_error(what_arg) {}
};

// Internal numeric failure: NaN, non-convergence, or a sanity guard
// tripping (e.g. a refractive index outside the physical window).
struct NumericError : std::runtime_error
{
    explicit NumericError(const std::string &what_arg) : std::runtime_error(what_arg) {}
};
}

#endif
