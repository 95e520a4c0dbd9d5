#ifndef CRESYM_SIMPLEX_HPP
#define CRESYM_SIMPLEX_HPP

#include <gmpxx.h>

#include <vector>

namespace cresym {

/* Exact rational linear programming and dense linear solves. Simplex uses
 * Bland's rule, so pivoting is deterministic and cycling-free. */

using Rat = mpq_class;
using RatMatrix = std::vector<std::vector<Rat>>;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
    // maximize c.x  subject to  A x = b, x >= 0. Empty c = feasibility only.
    RatMatrix a;
    std::vector<Rat> b;
    std::vector<Rat> c;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat objective;
    std::vector<Rat> x;
    // When infeasible: y with y.A_j <= 0 for every column j and y.b > 0,
    // verified exactly before being returned. Empty if extraction failed.
    std::vector<Rat> farkas;
};

LpSolution solve_lp(const LpProblem& p);

/* Gaussian elimination helpers (exact). */
int rat_rank(RatMatrix a);

struct LinearSolve {
    bool consistent = false;
    bool unique = false;
    std::vector<Rat> x;  // one solution when consistent
};

// Solve A x = b.
LinearSolve solve_linear(RatMatrix a, std::vector<Rat> b);

}  // namespace cresym

#endif
