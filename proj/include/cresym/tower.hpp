#ifndef CRESYM_TOWER_HPP
#define CRESYM_TOWER_HPP

#include <map>
#include <vector>

#include "cresym/lattice.hpp"
#include "cresym/subset.hpp"

namespace cresym {

/* The iterated blowup tower P^n <- X_0 <- X_1 <- ... <- X_{n-2}, built as
 * fans. Stage -1 is P^n itself; stage j blows up the torus-invariant
 * subvarieties through j+2 coordinate points. Every ray carries a subset
 * label alpha of {0,...,n}; the ray with label alpha is
 * primitive(sum_{i in alpha} rho_i), and it is the exceptional ray of the
 * blowup center through the points indexed by the complement of alpha. */

struct StageFan {
    int n = 0;
    int stage = -1;  // -1 = P^n, up to n-2
    Fan fan;
    std::vector<Subset> ray_labels;  // aligned with fan.rays

    int ray_of_label(Subset s) const;
    // Centers blown up so far, in canonical (size, bits) order.
    std::vector<Subset> centers() const;
};

/* Standard fan of P^n: rho_0 = (-1,...,-1), rho_i = e_i, all n-subsets as
 * maximal cones. Throws for n < 2 (no tower). */
StageFan projective_fan(int n);

/* Stage j of the tower, -1 <= j <= n-2. Stage 0 subdivides all n+1 point
 * cones; stage j+1 subdivides the proper transforms of the cones
 * <rho_i : i in complement(gamma)> for all centers gamma of size j+2, in
 * lexicographic label order. Results are memoized. */
StageFan build_stage(int n, int j);

/* -Identity(n). An automorphism of the final stage, sending the ray labeled
 * alpha to the ray labeled by its complement. */
IntMatrix cremona_reflection(int n);

}  // namespace cresym

#endif
