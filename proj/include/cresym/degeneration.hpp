#ifndef CRESYM_DEGENERATION_HPP
#define CRESYM_DEGENERATION_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cresym/intersection.hpp"

namespace cresym {

/* Degeneration-splitting machinery: the class relations for curves embedded
 * in a blowup center, the enumeration of candidate splittings
 *   beta_1 = beta - sum_alpha ( b_alpha e_alpha
 *            + sum_gamma a_{alpha,gamma} (e_gamma - sum_epsilon e_epsilon) ),
 * (alpha of size j+2, gamma a proper subset of size <= j, epsilon running
 * over gamma c epsilon c alpha with |epsilon| = j+1, and e_{} = h), and
 * nonexceptionality certification: a class whose splittings all fail to be
 * effective has equal stationary invariants before and after the blowup. */

/* Class of the curve _alpha e_gamma inside the exceptional divisor E_alpha,
 * as coordinates at stage j+1:
 *   e_gamma - sum_epsilon e_epsilon + (j+1-|gamma|) e_alpha. */
ZVec embedded_center_class(int n, int j, Subset alpha, Subset gamma);

/* The section-at-infinity variant: embedded class minus (j+1-|gamma|) e_alpha. */
ZVec tilde_class(int n, int j, Subset alpha, Subset gamma);

/* Basis used by the two functions above and by candidates: centers of sizes
 * 1..j+2 plus `extras` extra points. Coincides with the stage-(j+1) tower
 * basis whenever that stage exists. */
StageBasis splitting_basis(int n, int j, int extras);

struct SplittingCandidate {
    int j = 0;
    std::map<Subset, long> b;                     // alpha -> b_alpha
    std::map<std::pair<Subset, Subset>, long> a;  // (alpha, gamma) -> coefficient
    ZVec beta1;                                   // coordinates on splitting_basis
};

/* Exhaustive enumeration of the nonzero candidates with every coefficient in
 * [0, bound]; beta is given on splitting_basis(n, j, extras). Intended for
 * desk-scale inputs; throws when the product space exceeds 2^24. */
std::vector<SplittingCandidate> enumerate_splittings(int n, int j, const ZVec& beta,
                                                     long bound);

enum class CertKind { DeclaredExtremal, MoriVerified, None };

struct Certificate {
    CertKind kind = CertKind::None;
    std::string provenance;
};

/* Built-in certificates: the family nh - e_1 - ... - e_{n+3} is declared
 * extremal (paper assertion, recorded as such); otherwise classes whose
 * toric part sits on the Mori-cone boundary of the final stage get a
 * verified certificate; everything else gets none. */
Certificate builtin_certificate(int n, int m, const mpz_class& d,
                                const std::vector<mpz_class>& a);

enum class CertStatus { Certified, Inconclusive };

struct StageReport {
    int j = 0;
    std::string method;  // "extremality", "enumeration", or a mix
    long candidates_examined = 0;
    long effective_found = 0;
    bool passed = false;
    std::vector<SplittingCandidate> witnesses;  // effective-possible candidates
};

struct CertResult {
    CertStatus status = CertStatus::Inconclusive;
    std::vector<StageReport> stages;
    std::string note;
};

/* Certify beta = d*h - sum_{i=1..m} a_i e_i nonexceptional with respect to
 * the full tower: every stage j = 0..n-3 must admit no effective nonzero
 * splitting within the bound. Under an extremality certificate the b-part
 * and the a-parts visible after pushing forward to the point blowup are
 * excluded exactly; anything left is enumerated against the Mori oracle.
 * Never certifies when an effective-possible candidate is found. */
CertResult certify_nonexceptional(int n, int m, const mpz_class& d,
                                  std::vector<mpz_class> a, const Certificate& cert,
                                  long bound);

}  // namespace cresym

#endif
