#ifndef CRESYM_CREMONA_HPP
#define CRESYM_CREMONA_HPP

#include <optional>
#include <string>

#include "cresym/intersection.hpp"

namespace cresym {

/* The Cremona involution on the fully blown-up space, in two independent
 * incarnations that the test suites cross-assert:
 *   - fan side: ray-label complementation conjugated into the geometric
 *     basis (divisor pullback), with the curve pushforward as its adjoint
 *     under the intersection pairing;
 *   - closed form: the degree/multiplicity transformation
 *       d' = n d - (n-1) sum_{i<=n+1} a_i
 *       a'_i = d - sum_{j != i, j <= n+1} a_j   (i <= n+1), a'_i = a_i else.
 * Extra points i > n+1 are fixed pointwise. */
struct CremonaMap {
    int n = 0;
    int m = 0;  // number of blown-up points, >= n+1
    StageBasis basis;
    ZMatrix div_pullback;       // column j = coordinates of tau*(basis_j)
    ZMatrix curve_pushforward;  // column j = coordinates of tau_*(basis_j)
};

CremonaMap build_cremona(int n, int m);

/* Spec-facing halves; both return the full map. */
inline CremonaMap induced_divisor_action(int n, int m) { return build_cremona(n, m); }
inline CremonaMap curve_pushforward(int n, int m) { return build_cremona(n, m); }

struct TransformedClass {
    mpz_class d;
    std::vector<mpz_class> a;  // length m
};

/* Theorem-style closed form; pure arithmetic, negative outputs allowed. */
TransformedClass cremona_transform_class(int n, int m, const mpz_class& d,
                                         std::vector<mpz_class> a);

/* Canonical class including the (n-1) coefficients on extra points. */
ZVec canonical_class_full(const CremonaMap& cm);

/* Matrix-applied actions on coordinate vectors. */
ZVec apply_matrix(const ZMatrix& m, const ZVec& v);

struct ConsistencyReport {
    bool ok = true;
    long classes_checked = 0;
    std::string failure;  // first failing check, empty when ok
};

/* (a) closed form == fan-derived pushforward on span{h, e_points, extras},
 * with vanishing coefficients on every e_gamma, |gamma| >= 2;
 * (b) anticanonical degree preserved; (c) involution; (d) adjunction.
 * Exact on full bases plus `samples` seeded random classes. */
ConsistencyReport verify_consistency(int n, int m, long samples = 1000,
                                     std::uint64_t seed = 412);

}  // namespace cresym

#endif
