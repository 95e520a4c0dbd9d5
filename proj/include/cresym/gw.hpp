#ifndef CRESYM_GW_HPP
#define CRESYM_GW_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace cresym {

/* Genus-0 Gromov-Witten invariants of P^n with hyperplane-power insertions,
 * <h^{a_1},...,h^{a_r}>_{0,d}, computed by WDVV reconstruction from the
 * one line through two points. All arithmetic is exact.
 *
 * Rules the evaluator satisfies:
 *  (i)   dimension gate: 0 unless sum(a_i - 1) = (n+1)d + n - 3;
 *  (ii)  d = 0: exactly three insertions with a1+a2+a3 = n give 1;
 *  (iii) divisor axiom: an insertion h contributes a factor d (internal);
 *  (iv)  WDVV: for distinguished classes g1..g4 and residual multiset S,
 *        sum over d1+d2=d, S1+S2=S, e+f=n of
 *        I_{d1}(g1,g2,S1,h^e) * I_{d2}(h^f,g3,g4,S2) is symmetric in g2<->g3.
 * Unknowns are solved level by level in increasing (d, r) with memoization;
 * within a level the WDVV instances form a linear system solved exactly. */

struct GWQuery {
    int n = 0;
    long d = 0;
    std::vector<int> insertions;  // canonical form: sorted descending

    void canonicalize();
};

/* Public entry; insertions must lie in [2, n]. */
mpz_class gw_pn(const GWQuery& q);

/* Number of rational plane curves of degree d through 3d-1 general points;
 * the classical recursion, independent of the WDVV engine. */
mpz_class kontsevich_p2(long d);

struct Stationary {
    long r = 0;
    mpz_class value;
};

/* r = ((n+1)d + n - 3)/(n-1) when integral; value = <pt^r>_{0,d}. */
std::optional<Stationary> stationary(int n, long d);

struct TradeResult {
    bool tradeable = false;
    std::string reason;   // set when not tradeable
    GWQuery query;        // the equivalent P^n stationary query
    long traded = 0;      // number of point conditions absorbed/released
};

/* Trade blowup-point conditions (all multiplicities 0 or 1) for point
 * insertions: <pt^r>_{dh - sum a_i e_i} = <pt^{r + sum a_i}>^{P^n}_{dh}. */
TradeResult trade_points(int n, int m, const mpz_class& d,
                         const std::vector<mpz_class>& a, long r);

struct SymmetrySide {
    mpz_class d;
    std::vector<mpz_class> a;
    bool computable = false;
    std::string reason;
    mpz_class value;  // valid when computable
};

struct SymmetryReport {
    SymmetrySide beta, beta_prime;
    bool fixed_class = false;          // beta' == beta
    std::optional<bool> equal;         // set when both sides computed
    std::string beta_certificate;      // nonexceptionality status notes
    std::string beta_prime_certificate;
};

SymmetryReport symmetry_check(int n, int m, const mpz_class& d,
                              const std::vector<mpz_class>& a, long r,
                              long bound = -1);

}  // namespace cresym

#endif
