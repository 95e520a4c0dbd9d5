#ifndef CRESYM_INTERSECTION_HPP
#define CRESYM_INTERSECTION_HPP

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "cresym/simplex.hpp"
#include "cresym/tower.hpp"

namespace cresym {

using ZVec = std::vector<mpz_class>;
using ZMatrix = std::vector<ZVec>;

/* Geometric basis bookkeeping for one tower stage, optionally extended by
 * extra (non-toric) blowup points n+2,...,m in Theorem-1.1 numbering.
 *
 * Index layout, shared by the divisor basis {H, E_gamma, E_i} and the curve
 * basis {h, e_gamma, e_i}:
 *   0            : H / h
 *   1..C         : centers gamma in (size, bits) order
 *   C+1..C+extras: extra points
 * Coefficient vectors are plain coordinates; a curve d*h - sum a_i e_i has
 * v[0] = d and -a at the e-entries. */
struct StageBasis {
    int n = 0;
    int stage = -1;
    int extras = 0;
    std::vector<Subset> centers;

    int dim() const { return 1 + static_cast<int>(centers.size()) + extras; }
    int center_index(Subset gamma) const;  // -1 if absent
    // Theorem-1.1 point numbering: 1..n+1 are the toric fixed points
    // (i -> center {i-1}), i > n+1 the extra points.
    int point_index(int i) const;

    static StageBasis make(int n, int stage, int extras);
};

/* Change of basis between toric divisor classes (one coefficient per ray)
 * and the geometric basis, in the form the intersection presentation uses:
 *   D_{singleton i}      <-> -H + sum_{centers gamma not containing i} E_gamma
 *   D_{label alpha, |alpha|>1} <-> -E_{complement(alpha)}
 * Both directions are integer matrices; toric_to_geom * geom_to_toric = id,
 * and the other composition is the identity modulo the n linear relations. */
struct BasisChange {
    StageBasis basis;       // extras = 0
    ZMatrix toric_to_geom;  // dim x n_rays
    ZMatrix geom_to_toric;  // n_rays x dim
};

BasisChange divisor_basis_change(const StageFan& sf);

/* Sum of all ray divisors in the geometric basis:
 * -(n+1)H + sum (n-|gamma|) E_gamma. */
ZVec canonical_class(const StageFan& sf);

/* True iff the ray set spans no cone (a Stanley-Reisner relation). */
bool is_nonface(const StageFan& sf, const std::vector<int>& rays);

struct PairingTable {
    StageBasis basis;
    ZMatrix m;  // divisor basis x curve basis
    const mpz_class& at(int div_idx, int curve_idx) const { return m[div_idx][curve_idx]; }
};

enum class MoriMembership { Interior, Boundary, Outside };

/* Everything the later modules need about one stage: the pairing, the wall
 * curve classes in geometric coordinates, and an exact Mori-cone oracle.
 * Construction verifies, per wall, that the geometric pairing reproduces the
 * toric computation, and that the wall classes span the curve lattice. */
class StageRing {
  public:
    StageRing(int n, int stage, int extras);

    const StageFan& stage_fan() const { return sf_; }
    const StageBasis& basis() const { return basis_; }
    const BasisChange& change() const { return change_; }
    const PairingTable& table() const { return table_; }
    // Geometric coordinates (toric part only; extra entries absent).
    const ZMatrix& wall_classes() const { return wall_curves_; }

    mpz_class pair(const ZVec& divisor, const ZVec& curve) const;

    /* Exact rational cone membership for the toric part of a curve class
     * (coordinates of length 1 + #centers). */
    MoriMembership mori_membership(const ZVec& toric_curve) const;

    /* The sound effectivity over-approximation for classes with extra-point
     * entries: toric part in the Mori cone, and the extra coordinates either
     * all <= 0 (nonnegative multiplicities) or all >= 0 (adding fiber lines). */
    bool effective_possible(const ZVec& curve) const;

    /* Fast negative test reusing Farkas certificates from earlier failed
     * membership LPs; Outside answers are exact, other answers defer. */
    bool known_outside(const ZVec& toric_curve) const;

  private:
    StageFan sf_;
    StageBasis basis_;
    BasisChange change_;
    std::vector<WallData> walls_;
    ZMatrix wall_curves_;
    PairingTable table_;
    ZVec interior_point_;  // sum of wall classes
    mutable std::vector<std::vector<Rat>> farkas_cache_;

    void build_wall_classes();
    void verify_duality() const;
};

/* Shared, memoized rings. */
std::shared_ptr<const StageRing> get_ring(int n, int stage, int extras);

/* Spec-level wrappers. */
PairingTable pairing(const StageFan& sf, int extras);
PairingTable extend_with_points(const PairingTable& t, int k);

/* Curve coordinates for beta = d*h - sum_{i=1..m} a_i e_i. */
ZVec curve_from_point_data(const StageBasis& basis, const mpz_class& d, const std::vector<mpz_class>& a);

}  // namespace cresym

#endif
