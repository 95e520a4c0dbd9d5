#ifndef CRESYM_LATTICE_HPP
#define CRESYM_LATTICE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cresym {

/* Exact lattice geometry over Z^n: fans as ray tables plus maximal cones,
 * star subdivision, wall enumeration, and fan automorphism checks.
 * Everything is integer arithmetic; no floating point. */

using Int = long long;
using LatticeVector = std::vector<Int>;
using IntMatrix = std::vector<std::vector<Int>>;  // row-major, n x n

/* A cone is a sorted list of indices into the owning fan's ray table.
 * All fans here are simplicial, so faces are subsets; only maximal cones
 * are stored. */
using Cone = std::vector<int>;

struct Fan {
    int dim = 0;
    std::vector<LatticeVector> rays;
    std::vector<Cone> max_cones;

    // Index of an exact ray vector, or -1.
    int ray_index(const LatticeVector& v) const;
    // True iff the sorted index set spans a cone (= is a subset of some
    // maximal cone).
    bool is_cone(const Cone& sorted_rays) const;
};

struct FanReport {
    bool smooth = false;
    bool complete = false;
    int ray_count = 0;
    int max_cone_count = 0;
};

struct WallData {
    Cone wall;                    // codimension-1 cone, sorted ray indices
    std::array<int, 2> adjacent;  // the two maximal cones containing it
    // Wall relation sum_rho c_rho * rho = 0, normalized so the two rays not
    // on the wall have coefficient +1. Keys are ray indices.
    std::map<int, Int> relation;
};

struct LatticeMapResult {
    bool automorphism = false;
    std::vector<int> ray_image;   // ray index -> ray index (when automorphism)
    std::vector<int> cone_image;  // max cone index -> max cone index
    Cone witness;                 // a cone whose image is not a cone, otherwise empty
};

/* v / gcd(|v_i|). Throws std::invalid_argument("not a ray direction") on 0. */
LatticeVector primitive(const LatticeVector& v);

/* Exact determinant of a small integer matrix. */
Int det_int(const IntMatrix& m);

/* Smoothness: every maximal cone is a Z-basis. Completeness: every
 * codimension-1 cone lies in exactly two maximal cones, plus point location
 * for a deterministic pseudo-random sample (seeded). A sample point interior
 * to two maximal cones means overlapping cones; that throws "not a fan". */
FanReport validate_fan(const Fan& f, std::uint64_t seed = 20140925);

/* Star subdivision along the cone spanned by the given (sorted) ray indices.
 * The new ray is primitive(sum of the cone's rays); every maximal cone
 * containing the cone is replaced accordingly. */
Fan star_subdivision(const Fan& f, const Cone& c);

/* All walls of a complete smooth fan with their normalized relations. */
std::vector<WallData> enumerate_walls(const Fan& f);

/* Apply a unimodular lattice map M to the fan. Returns the induced ray and
 * cone bijections when M is a fan automorphism, otherwise a witness. */
LatticeMapResult apply_lattice_map(const Fan& f, const IntMatrix& m);

}  // namespace cresym

#endif
