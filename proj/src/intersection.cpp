#include "cresym/intersection.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cresym {

int StageBasis::center_index(Subset gamma) const {
    for (size_t i = 0; i < centers.size(); ++i)
        if (centers[i] == gamma) return static_cast<int>(i) + 1;
    return -1;
}

int StageBasis::point_index(int i) const {
    if (i < 1) throw std::invalid_argument("points are numbered from 1");
    if (i <= n + 1) return center_index(1u << (i - 1));
    int k = i - (n + 2);
    if (k >= extras) return -1;
    return 1 + static_cast<int>(centers.size()) + k;
}

StageBasis StageBasis::make(int n, int stage, int extras) {
    StageBasis b;
    b.n = n;
    b.stage = stage;
    b.extras = extras;
    for (Subset g = 1; g < (1u << (n + 1)); ++g) {
        int sz = subset_size(g);
        if (sz >= 1 && sz <= stage + 1) b.centers.push_back(g);
    }
    std::sort(b.centers.begin(), b.centers.end(), subset_less);
    return b;
}

BasisChange divisor_basis_change(const StageFan& sf) {
    BasisChange bc;
    bc.basis = StageBasis::make(sf.n, sf.stage, 0);
    const int dim = bc.basis.dim();
    const int nrays = static_cast<int>(sf.fan.rays.size());
    bc.toric_to_geom.assign(dim, ZVec(nrays, 0));
    bc.geom_to_toric.assign(nrays, ZVec(dim, 0));

    for (int r = 0; r < nrays; ++r) {
        Subset lab = sf.ray_labels[r];
        if (subset_size(lab) == 1) {
            int i = subset_elements(lab)[0];
            bc.toric_to_geom[0][r] = -1;
            for (size_t c = 0; c < bc.basis.centers.size(); ++c)
                if (!subset_contains(bc.basis.centers[c], i))
                    bc.toric_to_geom[c + 1][r] = 1;
        } else {
            Subset gamma = subset_complement(lab, sf.n);
            int ci = bc.basis.center_index(gamma);
            if (ci < 0) throw std::logic_error("exceptional ray without center");
            bc.toric_to_geom[ci][r] = -1;
        }
    }

    // Section: E_gamma -> -D_{complement(gamma)};
    // H -> -D_{{0}} - sum_{centers gamma not containing 0} D_{complement(gamma)}.
    int ray0 = sf.ray_of_label(1u << 0);
    bc.geom_to_toric[ray0][0] = -1;
    for (size_t c = 0; c < bc.basis.centers.size(); ++c) {
        Subset gamma = bc.basis.centers[c];
        int r = sf.ray_of_label(subset_complement(gamma, sf.n));
        if (r < 0) throw std::logic_error("center without exceptional ray");
        bc.geom_to_toric[r][c + 1] = -1;
        if (!subset_contains(gamma, 0)) bc.geom_to_toric[r][0] -= 1;
    }
    return bc;
}

ZVec canonical_class(const StageFan& sf) {
    BasisChange bc = divisor_basis_change(sf);
    ZVec k(bc.basis.dim(), 0);
    for (size_t r = 0; r < sf.fan.rays.size(); ++r)
        for (int g = 0; g < bc.basis.dim(); ++g) k[g] += bc.toric_to_geom[g][r];
    return k;
}

bool is_nonface(const StageFan& sf, const std::vector<int>& rays) {
    Cone c = rays;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (int r : c)
        if (r < 0 || r >= static_cast<int>(sf.fan.rays.size()))
            throw std::invalid_argument("ray index out of range");
    return !sf.fan.is_cone(c);
}

StageRing::StageRing(int n, int stage, int extras)
    : sf_(build_stage(n, stage)),
      basis_(StageBasis::make(n, stage, extras)),
      change_(divisor_basis_change(sf_)),
      walls_(enumerate_walls(sf_.fan)) {
    build_wall_classes();
    verify_duality();

    // The pairing table itself: H.h = 1, E.e = -1 blocks, extras diagonal.
    table_.basis = basis_;
    table_.m.assign(basis_.dim(), ZVec(basis_.dim(), 0));
    table_.m[0][0] = 1;
    for (int i = 1; i < basis_.dim(); ++i) table_.m[i][i] = -1;
}

void StageRing::build_wall_classes() {
    const int tdim = change_.basis.dim();
    const int nrays = static_cast<int>(sf_.fan.rays.size());

    // Toric-side representatives of the actual geometric divisor classes:
    // E_gamma = D_{complement(gamma)},
    // H = D_{{0}} + sum_{centers gamma not containing 0} D_{complement(gamma)};
    // these are the negatives of the geom_to_toric section columns.
    ZMatrix rep(tdim, ZVec(nrays, 0));
    for (int g = 0; g < tdim; ++g)
        for (int r = 0; r < nrays; ++r) rep[g][r] = -change_.geom_to_toric[r][g];

    wall_curves_.assign(walls_.size(), ZVec(tdim, 0));
    for (size_t w = 0; w < walls_.size(); ++w) {
        ZVec pairings(tdim, 0);
        for (const auto& [ray, coeff] : walls_[w].relation)
            for (int g = 0; g < tdim; ++g) pairings[g] += rep[g][ray] * static_cast<long>(coeff);
        // Duality: x_h = H.C, x_gamma = -E_gamma.C.
        wall_curves_[w][0] = pairings[0];
        for (int g = 1; g < tdim; ++g) wall_curves_[w][g] = -pairings[g];
    }

    interior_point_.assign(tdim, 0);
    for (const auto& wc : wall_curves_)
        for (int g = 0; g < tdim; ++g) interior_point_[g] += wc[g];
}

void StageRing::verify_duality() const {
    const int tdim = change_.basis.dim();
    const int nw = static_cast<int>(wall_curves_.size());

    // One elimination of [A | I], A = (wall class coordinates) as columns,
    // expresses every basis curve rationally in wall classes; then pairing
    // each geometric divisor toric-side against those expressions must
    // reproduce the canonical table exactly.
    RatMatrix a(tdim, std::vector<Rat>(nw + tdim, Rat(0)));
    for (int g = 0; g < tdim; ++g) {
        for (int w = 0; w < nw; ++w) a[g][w] = Rat(wall_curves_[w][g]);
        a[g][nw + g] = 1;
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < nw && rank < tdim; ++col) {
        int piv = -1;
        for (int i = rank; i < tdim; ++i)
            if (a[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        Rat d = a[rank][col];
        for (auto& v : a[rank]) v /= d;
        for (int i = 0; i < tdim; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (int j = 0; j < nw + tdim; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank != tdim) throw std::logic_error("pairing singular: wall classes do not span");

    // Toric pairing of geometric divisor g with wall w, independent route.
    const int nrays = static_cast<int>(sf_.fan.rays.size());
    ZMatrix rep(tdim, ZVec(nrays, 0));
    for (int g = 0; g < tdim; ++g)
        for (int r = 0; r < nrays; ++r) rep[g][r] = -change_.geom_to_toric[r][g];
    auto toric_pair = [&](int g, int w) {
        mpz_class s = 0;
        for (const auto& [ray, coeff] : walls_[w].relation) s += rep[g][ray] * static_cast<long>(coeff);
        return s;
    };

    for (int target = 0; target < tdim; ++target) {
        // lambda solving  sum_w lambda_w * wall_w = basis curve `target`:
        // lambda[pivot_col[i]] = a[i][nw + target].
        for (int g = 0; g < tdim; ++g) {
            Rat direct = 0;
            for (int i = 0; i < tdim; ++i) {
                const Rat& lam = a[i][nw + target];
                if (lam == 0) continue;
                direct += lam * Rat(toric_pair(g, pivot_col[i]));
            }
            Rat expected = (g == target) ? Rat(g == 0 ? 1 : -1) : Rat(0);
            if (direct != expected) throw std::logic_error("pairing table disagrees with toric computation");
        }
    }
}

mpz_class StageRing::pair(const ZVec& divisor, const ZVec& curve) const {
    if (divisor.size() != curve.size() || static_cast<int>(divisor.size()) != basis_.dim())
        throw std::invalid_argument("pairing dimension mismatch");
    mpz_class out = 0;
    for (int i = 0; i < basis_.dim(); ++i)
        for (int j = 0; j < basis_.dim(); ++j) out += divisor[i] * table_.m[i][j] * curve[j];
    return out;
}

bool StageRing::known_outside(const ZVec& toric_curve) const {
    for (const auto& y : farkas_cache_) {
        Rat s = 0;
        for (size_t i = 0; i < y.size(); ++i) s += y[i] * Rat(toric_curve[i]);
        if (s > 0) return true;  // certificate separates the class from the cone
    }
    return false;
}

MoriMembership StageRing::mori_membership(const ZVec& toric_curve) const {
    const int tdim = change_.basis.dim();
    if (static_cast<int>(toric_curve.size()) != tdim)
        throw std::invalid_argument("mori_membership expects toric-part coordinates");
    if (known_outside(toric_curve)) return MoriMembership::Outside;

    const int nw = static_cast<int>(wall_curves_.size());
    LpProblem p;
    p.a.assign(tdim, std::vector<Rat>(nw + 1));
    p.b.resize(tdim);
    p.c.assign(nw + 1, Rat(0));
    p.c[nw] = 1;  // maximize the interior-direction coefficient t
    for (int g = 0; g < tdim; ++g) {
        for (int w = 0; w < nw; ++w) p.a[g][w] = Rat(wall_curves_[w][g]);
        p.a[g][nw] = Rat(interior_point_[g]);
        p.b[g] = Rat(toric_curve[g]);
    }
    LpSolution s = solve_lp(p);
    if (s.status == LpStatus::Infeasible) {
        if (!s.farkas.empty()) farkas_cache_.push_back(s.farkas);
        return MoriMembership::Outside;
    }
    if (s.status == LpStatus::Unbounded) throw std::logic_error("Mori cone not pointed");
    return s.objective > 0 ? MoriMembership::Interior : MoriMembership::Boundary;
}

bool StageRing::effective_possible(const ZVec& curve) const {
    if (static_cast<int>(curve.size()) != basis_.dim())
        throw std::invalid_argument("effective_possible expects full coordinates");
    const int tdim = change_.basis.dim();
    ZVec toric(curve.begin(), curve.begin() + tdim);
    bool nonneg_mult = true, nonneg_coord = true;
    for (int k = tdim; k < basis_.dim(); ++k) {
        if (curve[k] > 0) nonneg_mult = false;   // multiplicity = -coordinate
        if (curve[k] < 0) nonneg_coord = false;
    }
    if (!nonneg_mult && !nonneg_coord) return false;
    return mori_membership(toric) != MoriMembership::Outside;
}

std::shared_ptr<const StageRing> get_ring(int n, int stage, int extras) {
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const StageRing>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, stage, extras);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ring = std::make_shared<const StageRing>(n, stage, extras);
    cache[key] = ring;
    return ring;
}

PairingTable pairing(const StageFan& sf, int extras) {
    if (extras < 0) throw std::invalid_argument("extras must be >= 0");
    return get_ring(sf.n, sf.stage, extras)->table();
}

PairingTable extend_with_points(const PairingTable& t, int k) {
    if (k < 0) throw std::invalid_argument("extras must be >= 0");
    PairingTable out;
    out.basis = t.basis;
    out.basis.extras += k;
    const int d = out.basis.dim();
    out.m.assign(d, ZVec(d, 0));
    for (int i = 0; i < t.basis.dim(); ++i)
        for (int j = 0; j < t.basis.dim(); ++j) out.m[i][j] = t.m[i][j];
    for (int i = t.basis.dim(); i < d; ++i) out.m[i][i] = -1;
    return out;
}

ZVec curve_from_point_data(const StageBasis& basis, const mpz_class& d, const std::vector<mpz_class>& a) {
    ZVec v(basis.dim(), 0);
    v[0] = d;
    for (size_t i = 0; i < a.size(); ++i) {
        int idx = basis.point_index(static_cast<int>(i) + 1);
        if (idx < 0) throw std::invalid_argument("point index outside basis");
        v[idx] -= a[i];
    }
    return v;
}

}  // namespace cresym
