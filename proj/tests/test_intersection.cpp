#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cresym/intersection.hpp"

using namespace cresym;

namespace {

ZVec e_class(const StageBasis& b, Subset gamma, long coeff = 1) {
    ZVec v(b.dim(), 0);
    v[b.center_index(gamma)] = coeff;
    return v;
}

}  // namespace

TEST_CASE("basis change sends exceptional rays to -E of the complement") {
    StageFan x0 = build_stage(3, 0);
    BasisChange bc = divisor_basis_change(x0);
    for (int i = 0; i <= 3; ++i) {
        int ray = x0.ray_of_label(subset_complement(1u << i, 3));
        for (int g = 0; g < bc.basis.dim(); ++g) {
            mpz_class expect = (g == bc.basis.center_index(1u << i)) ? -1 : 0;
            CHECK(bc.toric_to_geom[g][ray] == expect);
        }
    }
    // X_1 with n=3: the ray labeled complement({i,j}) maps to -E_{ij}
    StageFan x1 = build_stage(3, 1);
    BasisChange bc1 = divisor_basis_change(x1);
    Subset ij = subset_of({1, 2});
    int ray = x1.ray_of_label(subset_complement(ij, 3));
    CHECK(bc1.toric_to_geom[bc1.basis.center_index(ij)][ray] == -1);
    CHECK(bc1.toric_to_geom[0][ray] == 0);
}

TEST_CASE("singleton rays map to -H plus the centers missing the point") {
    StageFan x1 = build_stage(3, 1);
    BasisChange bc = divisor_basis_change(x1);
    int ray = x1.ray_of_label(1u << 2);
    CHECK(bc.toric_to_geom[0][ray] == -1);
    for (size_t c = 0; c < bc.basis.centers.size(); ++c) {
        mpz_class expect = subset_contains(bc.basis.centers[c], 2) ? 0 : 1;
        CHECK(bc.toric_to_geom[c + 1][ray] == expect);
    }
}

TEST_CASE("linear relations map to zero in the geometric basis") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{2, 0}, {3, 0}, {3, 1}, {4, 2}}) {
        StageFan sf = build_stage(n, j);
        BasisChange bc = divisor_basis_change(sf);
        for (int i = 0; i < n; ++i) {
            ZVec image(bc.basis.dim(), 0);
            for (size_t r = 0; r < sf.fan.rays.size(); ++r) {
                Int coord = sf.fan.rays[r][i];  // e_i . rho_r
                if (coord == 0) continue;
                for (int g = 0; g < bc.basis.dim(); ++g)
                    image[g] += coord * bc.toric_to_geom[g][r];
            }
            CHECK(image == ZVec(bc.basis.dim(), 0));
        }
    }
}

TEST_CASE("geometric -> toric -> geometric is the exact identity") {
    StageFan sf = build_stage(3, 1);
    BasisChange bc = divisor_basis_change(sf);
    const int dim = bc.basis.dim();
    const int nrays = static_cast<int>(sf.fan.rays.size());
    for (int g = 0; g < dim; ++g)
        for (int h = 0; h < dim; ++h) {
            mpz_class s = 0;
            for (int r = 0; r < nrays; ++r)
                s += bc.toric_to_geom[h][r] * bc.geom_to_toric[r][g];
            CHECK(s == (g == h ? 1 : 0));
        }
}

TEST_CASE("toric -> geometric -> toric is the identity modulo the relations") {
    StageFan sf = build_stage(3, 1);
    BasisChange bc = divisor_basis_change(sf);
    const int dim = bc.basis.dim();
    const int nrays = static_cast<int>(sf.fan.rays.size());
    // relation generators: rel_i[r] = e_i . rho_r
    for (int r0 = 0; r0 < nrays; ++r0) {
        // round trip of the unit toric vector at r0
        ZVec geo(dim, 0);
        for (int g = 0; g < dim; ++g) geo[g] = bc.toric_to_geom[g][r0];
        ZVec back(nrays, 0);
        for (int r = 0; r < nrays; ++r)
            for (int g = 0; g < dim; ++g) back[r] += bc.geom_to_toric[r][g] * geo[g];
        back[r0] -= 1;
        // `back` must lie in the span of the n relation vectors (rationally).
        RatMatrix sys(nrays, std::vector<Rat>(sf.n));
        std::vector<Rat> rhs(nrays);
        for (int r = 0; r < nrays; ++r) {
            for (int i = 0; i < sf.n; ++i) sys[r][i] = Rat(sf.fan.rays[r][i]);
            rhs[r] = Rat(back[r]);
        }
        CHECK(solve_linear(std::move(sys), std::move(rhs)).consistent);
    }
}

TEST_CASE("canonical class at the point blowup and the permutohedral stage") {
    for (int n = 2; n <= 4; ++n) {
        StageFan x0 = build_stage(n, 0);
        ZVec k = canonical_class(x0);
        CHECK(k[0] == -(n + 1));
        StageBasis b = StageBasis::make(n, 0, 0);
        for (size_t c = 0; c < b.centers.size(); ++c) CHECK(k[c + 1] == n - 1);
    }
    StageFan top = build_stage(3, 1);
    ZVec k = canonical_class(top);
    StageBasis b = StageBasis::make(3, 1, 0);
    CHECK(k[0] == -4);
    for (size_t c = 0; c < b.centers.size(); ++c)
        CHECK(k[c + 1] == 3 - subset_size(b.centers[c]));
}

TEST_CASE("Stanley-Reisner nonface predicate") {
    StageFan p2 = projective_fan(2);
    CHECK(is_nonface(p2, {0, 1, 2}));
    StageFan hex = build_stage(2, 0);
    int a = hex.ray_of_label(subset_of({1}));
    int b = hex.ray_of_label(subset_of({0, 2}));
    CHECK_FALSE(is_nonface(hex, {a, b}));  // adjacent in the hexagon
    CHECK_FALSE(is_nonface(hex, {a}));
    int c = hex.ray_of_label(subset_of({0, 1}));
    CHECK(is_nonface(hex, {a, hex.ray_of_label(subset_of({0})), c}));
}

TEST_CASE("pairing table values") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{2, 0}, {3, 0}, {3, 1}, {4, 2}}) {
        auto ring = get_ring(n, j, 0);
        const PairingTable& t = ring->table();
        CHECK(t.at(0, 0) == 1);
        for (int i = 1; i < t.basis.dim(); ++i) {
            CHECK(t.at(i, i) == -1);
            CHECK(t.at(0, i) == 0);
            CHECK(t.at(i, 0) == 0);
        }
    }
    // E_{ij}.e_{ij} = -1 on X_1 with n=3
    auto ring = get_ring(3, 1, 0);
    int idx = ring->basis().center_index(subset_of({1, 2}));
    CHECK(ring->table().at(idx, idx) == -1);
}

TEST_CASE("extra points pair diagonally and vanish against the rest") {
    auto ring = get_ring(3, 1, 2);
    const StageBasis& b = ring->basis();
    int e5 = b.point_index(5), e6 = b.point_index(6);
    REQUIRE(e5 > 0);
    REQUIRE(e6 > 0);
    CHECK(ring->table().at(e5, e5) == -1);
    CHECK(ring->table().at(e5, e6) == 0);
    CHECK(ring->table().at(0, e5) == 0);
    CHECK(ring->table().at(e5, 0) == 0);
    for (size_t c = 0; c < b.centers.size(); ++c) CHECK(ring->table().at(e5, c + 1) == 0);
}

TEST_CASE("extend_with_points grows the table by orthogonal blocks") {
    PairingTable t = pairing(build_stage(3, 1), 0);
    PairingTable t0 = extend_with_points(t, 0);
    CHECK(t0.m == t.m);
    PairingTable t2 = extend_with_points(t, 2);
    CHECK(t2.basis.dim() == t.basis.dim() + 2);
    // determinant is +-1: the table is diagonal with +-1 entries
    for (int i = 0; i < t2.basis.dim(); ++i)
        for (int j = 0; j < t2.basis.dim(); ++j)
            CHECK(t2.m[i][j] == (i == j ? (i == 0 ? 1 : -1) : 0));
}

TEST_CASE("Mori membership on the del Pezzo 6") {
    auto ring = get_ring(2, 0, 0);
    const StageBasis& b = ring->basis();

    ZVec line(b.dim(), 0);
    line[0] = 1;
    line[b.center_index(1u << 0)] = -1;
    line[b.center_index(1u << 1)] = -1;
    CHECK(ring->mori_membership(line) == MoriMembership::Boundary);

    line[b.center_index(1u << 2)] = -1;
    CHECK(ring->mori_membership(line) == MoriMembership::Outside);

    ZVec h(b.dim(), 0);
    h[0] = 1;
    CHECK(ring->mori_membership(h) != MoriMembership::Outside);
}

TEST_CASE("wall classes of the hexagon are the six (-1)-curves") {
    auto ring = get_ring(2, 0, 0);
    const StageBasis& b = ring->basis();
    std::set<ZVec> found(ring->wall_classes().begin(), ring->wall_classes().end());
    std::set<ZVec> expect;
    for (int i = 0; i <= 2; ++i) expect.insert(e_class(b, 1u << i));
    for (int i = 0; i <= 2; ++i)
        for (int j = i + 1; j <= 2; ++j) {
            ZVec v(b.dim(), 0);
            v[0] = 1;
            v[b.center_index(1u << i)] = -1;
            v[b.center_index(1u << j)] = -1;
            expect.insert(v);
        }
    CHECK(found == expect);
}

TEST_CASE("basis curve classes are effective at every stage (n <= 4)") {
    for (int n = 2; n <= 4; ++n)
        for (int j = 0; j <= n - 2; ++j) {
            auto ring = get_ring(n, j, 0);
            const StageBasis& b = ring->basis();
            ZVec h(b.dim(), 0);
            h[0] = 1;
            CHECK(ring->mori_membership(h) != MoriMembership::Outside);
            for (size_t c = 0; c < b.centers.size(); ++c)
                CHECK(ring->mori_membership(e_class(b, b.centers[c])) != MoriMembership::Outside);
        }
}

TEST_CASE("anticanonical degrees of the basis curves at the final stage") {
    for (int n = 2; n <= 4; ++n) {
        auto ring = get_ring(n, n - 2, 0);
        ZVec minus_k = canonical_class(ring->stage_fan());
        for (auto& v : minus_k) v = -v;
        const StageBasis& b = ring->basis();
        ZVec h(b.dim(), 0);
        h[0] = 1;
        CHECK(ring->pair(minus_k, h) == n + 1);
        for (size_t c = 0; c < b.centers.size(); ++c)
            CHECK(ring->pair(minus_k, e_class(b, b.centers[c])) ==
                  n - subset_size(b.centers[c]));
    }
}

TEST_CASE("effective_possible extra-point rules") {
    auto ring = get_ring(3, 1, 2);
    const StageBasis& b = ring->basis();
    ZVec v(b.dim(), 0);
    v[0] = 1;
    v[b.point_index(5)] = -1;  // h - e_5: nonnegative multiplicities
    CHECK(ring->effective_possible(v));
    v[b.point_index(5)] = 1;  // h + e_5: adding a fiber line
    CHECK(ring->effective_possible(v));
    v[b.point_index(6)] = -1;  // mixed signs
    CHECK_FALSE(ring->effective_possible(v));
    ZVec w(b.dim(), 0);
    w[0] = -1;
    CHECK_FALSE(ring->effective_possible(w));
}
