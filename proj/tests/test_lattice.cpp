#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cresym/lattice.hpp"
#include "cresym/tower.hpp"

using namespace cresym;

TEST_CASE("primitive vectors") {
    CHECK(primitive({2, 4}) == LatticeVector{1, 2});
    CHECK(primitive({-1, -1, -1}) == LatticeVector{-1, -1, -1});
    CHECK(primitive({-6, 9}) == LatticeVector{-2, 3});
    CHECK_THROWS_AS(primitive({0, 0}), std::invalid_argument);
}

TEST_CASE("determinant") {
    CHECK(det_int({{1, 0}, {0, 1}}) == 1);
    CHECK(det_int({{0, 1}, {1, 0}}) == -1);
    CHECK(det_int({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}) == 24);
    CHECK(det_int({{1, 2}, {2, 4}}) == 0);
    CHECK(det_int({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
}

TEST_CASE("validate standard P^2 fan") {
    Fan f = projective_fan(2).fan;
    FanReport r = validate_fan(f);
    CHECK(r.smooth);
    CHECK(r.complete);
    CHECK(r.ray_count == 3);
    CHECK(r.max_cone_count == 3);
}

TEST_CASE("a single quadrant is not complete") {
    Fan f;
    f.dim = 2;
    f.rays = {{1, 0}, {0, 1}};
    f.max_cones = {{0, 1}};
    FanReport r = validate_fan(f);
    CHECK(r.smooth);
    CHECK_FALSE(r.complete);
}

TEST_CASE("overlapping cones are rejected") {
    Fan f;
    f.dim = 2;
    // <e1, e2> and <e1+e2... (1,2),(2,1)> overlap without sharing a face.
    f.rays = {{1, 0}, {0, 1}, {1, 2}, {2, 1}};
    f.max_cones = {{0, 1}, {2, 3}};
    CHECK_THROWS_WITH_AS(validate_fan(f), "not a fan: overlapping maximal cones", std::invalid_argument);
}

TEST_CASE("star subdivision of a point cone of P^n inserts (1,...,1)") {
    for (int n = 2; n <= 4; ++n) {
        StageFan pf = projective_fan(n);
        Cone c;
        for (int i = 1; i <= n; ++i) c.push_back(i);  // <rho_1,...,rho_n>
        Fan sub = star_subdivision(pf.fan, c);
        CHECK(sub.rays.size() == pf.fan.rays.size() + 1);
        CHECK(sub.rays.back() == LatticeVector(n, 1));
        FanReport r = validate_fan(sub);
        CHECK(r.smooth);
        CHECK(r.complete);
    }
}

TEST_CASE("star subdivision splits a 2-cone of P^2 into two") {
    StageFan pf = projective_fan(2);
    Fan sub = star_subdivision(pf.fan, {1, 2});
    CHECK(sub.rays.size() == 4);
    CHECK(sub.max_cones.size() == 4);
}

TEST_CASE("subdividing all point cones of P^3") {
    StageFan sf = build_stage(3, 0);
    CHECK(sf.fan.rays.size() == 8);
    CHECK(sf.fan.max_cones.size() == 12);
    CHECK(validate_fan(sf.fan).smooth);
    CHECK(validate_fan(sf.fan).complete);
}

TEST_CASE("star subdivision of a non-cone fails") {
    StageFan sf = build_stage(3, 1);
    // Rays labeled {0} and {1,2,3} point in opposite directions; not a cone.
    int a = sf.ray_of_label(subset_of({0}));
    int b = sf.ray_of_label(subset_of({1, 2, 3}));
    Cone c = {std::min(a, b), std::max(a, b)};
    CHECK_THROWS_AS(star_subdivision(sf.fan, c), std::invalid_argument);
}

TEST_CASE("wall enumeration on P^2: three walls, all-ones relation") {
    Fan f = projective_fan(2).fan;
    auto walls = enumerate_walls(f);
    CHECK(walls.size() == 3);
    for (const auto& w : walls) {
        CHECK(w.relation.size() == 3);
        for (const auto& [ray, c] : w.relation) CHECK(c == 1);
    }
}

TEST_CASE("wall counts on permutohedral fans") {
    CHECK(enumerate_walls(build_stage(2, 0).fan).size() == 6);
    CHECK(enumerate_walls(build_stage(3, 1).fan).size() == 36);
}

TEST_CASE("wall relations vanish exactly") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{2, 0}, {3, 0}, {3, 1}, {4, 2}}) {
        StageFan sf = build_stage(n, j);
        for (const auto& w : enumerate_walls(sf.fan)) {
            LatticeVector s(n, 0);
            for (const auto& [ray, c] : w.relation)
                for (int i = 0; i < n; ++i) s[i] += c * sf.fan.rays[ray][i];
            CHECK(s == LatticeVector(n, 0));
        }
    }
}

TEST_CASE("minus identity on the hexagon is an automorphism") {
    StageFan sf = build_stage(2, 0);
    auto res = apply_lattice_map(sf.fan, cremona_reflection(2));
    REQUIRE(res.automorphism);
    // ray map must be label complementation
    for (size_t r = 0; r < sf.fan.rays.size(); ++r) {
        Subset img = sf.ray_labels[res.ray_image[r]];
        CHECK(img == subset_complement(sf.ray_labels[r], 2));
    }
    // double application = identity
    for (size_t r = 0; r < sf.fan.rays.size(); ++r)
        CHECK(res.ray_image[res.ray_image[r]] == static_cast<int>(r));
}

TEST_CASE("minus identity is not an automorphism of P^2") {
    Fan f = projective_fan(2).fan;
    auto res = apply_lattice_map(f, cremona_reflection(2));
    CHECK_FALSE(res.automorphism);
    CHECK_FALSE(res.witness.empty());
}

TEST_CASE("identity map is an automorphism") {
    Fan f = build_stage(3, 1).fan;
    IntMatrix id(3, std::vector<Int>(3, 0));
    for (int i = 0; i < 3; ++i) id[i][i] = 1;
    auto res = apply_lattice_map(f, id);
    REQUIRE(res.automorphism);
    for (size_t r = 0; r < f.rays.size(); ++r) CHECK(res.ray_image[r] == static_cast<int>(r));
}

TEST_CASE("non-unimodular maps are rejected") {
    Fan f = projective_fan(2).fan;
    CHECK_THROWS_WITH_AS(apply_lattice_map(f, {{2, 0}, {0, 1}}), "not unimodular", std::invalid_argument);
}

TEST_CASE("each maximal cone shares each facet with exactly one neighbor") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{2, 0}, {3, 1}, {4, 2}}) {
        StageFan sf = build_stage(n, j);
        auto walls = enumerate_walls(sf.fan);
        // n facets per maximal cone, each shared by two cones
        CHECK(walls.size() * 2 == sf.fan.max_cones.size() * static_cast<size_t>(n));
    }
}
