#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cresym/tower.hpp"

using namespace cresym;

TEST_CASE("projective fan basics") {
    StageFan p2 = projective_fan(2);
    CHECK(p2.fan.rays.size() == 3);
    CHECK(p2.fan.max_cones.size() == 3);

    StageFan p3 = projective_fan(3);
    CHECK(p3.fan.rays.size() == 4);
    CHECK(p3.fan.max_cones.size() == 4);
    // fixed point p_0 corresponds to the cone <rho_1,...,rho_n>
    Cone point0 = {1, 2, 3};
    CHECK(p3.fan.is_cone(point0));

    CHECK_THROWS_AS(projective_fan(1), std::invalid_argument);
}

TEST_CASE("stage ray and cone counts") {
    CHECK(build_stage(3, 0).fan.rays.size() == 8);
    StageFan x1 = build_stage(3, 1);
    CHECK(x1.fan.rays.size() == 14);
    CHECK(x1.fan.max_cones.size() == 24);
    StageFan hex = build_stage(2, 0);
    CHECK(hex.fan.rays.size() == 6);
    CHECK(hex.fan.max_cones.size() == 6);
    CHECK_THROWS_AS(build_stage(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_stage(3, -2), std::invalid_argument);
}

TEST_CASE("final stage counts for n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        StageFan sf = build_stage(n, n - 2);
        long fact = 1;
        for (int k = 2; k <= n + 1; ++k) fact *= k;
        CHECK(static_cast<long>(sf.fan.rays.size()) == (1L << (n + 1)) - 2);
        CHECK(static_cast<long>(sf.fan.max_cones.size()) == fact);
        FanReport rep = validate_fan(sf.fan);
        CHECK(rep.smooth);
        CHECK(rep.complete);
    }
}

TEST_CASE("every ray equals the primitive sum of its label") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{2, 0}, {3, 1}, {4, 2}}) {
        StageFan sf = build_stage(n, j);
        StageFan pn = projective_fan(n);
        for (size_t r = 0; r < sf.fan.rays.size(); ++r) {
            LatticeVector sum(n, 0);
            for (int i : subset_elements(sf.ray_labels[r]))
                for (int k = 0; k < n; ++k) sum[k] += pn.fan.rays[i][k];
            CHECK(sf.fan.rays[r] == primitive(sum));
        }
    }
}

namespace {

// Rebuild a stage with the same-size centers subdivided in a shuffled order.
StageFan build_shuffled(int n, int j, std::uint64_t seed) {
    StageFan sf = projective_fan(n);
    std::mt19937_64 rng(seed);
    for (int level = 0; level <= j; ++level) {
        std::vector<Subset> gammas;
        for (Subset g = 1; g < (1u << (n + 1)); ++g)
            if (subset_size(g) == level + 1) gammas.push_back(g);
        std::shuffle(gammas.begin(), gammas.end(), rng);
        for (Subset gamma : gammas) {
            Subset label = subset_complement(gamma, n);
            Cone c;
            for (int i : subset_elements(label)) c.push_back(sf.ray_of_label(1u << i));
            std::sort(c.begin(), c.end());
            sf.fan = star_subdivision(sf.fan, c);
            sf.ray_labels.push_back(label);
        }
    }
    sf.stage = j;
    return sf;
}

// Compare fans up to ray reindexing, identifying rays by their vectors.
bool same_fan(const StageFan& a, const StageFan& b) {
    if (a.fan.rays.size() != b.fan.rays.size()) return false;
    std::map<LatticeVector, Subset> la, lb;
    for (size_t i = 0; i < a.fan.rays.size(); ++i) la[a.fan.rays[i]] = a.ray_labels[i];
    for (size_t i = 0; i < b.fan.rays.size(); ++i) lb[b.fan.rays[i]] = b.ray_labels[i];
    if (la != lb) return false;
    auto cones = [](const StageFan& sf) {
        std::set<std::set<LatticeVector>> out;
        for (const Cone& c : sf.fan.max_cones) {
            std::set<LatticeVector> rays;
            for (int r : c) rays.insert(sf.fan.rays[r]);
            out.insert(std::move(rays));
        }
        return out;
    };
    return cones(a) == cones(b);
}

}  // namespace

TEST_CASE("subdivision order within a stage does not matter") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
        StageFan reference = build_stage(n, j);
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            CHECK(same_fan(reference, build_shuffled(n, j, seed)));
    }
}

TEST_CASE("reflection is an automorphism exactly at the final stage") {
    for (int n = 2; n <= 4; ++n) {
        auto res = apply_lattice_map(build_stage(n, n - 2).fan, cremona_reflection(n));
        CHECK(res.automorphism);
    }
    for (int n = 3; n <= 4; ++n)
        for (int j = -1; j <= n - 3; ++j) {
            auto res = apply_lattice_map(build_stage(n, j).fan, cremona_reflection(n));
            CHECK_FALSE(res.automorphism);
        }
}

TEST_CASE("reflection sends each label to its complement, twice is identity") {
    StageFan sf = build_stage(3, 1);
    auto res = apply_lattice_map(sf.fan, cremona_reflection(3));
    REQUIRE(res.automorphism);
    for (size_t r = 0; r < sf.fan.rays.size(); ++r) {
        CHECK(sf.ray_labels[res.ray_image[r]] == subset_complement(sf.ray_labels[r], 3));
        CHECK(res.ray_image[res.ray_image[r]] == static_cast<int>(r));
    }
    // n=2 spec case: the ray (1,1) maps to (-1,-1), label {0}
    StageFan hex = build_stage(2, 0);
    auto rhex = apply_lattice_map(hex.fan, cremona_reflection(2));
    REQUIRE(rhex.automorphism);
    int from = hex.ray_of_label(subset_of({1, 2}));
    CHECK(hex.ray_labels[rhex.ray_image[from]] == subset_of({0}));
}

TEST_CASE("every stage fan is smooth and complete (n <= 5)") {
    for (int n = 2; n <= 5; ++n)
        for (int j = -1; j <= n - 2; ++j) {
            FanReport rep = validate_fan(build_stage(n, j).fan);
            CHECK(rep.smooth);
            CHECK(rep.complete);
        }
}

TEST_CASE("memoized stages are structurally identical") {
    StageFan a = build_stage(3, 1);
    StageFan b = build_stage(3, 1);
    CHECK(a.fan.rays == b.fan.rays);
    CHECK(a.fan.max_cones == b.fan.max_cones);
    CHECK(a.ray_labels == b.ray_labels);
}
