#include "cresym/tower.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace cresym {

int StageFan::ray_of_label(Subset s) const {
    for (size_t i = 0; i < ray_labels.size(); ++i)
        if (ray_labels[i] == s) return static_cast<int>(i);
    return -1;
}

std::vector<Subset> StageFan::centers() const {
    std::vector<Subset> out;
    for (Subset lab : ray_labels) {
        if (subset_size(lab) < 2) continue;  // singleton rays are not exceptional
        out.push_back(subset_complement(lab, n));
    }
    std::sort(out.begin(), out.end(), subset_less);
    return out;
}

StageFan projective_fan(int n) {
    if (n < 2) throw std::invalid_argument("tower undefined for n < 2");
    StageFan sf;
    sf.n = n;
    sf.stage = -1;
    sf.fan.dim = n;
    sf.fan.rays.emplace_back(n, -1);  // rho_0
    for (int i = 1; i <= n; ++i) {
        LatticeVector e(n, 0);
        e[i - 1] = 1;
        sf.fan.rays.push_back(e);
    }
    for (Subset lab = 0; lab <= static_cast<Subset>(n); ++lab) sf.ray_labels.push_back(1u << lab);
    // Maximal cones: all n-subsets of the n+1 rays.
    for (int omit = 0; omit <= n; ++omit) {
        Cone c;
        for (int r = 0; r <= n; ++r)
            if (r != omit) c.push_back(r);
        sf.fan.max_cones.push_back(c);
    }
    return sf;
}

namespace {

StageFan build_stage_uncached(int n, int j) {
    if (j < -1 || j > n - 2) throw std::invalid_argument("stage out of range");
    StageFan sf = projective_fan(n);
    for (int level = 0; level <= j; ++level) {
        // Stage `level` blows up the centers of size level+1 (stage 0: points).
        const int center_size = level + 1;
        std::vector<Subset> gammas;
        for (Subset g = 1; g < (1u << (n + 1)); ++g)
            if (subset_size(g) == center_size) gammas.push_back(g);
        std::sort(gammas.begin(), gammas.end());  // lexicographic label order
        for (Subset gamma : gammas) {
            Subset label = subset_complement(gamma, n);
            Cone c;
            for (int i : subset_elements(label)) {
                int r = sf.ray_of_label(1u << i);
                c.push_back(r);
            }
            std::sort(c.begin(), c.end());
            sf.fan = star_subdivision(sf.fan, c);
            sf.ray_labels.push_back(label);
        }
        sf.stage = level;
    }
    sf.stage = j;
    return sf;
}

}  // namespace

StageFan build_stage(int n, int j) {
    static std::map<std::pair<int, int>, StageFan> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    StageFan sf = build_stage_uncached(n, j);
    cache[key] = sf;
    return sf;
}

IntMatrix cremona_reflection(int n) {
    if (n < 2) throw std::invalid_argument("tower undefined for n < 2");
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = -1;
    return m;
}

}  // namespace cresym
