#ifndef CRESYM_SUBSET_HPP
#define CRESYM_SUBSET_HPP

#include <bit>
#include <string>
#include <vector>

namespace cresym {

/* Subsets of {0,...,n} as bitmasks. Used both for ray labels and for
 * blowup-center labels; a ray labeled alpha is the exceptional ray of the
 * center labeled by the complement of alpha. */
using Subset = unsigned;

inline int subset_size(Subset s) { return std::popcount(s); }
inline bool subset_contains(Subset s, int i) { return (s >> i) & 1u; }
inline Subset subset_complement(Subset s, int n) {
    return static_cast<Subset>(((1u << (n + 1)) - 1u) & ~s);
}

inline std::vector<int> subset_elements(Subset s) {
    std::vector<int> out;
    for (int i = 0; s != 0; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

inline Subset subset_of(const std::vector<int>& elems) {
    Subset s = 0;
    for (int i : elems) s |= (1u << i);
    return s;
}

/* Canonical order for label lists: by size, then by bit pattern. */
inline bool subset_less(Subset a, Subset b) {
    int sa = subset_size(a), sb = subset_size(b);
    if (sa != sb) return sa < sb;
    return a < b;
}

inline std::string subset_str(Subset s) {
    std::string out = "{";
    bool first = true;
    for (int i : subset_elements(s)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

}  // namespace cresym

#endif
