#pragma once

// Subsets of a ground set [m] (m <= 20) as bitmasks: bit i set <=> element i
// is in the subset.

#include <bit>
#include <cstdint>
#include <vector>

namespace entromat {

using SubsetMask = std::uint32_t;

inline constexpr int kMaxGroundSet = 20;

inline int popcount(SubsetMask s) { return std::popcount(s); }

inline SubsetMask full_mask(int m) { return (m >= 32) ? ~SubsetMask{0} : ((SubsetMask{1} << m) - 1); }

inline bool is_subset(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }

inline std::vector<int> mask_elements(SubsetMask s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

// Visits every submask of `mask`, including 0 and mask itself.
template <typename Fn>
void for_each_submask(SubsetMask mask, Fn&& fn) {
    SubsetMask sub = mask;
    for (;;) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
}

// Position of element `e` within `mask`, counting set bits below it.
inline int index_in_mask(SubsetMask mask, int e) {
    return std::popcount(mask & ((SubsetMask{1} << e) - 1));
}

}  // namespace entromat
