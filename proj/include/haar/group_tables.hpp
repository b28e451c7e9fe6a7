#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "haar/perm.hpp"

namespace haar {

/// Dense lookup tables for S_m, m <= kMaxTabledPoints. Element indices follow
/// lexicographic order of the one-line images, so elems[0] is the identity.
/// Shared instances are cached; construction is serialized, reads are
/// lock-free and safe to share across threads.
struct GroupTable {
    static constexpr int kMaxTabledPoints = 6;

    int m = 0;
    int order = 0;
    std::vector<Permutation> elems;
    std::vector<uint16_t> inv;
    std::vector<uint16_t> compose_tab;   // [i * order + j] = index of elems[i]*elems[j]
    std::vector<uint8_t> cycle_count_tab;
    std::vector<uint8_t> class_id;       // index into classes
    std::vector<CycleType> classes;      // canonical partition order
    std::vector<long long> class_size;

    uint16_t compose(int i, int j) const { return compose_tab[static_cast<size_t>(i) * order + j]; }
    int index_of(const Permutation& a) const;   // Lehmer rank

    static std::shared_ptr<const GroupTable> get(int m);
};

}  // namespace haar
