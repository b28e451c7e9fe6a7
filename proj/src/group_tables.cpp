#include "haar/group_tables.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "haar/partitions.hpp"

namespace haar {

int GroupTable::index_of(const Permutation& a) const {
    if (a.size() != m) throw std::invalid_argument("GroupTable::index_of: size mismatch");
    // Lehmer code relative to lexicographic enumeration.
    const auto& img = a.images();
    long rank = 0;
    long fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    for (int i = 0; i < m; ++i) {
        fact /= (m - i > 0) ? (m - i) : 1;
        int smaller = 0;
        for (int j = i + 1; j < m; ++j)
            if (img[j] < img[i]) ++smaller;
        rank += smaller * fact;
    }
    return static_cast<int>(rank);
}

static std::shared_ptr<const GroupTable> build(int m) {
    auto t = std::make_shared<GroupTable>();
    t->m = m;
    long order = 1;
    for (int i = 2; i <= m; ++i) order *= i;
    t->order = static_cast<int>(order);

    std::vector<int> img(m);
    std::iota(img.begin(), img.end(), 0);
    t->elems.reserve(order);
    do {
        t->elems.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));

    auto parts = partitions_of(m);
    t->classes = parts;
    t->class_size.assign(parts.size(), 0);
    std::map<CycleType, uint8_t> type_idx;
    for (size_t i = 0; i < parts.size(); ++i) type_idx[parts[i]] = static_cast<uint8_t>(i);

    t->inv.resize(order);
    t->cycle_count_tab.resize(order);
    t->class_id.resize(order);
    for (int i = 0; i < t->order; ++i) {
        t->inv[i] = static_cast<uint16_t>(t->index_of(t->elems[i].inverse()));
        t->cycle_count_tab[i] = static_cast<uint8_t>(t->elems[i].cycle_count());
        uint8_t c = type_idx.at(CycleType::of(t->elems[i]));
        t->class_id[i] = c;
        ++t->class_size[c];
    }

    t->compose_tab.resize(static_cast<size_t>(order) * order);
    for (int i = 0; i < t->order; ++i)
        for (int j = 0; j < t->order; ++j)
            t->compose_tab[static_cast<size_t>(i) * order + j] =
                static_cast<uint16_t>(t->index_of(t->elems[i] * t->elems[j]));
    return t;
}

std::shared_ptr<const GroupTable> GroupTable::get(int m) {
    if (m < 1 || m > kMaxTabledPoints)
        throw std::invalid_argument("GroupTable::get: point count outside tabled budget");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GroupTable>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto t = build(m);
    cache[m] = t;
    return t;
}

}  // namespace haar
