#include "haar/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace haar {

static void gen_parts(int remaining, int max_part, std::vector<int>& cur,
                      std::vector<CycleType>& out) {
    if (remaining == 0) {
        out.push_back(CycleType(cur));
        return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
        cur.push_back(k);
        gen_parts(remaining - k, k, cur, out);
        cur.pop_back();
    }
}

const std::vector<CycleType>& partitions_of(int p) {
    if (p < 0 || p > 40) throw std::invalid_argument("partitions_of: p out of range");
    static std::mutex mu;
    static std::map<int, std::vector<CycleType>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    std::vector<CycleType> out;
    if (p == 0) {
        out.push_back(CycleType());
    } else {
        std::vector<int> cur;
        gen_parts(p, p, cur, out);
    }
    return cache.emplace(p, std::move(out)).first->second;
}

int partition_index(const CycleType& t) {
    const auto& all = partitions_of(t.sum());
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == t) return static_cast<int>(i);
    throw std::logic_error("partition_index: not found");
}

long long conjugacy_class_size(const CycleType& t) {
    const int p = t.sum();
    long long fact = 1;
    for (int i = 2; i <= p; ++i) fact *= i;
    // centralizer order z = prod_j j^{m_j} m_j!
    long long z = 1;
    int run_val = -1, run_len = 0;
    auto flush = [&]() {
        for (int i = 2; i <= run_len; ++i) z *= i;
    };
    for (int part : t.parts) {
        if (part == run_val) {
            ++run_len;
        } else {
            flush();
            run_val = part;
            run_len = 1;
        }
        z *= part;
    }
    flush();
    return fact / z;
}

Permutation canonical_of_type(const CycleType& t) {
    std::vector<int> img(t.sum());
    int base = 0;
    for (int part : t.parts) {
        for (int i = 0; i < part; ++i) img[base + i] = base + (i + 1) % part;
        base += part;
    }
    return Permutation(std::move(img));
}

Integer hook_product(const CycleType& lambda) {
    const auto& parts = lambda.parts;
    const int rows = static_cast<int>(parts.size());
    Integer h(1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < parts[r]; ++c) {
            int arm = parts[r] - c - 1;
            int leg = 0;
            for (int rr = r + 1; rr < rows; ++rr)
                if (parts[rr] > c) ++leg;
            h *= (arm + leg + 1);
        }
    }
    return h;
}

Integer content_product(const CycleType& lambda, long n) {
    Integer v(1);
    const auto& parts = lambda.parts;
    for (size_t r = 0; r < parts.size(); ++r)
        for (int c = 0; c < parts[r]; ++c)
            v *= Integer(n + c - static_cast<long>(r));
    return v;
}

// chi^lambda(mu) by removing border strips; beta-set encoding makes strip
// removal a single element move b -> b-s with sign by the number of beta
// values jumped over.
static long long strip_rec(std::vector<int>& beta, const std::vector<int>& mu, size_t k) {
    if (k == mu.size()) return 1;
    const int s = mu[k];
    long long total = 0;
    for (size_t idx = 0; idx < beta.size(); ++idx) {
        int b = beta[idx];
        if (b < s) continue;
        int target = b - s;
        bool occupied = false;
        int jumped = 0;
        for (size_t j = 0; j < beta.size(); ++j) {
            if (j == idx) continue;
            if (beta[j] == target) occupied = true;
            if (beta[j] > target && beta[j] < b) ++jumped;
        }
        if (occupied) continue;
        beta[idx] = target;
        long long sub = strip_rec(beta, mu, k + 1);
        beta[idx] = b;
        total += (jumped % 2 == 0) ? sub : -sub;
    }
    return total;
}

long long character_sp(const CycleType& lambda, const CycleType& mu) {
    if (lambda.sum() != mu.sum())
        throw std::invalid_argument("character_sp: partition sizes differ");
    const auto& parts = lambda.parts;
    const int L = static_cast<int>(parts.size());
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = parts[i] + (L - 1 - i);
    return strip_rec(beta, mu.parts, 0);
}

}  // namespace haar
