#pragma once

#include <cstdint>
#include <vector>

namespace oppq {

// counting Fenwick tree over ranks 0..n-1
struct FenwickTree {
    std::vector<std::uint32_t> t;

    explicit FenwickTree(std::size_t n) : t(n + 1, 0) {}

    void add(std::size_t rank) {
        for (std::size_t i = rank + 1; i < t.size(); i += i & (~i + 1)) ++t[i];
    }
    void remove(std::size_t rank) {
        for (std::size_t i = rank + 1; i < t.size(); i += i & (~i + 1)) --t[i];
    }
    // number of inserted ranks < rank
    std::uint64_t prefix(std::size_t rank) const {
        std::uint64_t s = 0;
        for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) s += t[i];
        return s;
    }
};

}  // namespace oppq
