#include "qlab/partitions.hpp"

#include <algorithm>
#include <vector>

#include "qlab/config.hpp"
#include "qlab/errors.hpp"

namespace qlab {

namespace {

struct Enumerator {
    bool distinct;
    std::uint64_t cap;
    std::uint64_t count = 0;
    std::vector<unsigned> parts;
    const std::function<void(std::span<const unsigned>)>* visit;

    void emit() {
        if (++count > cap) {
            throw ResourceLimitError("partition enumeration exceeded the cap of " +
                                     std::to_string(cap));
        }
        (*visit)(std::span<const unsigned>(parts.data(), parts.size()));
    }

    // Largest next part first gives lexicographically descending order.
    void recurse(unsigned remaining, unsigned max_part) {
        if (remaining == 0) {
            emit();
            return;
        }
        for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            recurse(remaining - p, distinct ? p - 1 : p);
            parts.pop_back();
        }
    }
};

}  // namespace

void enumerate_partitions(unsigned n, bool distinct,
                          const std::function<void(std::span<const unsigned>)>& visit) {
    Enumerator e{distinct, config::partition_count_cap(), 0, {}, &visit};
    e.recurse(n, n == 0 ? 1 : n);
}

std::uint64_t count_partitions(unsigned n, bool distinct) {
    std::uint64_t c = 0;
    enumerate_partitions(n, distinct, [&](std::span<const unsigned>) { ++c; });
    return c;
}

namespace {

long long odd_minus_even_total(unsigned n, bool distinct) {
    long long total = 0;
    enumerate_partitions(n, distinct, [&](std::span<const unsigned> parts) {
        long long d = 0;
        for (unsigned p : parts) d += (p % 2 == 1) ? static_cast<long long>(p)
                                                   : -static_cast<long long>(p);
        total += d;
    });
    return total;
}

}  // namespace

long long dsome_bruteforce(unsigned n) { return odd_minus_even_total(n, /*distinct=*/true); }

long long some_bruteforce(unsigned n) { return odd_minus_even_total(n, /*distinct=*/false); }

}  // namespace qlab
