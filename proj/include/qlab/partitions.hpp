#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace qlab {

/// Visit every partition of n exactly once, parts non-increasing, in
/// lexicographically descending order. With distinct=true, parts are strictly
/// decreasing. n = 0 yields one empty partition. Throws ResourceLimitError if
/// more than config::partition_count_cap() partitions would be visited.
void enumerate_partitions(unsigned n, bool distinct,
                          const std::function<void(std::span<const unsigned>)>& visit);

std::uint64_t count_partitions(unsigned n, bool distinct);

/// Sum over all partitions of n into distinct parts of
/// (sum of odd parts - sum of even parts). Ground truth by enumeration.
long long dsome_bruteforce(unsigned n);

/// Same, over all partitions of n.
long long some_bruteforce(unsigned n);

}  // namespace qlab
