#pragma once

#include <cstddef>
#include <cstdint>

namespace qlab::config {

/// Hard limit on series precision. dilate() clamps to it; operations that
/// would need to *create* a longer series throw ResourceLimitError.
std::size_t precision_cap();
void set_precision_cap(std::size_t cap);

/// Limit on the number of partitions a single enumeration may visit.
std::uint64_t partition_count_cap();
void set_partition_count_cap(std::uint64_t cap);

inline constexpr std::size_t kDefaultPrecisionCap = 1'000'000;
inline constexpr std::uint64_t kDefaultPartitionCountCap = 1'000'000'000ULL;

}  // namespace qlab::config
