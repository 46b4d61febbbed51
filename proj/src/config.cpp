#include "qlab/config.hpp"

#include <atomic>

namespace qlab::config {

namespace {
std::atomic<std::size_t> g_precision_cap{kDefaultPrecisionCap};
std::atomic<std::uint64_t> g_partition_cap{kDefaultPartitionCountCap};
}  // namespace

std::size_t precision_cap() { return g_precision_cap.load(std::memory_order_relaxed); }
void set_precision_cap(std::size_t cap) { g_precision_cap.store(cap, std::memory_order_relaxed); }

std::uint64_t partition_count_cap() { return g_partition_cap.load(std::memory_order_relaxed); }
void set_partition_count_cap(std::uint64_t cap) {
    g_partition_cap.store(cap, std::memory_order_relaxed);
}

}  // namespace qlab::config
