#pragma once

#include <atomic>
#include <cstdint>

namespace tatefrob::stats {

// Process-wide counters backing the structural-invariant accounting: how many
// times each always-on internal check ran, and how many internal-consistency
// errors were ever raised. A healthy run has nonzero check counters and a
// zero error counter.
inline std::atomic<uint64_t> hasse_checks{0};
inline std::atomic<uint64_t> char_poly_checks{0};
inline std::atomic<uint64_t> internal_errors{0};

}  // namespace tatefrob::stats
