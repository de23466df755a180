#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace hodokit {

/// 17-significant-digit text for a double (lossless), locale-independent.
std::string format_double(double v);

/// Parse a locale-independent double; throws std::invalid_argument on junk.
double parse_double(const std::string& text);

/// Thread budget: HODOKIT_THREADS if set (clamped to [1, 256]), otherwise the
/// hardware concurrency.
unsigned thread_budget();

/// Run fn(i) for i in [0, n) on up to thread_budget() threads. Results must be
/// written to per-index slots so output order never depends on scheduling.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hodokit
