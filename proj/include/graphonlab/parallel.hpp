#pragma once

#include <cstddef>
#include <functional>

namespace graphonlab {

// Number of samples handled by one random stream in Monte Carlo loops.
// Work is always split on these boundaries, so results do not depend on
// how many threads process the chunks.
inline constexpr std::size_t kChunkSamples = 4096;

// Requested worker count; 0 means GRAPHONLAB_THREADS or hardware concurrency.
void set_worker_count(unsigned workers);
unsigned worker_count();

// Calls body(chunk) for chunk in [0, chunks) on up to worker_count() threads.
// The first exception thrown by any body is rethrown on the caller.
void for_each_chunk(std::size_t chunks, const std::function<void(std::size_t)>& body);

inline std::size_t chunk_count(std::size_t samples) {
  return (samples + kChunkSamples - 1) / kChunkSamples;
}

}  // namespace graphonlab
