#pragma once

#include <functional>
#include <vector>

namespace seqbell {

// Worker cap: SEQBELL_THREADS env var when set, hardware concurrency otherwise.
int max_threads();

// Runs fn(chunk_index, begin, end) over [0, total) split into contiguous chunks,
// one worker per chunk. Results must be merged by the caller in chunk order so
// the outcome is independent of the worker count.
void parallel_chunks(long total, const std::function<void(int, long, long)>& fn);

}  // namespace seqbell
