#include "seqbell/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace seqbell {

int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SEQBELL_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return std::min(cap, hw);
    } catch (...) {
      // unparsable value: fall through to the hardware default
    }
  }
  return hw;
}

void parallel_chunks(long total, const std::function<void(int, long, long)>& fn) {
  if (total <= 0) return;
  const int workers = static_cast<int>(std::min<long>(max_threads(), total));
  if (workers <= 1) {
    fn(0, 0, total);
    return;
  }
  const long per = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const long begin = w * per;
    const long end = std::min(total, begin + per);
    if (begin >= end) break;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace seqbell
