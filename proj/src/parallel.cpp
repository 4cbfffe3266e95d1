#include "depolsim/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "depolsim/errors.hpp"

namespace depolsim {

int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_chunks(long count, int threads, const std::function<void(long, long, int)> &fn) {
    if (count < 0) {
        throw ConfigError("parallel_chunks: negative item count");
    }
    if (threads < 0) {
        throw ConfigError("parallel_chunks: negative thread count");
    }
    if (threads == 0) {
        threads = hardware_threads();
    }
    threads = static_cast<int>(std::min<long>(threads, std::max<long>(count, 1)));
    if (threads <= 1) {
        fn(0, count, 0);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(threads);
    const long base = count / threads;
    const long extra = count % threads;
    long begin = 0;
    for (int w = 0; w < threads; ++w) {
        const long end = begin + base + (w < extra ? 1 : 0);
        pool.emplace_back(fn, begin, end, w);
        begin = end;
    }
    for (auto &t : pool) {
        t.join();
    }
}

}  // namespace depolsim
