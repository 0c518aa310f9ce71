#include "ddehopf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ddehopf {

std::size_t default_workers() {
    if (const char* env = std::getenv("DDEHOPF_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_blocks(std::size_t n, std::size_t block_size, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    if (workers == 0) workers = default_workers();
    const std::size_t n_blocks = (n + block_size - 1) / block_size;

    const auto run_block = [&](std::size_t b) {
        const std::size_t first = b * block_size;
        const std::size_t last = std::min(first + block_size, n);
        fn(first, last, b);
    };

    if (workers <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min(workers, n_blocks);
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ddehopf
