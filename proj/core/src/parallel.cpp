#include "sieveconst/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <string_view>
#include <thread>

namespace sieveconst {

std::size_t worker_count()
{
    if (const char* env = std::getenv(workers_env)) {
        std::string_view s(env);
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc() && ptr == s.data() + s.size() && n > 0)
            return std::min<std::size_t>(n, 256);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
// nested calls run inline instead of multiplying threads
thread_local bool inside_pool = false;
} // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job)
{
    const std::size_t workers = inside_pool ? 1 : std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            job(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        const bool was_inside = inside_pool;
        inside_pool = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                break;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(n);
            }
        }
        inside_pool = was_inside;
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace sieveconst
