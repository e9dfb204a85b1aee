#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace sieveconst {

inline constexpr const char* workers_env = "SIEVECONST_WORKERS";

// worker count from SIEVECONST_WORKERS, else hardware concurrency
std::size_t worker_count();

// runs job(i) for i in [0, n) on up to worker_count() threads; first exception is rethrown
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job);

// results are stored by index, so output order never depends on scheduling
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn)
{
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace sieveconst
