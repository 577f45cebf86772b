#pragma once

// Fixed-size worker pool over an index range. Results land in index order, so
// the output does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <exception>
#include <future>
#include <optional>
#include <thread>
#include <vector>

namespace biorth {

inline unsigned worker_count()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : hw;
}

template <typename Fn>
auto parallel_map(size_t count, Fn&& fn, unsigned workers = worker_count()) -> std::vector<decltype(fn(size_t{}))>
{
    using R = decltype(fn(size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::future<void>> pool;
    const unsigned n = std::max(1u, std::min<unsigned>(workers, unsigned(std::min<size_t>(count, 1024))));
    for (unsigned w = 0; w < n; ++w) pool.push_back(std::async(std::launch::async, work));
    for (auto& f : pool) f.get();
    std::vector<R> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace biorth
