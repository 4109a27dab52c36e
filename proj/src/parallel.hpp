// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace j1j2::detail {

/// Static index striping over worker threads. Each index is processed by
/// exactly one worker and results must be written to per-index slots, which
/// keeps the outcome independent of scheduling. The first captured exception
/// is rethrown after all workers join.
inline void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min(threads, count > 0 ? count : 1);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < count; i += threads) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace j1j2::detail
