#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ndv {

/**
 * Runs fn(i) for i in [0, count) on up to `threads` workers. Callers write
 * results into preallocated slots indexed by i, so output never depends on
 * the schedule. The first exception thrown is rethrown after all workers join.
 */
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& fn)
{
	threads = std::max<std::size_t>(1, std::min(threads, count));
	if (threads == 1) {
		for (std::size_t i = 0; i < count; ++i)
			fn(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr error;
	std::mutex error_mutex;
	std::vector<std::thread> pool;
	pool.reserve(threads);
	for (std::size_t t = 0; t < threads; ++t)
		pool.emplace_back([&] {
			for (std::size_t i = next++; i < count; i = next++) {
				try {
					fn(i);
				} catch (...) {
					std::lock_guard lock(error_mutex);
					if (!error)
						error = std::current_exception();
				}
			}
		});
	for (auto& th : pool)
		th.join();
	if (error)
		std::rethrow_exception(error);
}

} // namespace ndv
