#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace bdg {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

/// Seed of stream `stream` derived from a 64-bit run seed.
///
/// Splitting rule: stream_seed(s, k) = splitmix64(s ^ splitmix64(k)). Every
/// sampling loop in the library is cut into fixed-size chunks and chunk k
/// draws from Rng(stream_seed(seed, k)), so results depend on (seed, sample
/// count) only and never on the number of worker threads.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
{
	return splitmix64(seed ^ splitmix64(stream));
}

inline constexpr std::uint64_t kChunkSize = 4096;

/// Worker count from the BDG_WORKERS environment variable, else 1.
unsigned default_workers();

double log_uniform(Rng& rng, double lo, double hi);
double uniform(Rng& rng, double lo, double hi);

/// Direction uniform on the Euclidean unit sphere of R^dim.
Eigen::VectorXd random_direction(Rng& rng, int dim);

/// Runs `samples` draws in chunks of kChunkSize. `body(acc, rng, first, count)`
/// fills one chunk accumulator; accumulators are merged in chunk order with
/// `Acc::merge`, which keeps the result independent of `workers`.
template <class Acc, class Body>
Acc run_chunked(std::uint64_t samples, std::uint64_t seed, unsigned workers,
    const Acc& init, Body&& body)
{
	const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
	std::vector<Acc> partial(chunks, init);

	auto run_one = [&](std::uint64_t c) {
		Rng rng(stream_seed(seed, c));
		const std::uint64_t first = c * kChunkSize;
		const std::uint64_t count = std::min(kChunkSize, samples - first);
		body(partial[c], rng, first, count);
	};

	if (workers <= 1 || chunks <= 1) {
		for (std::uint64_t c = 0; c < chunks; ++c)
			run_one(c);
	} else {
		std::atomic<std::uint64_t> next{0};
		std::vector<std::exception_ptr> errors(workers);
		{
			std::vector<std::jthread> pool;
			for (unsigned w = 0; w < workers; ++w) {
				pool.emplace_back([&, w] {
					try {
						for (std::uint64_t c = next++; c < chunks; c = next++)
							run_one(c);
					} catch (...) {
						errors[w] = std::current_exception();
						next = chunks;
					}
				});
			}
		}
		for (auto& e : errors)
			if (e)
				std::rethrow_exception(e);
	}

	Acc total = init;
	for (const auto& a : partial)
		total.merge(a);
	return total;
}

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Callers write
/// into per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn)
{
	if (workers <= 1 || count <= 1) {
		for (std::uint64_t i = 0; i < count; ++i)
			fn(i);
		return;
	}
	std::atomic<std::uint64_t> next{0};
	std::vector<std::exception_ptr> errors(workers);
	{
		std::vector<std::jthread> pool;
		for (unsigned w = 0; w < workers; ++w) {
			pool.emplace_back([&, w] {
				try {
					for (std::uint64_t i = next++; i < count; i = next++)
						fn(i);
				} catch (...) {
					errors[w] = std::current_exception();
					next = count;
				}
			});
		}
	}
	for (auto& e : errors)
		if (e)
			std::rethrow_exception(e);
}

} // namespace bdg
