#include "bdg/sampling.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

namespace {

struct SumAcc {
	double sum = 0.0;
	std::uint64_t count = 0;
	std::vector<std::uint64_t> firsts;

	void merge(const SumAcc& o)
	{
		sum += o.sum;
		count += o.count;
		firsts.insert(firsts.end(), o.firsts.begin(), o.firsts.end());
	}
};

SumAcc run(std::uint64_t samples, std::uint64_t seed, unsigned workers)
{
	return bdg::run_chunked(samples, seed, workers, SumAcc{},
	    [](SumAcc& acc, bdg::Rng& rng, std::uint64_t first, std::uint64_t count) {
		    acc.firsts.push_back(first);
		    for (std::uint64_t i = 0; i < count; ++i)
			    acc.sum += bdg::uniform(rng, 0.0, 1.0);
		    acc.count += count;
	    });
}

} // namespace

TEST(Sampling, StreamSeedsDiffer)
{
	EXPECT_NE(bdg::stream_seed(1, 0), bdg::stream_seed(1, 1));
	EXPECT_NE(bdg::stream_seed(1, 0), bdg::stream_seed(2, 0));
	EXPECT_EQ(bdg::stream_seed(9, 4), bdg::splitmix64(9 ^ bdg::splitmix64(4)));
}

TEST(Sampling, ChunkedResultIgnoresWorkerCount)
{
	const std::uint64_t n = 5 * bdg::kChunkSize + 17;
	const SumAcc one = run(n, 11, 1);
	for (unsigned w : {2u, 3u, 8u}) {
		const SumAcc many = run(n, 11, w);
		EXPECT_EQ(one.sum, many.sum) << w;
		EXPECT_EQ(one.count, many.count);
		EXPECT_EQ(one.firsts, many.firsts);
	}
	EXPECT_EQ(one.count, n);
}

TEST(Sampling, SeedChangesStream)
{
	EXPECT_NE(run(1000, 1, 1).sum, run(1000, 2, 1).sum);
}

TEST(Sampling, ParallelForVisitsEveryIndexOnce)
{
	std::vector<int> hits(1000, 0);
	bdg::parallel_for(hits.size(), 4, [&](std::uint64_t i) { hits[i] += 1; });
	for (int h : hits)
		ASSERT_EQ(h, 1);
}

TEST(Sampling, ParallelForRethrows)
{
	EXPECT_THROW(bdg::parallel_for(100, 3,
	                 [](std::uint64_t i) {
		                 if (i == 57)
			                 throw std::runtime_error("boom");
	                 }),
	    std::runtime_error);
}

TEST(Sampling, DistributionsStayInRange)
{
	bdg::Rng rng(5);
	for (int i = 0; i < 10000; ++i) {
		const double a = bdg::log_uniform(rng, 1e-3, 1e3);
		ASSERT_GE(a, 1e-3);
		ASSERT_LE(a, 1e3);
		const Eigen::VectorXd d = bdg::random_direction(rng, 4);
		ASSERT_NEAR(d.norm(), 1.0, 1e-12);
	}
}
