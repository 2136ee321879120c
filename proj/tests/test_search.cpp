#include "bdg/inequality_lab.hpp"
#include "bdg/report.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace bdg::lab;
using bdg::report::Json;

namespace {

Json load(const std::string& name)
{
	std::ifstream in(std::string(BDG_FIXTURE_DIR) + "/" + name);
	if (!in)
		throw std::runtime_error("missing fixture " + name);
	return Json::parse(in);
}

} // namespace

TEST(Search, StartsAtRatioOne)
{
	const SearchReport r = adversarial_search({SpaceDescriptor::scalar(), 3, Generator::gaussian_terminal, 1}, 1);
	ASSERT_FALSE(r.trajectory.empty());
	EXPECT_EQ(r.trajectory.front().iteration, 0u);
	EXPECT_DOUBLE_EQ(r.trajectory.front().ratio, 1.0);
	EXPECT_GE(r.best_ratio, 1.0);
}

TEST(Search, TrajectoryIncreases)
{
	const SearchReport r = adversarial_search({SpaceDescriptor::lq(3.0, 4, 2.0), 4, Generator::gaussian_terminal, 2}, 2000);
	for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
		EXPECT_GT(r.trajectory[i].ratio, r.trajectory[i - 1].ratio);
		EXPECT_GT(r.trajectory[i].iteration, r.trajectory[i - 1].iteration);
	}
	EXPECT_EQ(r.best_ratio, r.trajectory.back().ratio);
	EXPECT_TRUE(r.within_bound);
}

TEST(Search, Deterministic)
{
	const InstanceConfig cfg{SpaceDescriptor::scalar(), 5, Generator::gaussian_terminal, 11};
	const SearchReport a = adversarial_search(cfg, 1500);
	const SearchReport b = adversarial_search(cfg, 1500);
	ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
	for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
		EXPECT_EQ(a.trajectory[i].iteration, b.trajectory[i].iteration);
		EXPECT_EQ(a.trajectory[i].ratio, b.trajectory[i].ratio);
	}
	EXPECT_EQ(a.leaf_values, b.leaf_values);
	EXPECT_EQ(a.weights, b.weights);
}

TEST(Search, FixtureRegression)
{
	const Json fx = load("search_scalar_p2_d6_s7.json");
	const auto& c = fx.at("config");
	const InstanceConfig cfg{bdg::report::space_from_json(c.at("space")), c.at("depth").get<int>(),
	    Generator::gaussian_terminal, c.at("seed").get<std::uint64_t>()};
	const SearchReport r = adversarial_search(cfg, c.at("iterations").get<std::uint64_t>());
	const double expected = fx.at("expected_ratio").get<double>();
	EXPECT_NEAR(r.best_ratio, expected, 1e-12 * expected);
	EXPECT_GT(r.best_ratio, 1.0);
	EXPECT_LT(r.best_ratio, r.bound);

	// the stored instance reproduces the stored ratio
	const auto& leaves = fx.at("leaf_values");
	Eigen::MatrixXd t(1, static_cast<Eigen::Index>(leaves.size()));
	for (std::size_t i = 0; i < leaves.size(); ++i)
		t(0, static_cast<Eigen::Index>(i)) = leaves[i][0].get<double>();
	const auto w = fx.at("weights").get<std::vector<double>>();
	const Martingale m = bdg::dyadic::martingale_from_terminal(FiltrationTree(cfg.depth), t);
	EXPECT_NEAR(weighted_ratio(m, w, cfg.space), expected, 1e-12 * expected);
}
