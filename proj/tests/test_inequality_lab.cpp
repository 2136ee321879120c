#include "bdg/inequality_lab.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bdg::lab;
using bdg::dyadic::martingale_from_terminal;
using bdg::test::rel_err;
using bdg::test::scalar_martingale;

namespace {

const SpaceDescriptor kScalar = SpaceDescriptor::scalar(2.0);

std::vector<double> ones(std::size_t n)
{
	return std::vector<double>(n, 1.0);
}

AdaptedProcess constant_multiplier(int depth, double c)
{
	AdaptedProcess l;
	for (int n = 0; n <= depth; ++n)
		l.levels.push_back(Eigen::MatrixXd::Constant(1, 1 << n, c));
	return l;
}

// leaf value = sum of the +-1 signs along the path
Martingale sign_walk(int depth)
{
	Eigen::MatrixXd t(1, 1 << depth);
	for (int leaf = 0; leaf < (1 << depth); ++leaf) {
		double s = 0.0;
		for (int b = 0; b < depth; ++b)
			s += (leaf >> b) & 1 ? -1.0 : 1.0;
		t(0, leaf) = s;
	}
	return martingale_from_terminal(FiltrationTree(depth), t);
}

Martingale scaled(const Martingale& m, double lam)
{
	AdaptedProcess p = m.process();
	for (auto& l : p.levels)
		l *= lam;
	return Martingale::from_process(p);
}

} // namespace

TEST(Lab, RatioReportTolerance)
{
	EXPECT_TRUE(make_ratio("x", 1.0, 1.0, 1.0).satisfied);
	EXPECT_TRUE(make_ratio("x", 1.0 + 1e-13, 1.0, 1.0).satisfied);
	EXPECT_FALSE(make_ratio("x", 1.0 + 1e-9, 1.0, 1.0).satisfied);
	EXPECT_EQ(make_ratio("x", 0.0, 0.0, 2.0).ratio, 0.0);
	EXPECT_DOUBLE_EQ(maximal_constant_ch(kScalar), 42.0 * std::sqrt(2.0));
	EXPECT_DOUBLE_EQ(maximal_constant_csm(kScalar), 168.0);
}

TEST(Lab, MaximalWeightedExamples)
{
	const WeightedReport c = verify_maximal_weighted(scalar_martingale({-3, -3}), ones(2), kScalar);
	EXPECT_DOUBLE_EQ(c.ch.lhs, 3.0);
	EXPECT_DOUBLE_EQ(c.ch.rhs, 3.0);
	EXPECT_DOUBLE_EQ(c.ch.ratio, 1.0);
	EXPECT_TRUE(c.satisfied());

	const WeightedReport r = verify_maximal_weighted(scalar_martingale({4, 0, 2, 2}), ones(4), kScalar);
	EXPECT_DOUBLE_EQ(r.ch.lhs, 2.5);
	EXPECT_NEAR(r.ch.rhs, (2 * std::sqrt(8.0) + 4) / 4, 1e-15);
	EXPECT_NEAR(r.ch.ratio, 1.0355339059327378, 1e-15);
	EXPECT_EQ(r.sharper().name, "w_bdg_ch");

	const WeightedReport z = verify_maximal_weighted(scalar_martingale({0, 0}), ones(2), kScalar);
	EXPECT_EQ(z.ch.lhs, 0.0);
	EXPECT_EQ(z.ch.ratio, 0.0);
	EXPECT_TRUE(z.satisfied());
}

TEST(Lab, NonmaximalExamples)
{
	const RatioReport c = verify_nonmaximal_weighted(scalar_martingale({2, 2}), ones(2), kScalar);
	EXPECT_DOUBLE_EQ(c.ratio, 1.0);
	const RatioReport r = verify_nonmaximal_weighted(scalar_martingale({1, -1}), std::vector<double>{2.0, 0.0}, kScalar);
	EXPECT_DOUBLE_EQ(r.lhs, 1.0);
	EXPECT_DOUBLE_EQ(r.rhs, 1.5);
	EXPECT_NEAR(r.ratio, 2.0 / 3.0, 1e-15);
	EXPECT_DOUBLE_EQ(r.bound, 9.0 * std::sqrt(2.0));
}

TEST(Lab, LrExamples)
{
	const RatioReport c = verify_lr(scalar_martingale({5, 5, 5, 5}), 3.0, kScalar);
	EXPECT_DOUBLE_EQ(c.ratio, 1.0);
	const RatioReport r = verify_lr(scalar_martingale({4, 0, 2, 2}), 2.0, kScalar);
	EXPECT_NEAR(r.lhs, std::sqrt(7.0), 1e-15);
	EXPECT_NEAR(r.rhs, std::sqrt(6.0), 1e-15);
	EXPECT_DOUBLE_EQ(r.bound, 42.0 * std::sqrt(2.0) * 2.0);
	EXPECT_THROW(verify_lr(scalar_martingale({1, 1}), 1.0, kScalar), std::invalid_argument);
}

TEST(Lab, SquareFunctionComparison)
{
	for (int depth : {1, 3, 6}) {
		const RatioReport r = verify_sg_comparison(sign_walk(depth), 3.0, kScalar);
		EXPECT_NEAR(r.ratio, 1.0, 1e-14);
		EXPECT_DOUBLE_EQ(r.bound, std::sqrt(1.5));
	}
	const RatioReport e = verify_sg_comparison(scalar_martingale({4, 0, 2, 2}), 2.0, kScalar);
	EXPECT_NEAR(e.lhs, std::sqrt(2.0), 1e-15);
	EXPECT_NEAR(e.rhs, std::sqrt(6.0), 1e-15);
	EXPECT_NEAR(e.ratio, 0.5773502691896258, 1e-15);
	EXPECT_EQ(e.bound, 1.0);
	EXPECT_THROW(verify_sg_comparison(sign_walk(2), 1.5, kScalar), std::invalid_argument);
}

TEST(Lab, TelescopingZeroMartingale)
{
	for (Variant v : {Variant::plain, Variant::maximal}) {
		const TelescopingReport r = verify_telescoping(scalar_martingale({0, 0, 0, 0}),
		    std::vector<double>{1.0, 2.0, 0.0, 3.0}, kScalar, v, BellmanConstants::defaults(v));
		EXPECT_TRUE(r.passed()) << r.first_failure;
		for (double b : r.expected_B)
			EXPECT_EQ(b, 0.0);
	}
}

TEST(Lab, TelescopingExample)
{
	const auto k = BellmanConstants::maximal_default();
	const TelescopingReport r = verify_telescoping(scalar_martingale({4, 0, 2, 2}), ones(4), kScalar,
	    Variant::maximal, k);
	EXPECT_TRUE(r.passed()) << r.first_failure;
	ASSERT_EQ(r.expected_B.size(), 3u);
	Eigen::VectorXd x(1);
	x << 2.0;
	const double b0 = bdg::bellman::u_max(kScalar, {x, 2.0, 4.0, 1.0, 1.0}, k);
	EXPECT_NEAR(r.expected_B[0], b0, 1e-13);
	EXPECT_LE(b0, 0.0);
	EXPECT_LE(r.chain_lhs, r.expected_B.back() + 1e-12);
}

TEST(Lab, TelescopingBreaksWithSmallConstant)
{
	bool any = false;
	for (std::uint64_t seed = 0; seed < 30 && !any; ++seed) {
		const Instance inst = make_instance({kScalar, 6, Generator::gaussian_terminal, seed});
		const TelescopingReport r = verify_telescoping(inst.mart, inst.w, kScalar, Variant::plain,
		    {0.5, 4.0 * std::sqrt(2.0)});
		any = !r.passed();
		if (any) {
			EXPECT_FALSE(r.first_failure.empty());
		}
	}
	EXPECT_TRUE(any);
}

TEST(Lab, TripleReductions)
{
	const Martingale g = scalar_martingale({3, -1, 0, -2});
	AdaptedProcess shifted = g.process();
	for (auto& l : shifted.levels)
		l.array() -= g.at(0, 0)[0];
	const Martingale g0 = Martingale::from_process(shifted);

	const std::vector<double> w{1.0, 2.0, 0.5, 1.5};
	const TripleReport one = verify_triple_process(g0, constant_multiplier(2, 1.0), w, kScalar, 2.0);
	const WeightedReport direct = verify_maximal_weighted(g0, w, kScalar);
	EXPECT_NEAR(one.weighted.lhs, direct.csm.lhs, 1e-14);
	EXPECT_NEAR(one.weighted.rhs, direct.csm.rhs, 1e-14);
	const AdaptedProcess f = triple_process(g0, constant_multiplier(2, 1.0));
	for (int n = 0; n <= 2; ++n)
		EXPECT_LE((f.levels[n] - g0.process().levels[n]).cwiseAbs().maxCoeff(), 1e-15);

	const TripleReport zero = verify_triple_process(g0, constant_multiplier(2, 0.0), ones(4), kScalar, 2.0);
	EXPECT_LE(zero.weighted.ratio, 1.0 + 1e-15);
	EXPECT_TRUE(zero.satisfied());

	EXPECT_THROW(verify_triple_process(scalar_martingale({3, -1, 0, 2}), constant_multiplier(2, 1.0), w,
	                 kScalar, 2.0),
	    std::invalid_argument);
	EXPECT_THROW(verify_triple_process(g0, constant_multiplier(2, 1.5), w, kScalar, 2.0),
	    std::invalid_argument);
}

TEST(Lab, ScaleInvariance)
{
	const auto space = SpaceDescriptor::lq(3.0, 4, 2.0);
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		const Instance inst = make_instance({space, 5, Generator::gaussian_terminal, seed});
		for (double lam : {1e-3, 0.7, 13.0}) {
			const Martingale m = scaled(inst.mart, lam);
			std::vector<double> w = inst.w;
			for (double& x : w)
				x *= 1.0 / lam + 2.0;
			EXPECT_LE(rel_err(verify_maximal_weighted(m, w, space).ch.ratio,
			              verify_maximal_weighted(inst.mart, inst.w, space).ch.ratio),
			    1e-12);
			EXPECT_LE(rel_err(verify_nonmaximal_weighted(m, w, space).ratio,
			              verify_nonmaximal_weighted(inst.mart, inst.w, space).ratio),
			    1e-12);
			EXPECT_LE(rel_err(verify_lr(m, 2.5, space).ratio, verify_lr(inst.mart, 2.5, space).ratio), 1e-12);
			EXPECT_LE(rel_err(verify_sg_comparison(m, 3.0, space).ratio,
			              verify_sg_comparison(inst.mart, 3.0, space).ratio),
			    1e-12);
		}
	}
}

TEST(Lab, HoelderDoobChain)
{
	const auto space = SpaceDescriptor::lq(3.0, 4, 2.0);
	for (Generator gen : {Generator::gaussian_terminal, Generator::sparse_weight}) {
		for (std::uint64_t seed = 0; seed < 20; ++seed) {
			const Instance inst = make_instance({space, 6, gen, seed});
			for (double r : {1.5, 2.0, 4.0}) {
				const auto reps = verify_holder_doob(inst.mart, inst.w, space, r);
				ASSERT_EQ(reps.size(), 4u);
				for (const auto& rep : reps)
					EXPECT_TRUE(rep.satisfied) << rep.name << " r=" << r;
				if (verify_maximal_weighted(inst.mart, inst.w, space).ch.satisfied) {
					EXPECT_TRUE(verify_lr(inst.mart, r, space).satisfied);
				}
			}
		}
	}
}

TEST(Lab, InstancesAreDeterministic)
{
	const InstanceConfig cfg{SpaceDescriptor::lq(3.0, 4, 2.0), 5, Generator::sparse_weight, 99};
	const Instance a = make_instance(cfg);
	const Instance b = make_instance(cfg);
	EXPECT_EQ(a.w, b.w);
	EXPECT_EQ(a.mart.process().levels.back(), b.mart.process().levels.back());
	EXPECT_EQ(parse_generator(to_string(Generator::adversarial_seeded)), Generator::adversarial_seeded);
	EXPECT_THROW((InstanceConfig{kScalar, 21, Generator::gaussian_terminal, 0}).validate(),
	    std::invalid_argument);
}

TEST(Lab, SmallFleetClean)
{
	for (const auto& space : {kScalar, SpaceDescriptor::lq(3.0, 4, 2.0)}) {
		for (Generator gen :
		    {Generator::gaussian_terminal, Generator::sparse_weight, Generator::adversarial_seeded}) {
			FleetConfig cfg;
			cfg.space = space;
			cfg.depth = 5;
			cfg.generator = gen;
			cfg.trials = 20;
			cfg.seed = 3;
			const FleetReport r = run_fleet(cfg, 1);
			EXPECT_EQ(r.violations(), 0u) << r.first_failure;
			EXPECT_EQ(r.telescoping_runs, 40u);
			EXPECT_EQ(r.telescoping_failures, 0u) << r.first_failure;
			for (const auto& c : r.checks)
				EXPECT_EQ(c.checks, 20u) << c.name;
		}
	}
}

TEST(Lab, FleetIgnoresWorkers)
{
	FleetConfig cfg;
	cfg.space = SpaceDescriptor::lq(3.0, 4, 2.0);
	cfg.depth = 4;
	cfg.trials = 12;
	cfg.seed = 8;
	const FleetReport a = run_fleet(cfg, 1);
	const FleetReport b = run_fleet(cfg, 3);
	ASSERT_EQ(a.checks.size(), b.checks.size());
	for (std::size_t i = 0; i < a.checks.size(); ++i) {
		EXPECT_EQ(a.checks[i].name, b.checks[i].name);
		EXPECT_EQ(a.checks[i].max_ratio, b.checks[i].max_ratio);
	}
}
