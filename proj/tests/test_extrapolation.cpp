#include "bdg/extrapolation.hpp"
#include "bdg/report.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

using namespace bdg::extrap;
using bdg::test::rel_err;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v)
{
	Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
	int i = 0;
	for (double a : v)
		x[i++] = a;
	return x;
}

Eigen::VectorXd random_nonneg(bdg::Rng& rng, int dim)
{
	Eigen::VectorXd f(dim);
	for (int s = 0; s < dim; ++s)
		f[s] = bdg::uniform(rng, 0.0, 1.0) < 0.1 ? 0.0 : bdg::log_uniform(rng, 1e-2, 1e2);
	if (f.maxCoeff() == 0.0)
		f[0] = 1.0;
	return f;
}

} // namespace

TEST(Extrapolation, FunctionSpaceBasics)
{
	const FunctionSpace s = FunctionSpace::lq(3.0, 2);
	EXPECT_DOUBLE_EQ(s.q_conjugate(), 1.5);
	EXPECT_NEAR(s.norm(vec({1, 1})), std::pow(2.0, 1.0 / 3.0), 1e-15);
	FunctionSpace w{2.0, 2, {4.0, 1.0}};
	EXPECT_DOUBLE_EQ(w.norm(vec({1, 0})), 2.0);
	EXPECT_THROW((FunctionSpace{0.5, 2, {}}).validate(), std::invalid_argument);
	EXPECT_THROW((FunctionSpace{2.0, 2, {1.0}}).validate(), std::invalid_argument);
}

TEST(Extrapolation, ExtremizerExamples)
{
	const Eigen::VectorXd a = extremizer(FunctionSpace::lq(2.5, 1), vec({3}), 1.7);
	EXPECT_NEAR(a[0], std::pow(3.0, 0.7), 1e-14);
	EXPECT_NEAR(FunctionSpace::lq(2.5, 1).pairing(vec({3}), a), std::pow(3.0, 1.7), 1e-13);

	const FunctionSpace s2 = FunctionSpace::lq(2.0, 2);
	const Eigen::VectorXd b = extremizer(s2, vec({3, 4}), 2.0);
	EXPECT_NEAR(b[0], 3.0, 1e-14);
	EXPECT_NEAR(b[1], 4.0, 1e-14);
	EXPECT_NEAR(s2.pairing(vec({3, 4}), b), 25.0, 1e-13);

	const FunctionSpace s3 = FunctionSpace::lq(3.0, 2);
	const Eigen::VectorXd c = extremizer(s3, vec({1, 1}), 2.0);
	EXPECT_NEAR(c[0], std::pow(2.0, -1.0 / 3.0), 1e-15);
	EXPECT_NEAR(s3.pairing(vec({1, 1}), c), std::pow(2.0, 2.0 / 3.0), 1e-15);

	EXPECT_EQ(extremizer(s3, vec({0, 0}), 2.0).norm(), 0.0);
	EXPECT_THROW(extremizer(s3, vec({1, -1}), 2.0), std::invalid_argument);
}

TEST(Extrapolation, ExtremizerIdentities)
{
	bdg::Rng rng(41);
	for (auto [q, d] : {std::pair{2.0, 2}, std::pair{3.0, 4}, std::pair{1.5, 3}}) {
		FunctionSpace s = FunctionSpace::lq(q, d);
		for (int i = 0; i < 100; ++i) {
			const Eigen::VectorXd f = random_nonneg(rng, d);
			for (double r : {1.5, 2.0, 3.0}) {
				const Eigen::VectorXd h = extremizer(s, f, r);
				ASSERT_LE(rel_err(s.dual_norm(h), std::pow(s.norm(f), r - 1.0)), 1e-12);
				ASSERT_LE(rel_err(s.pairing(f, h), std::pow(s.norm(f), r)), 1e-12);
			}
		}
		s.mu.assign(static_cast<std::size_t>(d), 0.0);
		for (double& m : s.mu)
			m = bdg::log_uniform(rng, 0.1, 10.0);
		const Eigen::VectorXd f = random_nonneg(rng, d);
		const Eigen::VectorXd h = extremizer(s, f, 2.5);
		EXPECT_LE(rel_err(s.dual_norm(h), std::pow(s.norm(f), 1.5)), 1e-12);
		EXPECT_LE(rel_err(s.pairing(f, h), std::pow(s.norm(f), 2.5)), 1e-12);
	}
}

TEST(Extrapolation, Norming)
{
	bdg::Rng rng(42);
	for (auto [q, d] : {std::pair{2.0, 2}, std::pair{3.0, 4}, std::pair{1.5, 3}}) {
		const FunctionSpace s = FunctionSpace::lq(q, d);
		for (int i = 0; i < 100; ++i) {
			Eigen::VectorXd f = bdg::random_direction(rng, d) * bdg::log_uniform(rng, 0.1, 10.0);
			const NormingReport r = norming_check(s, f, 10000, 100 + i);
			ASSERT_LE(r.best_random, r.norm * (1 + 1e-12));
			ASSERT_LE(rel_err(r.extremizer_pairing, r.norm), 1e-12);
		}
	}
}

TEST(Extrapolation, TrivialChain)
{
	const FiltrationTree tree(4);
	bdg::Rng rng(43);
	BiField f(16, 3);
	for (Eigen::Index i = 0; i < f.size(); ++i)
		f.data()[i] = bdg::uniform(rng, 0.0, 2.0);
	const ChainReport r = verify_extrapolation_chain(tree, f, f, 1.0, 2.0, FunctionSpace::lq(3.0, 3));
	EXPECT_TRUE(r.passed());
	EXPECT_TRUE(r.hypothesis_ok);
	EXPECT_DOUBLE_EQ(r.effective_constant, 1.0);
	EXPECT_LE(r.lhs, r.rhs);
	EXPECT_GE(r.M_measured, 1.0);
	ASSERT_EQ(r.steps.size(), 8u);
	EXPECT_EQ(r.steps.front().name, "f_dualized");
	EXPECT_EQ(r.steps.back().name, "final");
}

TEST(Extrapolation, HypothesisFailureIsReported)
{
	const FiltrationTree tree(2);
	BiField f = BiField::Constant(4, 2, 5.0);
	BiField g = BiField::Constant(4, 2, 1.0);
	const ChainReport r = verify_extrapolation_chain(tree, f, g, 1.0, 2.0, FunctionSpace::lq(2.0, 2));
	EXPECT_FALSE(r.hypothesis_ok);
	EXPECT_FALSE(r.passed());
}

TEST(Extrapolation, ChainHomogeneity)
{
	const FiltrationTree tree(5);
	const auto mart = gaussian_field(5, 4, 3);
	const VectorBdgReport base = verify_vector_bdg(mart, 2.5, FunctionSpace::lq(3.0, 4));
	for (double lam : {1e-3, 7.0}) {
		bdg::dyadic::AdaptedProcess p = mart.process();
		for (auto& l : p.levels)
			l *= lam;
		const VectorBdgReport r = verify_vector_bdg(Martingale::from_process(p), 2.5, FunctionSpace::lq(3.0, 4));
		EXPECT_LE(rel_err(r.chain.effective_constant, base.chain.effective_constant), 1e-12);
		EXPECT_LE(rel_err(r.chain.M_measured, base.chain.M_measured), 1e-12);
	}
}

TEST(Extrapolation, SingleCoordinateReducesToScalar)
{
	const auto s1 = FunctionSpace::lq(3.0, 1);
	const auto mart = gaussian_field(6, 1, 9);
	const VectorBdgReport v = verify_vector_bdg(mart, 2.0, s1);
	const bdg::lab::RatioReport l = bdg::lab::verify_lr(mart, 2.0, bdg::smooth::SpaceDescriptor::scalar(2.0));
	EXPECT_NEAR(v.ratio.lhs, l.lhs, 1e-13 * l.lhs);
	EXPECT_NEAR(v.ratio.rhs, l.rhs, 1e-13 * l.rhs);
	EXPECT_TRUE(v.passed());
}

TEST(Extrapolation, ZeroField)
{
	const auto zero = gaussian_field(3, 2, 1);
	bdg::dyadic::AdaptedProcess p = zero.process();
	for (auto& l : p.levels)
		l.setZero();
	const VectorBdgReport r = verify_vector_bdg(Martingale::from_process(p), 2.0, FunctionSpace::lq(2.0, 2));
	EXPECT_EQ(r.ratio.lhs, 0.0);
	EXPECT_EQ(r.ratio.rhs, 0.0);
	EXPECT_TRUE(r.ratio.satisfied);
}

TEST(Extrapolation, VectorBdgFields)
{
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		for (double r : {2.0, 2.5}) {
			const auto s = FunctionSpace::lq(3.0, 4);
			const VectorBdgReport a = verify_vector_bdg(sign_increment_field(6, 4, seed), r, s);
			const VectorBdgReport b = verify_vector_bdg(gaussian_field(6, 4, seed), r, s);
			EXPECT_TRUE(a.passed()) << seed;
			EXPECT_TRUE(b.passed()) << seed;
			EXPECT_TRUE(a.chain.hypothesis_ok);
		}
	}
}

TEST(Extrapolation, VectorBdgFixture)
{
	std::ifstream in(std::string(BDG_FIXTURE_DIR) + "/vector_bdg_q3_d4_r2_depth6_s5.json");
	ASSERT_TRUE(in);
	const auto fx = bdg::report::Json::parse(in);
	const auto& c = fx.at("config");
	const auto& e = fx.at("expected");
	const auto s = FunctionSpace::lq(c.at("q").get<double>(), c.at("dim").get<int>());
	const Martingale field = sign_increment_field(c.at("depth").get<int>(), c.at("dim").get<int>(),
	    c.at("seed").get<std::uint64_t>());
	const VectorBdgReport r = verify_vector_bdg(field, c.at("r").get<double>(), s);
	EXPECT_NEAR(r.ratio.ratio, e.at("ratio").get<double>(), 1e-12);
	EXPECT_NEAR(r.ratio.lhs, e.at("lhs").get<double>(), 1e-12);
	EXPECT_NEAR(r.ratio.rhs, e.at("rhs").get<double>(), 1e-12);
	EXPECT_NEAR(r.chain.M_measured, e.at("M_measured").get<double>(), 1e-12);
	EXPECT_LE(r.ratio.ratio, r.ratio.bound);
	EXPECT_TRUE(r.passed());
}
