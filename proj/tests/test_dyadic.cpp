#include "bdg/dyadic_martingale.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bdg::dyadic;
using bdg::smooth::SpaceDescriptor;
using bdg::test::scalar_martingale;

namespace {

const SpaceDescriptor kScalar = SpaceDescriptor::scalar(2.0);

std::vector<double> v(std::initializer_list<double> l)
{
	return l;
}

void expect_vec(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-15)
{
	ASSERT_EQ(a.size(), b.size());
	for (std::size_t i = 0; i < a.size(); ++i)
		EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

Martingale random_martingale(int depth, int dim, std::uint64_t seed)
{
	bdg::Rng rng(seed);
	std::normal_distribution<double> n01;
	Eigen::MatrixXd t(dim, 1 << depth);
	for (Eigen::Index j = 0; j < t.cols(); ++j)
		for (int i = 0; i < dim; ++i)
			t(i, j) = n01(rng);
	return martingale_from_terminal(FiltrationTree(depth), t);
}

} // namespace

TEST(Dyadic, ConditionalExpectationExamples)
{
	expect_vec(conditional_expectation(FiltrationTree(1), v({2, 0})).levels[0], v({1}));
	const ScalarProcess p = conditional_expectation(FiltrationTree(2), v({4, 0, 2, 2}));
	expect_vec(p.levels[1], v({2, 2}));
	expect_vec(p.levels[0], v({2}));
	expect_vec(conditional_expectation(FiltrationTree(0), v({7})).levels[0], v({7}));
	EXPECT_THROW(conditional_expectation(FiltrationTree(2), v({1, 2, 3})), std::invalid_argument);
}

TEST(Dyadic, MartingaleFromTerminal)
{
	const Martingale c = scalar_martingale({3, 3, 3, 3});
	for (int n = 0; n <= 2; ++n)
		for (Eigen::Index i = 0; i < c.process().levels[n].cols(); ++i)
			EXPECT_EQ(c.at(n, i)[0], 3.0);
	const Martingale m = scalar_martingale({4, 0, 2, 2});
	EXPECT_EQ(m.at(0, 0)[0], 2.0);
	EXPECT_EQ(m.at(1, 0)[0], 2.0);
	EXPECT_EQ(m.at(1, 1)[0], 2.0);
	EXPECT_EQ(scalar_martingale({1, -1}).at(0, 0)[0], 0.0);
}

TEST(Dyadic, FromProcessRejectsNonMartingale)
{
	AdaptedProcess p;
	p.levels.push_back(Eigen::MatrixXd::Constant(1, 1, 1.0));
	p.levels.push_back((Eigen::MatrixXd(1, 2) << 2.0, 0.5).finished());
	EXPECT_THROW(Martingale::from_process(p), std::invalid_argument);
	p.levels[1](0, 1) = 0.0;
	EXPECT_NO_THROW(Martingale::from_process(p));
}

TEST(Dyadic, MaximalProcessExamples)
{
	expect_vec(maximal_process(scalar_martingale({-5, -5}), kScalar).leaf, v({5, 5}));
	expect_vec(maximal_process(scalar_martingale({4, 0, 2, 2}), kScalar).leaf, v({4, 2, 2, 2}));
	expect_vec(maximal_process(scalar_martingale({1, -1}), kScalar).leaf, v({1, 1}));
}

TEST(Dyadic, PVariationExamples)
{
	expect_vec(p_variation(scalar_martingale({3, 3}), kScalar, 2.0), v({3, 3}));
	const double r8 = std::sqrt(8.0);
	expect_vec(p_variation(scalar_martingale({4, 0, 2, 2}), kScalar, 2.0), v({r8, r8, 2, 2}));
	expect_vec(p_variation(scalar_martingale({1, -1}), SpaceDescriptor::scalar(1.5), 1.5), v({1, 1}));
}

TEST(Dyadic, WeightExamples)
{
	const WeightTriple one = weight_processes(FiltrationTree(2), v({1, 1, 1, 1}));
	expect_vec(one.w_star, v({1, 1, 1, 1}));
	expect_vec(one.w_n.levels[1], v({1, 1}));

	const WeightTriple a = weight_processes(FiltrationTree(1), v({2, 0}));
	expect_vec(a.w_n.levels[0], v({1}));
	expect_vec(a.w_n.levels[1], v({2, 0}));
	expect_vec(a.w_star, v({2, 1}));

	const WeightTriple b = weight_processes(FiltrationTree(2), v({1, 0, 0, 0}));
	expect_vec(b.w_n.levels[0], v({0.25}));
	expect_vec(b.w_n.levels[1], v({0.5, 0}));
	expect_vec(b.w_star, v({1, 0.5, 0.25, 0.25}));

	EXPECT_THROW(weight_processes(FiltrationTree(1), v({1, -1})), std::invalid_argument);
}

TEST(Dyadic, SquareFunctionExamples)
{
	expect_vec(conditional_square_function(scalar_martingale({2, 2}), kScalar), v({0, 0}));
	expect_vec(conditional_square_function(scalar_martingale({1, -1}), kScalar), v({1, 1}));
	expect_vec(conditional_square_function(scalar_martingale({4, 0, 2, 2}), kScalar), v({2, 2, 0, 0}));
}

TEST(Dyadic, ExpectationExamples)
{
	const FiltrationTree t1(1), t2(2);
	EXPECT_DOUBLE_EQ(lr_norm(t2, v({1, 1, 1, 1}), 3.0), 1.0);
	EXPECT_DOUBLE_EQ(lr_norm(t1, v({2, 0}), 2.0), std::sqrt(2.0));
	EXPECT_DOUBLE_EQ(pair_expectation(t2, v({4, 2, 2, 2}), v({1, 1, 1, 1})), 2.5);
	EXPECT_THROW(pair_expectation(t2, v({1, 2}), v({1, 2, 3, 4})), std::invalid_argument);
}

TEST(Dyadic, MartingalePropertyOnRandomInstances)
{
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		const Martingale m = random_martingale(6, 3, seed);
		const auto& lv = m.process().levels;
		for (int n = 0; n < 6; ++n)
			for (Eigen::Index i = 0; i < lv[n].cols(); ++i) {
				const Eigen::VectorXd mean = 0.5 * (lv[n + 1].col(2 * i) + lv[n + 1].col(2 * i + 1));
				const double scale = lv[n + 1].col(2 * i).cwiseAbs().maxCoeff()
				    + lv[n + 1].col(2 * i + 1).cwiseAbs().maxCoeff();
				ASSERT_LE((lv[n].col(i) - mean).cwiseAbs().maxCoeff(), 1e-12 * scale);
			}
	}
}

TEST(Dyadic, TowerProperty)
{
	bdg::Rng rng(4);
	const FiltrationTree tree(7);
	std::vector<double> w(tree.leaf_count());
	for (double& x : w)
		x = bdg::log_uniform(rng, 1e-2, 1e2);
	const WeightTriple wt = weight_processes(tree, w);
	for (int n = 1; n <= 7; ++n) {
		const ScalarProcess sub = conditional_expectation(FiltrationTree(n), wt.w_n.levels[n]);
		for (int m = 0; m < n; ++m)
			for (std::size_t i = 0; i < sub.levels[m].size(); ++i)
				ASSERT_NEAR(sub.levels[m][i], wt.w_n.levels[m][i], 1e-12 * wt.w_n.levels[m][i]);
	}
}

TEST(Dyadic, MaximaDominateAndAreAttained)
{
	const auto s = SpaceDescriptor::lq(3.0, 3, 2.0);
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		const Martingale m = random_martingale(6, 3, 100 + seed);
		const FiltrationTree& t = m.tree();
		const MaximalProcess mp = maximal_process(m, s);
		const ScalarProcess norms = node_norms(m.process(), s);
		std::vector<double> w(t.leaf_count());
		bdg::Rng rng(seed);
		for (double& x : w)
			x = bdg::uniform(rng, 0.0, 3.0);
		const WeightTriple wt = weight_processes(t, w);
		for (std::size_t leaf = 0; leaf < t.leaf_count(); ++leaf) {
			bool f_hit = false, w_hit = false;
			for (int n = 0; n <= t.depth(); ++n) {
				const std::size_t a = t.ancestor(leaf, n);
				ASSERT_GE(mp.leaf[leaf], norms.levels[n][a]);
				ASSERT_GE(wt.w_star[leaf], wt.w_n.levels[n][a]);
				f_hit = f_hit || mp.leaf[leaf] == norms.levels[n][a];
				w_hit = w_hit || wt.w_star[leaf] == wt.w_n.levels[n][a];
			}
			ASSERT_TRUE(f_hit && w_hit);
		}
	}
}

TEST(Dyadic, PVariationNonincreasingInP)
{
	const auto s = SpaceDescriptor::euclidean(2);
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		const Martingale m = random_martingale(5, 2, 200 + seed);
		std::vector<double> prev = p_variation(m, s, 1.0);
		for (double p : {1.1, 1.25, 1.5, 1.75, 2.0}) {
			const std::vector<double> cur = p_variation(m, s, p);
			for (std::size_t i = 0; i < cur.size(); ++i)
				ASSERT_LE(cur[i], prev[i] * (1 + 1e-12));
			prev = cur;
		}
	}
}

TEST(Dyadic, ShiftNearConstantMartingale)
{
	Eigen::MatrixXd t(1, 4);
	t << 1.0 + 3e-9, 1.0 - 1e-9, 1.0 + 7e-10, 1.0 - 2.7e-9;
	const Martingale m = martingale_from_terminal(FiltrationTree(2), t);
	const Martingale c = m.shifted(m.at(0, 0));
	EXPECT_EQ(c.at(0, 0)[0], 0.0);
	for (int n = 0; n <= 2; ++n)
		for (std::size_t i = 0; i < (1u << n); ++i)
			EXPECT_NEAR(c.at(n, i)[0], m.at(n, i)[0] - m.at(0, 0)[0], 0.0);
	EXPECT_THROW(m.shifted(Eigen::VectorXd::Zero(2)), std::invalid_argument);
}
