#include "bdg/dyadic_martingale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bdg::dyadic {

namespace {

void require_leaves(const FiltrationTree& tree, std::size_t n)
{
	if (n != tree.leaf_count())
		throw std::invalid_argument("expected " + std::to_string(tree.leaf_count())
		    + " leaf values, got " + std::to_string(n));
}

void require_shape(const AdaptedProcess& process)
{
	if (process.levels.empty())
		throw std::invalid_argument("process has no levels");
	for (int n = 0; n <= process.depth(); ++n) {
		if (process.levels[n].cols() != (Eigen::Index{1} << n) || process.levels[n].rows() != process.dim())
			throw std::invalid_argument("process level " + std::to_string(n) + " has the wrong shape");
	}
}

} // namespace

FiltrationTree::FiltrationTree(int depth)
    : depth_(depth)
{
	if (depth < 0 || depth > 30)
		throw std::invalid_argument("tree depth must lie in [0, 30]");
}

Martingale Martingale::from_process(AdaptedProcess process, double rel_tol)
{
	require_shape(process);
	const int depth = process.depth();
	for (int n = 0; n < depth; ++n) {
		const auto& parent = process.levels[n];
		const auto& child = process.levels[n + 1];
		for (Eigen::Index i = 0; i < parent.cols(); ++i) {
			for (Eigen::Index c = 0; c < parent.rows(); ++c) {
				const double a = child(c, 2 * i);
				const double b = child(c, 2 * i + 1);
				const double err = std::abs(parent(c, i) - 0.5 * (a + b));
				if (err > rel_tol * (std::abs(a) + std::abs(b)))
					throw std::invalid_argument("martingale property fails at node ("
					    + std::to_string(n) + "," + std::to_string(i) + ") coordinate "
					    + std::to_string(c));
			}
		}
	}
	return Martingale(FiltrationTree(depth), std::move(process));
}

Martingale Martingale::shifted(const Vector& c) const
{
	if (c.size() != dim())
		throw std::invalid_argument("shift has the wrong dimension");
	AdaptedProcess proc = process_;
	for (auto& level : proc.levels)
		level.colwise() -= c;
	return Martingale(tree_, std::move(proc));
}

ScalarProcess conditional_expectation(const FiltrationTree& tree, std::span<const double> leaf_values)
{
	require_leaves(tree, leaf_values.size());
	ScalarProcess out;
	out.levels.resize(tree.depth() + 1);
	out.levels[tree.depth()].assign(leaf_values.begin(), leaf_values.end());
	for (int n = tree.depth() - 1; n >= 0; --n) {
		const auto& child = out.levels[n + 1];
		auto& level = out.levels[n];
		level.resize(tree.nodes_at(n));
		for (std::size_t i = 0; i < level.size(); ++i)
			level[i] = 0.5 * (child[2 * i] + child[2 * i + 1]);
	}
	return out;
}

Martingale martingale_from_terminal(const FiltrationTree& tree, const Eigen::MatrixXd& terminal)
{
	require_leaves(tree, static_cast<std::size_t>(terminal.cols()));
	if (terminal.rows() < 1)
		throw std::invalid_argument("terminal values need at least one coordinate");
	AdaptedProcess proc;
	proc.levels.resize(tree.depth() + 1);
	proc.levels[tree.depth()] = terminal;
	for (int n = tree.depth() - 1; n >= 0; --n) {
		const auto& child = proc.levels[n + 1];
		Eigen::MatrixXd level(terminal.rows(), static_cast<Eigen::Index>(tree.nodes_at(n)));
		for (Eigen::Index i = 0; i < level.cols(); ++i)
			level.col(i) = 0.5 * (child.col(2 * i) + child.col(2 * i + 1));
		proc.levels[n] = std::move(level);
	}
	return Martingale::from_process(std::move(proc));
}

ScalarProcess node_norms(const AdaptedProcess& process, const SpaceDescriptor& space)
{
	require_shape(process);
	ScalarProcess out;
	out.levels.resize(process.levels.size());
	for (std::size_t n = 0; n < process.levels.size(); ++n) {
		const auto& level = process.levels[n];
		out.levels[n].resize(static_cast<std::size_t>(level.cols()));
		for (Eigen::Index i = 0; i < level.cols(); ++i)
			out.levels[n][i] = smooth::norm(space, level.col(i));
	}
	return out;
}

MaximalProcess maximal_process(const AdaptedProcess& process, const SpaceDescriptor& space)
{
	MaximalProcess out;
	out.running = node_norms(process, space);
	auto& lv = out.running.levels;
	for (std::size_t n = 1; n < lv.size(); ++n)
		for (std::size_t i = 0; i < lv[n].size(); ++i)
			lv[n][i] = std::max(lv[n][i], lv[n - 1][i / 2]);
	out.leaf = lv.back();
	return out;
}

MaximalProcess maximal_process(const Martingale& mart, const SpaceDescriptor& space)
{
	return maximal_process(mart.process(), space);
}

ScalarProcess variation_sums(const AdaptedProcess& process, const SpaceDescriptor& space,
    double p, bool include_initial)
{
	if (!(p >= 1.0 && p <= 2.0))
		throw std::invalid_argument("variation exponent must lie in [1,2]");
	require_shape(process);
	ScalarProcess out;
	out.levels.resize(process.levels.size());
	out.levels[0] = {include_initial ? std::pow(smooth::norm(space, process.levels[0].col(0)), p) : 0.0};
	for (std::size_t n = 1; n < process.levels.size(); ++n) {
		const auto& level = process.levels[n];
		const auto& parent = process.levels[n - 1];
		out.levels[n].resize(static_cast<std::size_t>(level.cols()));
		for (Eigen::Index i = 0; i < level.cols(); ++i) {
			const double inc = smooth::norm(space, level.col(i) - parent.col(i / 2));
			out.levels[n][i] = out.levels[n - 1][i / 2] + std::pow(inc, p);
		}
	}
	return out;
}

std::vector<double> p_variation(const AdaptedProcess& process, const SpaceDescriptor& space,
    double p, bool include_initial)
{
	std::vector<double> out = variation_sums(process, space, p, include_initial).terminal();
	for (double& v : out)
		v = std::pow(v, 1.0 / p);
	return out;
}

std::vector<double> p_variation(const Martingale& mart, const SpaceDescriptor& space,
    double p, bool include_initial)
{
	return p_variation(mart.process(), space, p, include_initial);
}

WeightTriple weight_processes(const FiltrationTree& tree, std::span<const double> w)
{
	require_leaves(tree, w.size());
	for (double v : w)
		if (!(v >= 0.0))
			throw std::invalid_argument("weights must be nonnegative");
	WeightTriple out;
	out.w.assign(w.begin(), w.end());
	out.w_n = conditional_expectation(tree, w);
	out.w_star_n = out.w_n;
	auto& lv = out.w_star_n.levels;
	for (std::size_t n = 1; n < lv.size(); ++n)
		for (std::size_t i = 0; i < lv[n].size(); ++i)
			lv[n][i] = std::max(lv[n][i], lv[n - 1][i / 2]);
	out.w_star = lv.back();
	return out;
}

std::vector<double> conditional_square_function(const Martingale& g, const SpaceDescriptor& space)
{
	const auto& proc = g.process();
	const FiltrationTree& tree = g.tree();
	// acc[n][i]: sum over levels m < n of the conditional second moment of the
	// increment out of the ancestor at level m.
	std::vector<double> acc{0.0};
	for (int n = 0; n < tree.depth(); ++n) {
		const auto& parent = proc.levels[n];
		const auto& child = proc.levels[n + 1];
		std::vector<double> next(tree.nodes_at(n + 1));
		for (Eigen::Index i = 0; i < parent.cols(); ++i) {
			const double l = smooth::norm(space, child.col(2 * i) - parent.col(i));
			const double r = smooth::norm(space, child.col(2 * i + 1) - parent.col(i));
			const double cond = 0.5 * (l * l + r * r);
			next[2 * i] = acc[i] + cond;
			next[2 * i + 1] = acc[i] + cond;
		}
		acc = std::move(next);
	}
	for (double& v : acc)
		v = std::sqrt(v);
	return acc;
}

double expectation(const FiltrationTree& tree, std::span<const double> values)
{
	require_leaves(tree, values.size());
	double s = 0.0;
	for (double v : values)
		s += v;
	return s * tree.leaf_measure();
}

double pair_expectation(const FiltrationTree& tree, std::span<const double> a, std::span<const double> b)
{
	require_leaves(tree, a.size());
	require_leaves(tree, b.size());
	double s = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i)
		s += a[i] * b[i];
	return s * tree.leaf_measure();
}

double lr_norm(const FiltrationTree& tree, std::span<const double> values, double r)
{
	if (!(r >= 1.0))
		throw std::invalid_argument("L^r norm needs r >= 1");
	require_leaves(tree, values.size());
	const double m = std::abs(*std::max_element(values.begin(), values.end(),
	    [](double x, double y) { return std::abs(x) < std::abs(y); }));
	if (m == 0.0)
		return 0.0;
	double s = 0.0;
	for (double v : values)
		s += std::pow(std::abs(v) / m, r);
	return m * std::pow(s * tree.leaf_measure(), 1.0 / r);
}

} // namespace bdg::dyadic
