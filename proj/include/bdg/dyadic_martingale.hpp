#pragma once

#include "bdg/smooth_space.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace bdg::dyadic {

using smooth::SpaceDescriptor;
using smooth::Vector;

/// Uniform dyadic filtration of depth N: node (n, i) has children (n+1, 2i)
/// and (n+1, 2i+1); the 2^N leaves are atoms of measure 2^-N. Leaf order is
/// the bit-string order of paths, most significant bit = first branching.
class FiltrationTree {
public:
	explicit FiltrationTree(int depth);

	int depth() const { return depth_; }
	std::size_t leaf_count() const { return std::size_t{1} << depth_; }
	std::size_t nodes_at(int level) const { return std::size_t{1} << level; }
	double leaf_measure() const { return 1.0 / static_cast<double>(leaf_count()); }

	/// Index at `level` of the ancestor of leaf `leaf`.
	std::size_t ancestor(std::size_t leaf, int level) const { return leaf >> (depth_ - level); }

private:
	int depth_;
};

/// One real value per node, indexed [level][index].
struct ScalarProcess {
	std::vector<std::vector<double>> levels;

	int depth() const { return static_cast<int>(levels.size()) - 1; }
	const std::vector<double>& terminal() const { return levels.back(); }
};

/// Vector-valued adapted process; level n is a dim x 2^n matrix whose
/// column i is the value on atom (n, i).
struct AdaptedProcess {
	std::vector<Eigen::MatrixXd> levels;

	int depth() const { return static_cast<int>(levels.size()) - 1; }
	int dim() const { return static_cast<int>(levels.front().rows()); }
	Vector at(int level, std::size_t index) const { return levels[level].col(static_cast<Eigen::Index>(index)); }
};

/// Adapted process whose every node is the mean of its two children.
class Martingale {
public:
	/// Throws std::invalid_argument unless the martingale property holds to
	/// `rel_tol` relative to the children's magnitude, coordinatewise.
	static Martingale from_process(AdaptedProcess process, double rel_tol = 1e-12);

	/// f - c. Not rechecked: the subtraction rounds at the scale of |c|, which
	/// can dwarf the children when f stays close to c.
	Martingale shifted(const Vector& c) const;

	const FiltrationTree& tree() const { return tree_; }
	const AdaptedProcess& process() const { return process_; }
	int dim() const { return process_.dim(); }
	Vector at(int level, std::size_t index) const { return process_.at(level, index); }

private:
	Martingale(FiltrationTree tree, AdaptedProcess process)
	    : tree_(tree), process_(std::move(process)) { }

	FiltrationTree tree_;
	AdaptedProcess process_;
};

struct MaximalProcess {
	ScalarProcess running;       // f*_n: max over ancestors m <= n of |f_m|
	std::vector<double> leaf;    // f* = f*_N
};

struct WeightTriple {
	std::vector<double> w;       // per leaf
	ScalarProcess w_n;           // E(w | F_n)
	ScalarProcess w_star_n;      // max_{m <= n} w_m along the path
	std::vector<double> w_star;  // per leaf, w*_N
};

ScalarProcess conditional_expectation(const FiltrationTree& tree, std::span<const double> leaf_values);

/// Closure f_n = E(f_N | F_n) of a terminal variable given as a dim x 2^N matrix.
Martingale martingale_from_terminal(const FiltrationTree& tree, const Eigen::MatrixXd& terminal);

/// |f_n| at every node.
ScalarProcess node_norms(const AdaptedProcess& process, const SpaceDescriptor& space);

MaximalProcess maximal_process(const AdaptedProcess& process, const SpaceDescriptor& space);
MaximalProcess maximal_process(const Martingale& mart, const SpaceDescriptor& space);

/// Running sums q_n = [|f_0|^p] + sum_{m=1..n} |f_m - f_{m-1}|^p at every node.
ScalarProcess variation_sums(const AdaptedProcess& process, const SpaceDescriptor& space,
    double p, bool include_initial = true);

/// Per-leaf S_p f = q_N^(1/p).
std::vector<double> p_variation(const AdaptedProcess& process, const SpaceDescriptor& space,
    double p, bool include_initial = true);
std::vector<double> p_variation(const Martingale& mart, const SpaceDescriptor& space,
    double p, bool include_initial = true);

WeightTriple weight_processes(const FiltrationTree& tree, std::span<const double> w);

/// Per-leaf (sum_{n>=1} E(|g_n - g_{n-1}|^2 | F_{n-1}))^(1/2).
std::vector<double> conditional_square_function(const Martingale& g, const SpaceDescriptor& space);

double expectation(const FiltrationTree& tree, std::span<const double> values);
double pair_expectation(const FiltrationTree& tree, std::span<const double> a, std::span<const double> b);
/// (E |v|^r)^(1/r), r >= 1.
double lr_norm(const FiltrationTree& tree, std::span<const double> values, double r);

} // namespace bdg::dyadic
