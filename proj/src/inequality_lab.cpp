#include "bdg/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bdg::lab {

namespace {

constexpr double kRatioTolerance = 1e-12;
constexpr double kTelescopeTolerance = 1e-9;

struct LeafData {
	std::vector<double> fstar;
	std::vector<double> sp;
	std::vector<double> wstar;
};

LeafData leaf_data(const Martingale& mart, std::span<const double> w, const SpaceDescriptor& space)
{
	LeafData out;
	out.fstar = dyadic::maximal_process(mart, space).leaf;
	out.sp = dyadic::p_variation(mart, space, space.p);
	out.wstar = dyadic::weight_processes(mart.tree(), w).w_star;
	return out;
}

void check_dim(const Martingale& mart, const SpaceDescriptor& space)
{
	if (mart.dim() != space.dim)
		throw std::invalid_argument("martingale dimension does not match the space");
}

std::vector<double> leaf_norms(const AdaptedProcess& proc, const SpaceDescriptor& space)
{
	return dyadic::node_norms(proc, space).terminal();
}

} // namespace

RatioReport make_ratio(std::string name, double lhs, double rhs, double bound)
{
	RatioReport r;
	r.name = std::move(name);
	r.lhs = lhs;
	r.rhs = rhs;
	r.bound = bound;
	r.ratio = rhs == 0.0 ? 0.0 : lhs / rhs;
	r.satisfied = lhs <= bound * rhs + kRatioTolerance * (std::abs(lhs) + bound * std::abs(rhs));
	return r;
}

double maximal_constant_ch(const SpaceDescriptor& space)
{
	return 21.0 * space.p_conjugate() * space.C_H;
}

double maximal_constant_csm(const SpaceDescriptor& space)
{
	return 84.0 * space.p_conjugate() * space.C_sm;
}

double weighted_ratio(const Martingale& mart, std::span<const double> w, const SpaceDescriptor& space)
{
	const LeafData d = leaf_data(mart, w, space);
	const double rhs = dyadic::pair_expectation(mart.tree(), d.sp, d.wstar);
	return rhs == 0.0 ? 0.0 : dyadic::pair_expectation(mart.tree(), d.fstar, w) / rhs;
}

WeightedReport verify_maximal_weighted(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space)
{
	check_dim(mart, space);
	const LeafData d = leaf_data(mart, w, space);
	const double lhs = dyadic::pair_expectation(mart.tree(), d.fstar, w);
	const double rhs = dyadic::pair_expectation(mart.tree(), d.sp, d.wstar);
	return {make_ratio("w_bdg_ch", lhs, rhs, maximal_constant_ch(space)),
	    make_ratio("w_bdg_csm", lhs, rhs, maximal_constant_csm(space))};
}

RatioReport verify_nonmaximal_weighted(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space)
{
	check_dim(mart, space);
	const LeafData d = leaf_data(mart, w, space);
	const auto fn = leaf_norms(mart.process(), space);
	const double lhs = dyadic::pair_expectation(mart.tree(), fn, w);
	const double rhs = dyadic::pair_expectation(mart.tree(), d.sp, d.wstar);
	return make_ratio("w_non_maximal", lhs, rhs, 9.0 * space.C_H);
}

RatioReport verify_lr(const Martingale& mart, double r, const SpaceDescriptor& space)
{
	check_dim(mart, space);
	if (!(r > 1.0))
		throw std::invalid_argument("L^r check needs r > 1");
	const auto fstar = dyadic::maximal_process(mart, space).leaf;
	const auto sp = dyadic::p_variation(mart, space, space.p);
	return make_ratio("bdg_lr", dyadic::lr_norm(mart.tree(), fstar, r),
	    dyadic::lr_norm(mart.tree(), sp, r), maximal_constant_ch(space) * r);
}

std::vector<RatioReport> verify_holder_doob(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space, double r)
{
	check_dim(mart, space);
	if (!(r > 1.0))
		throw std::invalid_argument("Hoelder/Doob chain needs r > 1");
	const FiltrationTree& tree = mart.tree();
	const double rc = r / (r - 1.0);
	const LeafData d = leaf_data(mart, w, space);
	const double fw = dyadic::pair_expectation(tree, d.fstar, w);
	const double sw = dyadic::pair_expectation(tree, d.sp, d.wstar);
	const double f_r = dyadic::lr_norm(tree, d.fstar, r);
	const double s_r = dyadic::lr_norm(tree, d.sp, r);
	const double w_rc = dyadic::lr_norm(tree, w, rc);
	const double ws_rc = dyadic::lr_norm(tree, d.wstar, rc);
	return {
	    make_ratio("hoelder_lhs", fw, f_r * w_rc, 1.0),
	    make_ratio("hoelder_rhs", sw, s_r * ws_rc, 1.0),
	    make_ratio("doob", ws_rc, w_rc, r),
	    make_ratio("lr_chain", fw, s_r * w_rc, maximal_constant_ch(space) * r),
	};
}

TelescopingReport verify_telescoping(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space, Variant variant, const BellmanConstants& k)
{
	check_dim(mart, space);
	k.validate();
	const FiltrationTree& tree = mart.tree();
	const AdaptedProcess& f = mart.process();
	const auto fstar = dyadic::maximal_process(mart, space).running;
	const auto q = dyadic::variation_sums(f, space, space.p);
	const auto weights = dyadic::weight_processes(tree, w);
	const auto& wn = weights.w_n.levels;
	const auto& wsn = weights.w_star_n.levels;
	const int N = tree.depth();

	auto B = [&](int n, std::size_t i) {
		if (variant == Variant::plain)
			return bellman::u_plain(space, {f.at(n, i), q.levels[n][i], wn[n][i], wsn[n][i]}, k);
		return bellman::u_max(space,
		    {f.at(n, i), fstar.levels[n][i], q.levels[n][i], wn[n][i], wsn[n][i]}, k);
	};
	auto gap = [&](int n, std::size_t i, std::size_t c) {
		const bellman::Perturbation pert{f.at(n + 1, c) - f.at(n, i), wn[n + 1][c] - wn[n][i]};
		if (variant == Variant::plain)
			return bellman::gap_plain(space,
			    {f.at(n, i), q.levels[n][i], wn[n][i], wsn[n][i]}, pert, k);
		return bellman::gap_max(space,
		    {f.at(n, i), fstar.levels[n][i], q.levels[n][i], wn[n][i], wsn[n][i]}, pert, k);
	};

	TelescopingReport rep;
	rep.variant = variant;
	auto fail = [&](const std::string& what) {
		if (rep.first_failure.empty())
			rep.first_failure = what;
	};

	std::vector<std::vector<double>> Bv(N + 1);
	for (int n = 0; n <= N; ++n) {
		Bv[n].resize(tree.nodes_at(n));
		for (std::size_t i = 0; i < Bv[n].size(); ++i)
			Bv[n][i] = B(n, i);
		rep.expected_B.push_back(dyadic::expectation(FiltrationTree(n), Bv[n]));
	}

	rep.worst_pointwise = std::numeric_limits<double>::infinity();
	rep.worst_conditional = std::numeric_limits<double>::infinity();
	for (int n = 0; n < N; ++n) {
		for (std::size_t i = 0; i < tree.nodes_at(n); ++i) {
			const double scale = std::abs(Bv[n][i]) + 1.0;
			for (std::size_t c = 2 * i; c <= 2 * i + 1; ++c) {
				const double g = gap(n, i, c) / scale;
				rep.worst_pointwise = std::min(rep.worst_pointwise, g);
				if (g < -kTelescopeTolerance) {
					rep.pointwise_ok = false;
					fail("pointwise gap at node (" + std::to_string(n) + "," + std::to_string(i) + ")");
				}
			}
			const double cond = (Bv[n][i] - 0.5 * (Bv[n + 1][2 * i] + Bv[n + 1][2 * i + 1])) / scale;
			rep.worst_conditional = std::min(rep.worst_conditional, cond);
			if (cond < -kTelescopeTolerance) {
				rep.conditional_ok = false;
				fail("conditional step at node (" + std::to_string(n) + "," + std::to_string(i) + ")");
			}
		}
		double abs_mean = 0.0;
		for (double b : Bv[n])
			abs_mean += std::abs(b);
		abs_mean /= static_cast<double>(Bv[n].size());
		if (rep.expected_B[n + 1] > rep.expected_B[n] + kTelescopeTolerance * (abs_mean + 1.0)) {
			rep.monotone = false;
			fail("E(B_n) increases at n = " + std::to_string(n));
		}
	}
	if (N == 0) {
		rep.worst_pointwise = 0.0;
		rep.worst_conditional = 0.0;
	}
	if (rep.expected_B[0] > kTelescopeTolerance * (std::abs(rep.expected_B[0]) + 1.0)) {
		rep.initial_nonpositive = false;
		fail("E(B_0) > 0");
	}

	const auto& leaf_w = weights.w_n.levels[N];
	const auto& leaf_ws = weights.w_star;
	const double chp = space.C_H;
	double chain = 0.0;
	for (std::size_t i = 0; i < tree.leaf_count(); ++i) {
		const double top = variant == Variant::plain
		    ? smooth::norm(space, f.at(N, i)) / chp
		    : fstar.levels[N][i] / (space.p_conjugate() * chp);
		chain += leaf_w[i] * top - k.C * leaf_ws[i] * std::pow(q.levels[N][i], 1.0 / space.p);
	}
	rep.chain_lhs = chain * tree.leaf_measure();
	const double eb = rep.expected_B[N];
	if (rep.chain_lhs > eb + kTelescopeTolerance * (std::abs(eb) + 1.0)) {
		rep.chain_ok = false;
		fail("final chain exceeds E(B_N)");
	}
	return rep;
}

AdaptedProcess triple_process(const Martingale& g, const AdaptedProcess& lambda)
{
	const AdaptedProcess& gp = g.process();
	if (lambda.depth() != gp.depth() || lambda.dim() != 1)
		throw std::invalid_argument("multiplier must be scalar and match the martingale depth");
	for (int n = 0; n <= lambda.depth(); ++n) {
		if (lambda.levels[n].cols() != gp.levels[n].cols())
			throw std::invalid_argument("multiplier level has the wrong shape");
		if ((lambda.levels[n].array() < 0.0).any() || (lambda.levels[n].array() > 1.0).any())
			throw std::invalid_argument("multiplier must take values in [0, 1]");
	}
	if (!gp.levels[0].isZero(0.0))
		throw std::invalid_argument("triple construction needs g_0 = 0");

	AdaptedProcess f;
	f.levels.resize(gp.levels.size());
	f.levels[0] = Eigen::MatrixXd::Zero(gp.levels[0].rows(), 1);
	for (int n = 1; n <= gp.depth(); ++n) {
		const auto& prev = f.levels[n - 1];
		Eigen::MatrixXd level(gp.levels[n].rows(), gp.levels[n].cols());
		for (Eigen::Index i = 0; i < level.cols(); ++i) {
			const Eigen::Index parent = i / 2;
			level.col(i) = lambda.levels[n - 1](0, parent) * prev.col(parent)
			    + (gp.levels[n].col(i) - gp.levels[n - 1].col(parent));
		}
		f.levels[n] = std::move(level);
	}
	return f;
}

TripleReport verify_triple_process(const Martingale& g, const AdaptedProcess& lambda,
    std::span<const double> w, const SpaceDescriptor& space, double r)
{
	check_dim(g, space);
	if (!(r > 1.0))
		throw std::invalid_argument("L^r check needs r > 1");
	const AdaptedProcess f = triple_process(g, lambda);
	const FiltrationTree& tree = g.tree();
	const auto fstar = dyadic::maximal_process(f, space).leaf;
	const auto sp = dyadic::p_variation(g, space, space.p);
	const auto wstar = dyadic::weight_processes(tree, w).w_star;
	const double K = maximal_constant_csm(space);
	TripleReport rep;
	rep.weighted = make_ratio("w_bdg_non_martingale", dyadic::pair_expectation(tree, fstar, w),
	    dyadic::pair_expectation(tree, sp, wstar), K);
	rep.lr = make_ratio("bdg_lr_non_martingale", dyadic::lr_norm(tree, fstar, r),
	    dyadic::lr_norm(tree, sp, r), K * r);
	return rep;
}

RatioReport verify_sg_comparison(const Martingale& g, double r, const SpaceDescriptor& space)
{
	check_dim(g, space);
	if (!(r >= 2.0))
		throw std::invalid_argument("square function comparison needs r >= 2");
	const auto sg = dyadic::conditional_square_function(g, space);
	const auto s2 = dyadic::p_variation(g, space, 2.0);
	return make_ratio("sg_vs_s2", dyadic::lr_norm(g.tree(), sg, r), dyadic::lr_norm(g.tree(), s2, r),
	    std::sqrt(r / 2.0));
}

} // namespace bdg::lab
