#include "bdg/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bdg::extrap {

namespace {

constexpr double kStepTolerance = 1e-12;

double weighted_lq(const FunctionSpace& space, const Eigen::VectorXd& v, double exponent)
{
	const double m = v.cwiseAbs().maxCoeff();
	if (m == 0.0)
		return 0.0;
	double s = 0.0;
	for (int i = 0; i < v.size(); ++i)
		s += space.weight(i) * std::pow(std::abs(v[i]) / m, exponent);
	return m * std::pow(s, 1.0 / exponent);
}

void check_field(const FiltrationTree& tree, const FunctionSpace& space, const BiField& F)
{
	if (F.rows() != static_cast<Eigen::Index>(tree.leaf_count()) || F.cols() != space.dim)
		throw std::invalid_argument("field shape does not match tree and space");
}

void check_nonnegative(const BiField& F, const char* what)
{
	if ((F.array() < 0.0).any())
		throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

ChainStep step(std::string name, double lhs, double rhs)
{
	const double slack = rhs - lhs;
	return {std::move(name), lhs, rhs, slack,
	    slack >= -kStepTolerance * (std::abs(lhs) + std::abs(rhs))};
}

std::vector<double> row_norms(const FunctionSpace& space, const BiField& F, bool dual)
{
	std::vector<double> out(static_cast<std::size_t>(F.rows()));
	for (Eigen::Index i = 0; i < F.rows(); ++i)
		out[i] = dual ? space.dual_norm(F.row(i).transpose()) : space.norm(F.row(i).transpose());
	return out;
}

} // namespace

FunctionSpace FunctionSpace::lq(double q, int dim)
{
	FunctionSpace s;
	s.q = q;
	s.dim = dim;
	s.validate();
	return s;
}

void FunctionSpace::validate() const
{
	if (!(q > 1.0) || !std::isfinite(q))
		throw std::invalid_argument("function space exponent must lie in (1, inf)");
	if (dim < 1)
		throw std::invalid_argument("function space dimension must be positive");
	if (!mu.empty()) {
		if (static_cast<int>(mu.size()) != dim)
			throw std::invalid_argument("measure weights must have one entry per coordinate");
		for (double m : mu)
			if (!(m > 0.0))
				throw std::invalid_argument("measure weights must be positive");
	}
}

double FunctionSpace::norm(const Eigen::VectorXd& f) const
{
	return weighted_lq(*this, f, q);
}

double FunctionSpace::dual_norm(const Eigen::VectorXd& h) const
{
	return weighted_lq(*this, h, q_conjugate());
}

double FunctionSpace::pairing(const Eigen::VectorXd& f, const Eigen::VectorXd& h) const
{
	double s = 0.0;
	for (int i = 0; i < dim; ++i)
		s += f[i] * h[i] * weight(i);
	return s;
}

Eigen::VectorXd extremizer(const FunctionSpace& space, const Eigen::VectorXd& f, double r)
{
	space.validate();
	if (f.size() != space.dim)
		throw std::invalid_argument("vector dimension does not match the function space");
	if ((f.array() < 0.0).any())
		throw std::invalid_argument("extremizer needs a nonnegative vector");
	if (!(r > 1.0))
		throw std::invalid_argument("extremizer needs r > 1");
	const double n = space.norm(f);
	if (n == 0.0)
		return Eigen::VectorXd::Zero(space.dim);
	// f_s^(q-1) |f|^(r-q) = (f_s / |f|)^(q-1) |f|^(r-1), which stays in range.
	Eigen::VectorXd h(space.dim);
	const double scale = std::pow(n, r - 1.0);
	for (int s = 0; s < space.dim; ++s)
		h[s] = std::pow(f[s] / n, space.q - 1.0) * scale;
	return h;
}

double mixed_norm(const FiltrationTree& tree, const FunctionSpace& space, const BiField& F, double r)
{
	check_field(tree, space, F);
	return dyadic::lr_norm(tree, row_norms(space, F, false), r);
}

double mixed_dual_norm(const FiltrationTree& tree, const FunctionSpace& space, const BiField& F, double r)
{
	check_field(tree, space, F);
	return dyadic::lr_norm(tree, row_norms(space, F, true), r);
}

bool ChainReport::passed() const
{
	if (!hypothesis_ok)
		return false;
	for (const auto& s : steps)
		if (!s.ok)
			return false;
	return true;
}

ChainReport verify_extrapolation_chain(const FiltrationTree& tree, const BiField& f, const BiField& g,
    double A, double r, const FunctionSpace& space)
{
	space.validate();
	check_field(tree, space, f);
	check_field(tree, space, g);
	check_nonnegative(f, "f");
	check_nonnegative(g, "g");
	if (!(r > 1.0))
		throw std::invalid_argument("extrapolation needs r > 1");
	if (!(A > 0.0))
		throw std::invalid_argument("extrapolation needs A > 0");

	const double rc = r / (r - 1.0);
	const auto leaves = static_cast<Eigen::Index>(tree.leaf_count());
	BiField w(leaves, space.dim);
	for (Eigen::Index i = 0; i < leaves; ++i)
		w.row(i) = extremizer(space, f.row(i).transpose(), r).transpose();

	BiField wstar(leaves, space.dim);
	for (int s = 0; s < space.dim; ++s) {
		const std::vector<double> col(w.col(s).data(), w.col(s).data() + leaves);
		const auto ws = dyadic::weight_processes(tree, col).w_star;
		for (Eigen::Index i = 0; i < leaves; ++i)
			wstar(i, s) = ws[i];
	}

	ChainReport rep;
	rep.A = A;

	// Hypothesis per coordinate, and its mu-integrated form.
	double f_dual_lhs = 0.0;
	double f_dual_rhs = 0.0;
	for (int s = 0; s < space.dim; ++s) {
		const double lhs = (f.col(s).array() * w.col(s).array()).sum() * tree.leaf_measure();
		const double rhs = A * (g.col(s).array() * wstar.col(s).array()).sum() * tree.leaf_measure();
		if (!step("hypothesis", lhs, rhs).ok)
			rep.hypothesis_ok = false;
		f_dual_lhs += space.weight(s) * lhs;
		f_dual_rhs += space.weight(s) * rhs;
	}
	rep.steps.push_back(step("f_dualized", f_dual_lhs, f_dual_rhs));

	const auto g_rows = row_norms(space, g, false);
	const auto ws_rows = row_norms(space, wstar, true);
	double pointwise = 0.0;
	for (Eigen::Index i = 0; i < leaves; ++i)
		pointwise += g_rows[i] * ws_rows[i];
	pointwise *= A * tree.leaf_measure();
	rep.steps.push_back(step("pointwise_duality", f_dual_rhs, pointwise));

	const double g_norm = dyadic::lr_norm(tree, g_rows, r);
	const double ws_norm = dyadic::lr_norm(tree, ws_rows, rc);
	rep.steps.push_back(step("hoelder_omega", pointwise, A * g_norm * ws_norm));

	const double w_norm = mixed_dual_norm(tree, space, w, rc);
	rep.M_measured = w_norm == 0.0 ? 1.0 : ws_norm / w_norm;
	rep.steps.push_back(step("maximal", ws_norm, rep.M_measured * w_norm));

	const double f_norm = mixed_norm(tree, space, f, r);
	const double f_pow = std::pow(f_norm, r - 1.0);
	rep.steps.push_back(step("w_norm", w_norm, f_pow));
	rep.steps.push_back(step("w_norm_reverse", f_pow, w_norm));

	double total_pairing = 0.0;
	for (Eigen::Index i = 0; i < leaves; ++i)
		total_pairing += space.pairing(f.row(i).transpose(), w.row(i).transpose());
	total_pairing *= tree.leaf_measure();
	const double f_r = std::pow(f_norm, r);
	rep.steps.push_back(step("extremizer_pairing", f_r, total_pairing));
	rep.steps.push_back(step("final", f_r, A * rep.M_measured * g_norm * f_pow));

	rep.lhs = f_norm;
	rep.rhs = A * rep.M_measured * g_norm;
	rep.effective_constant = g_norm == 0.0 ? 0.0 : f_norm / g_norm;
	return rep;
}

VectorBdgReport verify_vector_bdg(const Martingale& field, double r, const FunctionSpace& space)
{
	space.validate();
	if (field.dim() != space.dim)
		throw std::invalid_argument("field dimension does not match the function space");
	if (!(r > 1.0))
		throw std::invalid_argument("vector BDG needs r > 1");
	const FiltrationTree& tree = field.tree();
	const auto& proc = field.process();
	const auto leaves = static_cast<Eigen::Index>(tree.leaf_count());
	const int N = tree.depth();

	BiField fstar(leaves, space.dim);
	BiField square(leaves, space.dim);
	for (Eigen::Index i = 0; i < leaves; ++i) {
		for (int s = 0; s < space.dim; ++s) {
			double top = 0.0;
			double sum = 0.0;
			double prev = 0.0;
			for (int n = 0; n <= N; ++n) {
				const double v = proc.levels[n](s, static_cast<Eigen::Index>(tree.ancestor(i, n)));
				top = std::max(top, std::abs(v));
				const double inc = n == 0 ? v : v - prev;
				sum += inc * inc;
				prev = v;
			}
			fstar(i, s) = top;
			square(i, s) = std::sqrt(sum);
		}
	}

	const double A = lab::maximal_constant_ch(smooth::SpaceDescriptor::scalar(2.0));
	VectorBdgReport rep;
	rep.chain = verify_extrapolation_chain(tree, fstar, square, A, r, space);
	rep.ratio = lab::make_ratio("vector_bdg", mixed_norm(tree, space, fstar, r),
	    mixed_norm(tree, space, square, r), A * rep.chain.M_measured);
	return rep;
}

Martingale sign_increment_field(int depth, int dim, std::uint64_t seed)
{
	const FiltrationTree tree(depth);
	Rng rng(stream_seed(seed, 0));
	std::bernoulli_distribution coin;
	dyadic::AdaptedProcess proc;
	proc.levels.push_back(Eigen::MatrixXd::Zero(dim, 1));
	for (int n = 1; n <= depth; ++n) {
		const auto& parent = proc.levels.back();
		Eigen::MatrixXd level(dim, static_cast<Eigen::Index>(tree.nodes_at(n)));
		for (Eigen::Index i = 0; i < parent.cols(); ++i) {
			for (int s = 0; s < dim; ++s) {
				const double sign = coin(rng) ? 1.0 : -1.0;
				level(s, 2 * i) = parent(s, i) + sign;
				level(s, 2 * i + 1) = parent(s, i) - sign;
			}
		}
		proc.levels.push_back(std::move(level));
	}
	return Martingale::from_process(std::move(proc));
}

Martingale gaussian_field(int depth, int dim, std::uint64_t seed)
{
	const FiltrationTree tree(depth);
	Rng rng(stream_seed(seed, 0));
	std::normal_distribution<double> normal;
	Eigen::MatrixXd terminal(dim, static_cast<Eigen::Index>(tree.leaf_count()));
	for (Eigen::Index j = 0; j < terminal.cols(); ++j)
		for (int s = 0; s < dim; ++s)
			terminal(s, j) = normal(rng);
	return dyadic::martingale_from_terminal(tree, terminal);
}

NormingReport norming_check(const FunctionSpace& space, const Eigen::VectorXd& f,
    std::uint64_t samples, std::uint64_t seed)
{
	space.validate();
	if (f.size() != space.dim)
		throw std::invalid_argument("vector dimension does not match the function space");
	NormingReport rep;
	rep.norm = space.norm(f);
	Rng rng(stream_seed(seed, 0));
	for (std::uint64_t k = 0; k < samples; ++k) {
		const Eigen::VectorXd h = random_direction(rng, space.dim);
		rep.best_random = std::max(rep.best_random, space.pairing(f, h) / space.dual_norm(h));
	}
	const Eigen::VectorXd fa = f.cwiseAbs();
	if (rep.norm > 0.0) {
		Eigen::VectorXd h = extremizer(space, fa, 2.0);
		for (int s = 0; s < space.dim; ++s)
			if (f[s] < 0.0)
				h[s] = -h[s];
		rep.extremizer_pairing = space.pairing(f, h) / space.dual_norm(h);
	}
	return rep;
}

} // namespace bdg::extrap
