#pragma once

#include "bdg/dyadic_martingale.hpp"
#include "bdg/inequality_lab.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace bdg::extrap {

using dyadic::FiltrationTree;
using dyadic::Martingale;

/// l^q over dim points carrying weights mu (the finite Banach function space X).
struct FunctionSpace {
	double q = 2.0;
	int dim = 1;
	std::vector<double> mu;   // empty means all ones

	static FunctionSpace lq(double q, int dim);

	double q_conjugate() const { return q / (q - 1.0); }
	double weight(int s) const { return mu.empty() ? 1.0 : mu[s]; }
	void validate() const;

	double norm(const Eigen::VectorXd& f) const;
	/// Norm in the associate space X' (l^{q'} with the same mu).
	double dual_norm(const Eigen::VectorXd& h) const;
	double pairing(const Eigen::VectorXd& f, const Eigen::VectorXd& h) const;
};

/// h_s = f_s^(q-1) |f|^(r-q); then |h|_{X'} = |f|^(r-1) and <f, h> = |f|^r.
/// f must be nonnegative; f = 0 gives h = 0.
Eigen::VectorXd extremizer(const FunctionSpace& space, const Eigen::VectorXd& f, double r);

/// Nonnegative field on leaves x coordinates: row = leaf omega, column = s.
using BiField = Eigen::MatrixXd;

struct ChainStep {
	std::string name;
	double lhs = 0.0;
	double rhs = 0.0;
	double slack = 0.0;   // rhs - lhs
	bool ok = true;
};

struct ChainReport {
	bool hypothesis_ok = true;
	double A = 0.0;
	double M_measured = 0.0;
	std::vector<ChainStep> steps;
	double effective_constant = 0.0;   // |f|_{L^r(X)} / |g|_{L^r(X)}
	double lhs = 0.0;                  // |f|_{L^r(X)}
	double rhs = 0.0;                  // A M |g|_{L^r(X)}

	bool passed() const;
};

/// |F|_{L^r(Omega, X)} for a field with rows indexed by leaves.
double mixed_norm(const FiltrationTree& tree, const FunctionSpace& space, const BiField& F, double r);
double mixed_dual_norm(const FiltrationTree& tree, const FunctionSpace& space, const BiField& F, double r);

/// Runs the extrapolation argument with w(omega, .) = extremizer(f(omega, .)),
/// checking every intermediate inequality on the instance.
ChainReport verify_extrapolation_chain(const FiltrationTree& tree, const BiField& f, const BiField& g,
    double A, double r, const FunctionSpace& space);

struct VectorBdgReport {
	lab::RatioReport ratio;   // bound = A M from the chain
	ChainReport chain;

	bool passed() const { return ratio.satisfied && chain.passed(); }
};

/// Each coordinate of `field` is a scalar martingale. Compares
/// |sup_n |f_n||_{L^r(X)} with |(|f_0|^2 + sum |df_n|^2)^(1/2)|_{L^r(X)} and runs
/// the chain with A = 21 p' C_H for the scalar space at p = 2.
VectorBdgReport verify_vector_bdg(const Martingale& field, double r, const FunctionSpace& space);

/// Per-coordinate martingales started at 0 whose increments are +-1 with an
/// independent random sign per node and coordinate.
Martingale sign_increment_field(int depth, int dim, std::uint64_t seed);

/// Martingale with i.i.d. standard normal terminal values per coordinate.
Martingale gaussian_field(int depth, int dim, std::uint64_t seed);

struct NormingReport {
	double norm = 0.0;
	double best_random = 0.0;        // max pairing over random unit h in X'
	double extremizer_pairing = 0.0; // pairing with the normalized extremizer
};

NormingReport norming_check(const FunctionSpace& space, const Eigen::VectorXd& f,
    std::uint64_t samples, std::uint64_t seed);

} // namespace bdg::extrap
