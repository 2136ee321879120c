#pragma once

#include "bdg/sampling.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bdg::smooth {

using Vector = Eigen::VectorXd;

enum class SpaceKind { scalar, euclidean, lq };

/// Finite-dimensional (p, C_sm)-smooth normed space.
///
/// All three kinds are l^q norms on R^dim (scalar: dim 1, euclidean: q = 2),
/// which gives closed forms for the norm, the gradient of |x|^p and the dual
/// norm. The stored constants are defaults that the estimators validate.
struct SpaceDescriptor {
	SpaceKind kind = SpaceKind::scalar;
	double q = 2.0;
	int dim = 1;
	double p = 2.0;
	double C_H = 1.4142135623730951;
	double C_sm = 1.0;

	/// Default constants: p = 2 gives C_sm = 1, C_H = sqrt(2); p < 2 gives
	/// C_sm = 1 and C_H^p = 2^(p+1).
	static SpaceDescriptor scalar(double p = 2.0);
	static SpaceDescriptor euclidean(int dim, double p = 2.0);
	/// q >= 2 requires p = 2 (C_sm = sqrt(q-1), C_H = sqrt(2(q-1)));
	/// q in (1,2] requires p <= q (C_sm = 1, C_H^p = 2^(p+1)).
	static SpaceDescriptor lq(double q, int dim, double p);

	/// Same space with caller-supplied constants.
	SpaceDescriptor with_constants(double ch, double csm) const;

	/// Exponent of the underlying l^q norm (2 for scalar and euclidean).
	double norm_exponent() const { return kind == SpaceKind::lq ? q : 2.0; }
	/// Hoelder conjugate p' of the smoothness exponent.
	double p_conjugate() const { return p / (p - 1.0); }
	std::string label() const;
	void validate() const;
};

std::string to_string(SpaceKind kind);
SpaceKind parse_space_kind(const std::string& name);

/// Linear functional acting through the coordinate pairing.
struct DualVector {
	Vector coords;

	double apply(const Vector& y) const;
};

double norm(const SpaceDescriptor& space, const Vector& x);
/// Norm of a functional in X' (the l^{q'} norm of its coordinates).
double dual_norm(const SpaceDescriptor& space, const DualVector& f);

/// phi(x) = |x|^p.
double phi(const SpaceDescriptor& space, const Vector& x);
/// Frechet derivative of phi; the zero functional at x = 0.
DualVector phi_gradient(const SpaceDescriptor& space, const Vector& x);

/// ((1/2(|x+y|^p + |x-y|^p) - |x|^p) / |y|^p)^(1/p), clamped at 0.
/// Evaluated with a cancellation-free expansion so that |y| << |x| does not
/// lose the second-order numerator to roundoff.
double smoothness_ratio(const SpaceDescriptor& space, const Vector& x, const Vector& y);
/// (|phi'(x) - phi'(y)|_{X'} / |x-y|^(p-1))^(1/p).
double holder_ratio(const SpaceDescriptor& space, const Vector& x, const Vector& y);

/// Lower bound for C_sm: max of smoothness_ratio over sampled pairs.
double estimate_Csm(const SpaceDescriptor& space, std::uint64_t sample_count,
    std::uint64_t seed, unsigned workers = default_workers());
/// Lower bound for C_H: max of holder_ratio over sampled pairs x != y.
double estimate_CH(const SpaceDescriptor& space, std::uint64_t sample_count,
    std::uint64_t seed, unsigned workers = default_workers());

struct ConstantRelations {
	bool ch_at_least_p = false;       // C_H^p >= p
	bool csm_below_ch = false;        // C_sm^p <= C_H^p / p
	bool ch_below_csm = false;        // C_H^p <= 2^(p+1) C_sm^p

	bool all() const { return ch_at_least_p && csm_below_ch && ch_below_csm; }
};

/// Relations between the stored constants, up to 1e-12 relative roundoff.
ConstantRelations check_relations(const SpaceDescriptor& space);

struct PsiLemmaEntry {
	std::string name;
	bool applicable = true;
	double worst_slack = 0.0;   // min over the grid of (rhs - lhs)
	double worst_t = 0.0;
	bool passed = true;
};

struct PsiLemmaReport {
	std::array<PsiLemmaEntry, 4> lemmas;

	bool all_passed() const;
};

/// Checks the estimates used for psi(t) = |x+td|^p / C_H^p on a uniform grid
/// of t in [0,1]: the derivative size bound, the Hoelder bound on psi', the
/// linear-approximation remainder, and (when |d|^p <= q/2) the lower bound
/// psi(0) + psi'(0) t + q >= max(psi(0)/2, q/2). psi' is taken from
/// phi_gradient, never from finite differences.
PsiLemmaReport check_psi_lemmas(const SpaceDescriptor& space, const Vector& x,
    const Vector& d, double q, int t_grid);

} // namespace bdg::smooth
