#pragma once

#include "bdg/smooth_space.hpp"

#include <string>

namespace bdg::bellman {

using smooth::DualVector;
using smooth::SpaceDescriptor;
using smooth::Vector;

/// plain: U(x, q, u, v); maximal: U(x, m, q, u, v).
enum class Variant { plain, maximal };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct BellmanConstants {
	double C = 9.0;
	double C_tilde = 5.656854249492381;

	/// C = 9, C~ = 4 sqrt(2).
	static BellmanConstants plain_default();
	/// C = 21, C~ = 4 sqrt(2).
	static BellmanConstants maximal_default();
	static BellmanConstants defaults(Variant v);

	/// Throws unless C and C~ are positive and finite.
	void validate() const;
	/// C > C~ ln 2, the regime in which the case analysis is meaningful.
	/// Scans still run below it; that is how the negative controls work.
	bool meaningful() const;
};

struct PlainPoint {
	Vector x;
	double q = 0.0;
	double u = 0.0;
	double v = 0.0;
};

struct MaxPoint {
	Vector x;
	double m = 0.0;
	double q = 0.0;
	double u = 0.0;
	double v = 0.0;
};

struct Perturbation {
	Vector d;
	double e = 0.0;
};

struct Derivatives {
	DualVector U_x;
	double U_u = 0.0;
};

/// u (|x|^p/C_H^p + q)^(1/p) - C v q^(1/p) + C~ v q^(1/p) ln(1 + u/v).
/// For v = 0 (which forces u = 0) the v-terms vanish.
double u_plain(const SpaceDescriptor& space, const PlainPoint& pt, const BellmanConstants& k);

/// U_x is the zero functional on the stratum x = 0, q = 0.
Derivatives u_plain_derivatives(const SpaceDescriptor& space, const PlainPoint& pt,
    const BellmanConstants& k);

/// Both algebraic forms of the maximal Bellman function.
struct MaxForms {
	double first = 0.0;
	double second = 0.0;
};

MaxForms u_max_forms(const SpaceDescriptor& space, const MaxPoint& pt, const BellmanConstants& k);

/// First form of the maximal Bellman function. Throws std::logic_error if the
/// second form disagrees beyond 1e-10 relative.
double u_max(const SpaceDescriptor& space, const MaxPoint& pt, const BellmanConstants& k);

/// Derivatives at fixed m; U_x is zero when m = q = 0.
Derivatives u_max_derivatives(const SpaceDescriptor& space, const MaxPoint& pt,
    const BellmanConstants& k);

/// [U + U_x d + U_u e](pt) - U(x+d, q+|d|^p, u+e, (u+e) v v).
double gap_plain(const SpaceDescriptor& space, const PlainPoint& pt, const Perturbation& pert,
    const BellmanConstants& k);

/// [U + U_x d + U_u e](pt) - U(x+d, m v |x+d|, q+|d|^p, u+e, (u+e) v v).
double gap_max(const SpaceDescriptor& space, const MaxPoint& pt, const Perturbation& pert,
    const BellmanConstants& k);

/// Right minus left side of
/// (|x|^p/C_H^p + q)^(1/p) <= (1/p')(m^p/C_H^p + q)^(1/p)
///                            + (1/p)(q + |x|^p/C_H^p) / (m^p/C_H^p + q)^(1-1/p)
/// for |x| <= m.
double amgm_recovery_slack(const SpaceDescriptor& space, double x_norm, double m, double q);

} // namespace bdg::bellman
