#include "bdg/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bdg::bellman {

namespace {

void check_weights(double u, double v)
{
	if (!(u >= 0.0) || !(u <= v))
		throw std::invalid_argument("Bellman point needs 0 <= u <= v");
}

void check_point(const SpaceDescriptor& space, const PlainPoint& pt)
{
	if (pt.x.size() != space.dim)
		throw std::invalid_argument("point dimension does not match the space");
	if (!(pt.q >= 0.0))
		throw std::invalid_argument("Bellman point needs q >= 0");
	check_weights(pt.u, pt.v);
}

void check_point(const SpaceDescriptor& space, const MaxPoint& pt, double xn)
{
	if (pt.x.size() != space.dim)
		throw std::invalid_argument("point dimension does not match the space");
	if (!(pt.q >= 0.0))
		throw std::invalid_argument("Bellman point needs q >= 0");
	if (!(xn <= pt.m * (1.0 + 1e-12)))
		throw std::invalid_argument("maximal Bellman point needs |x| <= m");
	check_weights(pt.u, pt.v);
}

// -C v q^(1/p) + C~ v q^(1/p) ln(1 + u/v)
double weight_terms(double qp, double u, double v, const BellmanConstants& k)
{
	if (v == 0.0)
		return 0.0;
	return v * qp * (-k.C + k.C_tilde * std::log1p(u / v));
}

// d/du of weight_terms
double weight_terms_du(double qp, double u, double v, const BellmanConstants& k)
{
	if (v == 0.0)
		return k.C_tilde * qp;
	return k.C_tilde * qp / (1.0 + u / v);
}

double perturbed_u(double u, double e)
{
	const double ue = u + e;
	if (ue >= 0.0)
		return ue;
	if (ue > -1e-12 * (u + std::abs(e)))
		return 0.0;
	throw std::invalid_argument("perturbation needs u + e >= 0");
}

struct MaxParts {
	double R = 0.0;        // m^p/C_H^p + q
	double X = 0.0;        // |x|^p/C_H^p
	double first = 0.0;    // u-part, first form
	double second = 0.0;   // u-part, second form
};

MaxParts max_parts(const SpaceDescriptor& space, double xn, double m, double q, double u)
{
	const double p = space.p;
	const double chp = std::pow(space.C_H, p);
	MaxParts parts;
	const double M = std::pow(m, p) / chp;
	parts.X = std::pow(xn, p) / chp;
	parts.R = M + q;
	if (parts.R == 0.0)
		return parts;
	const double root = std::pow(parts.R, 1.0 / p);
	const double denom = std::pow(parts.R, 1.0 - 1.0 / p);
	parts.first = u * root - (u / p) * (M - parts.X) / denom;
	parts.second = u * (1.0 - 1.0 / p) * root + (u / p) * (q + parts.X) / denom;
	return parts;
}

double u_max_from_norm(const SpaceDescriptor& space, double xn, double m, double q,
    double u, double v, const BellmanConstants& k)
{
	const MaxParts parts = max_parts(space, xn, m, q, u);
	const double scale = std::abs(parts.first) + std::abs(parts.second);
	if (std::abs(parts.first - parts.second) > 1e-10 * scale)
		throw std::logic_error("the two forms of the maximal Bellman function disagree");
	return parts.first + weight_terms(std::pow(q, 1.0 / space.p), u, v, k);
}

double u_plain_from_norm(const SpaceDescriptor& space, double xn, double q, double u, double v,
    const BellmanConstants& k)
{
	const double p = space.p;
	const double A = std::pow(std::pow(xn, p) / std::pow(space.C_H, p) + q, 1.0 / p);
	return u * A + weight_terms(std::pow(q, 1.0 / p), u, v, k);
}

} // namespace

std::string to_string(Variant v)
{
	return v == Variant::plain ? "plain" : "maximal";
}

Variant parse_variant(const std::string& name)
{
	if (name == "plain")
		return Variant::plain;
	if (name == "maximal")
		return Variant::maximal;
	throw std::invalid_argument("unknown variant '" + name + "'");
}

BellmanConstants BellmanConstants::plain_default()
{
	return {9.0, 4.0 * std::sqrt(2.0)};
}

BellmanConstants BellmanConstants::maximal_default()
{
	return {21.0, 4.0 * std::sqrt(2.0)};
}

BellmanConstants BellmanConstants::defaults(Variant v)
{
	return v == Variant::plain ? plain_default() : maximal_default();
}

void BellmanConstants::validate() const
{
	if (!(C > 0.0) || !(C_tilde > 0.0) || !std::isfinite(C) || !std::isfinite(C_tilde))
		throw std::invalid_argument("Bellman constants must be positive and finite");
}

bool BellmanConstants::meaningful() const
{
	return C > C_tilde * std::log(2.0);
}

double u_plain(const SpaceDescriptor& space, const PlainPoint& pt, const BellmanConstants& k)
{
	check_point(space, pt);
	return u_plain_from_norm(space, smooth::norm(space, pt.x), pt.q, pt.u, pt.v, k);
}

Derivatives u_plain_derivatives(const SpaceDescriptor& space, const PlainPoint& pt,
    const BellmanConstants& k)
{
	check_point(space, pt);
	const double p = space.p;
	const double chp = std::pow(space.C_H, p);
	const double base = std::pow(smooth::norm(space, pt.x), p) / chp + pt.q;
	Derivatives out;
	out.U_u = std::pow(base, 1.0 / p) + weight_terms_du(std::pow(pt.q, 1.0 / p), pt.u, pt.v, k);
	if (base == 0.0) {
		out.U_x.coords = Vector::Zero(space.dim);
	} else {
		const double c = pt.u / (p * chp * std::pow(base, 1.0 - 1.0 / p));
		out.U_x.coords = c * smooth::phi_gradient(space, pt.x).coords;
	}
	return out;
}

MaxForms u_max_forms(const SpaceDescriptor& space, const MaxPoint& pt, const BellmanConstants& k)
{
	const double xn = smooth::norm(space, pt.x);
	check_point(space, pt, xn);
	const MaxParts parts = max_parts(space, xn, pt.m, pt.q, pt.u);
	const double w = weight_terms(std::pow(pt.q, 1.0 / space.p), pt.u, pt.v, k);
	return {parts.first + w, parts.second + w};
}

double u_max(const SpaceDescriptor& space, const MaxPoint& pt, const BellmanConstants& k)
{
	const double xn = smooth::norm(space, pt.x);
	check_point(space, pt, xn);
	return u_max_from_norm(space, xn, pt.m, pt.q, pt.u, pt.v, k);
}

Derivatives u_max_derivatives(const SpaceDescriptor& space, const MaxPoint& pt,
    const BellmanConstants& k)
{
	const double xn = smooth::norm(space, pt.x);
	check_point(space, pt, xn);
	const double p = space.p;
	const double chp = std::pow(space.C_H, p);
	const MaxParts parts = max_parts(space, xn, pt.m, pt.q, 1.0);
	Derivatives out;
	out.U_u = parts.second + weight_terms_du(std::pow(pt.q, 1.0 / p), pt.u, pt.v, k);
	if (parts.R == 0.0) {
		out.U_x.coords = Vector::Zero(space.dim);
	} else {
		const double c = pt.u / (p * chp * std::pow(parts.R, 1.0 - 1.0 / p));
		out.U_x.coords = c * smooth::phi_gradient(space, pt.x).coords;
	}
	return out;
}

double gap_plain(const SpaceDescriptor& space, const PlainPoint& pt, const Perturbation& pert,
    const BellmanConstants& k)
{
	if (pert.d.size() != space.dim)
		throw std::invalid_argument("perturbation dimension does not match the space");
	const double ue = perturbed_u(pt.u, pert.e);
	const Derivatives der = u_plain_derivatives(space, pt, k);
	const double rhs = u_plain(space, pt, k) + der.U_x.apply(pert.d) + der.U_u * pert.e;
	const double dn = smooth::norm(space, pert.d);
	const double lhs = u_plain_from_norm(space, smooth::norm(space, pt.x + pert.d),
	    pt.q + std::pow(dn, space.p), ue, std::max(ue, pt.v), k);
	return rhs - lhs;
}

double gap_max(const SpaceDescriptor& space, const MaxPoint& pt, const Perturbation& pert,
    const BellmanConstants& k)
{
	if (pert.d.size() != space.dim)
		throw std::invalid_argument("perturbation dimension does not match the space");
	const double ue = perturbed_u(pt.u, pert.e);
	const Derivatives der = u_max_derivatives(space, pt, k);
	const double rhs = u_max(space, pt, k) + der.U_x.apply(pert.d) + der.U_u * pert.e;
	const double dn = smooth::norm(space, pert.d);
	const double xdn = smooth::norm(space, pt.x + pert.d);
	const double lhs = u_max_from_norm(space, xdn, std::max(pt.m, xdn),
	    pt.q + std::pow(dn, space.p), ue, std::max(ue, pt.v), k);
	return rhs - lhs;
}

double amgm_recovery_slack(const SpaceDescriptor& space, double x_norm, double m, double q)
{
	if (!(x_norm <= m))
		throw std::invalid_argument("AMGM recovery needs |x| <= m");
	const MaxParts parts = max_parts(space, x_norm, m, q, 1.0);
	if (parts.R == 0.0)
		return 0.0;
	return parts.second - std::pow(parts.X + q, 1.0 / space.p);
}

} // namespace bdg::bellman
