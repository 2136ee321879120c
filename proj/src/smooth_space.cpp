#include "bdg/smooth_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bdg::smooth {

namespace {

constexpr double kRoundoff = 1e-12;

void require_dim(const SpaceDescriptor& space, const Vector& x)
{
	if (x.size() != space.dim)
		throw std::invalid_argument("vector dimension " + std::to_string(x.size())
		    + " does not match space dimension " + std::to_string(space.dim));
}

double lq_norm(const Vector& x, double q)
{
	const double m = x.cwiseAbs().maxCoeff();
	if (m == 0.0)
		return 0.0;
	if (std::isinf(q))
		return m;
	double s = 0.0;
	for (double xi : x)
		s += std::pow(std::abs(xi) / m, q);
	return m * std::pow(s, 1.0 / q);
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// |a+b|^q + |a-b|^q - 2|a|^q without cancellation for |b| << |a|.
double symmetric_excess(double a, double b, double q)
{
	const double aa = std::abs(a);
	if (aa == 0.0)
		return 2.0 * std::pow(std::abs(b), q);
	const double t = b / a;
	if (std::abs(t) > 0.5)
		return std::pow(std::abs(a + b), q) + std::pow(std::abs(a - b), q) - 2.0 * std::pow(aa, q);
	// (1+t)^q + (1-t)^q - 2 = 2 * sum_{k>=1} binom(q, 2k) t^(2k)
	double coeff = 1.0;
	double tp = 1.0;
	double sum = 0.0;
	for (int n = 1; n < 400; ++n) {
		coeff *= (q - n + 1) / n;
		tp *= t;
		if (n % 2 == 0) {
			const double term = coeff * tp;
			sum += term;
			if (std::abs(term) <= 1e-18 * std::abs(sum))
				break;
		}
		if (coeff == 0.0)
			break;
	}
	return 2.0 * std::pow(aa, q) * sum;
}

// |a+b|^q - |a|^q.
double one_sided_excess(double a, double b, double q)
{
	const double aa = std::abs(a);
	if (aa == 0.0)
		return std::pow(std::abs(b), q);
	const double t = b / a;
	if (std::abs(t) >= 1.0)
		return std::pow(std::abs(a + b), q) - std::pow(aa, q);
	return std::pow(aa, q) * std::expm1(q * std::log1p(t));
}

// (1+delta)^r - 1 - r delta.
double curvature_term(double r, double delta)
{
	if (r == 1.0)
		return 0.0;
	if (std::abs(delta) < 0.1) {
		double coeff = r;
		double dp = delta;
		double sum = 0.0;
		for (int k = 2; k < 200; ++k) {
			coeff *= (r - k + 1) / k;
			dp *= delta;
			const double term = coeff * dp;
			sum += term;
			if (coeff == 0.0 || std::abs(term) <= 1e-18 * std::abs(sum))
				break;
		}
		return sum;
	}
	return std::expm1(r * std::log1p(delta)) - r * delta;
}

Vector sample_vector(Rng& rng, const SpaceDescriptor& space, double magnitude)
{
	Vector dir = random_direction(rng, space.dim);
	return dir * (magnitude / norm(space, dir));
}

struct MaxAcc {
	double value = 0.0;
	void merge(const MaxAcc& other) { value = std::max(value, other.value); }
};

} // namespace

SpaceDescriptor SpaceDescriptor::scalar(double p)
{
	SpaceDescriptor s;
	s.kind = SpaceKind::scalar;
	s.q = 2.0;
	s.dim = 1;
	s.p = p;
	s.C_sm = 1.0;
	s.C_H = p == 2.0 ? std::sqrt(2.0) : std::pow(2.0, (p + 1.0) / p);
	s.validate();
	return s;
}

SpaceDescriptor SpaceDescriptor::euclidean(int dim, double p)
{
	SpaceDescriptor s = scalar(p);
	s.kind = SpaceKind::euclidean;
	s.dim = dim;
	s.validate();
	return s;
}

SpaceDescriptor SpaceDescriptor::lq(double q, int dim, double p)
{
	SpaceDescriptor s;
	s.kind = SpaceKind::lq;
	s.q = q;
	s.dim = dim;
	s.p = p;
	if (q >= 2.0) {
		if (p != 2.0)
			throw std::invalid_argument("lq with q >= 2 has default constants only for p = 2");
		s.C_sm = std::sqrt(q - 1.0);
		s.C_H = std::sqrt(2.0 * (q - 1.0));
	} else {
		if (p > q)
			throw std::invalid_argument("lq with q < 2 is only p-smooth for p <= q");
		s.C_sm = 1.0;
		s.C_H = std::pow(2.0, (p + 1.0) / p);
	}
	s.validate();
	return s;
}

SpaceDescriptor SpaceDescriptor::with_constants(double ch, double csm) const
{
	SpaceDescriptor s = *this;
	s.C_H = ch;
	s.C_sm = csm;
	s.validate();
	return s;
}

void SpaceDescriptor::validate() const
{
	if (!(p > 1.0 && p <= 2.0))
		throw std::invalid_argument("smoothness exponent p must lie in (1,2]");
	if (dim < 1)
		throw std::invalid_argument("dimension must be at least 1");
	if (kind == SpaceKind::scalar && dim != 1)
		throw std::invalid_argument("scalar space has dimension 1");
	if (!(q >= 1.0))
		throw std::invalid_argument("q must be at least 1");
	if (!(C_H > 0.0) || !(C_sm > 0.0))
		throw std::invalid_argument("smoothness constants must be positive");
}

std::string SpaceDescriptor::label() const
{
	std::ostringstream os;
	switch (kind) {
	case SpaceKind::scalar:
		os << "scalar";
		break;
	case SpaceKind::euclidean:
		os << "euclidean(" << dim << ")";
		break;
	case SpaceKind::lq:
		os << "lq(" << q << "," << dim << ")";
		break;
	}
	os << " p=" << p;
	return os.str();
}

std::string to_string(SpaceKind kind)
{
	switch (kind) {
	case SpaceKind::scalar:
		return "scalar";
	case SpaceKind::euclidean:
		return "euclidean";
	case SpaceKind::lq:
		return "lq";
	}
	return "?";
}

SpaceKind parse_space_kind(const std::string& name)
{
	if (name == "scalar")
		return SpaceKind::scalar;
	if (name == "euclidean")
		return SpaceKind::euclidean;
	if (name == "lq")
		return SpaceKind::lq;
	throw std::invalid_argument("unknown space kind '" + name + "'");
}

double DualVector::apply(const Vector& y) const
{
	if (y.size() != coords.size())
		throw std::invalid_argument("functional and vector dimensions differ");
	return coords.dot(y);
}

double norm(const SpaceDescriptor& space, const Vector& x)
{
	require_dim(space, x);
	return lq_norm(x, space.norm_exponent());
}

double dual_norm(const SpaceDescriptor& space, const DualVector& f)
{
	require_dim(space, f.coords);
	const double q = space.norm_exponent();
	const double qc = q == 1.0 ? std::numeric_limits<double>::infinity() : q / (q - 1.0);
	return lq_norm(f.coords, qc);
}

double phi(const SpaceDescriptor& space, const Vector& x)
{
	return std::pow(norm(space, x), space.p);
}

DualVector phi_gradient(const SpaceDescriptor& space, const Vector& x)
{
	const double n = norm(space, x);
	DualVector g{Vector::Zero(space.dim)};
	if (n == 0.0)
		return g;
	const double q = space.norm_exponent();
	const double outer = space.p * std::pow(n, space.p - 1.0);
	for (int i = 0; i < space.dim; ++i)
		g.coords[i] = outer * std::pow(std::abs(x[i]) / n, q - 1.0) * sign(x[i]);
	return g;
}

double smoothness_ratio(const SpaceDescriptor& space, const Vector& x, const Vector& y)
{
	require_dim(space, x);
	require_dim(space, y);
	const double ny = norm(space, y);
	if (ny == 0.0)
		return 0.0;
	const double nx = norm(space, x);
	if (nx == 0.0)
		return 1.0;

	// Both sides are p-homogeneous; work at unit scale.
	const double s = std::max(nx, ny);
	const Vector a = x / s;
	const Vector b = y / s;
	const double q = space.norm_exponent();
	const double r = space.p / q;

	double S = 0.0, plus = 0.0, minus = 0.0, sym = 0.0;
	for (int i = 0; i < space.dim; ++i) {
		S += std::pow(std::abs(a[i]), q);
		plus += one_sided_excess(a[i], b[i], q);
		minus += one_sided_excess(a[i], -b[i], q);
		sym += symmetric_excess(a[i], b[i], q);
	}
	// 1/2(|a+b|^p + |a-b|^p) - |a|^p
	//   = 1/2 S^r (r (d+ + d-) + h(d+) + h(d-)),  d+- = (|a+-b|^q - S) / S
	double numerator;
	if (r == 1.0)
		numerator = 0.5 * sym;
	else
		numerator = 0.5 * std::pow(S, r)
		    * (r * sym / S + curvature_term(r, plus / S) + curvature_term(r, minus / S));
	const double ratio_p = numerator / std::pow(ny / s, space.p);
	return ratio_p <= 0.0 ? 0.0 : std::pow(ratio_p, 1.0 / space.p);
}

double holder_ratio(const SpaceDescriptor& space, const Vector& x, const Vector& y)
{
	const double dist = norm(space, x - y);
	if (dist == 0.0)
		return 0.0;
	DualVector diff{phi_gradient(space, x).coords - phi_gradient(space, y).coords};
	const double ratio_p = dual_norm(space, diff) / std::pow(dist, space.p - 1.0);
	return std::pow(ratio_p, 1.0 / space.p);
}

double estimate_Csm(const SpaceDescriptor& space, std::uint64_t sample_count,
    std::uint64_t seed, unsigned workers)
{
	if (sample_count < 1)
		throw std::invalid_argument("sample_count must be at least 1");
	space.validate();
	auto acc = run_chunked(sample_count, seed, workers, MaxAcc{},
	    [&](MaxAcc& a, Rng& rng, std::uint64_t, std::uint64_t count) {
		    for (std::uint64_t k = 0; k < count; ++k) {
			    const Vector x = sample_vector(rng, space, log_uniform(rng, 1e-3, 1e3));
			    const Vector y = sample_vector(rng, space, log_uniform(rng, 1e-3, 1e3));
			    a.value = std::max(a.value, smoothness_ratio(space, x, y));
		    }
	    });
	return acc.value;
}

double estimate_CH(const SpaceDescriptor& space, std::uint64_t sample_count,
    std::uint64_t seed, unsigned workers)
{
	if (sample_count < 1)
		throw std::invalid_argument("sample_count must be at least 1");
	space.validate();
	auto acc = run_chunked(sample_count, seed, workers, MaxAcc{},
	    [&](MaxAcc& a, Rng& rng, std::uint64_t, std::uint64_t count) {
		    for (std::uint64_t k = 0; k < count; ++k) {
			    const Vector x = sample_vector(rng, space, log_uniform(rng, 1e-3, 1e3));
			    const Vector y = sample_vector(rng, space, log_uniform(rng, 1e-3, 1e3));
			    a.value = std::max(a.value, holder_ratio(space, x, y));
		    }
	    });
	return acc.value;
}

ConstantRelations check_relations(const SpaceDescriptor& space)
{
	const double p = space.p;
	const double ch = std::pow(space.C_H, p);
	const double csm = std::pow(space.C_sm, p);
	ConstantRelations rel;
	rel.ch_at_least_p = ch >= p * (1.0 - kRoundoff);
	rel.csm_below_ch = csm <= ch / p * (1.0 + kRoundoff);
	rel.ch_below_csm = ch <= std::pow(2.0, p + 1.0) * csm * (1.0 + kRoundoff);
	return rel;
}

bool PsiLemmaReport::all_passed() const
{
	return std::all_of(lemmas.begin(), lemmas.end(),
	    [](const PsiLemmaEntry& e) { return e.passed; });
}

PsiLemmaReport check_psi_lemmas(const SpaceDescriptor& space, const Vector& x,
    const Vector& d, double q, int t_grid)
{
	if (t_grid < 2)
		throw std::invalid_argument("t_grid must be at least 2");
	require_dim(space, x);
	require_dim(space, d);
	const double p = space.p;
	const double chp = std::pow(space.C_H, p);
	const double nd = norm(space, d);

	std::vector<double> t(t_grid), psi(t_grid), dpsi(t_grid);
	for (int k = 0; k < t_grid; ++k) {
		t[k] = static_cast<double>(k) / (t_grid - 1);
		const Vector y = x + t[k] * d;
		psi[k] = phi(space, y) / chp;
		dpsi[k] = phi_gradient(space, y).apply(d) / chp;
	}

	PsiLemmaReport report;
	report.lemmas[0].name = "psi_size";
	report.lemmas[1].name = "psi_holder";
	report.lemmas[2].name = "psi_linear_approx";
	report.lemmas[3].name = "psi_lower_bound";
	for (auto& e : report.lemmas)
		e.worst_slack = std::numeric_limits<double>::infinity();

	// `scale` is the size of the terms whose difference forms lhs; the
	// equality cases (scalar, p = 2) lose everything below roundoff of it.
	auto record = [](PsiLemmaEntry& e, double lhs, double rhs, double at, double scale) {
		const double slack = rhs - lhs;
		if (slack < e.worst_slack) {
			e.worst_slack = slack;
			e.worst_t = at;
		}
		if (slack < -kRoundoff * (std::abs(lhs) + std::abs(rhs) + scale))
			e.passed = false;
	};

	for (int k = 0; k < t_grid; ++k) {
		record(report.lemmas[0], std::abs(dpsi[k]), p * std::pow(psi[k], 1.0 - 1.0 / p) * nd, t[k], 0.0);
		for (int j = 0; j < t_grid; ++j)
			record(report.lemmas[1], std::abs(dpsi[k] - dpsi[j]),
			    std::pow(std::abs(t[k] - t[j]), p - 1.0) * std::pow(nd, p), t[k],
			    std::abs(dpsi[k]) + std::abs(dpsi[j]));
		record(report.lemmas[2], std::abs(psi[k] - psi[0] - t[k] * dpsi[0]),
		    std::pow(t[k] * nd, p) / p, t[k], psi[k] + psi[0] + std::abs(t[k] * dpsi[0]));
	}

	auto& lower = report.lemmas[3];
	lower.applicable = std::pow(nd, p) <= q / 2.0;
	if (lower.applicable) {
		for (int k = 0; k < t_grid; ++k)
			record(lower, std::max(psi[0] / 2.0, q / 2.0), psi[0] + dpsi[0] * t[k] + q, t[k],
			    std::abs(dpsi[0] * t[k]));
	} else {
		lower.worst_slack = 0.0;
	}
	return report;
}

} // namespace bdg::smooth
