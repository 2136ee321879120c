#include "bdg/concavity_scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bdg::bellman {

namespace {

constexpr double kMagLo = 1e-4;
constexpr double kMagHi = 1e4;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Accumulator {
	std::vector<StratumStats> strata;
	double min_gap = kInf;
	ScanSample argmin;
	std::uint64_t violations = 0;

	void record(std::size_t stratum, const ScanSample& s, double g)
	{
		auto& st = strata[stratum];
		++st.samples;
		st.min_gap = std::min(st.min_gap, g);
		if (g < -kViolationTolerance) {
			++st.violations;
			++violations;
		}
		if (g < min_gap) {
			min_gap = g;
			argmin = s;
		}
	}

	void merge(const Accumulator& other)
	{
		for (std::size_t i = 0; i < strata.size(); ++i) {
			strata[i].samples += other.strata[i].samples;
			strata[i].min_gap = std::min(strata[i].min_gap, other.strata[i].min_gap);
			strata[i].violations += other.strata[i].violations;
		}
		violations += other.violations;
		if (other.min_gap < min_gap) {
			min_gap = other.min_gap;
			argmin = other.argmin;
		}
	}
};

Vector vector_of_norm(const SpaceDescriptor& space, Rng& rng, double target)
{
	Vector dir = random_direction(rng, space.dim);
	return dir * (target / smooth::norm(space, dir));
}

Vector rescale(const SpaceDescriptor& space, const Vector& v, double target)
{
	const double n = smooth::norm(space, v);
	return n == 0.0 ? v : Vector(v * (target / n));
}

double stretch(Rng& rng)
{
	return log_uniform(rng, 1e-4, 1e2);
}

ScanSample draw_generic(const SpaceDescriptor& space, Rng& rng)
{
	ScanSample s;
	s.x = vector_of_norm(space, rng, log_uniform(rng, kMagLo, kMagHi));
	s.q = log_uniform(rng, kMagLo, kMagHi);
	s.v = log_uniform(rng, kMagLo, kMagHi);
	s.u = uniform(rng, 0.0, 1.0) * s.v;
	s.e = uniform(rng, -s.u / s.v, 4.0) * s.v;
	s.d = vector_of_norm(space, rng, log_uniform(rng, kMagLo, kMagHi));
	s.m = smooth::norm(space, s.x) * (1.0 + stretch(rng));
	return s;
}

void apply_stratum(const SpaceDescriptor& space, Stratum st, ScanSample& s, Rng& rng)
{
	switch (st) {
	case Stratum::generic:
		break;
	case Stratum::d_zero:
		s.d.setZero();
		break;
	case Stratum::e_minus_u:
		s.e = -s.u;
		break;
	case Stratum::q_zero:
		s.q = 0.0;
		break;
	case Stratum::x_zero:
		s.x.setZero();
		s.m = uniform(rng, 0.0, 1.0) < 0.25 ? 0.0 : log_uniform(rng, kMagLo, kMagHi);
		break;
	case Stratum::u_eq_v:
		s.u = s.v;
		s.e = uniform(rng, -1.0, 4.0) * s.v;
		break;
	case Stratum::u_zero:
		s.u = 0.0;
		s.e = uniform(rng, 0.0, 4.0) * s.v;
		break;
	case Stratum::m_eq_x:
		s.m = smooth::norm(space, s.x);
		break;
	case Stratum::d_shell:
		s.d = rescale(space, s.d, std::pow(0.5 * s.q, 1.0 / space.p));
		break;
	case Stratum::ue_shell:
		s.e = s.v - s.u;
		break;
	}
}

std::vector<Stratum> strata_for(Variant variant)
{
	std::vector<Stratum> out{Stratum::d_zero, Stratum::e_minus_u, Stratum::q_zero,
	    Stratum::x_zero, Stratum::u_eq_v, Stratum::u_zero, Stratum::d_shell, Stratum::ue_shell};
	if (variant == Variant::maximal)
		out.push_back(Stratum::m_eq_x);
	return out;
}

// Weight pair with u + e <= v (below) or u + e > v (above).
void draw_weight_step(ScanSample& s, Rng& rng, bool above)
{
	if (above)
		s.e = (s.v - s.u) + uniform(rng, 0.0, 4.0) * s.v;
	else
		s.e = uniform(rng, -s.u / s.v, (s.v - s.u) / s.v) * s.v;
}

// |d|^p = sigma q with sigma <= 1/2 (small) or > 1/2.
void draw_step_size(const SpaceDescriptor& space, ScanSample& s, Rng& rng, bool small)
{
	double sigma;
	if (small)
		sigma = uniform(rng, 0.0, 1.0) < 0.125 ? 0.5 : log_uniform(rng, 1e-8, 0.5);
	else
		sigma = log_uniform(rng, 0.5, 1e6);
	s.d = rescale(space, s.d, std::pow(sigma * s.q, 1.0 / space.p));
}

ScanSample draw_case(const SpaceDescriptor& space, ProofCase pc, Rng& rng)
{
	ScanSample s = draw_generic(space, rng);
	const bool small = pc == ProofCase::plain_1 || pc == ProofCase::max_1a
	    || pc == ProofCase::max_1b || pc == ProofCase::max_2a;
	if (pc != ProofCase::plain_3)
		draw_step_size(space, s, rng, small);

	switch (pc) {
	case ProofCase::plain_1:
	case ProofCase::plain_2:
	case ProofCase::max_1a:
		draw_weight_step(s, rng, false);
		break;
	case ProofCase::plain_3:
	case ProofCase::max_1b:
		draw_weight_step(s, rng, true);
		break;
	default:
		break;
	}

	if (variant_of(pc) == Variant::maximal) {
		const double xn = smooth::norm(space, s.x);
		const bool grows = pc == ProofCase::max_2a || pc == ProofCase::max_2b;
		if (grows) {
			if (smooth::norm(space, s.x + s.d) < xn)
				s.d = -s.d;
			const double xdn = smooth::norm(space, s.x + s.d);
			s.m = xn + uniform(rng, 0.0, 1.0) * (xdn - xn);
		} else {
			const double top = std::max(xn, smooth::norm(space, s.x + s.d));
			s.m = top * (uniform(rng, 0.0, 1.0) < 0.25 ? 1.0 : 1.0 + stretch(rng));
		}
	}
	return s;
}

Accumulator make_accumulator(const std::vector<std::string>& names)
{
	Accumulator acc;
	for (const auto& n : names)
		acc.strata.push_back({n, 0, kInf, 0});
	return acc;
}

ScanReport finish(const SpaceDescriptor& space, Variant variant, const BellmanConstants& k,
    std::uint64_t samples, std::uint64_t seed, Accumulator acc)
{
	ScanReport rep;
	rep.variant = variant;
	rep.space = space;
	rep.constants = k;
	rep.samples = samples;
	rep.seed = seed;
	rep.min_gap = acc.min_gap;
	rep.argmin = std::move(acc.argmin);
	rep.violations = acc.violations;
	for (auto& st : acc.strata)
		if (st.samples > 0)
			rep.strata.push_back(std::move(st));
	return rep;
}

void check_scan_args(const SpaceDescriptor& space, const BellmanConstants& k, std::uint64_t samples)
{
	space.validate();
	k.validate();
	if (samples < 1)
		throw std::invalid_argument("scan needs at least one sample");
}

} // namespace

std::string to_string(Stratum s)
{
	static const std::array<const char*, kStratumCount> names{"generic", "d_zero", "e_minus_u",
	    "q_zero", "x_zero", "u_eq_v", "u_zero", "m_eq_x", "d_shell", "ue_shell"};
	return names[static_cast<std::size_t>(s)];
}

std::string to_string(ProofCase c)
{
	static const std::array<const char*, 8> names{"plain_1", "plain_2", "plain_3", "max_1a",
	    "max_1b", "max_1c", "max_2a", "max_2b"};
	return names[static_cast<std::size_t>(c)];
}

ProofCase parse_proof_case(const std::string& name)
{
	for (int i = 0; i < 8; ++i)
		if (to_string(static_cast<ProofCase>(i)) == name)
			return static_cast<ProofCase>(i);
	throw std::invalid_argument("unknown proof case '" + name + "'");
}

Variant variant_of(ProofCase c)
{
	return c == ProofCase::plain_1 || c == ProofCase::plain_2 || c == ProofCase::plain_3
	    ? Variant::plain : Variant::maximal;
}

double normalized_gap(const SpaceDescriptor& space, Variant variant, const ScanSample& s,
    const BellmanConstants& k)
{
	const Perturbation pert{s.d, s.e};
	if (variant == Variant::plain) {
		const PlainPoint pt{s.x, s.q, s.u, s.v};
		return gap_plain(space, pt, pert, k) / (std::abs(u_plain(space, pt, k)) + 1.0);
	}
	const MaxPoint pt{s.x, s.m, s.q, s.u, s.v};
	return gap_max(space, pt, pert, k) / (std::abs(u_max(space, pt, k)) + 1.0);
}

ScanReport concavity_scan(const SpaceDescriptor& space, Variant variant, const BellmanConstants& k,
    std::uint64_t samples, std::uint64_t seed, unsigned workers)
{
	check_scan_args(space, k, samples);
	std::vector<std::string> names;
	for (int i = 0; i < kStratumCount; ++i)
		names.push_back(to_string(static_cast<Stratum>(i)));
	const std::vector<Stratum> boundary = strata_for(variant);

	Accumulator acc = run_chunked(samples, seed, workers, make_accumulator(names),
	    [&](Accumulator& a, Rng& rng, std::uint64_t, std::uint64_t count) {
		    for (std::uint64_t i = 0; i < count; ++i) {
			    ScanSample s = draw_generic(space, rng);
			    Stratum st = Stratum::generic;
			    if (uniform(rng, 0.0, 1.0) < 0.2) {
				    const auto j = static_cast<std::size_t>(uniform(rng, 0.0, 1.0) * boundary.size());
				    st = boundary[std::min(j, boundary.size() - 1)];
				    apply_stratum(space, st, s, rng);
			    }
			    a.record(static_cast<std::size_t>(st), s, normalized_gap(space, variant, s, k));
		    }
	    });
	return finish(space, variant, k, samples, seed, std::move(acc));
}

ScanReport case_scan(const SpaceDescriptor& space, ProofCase pc, const BellmanConstants& k,
    std::uint64_t samples, std::uint64_t seed, unsigned workers)
{
	check_scan_args(space, k, samples);
	const Variant variant = variant_of(pc);
	Accumulator acc = run_chunked(samples, seed, workers, make_accumulator({to_string(pc)}),
	    [&](Accumulator& a, Rng& rng, std::uint64_t, std::uint64_t count) {
		    for (std::uint64_t i = 0; i < count; ++i) {
			    const ScanSample s = draw_case(space, pc, rng);
			    a.record(0, s, normalized_gap(space, variant, s, k));
		    }
	    });
	return finish(space, variant, k, samples, seed, std::move(acc));
}

} // namespace bdg::bellman
