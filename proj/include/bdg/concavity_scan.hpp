#pragma once

#include "bdg/bellman.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bdg::bellman {

/// Relative violation threshold: gap < -kViolationTolerance (|U(pt)| + 1).
inline constexpr double kViolationTolerance = 1e-9;

/// Sampling strata. `generic` draws from the full mixed measure; the others
/// pin one boundary of the proof's case analysis.
enum class Stratum {
	generic,
	d_zero,
	e_minus_u,
	q_zero,
	x_zero,
	u_eq_v,
	u_zero,
	m_eq_x,
	d_shell,      // |d|^p = q/2
	ue_shell,     // u + e = v
};

inline constexpr int kStratumCount = 10;

/// Sub-domains of the two concavity proofs.
///   plain_1: |d|^p <= q/2, u+e <= v     plain_2: |d|^p > q/2, u+e <= v
///   plain_3: u+e > v
///   max_1*:  m >= |x+d| (running maximum unchanged)
///   max_2*:  |x+d| > m
///   suffix a: |d|^p <= q/2, u+e <= v;  b: |d|^p <= q/2, u+e > v;
///   1c: |d|^p > q/2;  2b: |d|^p > q/2.
enum class ProofCase { plain_1, plain_2, plain_3, max_1a, max_1b, max_1c, max_2a, max_2b };

std::string to_string(Stratum s);
std::string to_string(ProofCase c);
ProofCase parse_proof_case(const std::string& name);
Variant variant_of(ProofCase c);

/// One sampled (point, perturbation) pair; m is unused for the plain variant.
struct ScanSample {
	Vector x;
	double m = 0.0;
	double q = 0.0;
	double u = 0.0;
	double v = 0.0;
	Vector d;
	double e = 0.0;
};

struct StratumStats {
	std::string name;
	std::uint64_t samples = 0;
	double min_gap = 0.0;        // normalized, see ScanReport
	std::uint64_t violations = 0;
};

struct ScanReport {
	Variant variant = Variant::plain;
	SpaceDescriptor space;
	BellmanConstants constants;
	std::uint64_t samples = 0;
	std::uint64_t seed = 0;
	/// Minimum of gap / (|U(pt)| + 1) over all samples.
	double min_gap = 0.0;
	ScanSample argmin;
	std::uint64_t violations = 0;
	std::vector<StratumStats> strata;
};

/// gap / (|U(pt)| + 1) for the sample under the given variant.
double normalized_gap(const SpaceDescriptor& space, Variant variant, const ScanSample& s,
    const BellmanConstants& k);

/// Samples the full domain: 80% generic draws, 20% spread over the boundary
/// strata that apply to the variant.
ScanReport concavity_scan(const SpaceDescriptor& space, Variant variant, const BellmanConstants& k,
    std::uint64_t samples, std::uint64_t seed, unsigned workers = default_workers());

/// Samples only inside one proof case.
ScanReport case_scan(const SpaceDescriptor& space, ProofCase pc, const BellmanConstants& k,
    std::uint64_t samples, std::uint64_t seed, unsigned workers = default_workers());

} // namespace bdg::bellman
