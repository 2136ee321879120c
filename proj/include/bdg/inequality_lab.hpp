#pragma once

#include "bdg/bellman.hpp"
#include "bdg/dyadic_martingale.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bdg::lab {

using bellman::BellmanConstants;
using bellman::Variant;
using dyadic::AdaptedProcess;
using dyadic::FiltrationTree;
using dyadic::Martingale;
using smooth::SpaceDescriptor;

/// Check of lhs <= bound * rhs; satisfied iff lhs <= bound rhs + 1e-12 (|lhs| + bound |rhs|).
struct RatioReport {
	std::string name;
	double lhs = 0.0;
	double rhs = 0.0;
	double ratio = 0.0;   // lhs / rhs, and 0 when rhs = 0
	double bound = 0.0;
	bool satisfied = true;
};

RatioReport make_ratio(std::string name, double lhs, double rhs, double bound);

/// 21 p' C_H, the constant of the maximal weighted estimate.
double maximal_constant_ch(const SpaceDescriptor& space);
/// 84 p' C_sm.
double maximal_constant_csm(const SpaceDescriptor& space);

/// E(f* w) against E(S_p f w*), checked against both constants.
struct WeightedReport {
	RatioReport ch;    // bound 21 p' C_H
	RatioReport csm;   // bound 84 p' C_sm

	bool satisfied() const { return ch.satisfied && csm.satisfied; }
	/// The check with the smaller bound.
	const RatioReport& sharper() const { return ch.bound <= csm.bound ? ch : csm; }
};

WeightedReport verify_maximal_weighted(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space);

/// E(|f_N| w) <= 9 C_H E(S_p f w*).
RatioReport verify_nonmaximal_weighted(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space);

/// |f*|_r <= K r |S_p f|_r with K = 21 p' C_H.
RatioReport verify_lr(const Martingale& mart, double r, const SpaceDescriptor& space);

/// The Hoelder and Doob steps that turn the weighted estimate into the L^r one:
///   hoelder_lhs: E(f* w) <= |f*|_r |w|_r'
///   hoelder_rhs: E(S_p f w*) <= |S_p f|_r |w*|_r'
///   doob:        |w*|_r' <= r |w|_r'
///   chain:       E(f* w) <= K r |S_p f|_r |w|_r'
std::vector<RatioReport> verify_holder_doob(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space, double r);

struct TelescopingReport {
	Variant variant = Variant::maximal;
	std::vector<double> expected_B;     // E(B_n), n = 0..N
	double worst_pointwise = 0.0;       // min over nodes and children of gap / (|B_n| + 1)
	double worst_conditional = 0.0;     // min over nodes of (B_n - E(B_{n+1}|F_n)) / (|B_n| + 1)
	bool pointwise_ok = true;
	bool conditional_ok = true;
	bool monotone = true;               // E(B_n) nonincreasing
	bool initial_nonpositive = true;    // E(B_0) <= 0
	double chain_lhs = 0.0;             // final-chain expression
	bool chain_ok = true;               // chain_lhs <= E(B_N)
	std::string first_failure;

	bool passed() const
	{
		return pointwise_ok && conditional_ok && monotone && initial_nonpositive && chain_ok;
	}
};

/// Builds B_n = U(f_n, [f*_n,] q_n, w_n, w*_n) and checks every step of the
/// telescoping argument at tolerance 1e-9 (|B| + 1).
TelescopingReport verify_telescoping(const Martingale& mart, std::span<const double> w,
    const SpaceDescriptor& space, Variant variant, const BellmanConstants& k);

/// Process pair built from g (g_0 = 0) and an adapted multiplier lambda in [0, 1]:
/// f_0 = 0, f_n = ftilde_{n-1} + (g_n - g_{n-1}), ftilde_n = lambda_n f_n.
AdaptedProcess triple_process(const Martingale& g, const AdaptedProcess& lambda);

struct TripleReport {
	RatioReport weighted;   // E(f* w) <= 84 p' C_sm E(S_p g w*)
	RatioReport lr;         // |f*|_r <= 84 p' C_sm r |S_p g|_r

	bool satisfied() const { return weighted.satisfied && lr.satisfied; }
};

TripleReport verify_triple_process(const Martingale& g, const AdaptedProcess& lambda,
    std::span<const double> w, const SpaceDescriptor& space, double r);

/// |sg|_r <= (r/2)^(1/2) |S_2 g|_r for r >= 2, with S_2 including |g_0|^2.
RatioReport verify_sg_comparison(const Martingale& g, double r, const SpaceDescriptor& space);

/// E(f* w) / E(S_p f w*), 0 when the denominator vanishes.
double weighted_ratio(const Martingale& mart, std::span<const double> w, const SpaceDescriptor& space);

// ---------------------------------------------------------------------------
// Instances, fleets and search

enum class Generator { gaussian_terminal, sparse_weight, adversarial_seeded };

std::string to_string(Generator g);
Generator parse_generator(const std::string& name);

struct InstanceConfig {
	SpaceDescriptor space;
	int depth = 4;
	Generator generator = Generator::gaussian_terminal;
	std::uint64_t seed = 0;

	void validate() const;
};

struct Instance {
	Martingale mart;
	std::vector<double> w;
	AdaptedProcess lambda;   // adapted multiplier in [0, 1] for the triple check
};

/// Deterministic in the config. adversarial_seeded runs a 64-step search.
Instance make_instance(const InstanceConfig& config);

struct StepSchedule {
	double initial = 1.0;
	double decay = 0.999;
	double min_step = 1e-3;
};

struct TrajectoryPoint {
	std::uint64_t iteration = 0;
	double ratio = 0.0;
};

struct SearchReport {
	InstanceConfig config;
	std::uint64_t iterations = 0;
	double best_ratio = 0.0;
	Eigen::MatrixXd leaf_values;   // dim x 2^N
	std::vector<double> weights;
	std::vector<TrajectoryPoint> trajectory;   // accepted improvements
	double bound = 0.0;                        // 21 p' C_H
	bool within_bound = true;
};

/// Accept-if-improved random coordinate search on terminal values and leaf
/// weights, started from the constant martingale e_1 with w = 1.
SearchReport adversarial_search(const InstanceConfig& config, std::uint64_t iterations,
    const StepSchedule& schedule = {});

struct FleetConfig {
	SpaceDescriptor space;
	int depth = 4;
	Generator generator = Generator::gaussian_terminal;
	int trials = 100;
	std::uint64_t seed = 0;
	std::vector<double> r_values{2.0, 3.0, 4.0};
	bool telescoping = true;
};

struct CheckSummary {
	std::string name;
	std::uint64_t checks = 0;
	std::uint64_t violations = 0;
	double max_ratio = 0.0;
	double bound = 0.0;
};

struct FleetReport {
	FleetConfig config;
	std::vector<CheckSummary> checks;
	std::uint64_t telescoping_runs = 0;
	std::uint64_t telescoping_failures = 0;
	std::string first_failure;

	std::uint64_t violations() const;
};

/// Instance k uses seed stream_seed(config.seed, k).
FleetReport run_fleet(const FleetConfig& config, unsigned workers = default_workers());

} // namespace bdg::lab
