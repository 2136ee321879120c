#pragma once

#include "bdg/bellman.hpp"

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace bdg::conditions {

using bellman::Variant;

/// Lower-bound conditions of the two concavity proofs. cond1..cond11 are the
/// C-type bounds (cond2, cond4, cond6 and cond9 also carry a C~-type bound,
/// exposed as the *_tC ids). The aggregates are
///   cond0_tC = max(2, 2^(4-1/p)/p'),
///   cond0_C  = max(2, 3^(1-1/p)(1+2^(1/p)), 3^(2-1/p)/p + 2^(1-1/p)(1+1/p)) + C~ ln 2,
///   cond_C   = max(2 (3/2)^(2-1/p)/p + 2, 1/p + (1+(1/p+1/p^2)^p)^(1/p),
///                  3^(1-1/p)(1+(1+(1/p')^p)^(1/p)), 9 + 3(p-1)p(3/2)^(1-1/p),
///                  3^(1-1/p)(1+2^(1/p))) + C~ ln 2.
enum class ConditionId {
	cond1, cond2, cond3, cond4, cond5, cond6, cond7, cond8, cond9, cond10, cond11,
	cond2_tC, cond4_tC, cond6_tC, cond9_tC,
	cond0_tC, cond0_C, cond_C,
};

inline constexpr int kConditionCount = 18;

/// C~ = 4 sqrt(2).
inline const double kPaperCtilde = 4.0 * 1.4142135623730951;

std::string to_string(ConditionId id);
ConditionId parse_condition(const std::string& name);

/// Right-hand side of the named condition; p must lie in (1, 2].
double cond_value(ConditionId id, double p, double C_tilde = kPaperCtilde);
double cond_value(const std::string& name, double p, double C_tilde = kPaperCtilde);

/// Value at the excluded endpoint p = 1, i.e. the limit p -> 1+ (1/p' -> 0).
double limit_at_one(ConditionId id, double C_tilde = kPaperCtilde);

struct ConditionRow {
	double p = 0.0;
	double cond0_tC = 0.0;
	double cond0_C = 0.0;
	double cond_C = 0.0;
	std::array<double, 11> components{};  // cond1..cond11
};

struct ConditionCurve {
	double C_tilde = kPaperCtilde;
	std::vector<ConditionRow> rows;
};

/// Uniform grid of grid_count points on [p_min, p_max], 1 < p_min <= p_max <= 2.
ConditionCurve sweep(double p_min, double p_max, int grid_count, double C_tilde = kPaperCtilde);

/// Smallest C certified by the case analysis: cond0_C (plain) or cond_C (maximal).
double minimal_admissible(Variant variant, double p, double C_tilde = kPaperCtilde);

struct Supremum {
	double value = 0.0;
	double argmax_p = 0.0;
};

struct CurveSummary {
	Supremum cond0_tC;
	Supremum cond0_C;
	Supremum cond_C;
};

/// Grid maxima; ties go to the first grid point.
CurveSummary summarize(const ConditionCurve& curve);

/// Header `p,cond0_tC,cond0_C,cond_C,cond1,...,cond11`, 15 significant digits.
void write_csv(const ConditionCurve& curve, std::ostream& out);

/// (a^p + p a^(p-1) b + b^p) - (a+b)^p for a, b >= 0, p in [1, 2].
double elementary_inequality_slack(double a, double b, double p);

} // namespace bdg::conditions
