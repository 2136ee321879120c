#include "bdg/constant_conditions.hpp"

#include "bdg/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bdg::conditions {

namespace {

const std::array<const char*, kConditionCount> kNames{"cond1", "cond2", "cond3", "cond4",
    "cond5", "cond6", "cond7", "cond8", "cond9", "cond10", "cond11", "cond2_tC", "cond4_tC",
    "cond6_tC", "cond9_tC", "cond0_tC", "cond0_C", "cond_C"};

// Valid on [1, 2]; at p = 1 this is the p -> 1+ limit since 1/p' = 1 - 1/p.
double evaluate(ConditionId id, double p, double Ct)
{
	const double ip = 1.0 / p;
	const double ipc = 1.0 - ip;   // 1/p'
	const double ln2 = std::log(2.0) * Ct;
	const double c3 = std::pow(3.0, 1.0 - ip) * (1.0 + std::pow(2.0, ip));
	const double c6 = 2.0 * std::pow(1.5, 2.0 - ip) * ip;
	const double c7 = ip + std::pow(1.0 + std::pow(ip + ip * ip, p), ip);
	const double c8 = std::pow(3.0, 1.0 - ip) * (1.0 + std::pow(1.0 + std::pow(ipc, p), ip));
	const double c10 = 3.0 * (p - 1.0) * p * std::pow(1.5, 1.0 - ip);

	switch (id) {
	case ConditionId::cond1:
		return std::pow(2.0, 1.0 - ip) * (1.0 + ip) + ln2;
	case ConditionId::cond2:
		return std::pow(3.0, 2.0 - ip) * ip;
	case ConditionId::cond3:
	case ConditionId::cond11:
		return c3 + ln2;
	case ConditionId::cond4:
	case ConditionId::cond5:
		return 2.0 + ln2;
	case ConditionId::cond6:
		return c6;
	case ConditionId::cond7:
		return c7 + ln2;
	case ConditionId::cond8:
		return c8 + ln2;
	case ConditionId::cond9:
		return 9.0;
	case ConditionId::cond10:
		return c10;
	case ConditionId::cond2_tC:
		return std::pow(2.0, 4.0 - ip) * ipc;
	case ConditionId::cond4_tC:
		return 2.0;
	case ConditionId::cond6_tC:
		return 8.0 * ipc;
	case ConditionId::cond9_tC:
		return 4.0 * std::sqrt(2.0);
	case ConditionId::cond0_tC:
		return std::max(2.0, std::pow(2.0, 4.0 - ip) * ipc);
	case ConditionId::cond0_C:
		return std::max({2.0, c3,
		    std::pow(3.0, 2.0 - ip) * ip + std::pow(2.0, 1.0 - ip) * (1.0 + ip)}) + ln2;
	case ConditionId::cond_C:
		return std::max({c6 + 2.0, c7, c8, 9.0 + c10, c3}) + ln2;
	}
	throw std::invalid_argument("unknown condition id");
}

void check_p(double p)
{
	if (!(p > 1.0 && p <= 2.0))
		throw std::invalid_argument("condition exponent p must lie in (1, 2]");
}

void update(Supremum& s, double value, double p)
{
	if (value > s.value) {
		s.value = value;
		s.argmax_p = p;
	}
}

} // namespace

std::string to_string(ConditionId id)
{
	return kNames[static_cast<std::size_t>(id)];
}

ConditionId parse_condition(const std::string& name)
{
	for (int i = 0; i < kConditionCount; ++i)
		if (name == kNames[i])
			return static_cast<ConditionId>(i);
	throw std::invalid_argument("unknown condition '" + name + "'");
}

double cond_value(ConditionId id, double p, double C_tilde)
{
	check_p(p);
	return evaluate(id, p, C_tilde);
}

double cond_value(const std::string& name, double p, double C_tilde)
{
	return cond_value(parse_condition(name), p, C_tilde);
}

double limit_at_one(ConditionId id, double C_tilde)
{
	return evaluate(id, 1.0, C_tilde);
}

ConditionCurve sweep(double p_min, double p_max, int grid_count, double C_tilde)
{
	check_p(p_min);
	check_p(p_max);
	if (p_min > p_max)
		throw std::invalid_argument("sweep needs p_min <= p_max");
	if (grid_count < 2)
		throw std::invalid_argument("sweep needs at least two grid points");
	ConditionCurve curve;
	curve.C_tilde = C_tilde;
	curve.rows.reserve(static_cast<std::size_t>(grid_count));
	for (int i = 0; i < grid_count; ++i) {
		const double p = i == grid_count - 1 ? p_max
		                                     : p_min + (p_max - p_min) * i / (grid_count - 1);
		ConditionRow row;
		row.p = p;
		row.cond0_tC = evaluate(ConditionId::cond0_tC, p, C_tilde);
		row.cond0_C = evaluate(ConditionId::cond0_C, p, C_tilde);
		row.cond_C = evaluate(ConditionId::cond_C, p, C_tilde);
		for (int c = 0; c < 11; ++c)
			row.components[c] = evaluate(static_cast<ConditionId>(c), p, C_tilde);
		curve.rows.push_back(row);
	}
	return curve;
}

double minimal_admissible(Variant variant, double p, double C_tilde)
{
	return cond_value(variant == Variant::plain ? ConditionId::cond0_C : ConditionId::cond_C,
	    p, C_tilde);
}

CurveSummary summarize(const ConditionCurve& curve)
{
	if (curve.rows.empty())
		throw std::invalid_argument("empty condition curve");
	const double lowest = -std::numeric_limits<double>::infinity();
	CurveSummary s{{lowest, 0.0}, {lowest, 0.0}, {lowest, 0.0}};
	for (const auto& row : curve.rows) {
		update(s.cond0_tC, row.cond0_tC, row.p);
		update(s.cond0_C, row.cond0_C, row.p);
		update(s.cond_C, row.cond_C, row.p);
	}
	return s;
}

void write_csv(const ConditionCurve& curve, std::ostream& out)
{
	out << "p,cond0_tC,cond0_C,cond_C";
	for (int c = 0; c < 11; ++c)
		out << ',' << kNames[c];
	out << '\n';
	for (const auto& row : curve.rows) {
		out << report::format_number(row.p) << ',' << report::format_number(row.cond0_tC) << ','
		    << report::format_number(row.cond0_C) << ',' << report::format_number(row.cond_C);
		for (double v : row.components)
			out << ',' << report::format_number(v);
		out << '\n';
	}
}

double elementary_inequality_slack(double a, double b, double p)
{
	if (!(a >= 0.0 && b >= 0.0))
		throw std::invalid_argument("elementary inequality needs a, b >= 0");
	if (!(p >= 1.0 && p <= 2.0))
		throw std::invalid_argument("elementary inequality needs p in [1, 2]");
	const double lead = a == 0.0 ? 0.0 : p * std::pow(a, p - 1.0) * b;
	return std::pow(a, p) + lead + std::pow(b, p) - std::pow(a + b, p);
}

} // namespace bdg::conditions
