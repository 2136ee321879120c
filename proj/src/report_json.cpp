#include "bdg/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bdg::report {

namespace {

Json number(double x)
{
	return round15(x);
}

Json vector_json(const Eigen::VectorXd& v)
{
	Json a = Json::array();
	for (Eigen::Index i = 0; i < v.size(); ++i)
		a.push_back(number(v[i]));
	return a;
}

Json numbers(const std::vector<double>& v)
{
	Json a = Json::array();
	for (double x : v)
		a.push_back(number(x));
	return a;
}

} // namespace

std::string format_number(double x)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.15g", x);
	return buf;
}

double round15(double x)
{
	if (!std::isfinite(x) || x == 0.0)
		return x;
	return std::strtod(format_number(x).c_str(), nullptr);
}

Json envelope(const std::string& command)
{
	Json j;
	j["schema"] = kSchemaVersion;
	j["command"] = command;
	return j;
}

std::string dump(const Json& j)
{
	return j.dump(2) + "\n";
}

Json to_json(const smooth::SpaceDescriptor& space)
{
	Json j;
	j["kind"] = smooth::to_string(space.kind);
	j["q"] = number(space.q);
	j["dim"] = space.dim;
	j["p"] = number(space.p);
	j["C_H"] = number(space.C_H);
	j["C_sm"] = number(space.C_sm);
	return j;
}

smooth::SpaceDescriptor space_from_json(const Json& j)
{
	smooth::SpaceDescriptor s;
	s.kind = smooth::parse_space_kind(j.at("kind").get<std::string>());
	s.q = j.at("q").get<double>();
	s.dim = j.at("dim").get<int>();
	s.p = j.at("p").get<double>();
	s.C_H = j.at("C_H").get<double>();
	s.C_sm = j.at("C_sm").get<double>();
	s.validate();
	return s;
}

Json to_json(const smooth::ConstantRelations& rel)
{
	Json j;
	j["ch_at_least_p"] = rel.ch_at_least_p;
	j["csm_below_ch"] = rel.csm_below_ch;
	j["ch_below_csm"] = rel.ch_below_csm;
	j["all"] = rel.all();
	return j;
}

Json to_json(const smooth::PsiLemmaReport& rep)
{
	Json a = Json::array();
	for (const auto& l : rep.lemmas) {
		Json e;
		e["name"] = l.name;
		e["applicable"] = l.applicable;
		e["worst_slack"] = number(l.worst_slack);
		e["worst_t"] = number(l.worst_t);
		e["passed"] = l.passed;
		a.push_back(e);
	}
	return a;
}

Json to_json(const bellman::ScanReport& rep)
{
	Json j;
	j["variant"] = bellman::to_string(rep.variant);
	j["space"] = to_json(rep.space);
	j["p"] = number(rep.space.p);
	j["C"] = number(rep.constants.C);
	j["C_tilde"] = number(rep.constants.C_tilde);
	j["constants_meaningful"] = rep.constants.meaningful();
	j["samples"] = rep.samples;
	j["seed"] = rep.seed;
	j["min_gap"] = number(rep.min_gap);
	Json arg;
	arg["x"] = vector_json(rep.argmin.x);
	arg["m"] = number(rep.argmin.m);
	arg["q"] = number(rep.argmin.q);
	arg["u"] = number(rep.argmin.u);
	arg["v"] = number(rep.argmin.v);
	arg["d"] = vector_json(rep.argmin.d);
	arg["e"] = number(rep.argmin.e);
	j["argmin"] = arg;
	j["violations"] = rep.violations;
	Json strata = Json::array();
	for (const auto& s : rep.strata) {
		Json e;
		e["name"] = s.name;
		e["samples"] = s.samples;
		e["min_gap"] = number(s.min_gap);
		e["violations"] = s.violations;
		strata.push_back(e);
	}
	j["strata"] = strata;
	return j;
}

Json to_json(const conditions::CurveSummary& s)
{
	Json j;
	j["sup_cond0_tC"] = number(s.cond0_tC.value);
	j["sup_cond0_C"] = number(s.cond0_C.value);
	j["sup_cond_C"] = number(s.cond_C.value);
	j["argmax_p"] = {{"cond0_tC", number(s.cond0_tC.argmax_p)},
	    {"cond0_C", number(s.cond0_C.argmax_p)}, {"cond_C", number(s.cond_C.argmax_p)}};
	return j;
}

Json to_json(const lab::RatioReport& rep)
{
	Json j;
	j["name"] = rep.name;
	j["lhs"] = number(rep.lhs);
	j["rhs"] = number(rep.rhs);
	j["ratio"] = number(rep.ratio);
	j["bound"] = number(rep.bound);
	j["satisfied"] = rep.satisfied;
	return j;
}

Json to_json(const lab::TelescopingReport& rep)
{
	Json j;
	j["variant"] = bellman::to_string(rep.variant);
	j["expected_B"] = numbers(rep.expected_B);
	j["worst_pointwise"] = number(rep.worst_pointwise);
	j["worst_conditional"] = number(rep.worst_conditional);
	j["pointwise_ok"] = rep.pointwise_ok;
	j["conditional_ok"] = rep.conditional_ok;
	j["monotone"] = rep.monotone;
	j["initial_nonpositive"] = rep.initial_nonpositive;
	j["chain_lhs"] = number(rep.chain_lhs);
	j["chain_ok"] = rep.chain_ok;
	j["passed"] = rep.passed();
	if (!rep.first_failure.empty())
		j["first_failure"] = rep.first_failure;
	return j;
}

Json to_json(const lab::FleetReport& rep)
{
	Json j;
	j["space"] = to_json(rep.config.space);
	j["depth"] = rep.config.depth;
	j["generator"] = lab::to_string(rep.config.generator);
	j["trials"] = rep.config.trials;
	j["seed"] = rep.config.seed;
	j["r_values"] = numbers(rep.config.r_values);
	Json checks = Json::array();
	for (const auto& c : rep.checks) {
		Json e;
		e["name"] = c.name;
		e["checks"] = c.checks;
		e["violations"] = c.violations;
		e["max_ratio"] = number(c.max_ratio);
		e["bound"] = number(c.bound);
		checks.push_back(e);
	}
	j["checks"] = checks;
	j["telescoping_runs"] = rep.telescoping_runs;
	j["telescoping_failures"] = rep.telescoping_failures;
	j["violations"] = rep.violations();
	if (!rep.first_failure.empty())
		j["first_failure"] = rep.first_failure;
	return j;
}

Json to_json(const lab::SearchReport& rep)
{
	Json j;
	j["space"] = to_json(rep.config.space);
	j["depth"] = rep.config.depth;
	j["seed"] = rep.config.seed;
	j["iterations"] = rep.iterations;
	j["best_ratio"] = number(rep.best_ratio);
	j["bound"] = number(rep.bound);
	j["within_bound"] = rep.within_bound;
	Json traj = Json::array();
	for (const auto& t : rep.trajectory)
		traj.push_back({t.iteration, number(t.ratio)});
	j["trajectory"] = traj;
	return j;
}

Json search_fixture(const lab::SearchReport& rep)
{
	Json j;
	j["config"] = {{"space", to_json(rep.config.space)}, {"depth", rep.config.depth},
	    {"generator", "search"}, {"seed", rep.config.seed}, {"iterations", rep.iterations}};
	Json leaves = Json::array();
	for (Eigen::Index i = 0; i < rep.leaf_values.cols(); ++i)
		leaves.push_back(vector_json(rep.leaf_values.col(i)));
	j["leaf_values"] = leaves;
	j["weights"] = numbers(rep.weights);
	j["expected_ratio"] = number(rep.best_ratio);
	return j;
}

Json to_json(const extrap::ChainReport& rep)
{
	Json j;
	j["hypothesis_ok"] = rep.hypothesis_ok;
	j["A"] = number(rep.A);
	j["M_measured"] = number(rep.M_measured);
	Json steps = Json::array();
	for (const auto& s : rep.steps) {
		Json e;
		e["name"] = s.name;
		e["lhs"] = number(s.lhs);
		e["rhs"] = number(s.rhs);
		e["slack"] = number(s.slack);
		e["ok"] = s.ok;
		steps.push_back(e);
	}
	j["step_slacks"] = steps;
	j["effective_constant"] = number(rep.effective_constant);
	j["lhs"] = number(rep.lhs);
	j["rhs"] = number(rep.rhs);
	j["passed"] = rep.passed();
	return j;
}

Json to_json(const extrap::VectorBdgReport& rep)
{
	Json j;
	j["ratio"] = to_json(rep.ratio);
	j["chain"] = to_json(rep.chain);
	j["passed"] = rep.passed();
	return j;
}

} // namespace bdg::report
