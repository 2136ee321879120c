#include "bdg/cli.hpp"

#include "bdg/concavity_scan.hpp"
#include "bdg/constant_conditions.hpp"
#include "bdg/extrapolation.hpp"
#include "bdg/inequality_lab.hpp"
#include "bdg/report.hpp"
#include "bdg/smooth_space.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace bdg::cli {

namespace {

using report::Json;

struct SpaceOptions {
	std::string kind = "scalar";
	double p = 2.0;
	double q = 2.0;
	int dim = 0;
	CLI::Option* dim_opt = nullptr;
	CLI::Option* q_opt = nullptr;

	void attach(CLI::App* app)
	{
		app->add_option("--space", kind, "scalar, euclidean or lq")->capture_default_str();
		app->add_option("--p", p, "smoothness exponent in (1,2]")->capture_default_str();
		q_opt = app->add_option("--q", q, "exponent of the lq norm");
		dim_opt = app->add_option("--dim", dim, "dimension (required for euclidean and lq)");
	}

	smooth::SpaceDescriptor build() const
	{
		const auto k = smooth::parse_space_kind(kind);
		if (k == smooth::SpaceKind::scalar)
			return smooth::SpaceDescriptor::scalar(p);
		if (dim_opt->count() == 0)
			throw CLI::ValidationError("--dim", "--dim is required for --space " + kind);
		if (k == smooth::SpaceKind::euclidean)
			return smooth::SpaceDescriptor::euclidean(dim, p);
		if (q_opt->count() == 0)
			throw CLI::ValidationError("--q", "--q is required for --space lq");
		return smooth::SpaceDescriptor::lq(q, dim, p);
	}
};

struct Common {
	std::uint64_t seed = 0;
	unsigned workers = default_workers();
	std::string out_path;

	void attach(CLI::App* app, std::uint64_t default_seed)
	{
		seed = default_seed;
		app->add_option("--seed", seed, "64-bit run seed")->capture_default_str();
		app->add_option("--workers", workers, "worker threads (default from BDG_WORKERS)")
		    ->check(CLI::PositiveNumber);
		app->add_option("--out", out_path, "write the report here instead of stdout");
	}
};

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
	if (path.empty()) {
		out << text;
		return;
	}
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw std::invalid_argument("cannot write " + path);
	f << text;
}

std::string fixed(double x, int digits)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*f", digits, x);
	return buf;
}

int cmd_smoothness(const SpaceOptions& so, const Common& c, std::uint64_t samples, std::ostream& out)
{
	const auto space = so.build();
	const double csm = smooth::estimate_Csm(space, samples, c.seed, c.workers);
	const double ch = smooth::estimate_CH(space, samples, c.seed ^ 0x5bd1e995ULL, c.workers);
	const auto rel = smooth::check_relations(space);
	const bool within = csm <= space.C_sm * (1.0 + 1e-12) && ch <= space.C_H * (1.0 + 1e-12);

	Json j = report::envelope("smoothness");
	j["space"] = report::to_json(space);
	j["samples"] = samples;
	j["seed"] = c.seed;
	j["C_sm_est"] = report::round15(csm);
	j["C_H_est"] = report::round15(ch);
	j["estimates_within_stored"] = within;
	j["relation_checks"] = report::to_json(rel);
	emit(report::dump(j), c.out_path, out);
	return rel.all() && within ? kPass : kMathFailure;
}

int cmd_concavity(const SpaceOptions& so, const Common& c, const std::string& variant_name,
    std::optional<double> C, std::optional<double> Ct, const std::string& case_name,
    std::uint64_t samples, std::ostream& out)
{
	const auto space = so.build();
	std::optional<bellman::ProofCase> pc;
	if (!case_name.empty())
		pc = bellman::parse_proof_case(case_name);
	const auto variant = pc ? bellman::variant_of(*pc) : bellman::parse_variant(variant_name);
	bellman::BellmanConstants k = bellman::BellmanConstants::defaults(variant);
	if (C)
		k.C = *C;
	if (Ct)
		k.C_tilde = *Ct;
	k.validate();

	const auto rep = pc ? bellman::case_scan(space, *pc, k, samples, c.seed, c.workers)
	                    : bellman::concavity_scan(space, variant, k, samples, c.seed, c.workers);
	Json j = report::envelope("concavity");
	if (pc)
		j["case"] = bellman::to_string(*pc);
	j.update(report::to_json(rep));
	emit(report::dump(j), c.out_path, out);
	return rep.violations == 0 ? kPass : kMathFailure;
}

int cmd_conditions(double p_min, double p_max, int grid, double Ct, const std::string& out_path,
    const std::string& summary_path, std::ostream& out, std::ostream& err)
{
	const auto curve = conditions::sweep(p_min, p_max, grid, Ct);
	const auto sum = conditions::summarize(curve);

	std::ostringstream csv;
	conditions::write_csv(curve, csv);
	emit(csv.str(), out_path, out);

	std::ostringstream lines;
	lines << "sup_cond0_tC=" << fixed(sum.cond0_tC.value, 6) << " at p=" << fixed(sum.cond0_tC.argmax_p, 3) << '\n'
	      << "sup_cond0_C=" << fixed(sum.cond0_C.value, 6) << " at p=" << fixed(sum.cond0_C.argmax_p, 3) << '\n'
	      << "sup_cond_C=" << fixed(sum.cond_C.value, 6) << " at p=" << fixed(sum.cond_C.argmax_p, 3) << '\n';
	(out_path.empty() ? err : out) << lines.str();

	if (!summary_path.empty()) {
		Json j = report::envelope("conditions");
		j["p_min"] = report::round15(p_min);
		j["p_max"] = report::round15(p_max);
		j["grid"] = grid;
		j["C_tilde"] = report::round15(Ct);
		j.update(report::to_json(sum));
		emit(report::dump(j), summary_path, out);
	}

	constexpr double tol = 1e-9;
	const bool ok = sum.cond0_tC.value <= Ct + tol && sum.cond0_C.value <= 9.0 + tol
	    && sum.cond_C.value <= 21.0 + tol;
	return ok ? kPass : kMathFailure;
}

int cmd_simulate(const SpaceOptions& so, const Common& c, int depth, int trials,
    const std::string& generator, const std::vector<double>& rs, std::ostream& out)
{
	lab::FleetConfig cfg;
	cfg.space = so.build();
	cfg.depth = depth;
	cfg.trials = trials;
	cfg.seed = c.seed;
	cfg.r_values = rs;
	if (depth < 0 || depth > 20)
		throw std::invalid_argument("--depth must lie in [0, 20]");

	std::vector<lab::Generator> gens;
	if (generator == "all")
		gens = {lab::Generator::gaussian_terminal, lab::Generator::sparse_weight,
		    lab::Generator::adversarial_seeded};
	else
		gens = {lab::parse_generator(generator)};

	Json j = report::envelope("simulate");
	Json fleets = Json::array();
	std::uint64_t violations = 0;
	double max_ratio = 0.0;
	for (auto g : gens) {
		cfg.generator = g;
		const auto rep = lab::run_fleet(cfg, c.workers);
		violations += rep.violations();
		for (const auto& chk : rep.checks)
			if (chk.name == "w_bdg_ch")
				max_ratio = std::max(max_ratio, chk.max_ratio);
		fleets.push_back(report::to_json(rep));
	}
	j["max_ratio"] = report::round15(max_ratio);
	j["violations"] = violations;
	j["fleets"] = fleets;
	emit(report::dump(j), c.out_path, out);
	return violations == 0 ? kPass : kMathFailure;
}

int cmd_search(const SpaceOptions& so, const Common& c, int depth, std::uint64_t iters,
    const std::string& fixture_path, std::ostream& out)
{
	lab::InstanceConfig cfg;
	cfg.space = so.build();
	cfg.depth = depth;
	cfg.seed = c.seed;
	const auto rep = lab::adversarial_search(cfg, iters);
	const Json fixture = report::search_fixture(rep);

	Json j = report::envelope("search");
	j.update(report::to_json(rep));
	if (fixture_path.empty())
		j["fixture"] = fixture;
	else
		emit(report::dump(fixture), fixture_path, out);
	emit(report::dump(j), c.out_path, out);
	return rep.within_bound ? kPass : kMathFailure;
}

int cmd_extrapolate(const Common& c, double q, int dim, double r, int depth,
    const std::string& field, std::ostream& out)
{
	const auto space = extrap::FunctionSpace::lq(q, dim);
	if (depth < 0 || depth > 20)
		throw std::invalid_argument("--depth must lie in [0, 20]");
	const auto mart = field == "sign" ? extrap::sign_increment_field(depth, dim, c.seed)
	    : field == "gaussian"         ? extrap::gaussian_field(depth, dim, c.seed)
	                                  : throw std::invalid_argument("--field must be sign or gaussian");
	const auto rep = extrap::verify_vector_bdg(mart, r, space);

	Json j = report::envelope("extrapolate");
	j["q"] = report::round15(q);
	j["dim"] = dim;
	j["r"] = report::round15(r);
	j["depth"] = depth;
	j["seed"] = c.seed;
	j["field"] = field;
	j.update(report::to_json(rep));
	emit(report::dump(j), c.out_path, out);
	return rep.passed() ? kPass : kMathFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Numerical lab for weighted BDG inequalities via Bellman functions", "bdg_lab"};
	app.require_subcommand(1);

	SpaceOptions space_opts[4];
	Common common[6];

	auto* smooth_cmd = app.add_subcommand("smoothness", "estimate C_sm and C_H and check their relations");
	space_opts[0].attach(smooth_cmd);
	common[0].attach(smooth_cmd, 1);
	std::uint64_t smooth_samples = 100000;
	smooth_cmd->add_option("--samples", smooth_samples)->capture_default_str();

	auto* conc_cmd = app.add_subcommand("concavity", "sample the concavity inequality of a Bellman function");
	space_opts[1].attach(conc_cmd);
	common[1].attach(conc_cmd, 42);
	std::string variant = "plain";
	std::optional<double> C;
	std::optional<double> Ct;
	std::string case_name;
	std::uint64_t conc_samples = 1000000;
	conc_cmd->add_option("--variant", variant, "plain or maximal")->capture_default_str();
	conc_cmd->add_option("--C", C, "constant C (default 9 plain, 21 maximal)");
	conc_cmd->add_option("--Ct", Ct, "constant C~ (default 4 sqrt 2)");
	conc_cmd->add_option("--case", case_name, "restrict to one proof case (plain_1 ... max_2b)");
	conc_cmd->add_option("--samples", conc_samples)->capture_default_str();

	auto* cond_cmd = app.add_subcommand("conditions", "sweep the constant conditions over p");
	double p_min = 1.01;
	double p_max = 2.0;
	int grid = 1000;
	double cond_ct = conditions::kPaperCtilde;
	std::string cond_out;
	std::string cond_summary;
	cond_cmd->add_option("--p-min", p_min)->capture_default_str();
	cond_cmd->add_option("--p-max", p_max)->capture_default_str();
	cond_cmd->add_option("--grid", grid)->capture_default_str();
	cond_cmd->add_option("--Ct", cond_ct, "constant C~")->capture_default_str();
	cond_cmd->add_option("--out", cond_out, "CSV path (default stdout)");
	cond_cmd->add_option("--summary", cond_summary, "JSON summary path");

	auto* sim_cmd = app.add_subcommand("simulate", "run an instance fleet through every inequality check");
	space_opts[2].attach(sim_cmd);
	common[2].attach(sim_cmd, 3);
	int sim_depth = 10;
	int trials = 100;
	std::string generator = "gaussian-terminal";
	std::vector<double> rs{2.0, 3.0, 4.0};
	sim_cmd->add_option("--depth", sim_depth)->capture_default_str();
	sim_cmd->add_option("--trials", trials)->capture_default_str();
	sim_cmd->add_option("--generator", generator,
	    "gaussian-terminal, sparse-weight, adversarial-seeded or all")->capture_default_str();
	sim_cmd->add_option("--r", rs, "L^r exponents")->capture_default_str();

	auto* search_cmd = app.add_subcommand("search", "adversarial search for large weighted ratios");
	space_opts[3].attach(search_cmd);
	common[3].attach(search_cmd, 7);
	int search_depth = 6;
	std::uint64_t iters = 10000;
	std::string fixture_path;
	search_cmd->add_option("--depth", search_depth)->capture_default_str();
	search_cmd->add_option("--iters", iters)->capture_default_str();
	search_cmd->add_option("--fixture", fixture_path, "write the best instance here");

	auto* ext_cmd = app.add_subcommand("extrapolate", "vector-valued BDG through the extrapolation chain");
	common[4].attach(ext_cmd, 5);
	double ext_q = 3.0;
	int ext_dim = 4;
	double ext_r = 2.0;
	int ext_depth = 6;
	std::string field = "sign";
	ext_cmd->add_option("--q", ext_q)->capture_default_str();
	ext_cmd->add_option("--dim", ext_dim)->capture_default_str();
	ext_cmd->add_option("--r", ext_r)->capture_default_str();
	ext_cmd->add_option("--depth", ext_depth)->capture_default_str();
	ext_cmd->add_option("--field", field, "sign or gaussian")->capture_default_str();

	std::vector<const char*> argv{"bdg_lab"};
	for (const auto& a : args)
		argv.push_back(a.c_str());

	try {
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return kPass;
	} catch (const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return kPass;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n" << app.help();
		return kConfigError;
	}

	try {
		if (smooth_cmd->parsed())
			return cmd_smoothness(space_opts[0], common[0], smooth_samples, out);
		if (conc_cmd->parsed())
			return cmd_concavity(space_opts[1], common[1], variant, C, Ct, case_name, conc_samples, out);
		if (cond_cmd->parsed())
			return cmd_conditions(p_min, p_max, grid, cond_ct, cond_out, cond_summary, out, err);
		if (sim_cmd->parsed())
			return cmd_simulate(space_opts[2], common[2], sim_depth, trials, generator, rs, out);
		if (search_cmd->parsed())
			return cmd_search(space_opts[3], common[3], search_depth, iters, fixture_path, out);
		if (ext_cmd->parsed())
			return cmd_extrapolate(common[4], ext_q, ext_dim, ext_r, ext_depth, field, out);
	} catch (const CLI::ValidationError& e) {
		err << "error: " << e.what() << "\nusage: " << app.get_subcommands().front()->help();
		return kConfigError;
	} catch (const std::invalid_argument& e) {
		err << "error: " << e.what() << "\n";
		return kConfigError;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return kMathFailure;
	}
	return kConfigError;
}

} // namespace bdg::cli
