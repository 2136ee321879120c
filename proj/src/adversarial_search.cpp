#include "bdg/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace bdg::lab {

namespace {

constexpr std::uint64_t kSeededSearchIterations = 64;

Eigen::MatrixXd gaussian_terminal(const SpaceDescriptor& space, const FiltrationTree& tree, Rng& rng)
{
	std::normal_distribution<double> normal;
	Eigen::MatrixXd out(space.dim, static_cast<Eigen::Index>(tree.leaf_count()));
	for (Eigen::Index j = 0; j < out.cols(); ++j)
		for (Eigen::Index c = 0; c < out.rows(); ++c)
			out(c, j) = normal(rng);
	return out;
}

std::vector<double> lognormal_weights(std::size_t n, Rng& rng)
{
	std::normal_distribution<double> normal;
	std::vector<double> w(n);
	for (double& x : w)
		x = std::exp(normal(rng));
	return w;
}

std::vector<double> sparse_weights(std::size_t n, Rng& rng)
{
	const double scale = log_uniform(rng, 0.1, 10.0);
	std::vector<double> w(n, 0.0);
	bool any = false;
	for (double& x : w) {
		if (uniform(rng, 0.0, 1.0) < 0.1) {
			x = scale;
			any = true;
		}
	}
	if (!any)
		w[std::min(n - 1, static_cast<std::size_t>(uniform(rng, 0.0, 1.0) * n))] = scale;
	return w;
}

AdaptedProcess random_multiplier(const FiltrationTree& tree, Rng& rng)
{
	AdaptedProcess lambda;
	for (int n = 0; n <= tree.depth(); ++n) {
		Eigen::MatrixXd level(1, static_cast<Eigen::Index>(tree.nodes_at(n)));
		for (Eigen::Index i = 0; i < level.cols(); ++i) {
			const double u = uniform(rng, 0.0, 1.0);
			level(0, i) = u < 0.1 ? 0.0 : u < 0.2 ? 1.0 : uniform(rng, 0.0, 1.0);
		}
		lambda.levels.push_back(std::move(level));
	}
	return lambda;
}

// g - g_0, so the initial value vanishes.
Martingale centered(const Martingale& mart)
{
	return mart.shifted(mart.at(0, 0));
}

struct Tally {
	std::vector<CheckSummary> checks;
	std::uint64_t telescoping_runs = 0;
	std::uint64_t telescoping_failures = 0;
	std::string first_failure;

	void add(const RatioReport& r, const std::string& suffix = "")
	{
		const std::string name = r.name + suffix;
		auto it = std::find_if(checks.begin(), checks.end(),
		    [&](const CheckSummary& c) { return c.name == name; });
		if (it == checks.end()) {
			checks.push_back({name, 0, 0, 0.0, r.bound});
			it = checks.end() - 1;
		}
		++it->checks;
		it->max_ratio = std::max(it->max_ratio, r.ratio);
		if (!r.satisfied) {
			++it->violations;
			if (first_failure.empty())
				first_failure = name;
		}
	}

	void merge(const Tally& other)
	{
		for (const auto& c : other.checks) {
			auto it = std::find_if(checks.begin(), checks.end(),
			    [&](const CheckSummary& x) { return x.name == c.name; });
			if (it == checks.end()) {
				checks.push_back(c);
				continue;
			}
			it->checks += c.checks;
			it->violations += c.violations;
			it->max_ratio = std::max(it->max_ratio, c.max_ratio);
		}
		telescoping_runs += other.telescoping_runs;
		telescoping_failures += other.telescoping_failures;
		if (first_failure.empty())
			first_failure = other.first_failure;
	}
};

std::string r_suffix(double r)
{
	return "_r" + std::to_string(static_cast<int>(std::lround(r * 10.0)));
}

Tally check_instance(const FleetConfig& cfg, const Instance& inst)
{
	Tally t;
	const auto& space = cfg.space;
	const auto wr = verify_maximal_weighted(inst.mart, inst.w, space);
	t.add(wr.ch);
	t.add(wr.csm);
	t.add(verify_nonmaximal_weighted(inst.mart, inst.w, space));
	const Martingale g = centered(inst.mart);
	for (double r : cfg.r_values) {
		const std::string sfx = r_suffix(r);
		t.add(verify_lr(inst.mart, r, space), sfx);
		for (const auto& rep : verify_holder_doob(inst.mart, inst.w, space, r))
			t.add(rep, sfx);
		const TripleReport tr = verify_triple_process(g, inst.lambda, inst.w, space, r);
		t.add(tr.lr, sfx);
		if (r == cfg.r_values.front())
			t.add(tr.weighted);
		if (r >= 2.0)
			t.add(verify_sg_comparison(inst.mart, r, space), sfx);
	}
	if (cfg.telescoping) {
		for (Variant v : {Variant::plain, Variant::maximal}) {
			const auto rep = verify_telescoping(inst.mart, inst.w, space, v,
			    BellmanConstants::defaults(v));
			++t.telescoping_runs;
			if (!rep.passed()) {
				++t.telescoping_failures;
				if (t.first_failure.empty())
					t.first_failure = "telescoping " + bellman::to_string(v) + ": " + rep.first_failure;
			}
		}
	}
	return t;
}

} // namespace

std::string to_string(Generator g)
{
	switch (g) {
	case Generator::gaussian_terminal:
		return "gaussian-terminal";
	case Generator::sparse_weight:
		return "sparse-weight";
	case Generator::adversarial_seeded:
		return "adversarial-seeded";
	}
	return "unknown";
}

Generator parse_generator(const std::string& name)
{
	for (Generator g : {Generator::gaussian_terminal, Generator::sparse_weight, Generator::adversarial_seeded})
		if (to_string(g) == name)
			return g;
	throw std::invalid_argument("unknown generator '" + name + "'");
}

void InstanceConfig::validate() const
{
	space.validate();
	if (depth < 0 || depth > 20)
		throw std::invalid_argument("instance depth must lie in [0, 20]");
}

Instance make_instance(const InstanceConfig& config)
{
	config.validate();
	const FiltrationTree tree(config.depth);
	Rng rng(stream_seed(config.seed, 0));
	const AdaptedProcess lambda = random_multiplier(tree, rng);

	switch (config.generator) {
	case Generator::gaussian_terminal: {
		const auto terminal = gaussian_terminal(config.space, tree, rng);
		auto w = lognormal_weights(tree.leaf_count(), rng);
		return {dyadic::martingale_from_terminal(tree, terminal), std::move(w), lambda};
	}
	case Generator::sparse_weight: {
		const auto terminal = gaussian_terminal(config.space, tree, rng);
		auto w = sparse_weights(tree.leaf_count(), rng);
		return {dyadic::martingale_from_terminal(tree, terminal), std::move(w), lambda};
	}
	case Generator::adversarial_seeded: {
		const SearchReport s = adversarial_search(config, kSeededSearchIterations);
		return {dyadic::martingale_from_terminal(tree, s.leaf_values), s.weights, lambda};
	}
	}
	throw std::invalid_argument("unknown generator");
}

SearchReport adversarial_search(const InstanceConfig& config, std::uint64_t iterations,
    const StepSchedule& schedule)
{
	config.validate();
	if (iterations < 1)
		throw std::invalid_argument("search needs at least one iteration");
	if (!(schedule.initial > 0.0 && schedule.decay > 0.0 && schedule.decay <= 1.0
	        && schedule.min_step > 0.0))
		throw std::invalid_argument("invalid step schedule");

	const FiltrationTree tree(config.depth);
	const auto& space = config.space;
	Rng rng(stream_seed(config.seed, 1));
	std::normal_distribution<double> normal;

	SearchReport rep;
	rep.config = config;
	rep.iterations = iterations;
	rep.bound = maximal_constant_ch(space);
	rep.leaf_values = Eigen::MatrixXd::Zero(space.dim, static_cast<Eigen::Index>(tree.leaf_count()));
	rep.leaf_values.row(0).setOnes();
	rep.weights.assign(tree.leaf_count(), 1.0);
	rep.best_ratio = weighted_ratio(dyadic::martingale_from_terminal(tree, rep.leaf_values),
	    rep.weights, space);
	rep.trajectory.push_back({0, rep.best_ratio});

	const auto leaves = static_cast<double>(tree.leaf_count());
	double step = schedule.initial;
	for (std::uint64_t it = 1; it <= iterations; ++it) {
		Eigen::MatrixXd values = rep.leaf_values;
		std::vector<double> w = rep.weights;
		const auto leaf = std::min(static_cast<std::size_t>(uniform(rng, 0.0, 1.0) * leaves),
		    tree.leaf_count() - 1);
		if (uniform(rng, 0.0, 1.0) < 0.5) {
			const auto c = std::min(static_cast<Eigen::Index>(uniform(rng, 0.0, 1.0) * space.dim),
			    Eigen::Index{space.dim - 1});
			values(c, static_cast<Eigen::Index>(leaf)) += step * normal(rng);
		} else {
			w[leaf] *= std::exp(step * normal(rng));
		}
		const double ratio = weighted_ratio(dyadic::martingale_from_terminal(tree, values), w, space);
		if (ratio > rep.best_ratio) {
			rep.best_ratio = ratio;
			rep.leaf_values = std::move(values);
			rep.weights = std::move(w);
			rep.trajectory.push_back({it, ratio});
		}
		step = std::max(schedule.min_step, step * schedule.decay);
	}
	rep.within_bound = rep.best_ratio <= rep.bound;
	return rep;
}

std::uint64_t FleetReport::violations() const
{
	std::uint64_t n = telescoping_failures;
	for (const auto& c : checks)
		n += c.violations;
	return n;
}

FleetReport run_fleet(const FleetConfig& config, unsigned workers)
{
	config.space.validate();
	if (config.trials < 1)
		throw std::invalid_argument("fleet needs at least one trial");
	for (double r : config.r_values)
		if (!(r > 1.0))
			throw std::invalid_argument("fleet r values must exceed 1");

	std::vector<Tally> tallies(static_cast<std::size_t>(config.trials));
	parallel_for(tallies.size(), workers, [&](std::uint64_t k) {
		const InstanceConfig ic{config.space, config.depth, config.generator,
		    stream_seed(config.seed, k)};
		tallies[k] = check_instance(config, make_instance(ic));
	});

	Tally total;
	for (const auto& t : tallies)
		total.merge(t);
	FleetReport rep;
	rep.config = config;
	rep.checks = std::move(total.checks);
	rep.telescoping_runs = total.telescoping_runs;
	rep.telescoping_failures = total.telescoping_failures;
	rep.first_failure = std::move(total.first_failure);
	return rep;
}

} // namespace bdg::lab
