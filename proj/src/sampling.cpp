#include "bdg/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace bdg {

unsigned default_workers()
{
	if (const char* env = std::getenv("BDG_WORKERS")) {
		try {
			const long n = std::stol(env);
			if (n >= 1)
				return static_cast<unsigned>(n);
		} catch (...) {
		}
	}
	return 1;
}

double uniform(Rng& rng, double lo, double hi)
{
	return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi)
{
	return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

Eigen::VectorXd random_direction(Rng& rng, int dim)
{
	std::normal_distribution<double> normal;
	Eigen::VectorXd v(dim);
	do {
		for (int i = 0; i < dim; ++i)
			v[i] = normal(rng);
	} while (v.norm() == 0.0);
	return v / v.norm();
}

} // namespace bdg
