#include "netgain/pso.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <unordered_map>

#include "netgain/errors.hpp"

namespace netgain {

void SwarmConfig::validate() const {
    if (particles < 2) throw ValidationError("swarm needs at least 2 particles");
    if (iterations < 1) throw ValidationError("swarm needs at least 1 iteration");
    if (!(beta1 > 0.0) || !(beta2 > 0.0)) {
        throw ValidationError("swarm learning rates beta1/beta2 must be positive");
    }
    if (!std::isfinite(alpha_start) || !std::isfinite(alpha_end)) {
        throw ValidationError("swarm inertia endpoints must be finite");
    }
    if (lower.size() < 1 || lower.size() != upper.size()) {
        throw DimensionError("swarm bounds must be non-empty and of equal size");
    }
    for (Eigen::Index d = 0; d < lower.size(); ++d) {
        if (!std::isfinite(lower[d]) || !std::isfinite(upper[d])) {
            throw ValidationError("swarm bounds must be finite");
        }
        if (lower[d] > upper[d]) {
            throw ValidationError("swarm bounds are not ordered in dimension " +
                                  std::to_string(d));
        }
    }
}

double inertia_at(const SwarmConfig& config, int k) {
    if (config.iterations <= 1) return config.alpha_start;
    return config.alpha_start +
           (config.alpha_end - config.alpha_start) * static_cast<double>(k) /
               static_cast<double>(config.iterations - 1);
}

void step(std::vector<Particle>& swarm, const Eigen::VectorXd& swarm_best,
          const SwarmConfig& config, int k, const ThetaDraw& theta) {
    config.validate();
    const double alpha = inertia_at(config, k);
    const int dims = config.dims();
    for (int i = 0; i < static_cast<int>(swarm.size()); ++i) {
        Particle& p = swarm[i];
        for (int d = 0; d < dims; ++d) {
            const double t1 = theta(i, d, 0);
            const double t2 = theta(i, d, 1);
            double v = alpha * p.velocity[d] +
                       config.beta1 * t1 * (p.best_position[d] - p.position[d]) +
                       config.beta2 * t2 * (swarm_best[d] - p.position[d]);
            double x = p.position[d] + v;
            if (x < config.lower[d]) {
                x = config.lower[d];
                v = 0.0;
            } else if (x > config.upper[d]) {
                x = config.upper[d];
                v = 0.0;
            }
            p.velocity[d] = v;
            p.position[d] = x;
        }
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream per (iteration, particle); iteration 0 is reserved for
// initialization draws.
std::mt19937_64 substream(std::uint64_t master, std::uint64_t iteration, std::uint64_t particle) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ (0x9E3779B97F4A7C15ULL * (iteration + 1)));
    s = splitmix64(s ^ (0xC2B2AE3D27D4EB4FULL * (particle + 1)));
    return std::mt19937_64(s);
}

std::string format_position(const Eigen::VectorXd& x) {
    std::string out = "[";
    for (Eigen::Index d = 0; d < x.size(); ++d) {
        if (d) out += ", ";
        out += std::to_string(x[d]);
    }
    return out + "]";
}

}  // namespace

PsoResult pso_minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                       const SwarmConfig& config) {
    config.validate();
    const int dims = config.dims();
    const int np = config.particles;

    // Pure objective: identical positions reuse the cached value. Late
    // iterations collapse onto the swarm best, so this saves real work when
    // evaluations are expensive.
    std::unordered_map<std::string, double> cache;
    auto evaluate = [&](const Eigen::VectorXd& x) {
        std::string key(reinterpret_cast<const char*>(x.data()), x.size() * sizeof(double));
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        const double value = objective(x);
        if (std::isnan(value)) {
            throw NumericalError("objective returned NaN at position " + format_position(x));
        }
        cache.emplace(std::move(key), value);
        return value;
    };

    std::vector<Particle> swarm(np);
    for (int i = 0; i < np; ++i) {
        auto rng = substream(config.seed, 0, i);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Particle& p = swarm[i];
        p.position.resize(dims);
        for (int d = 0; d < dims; ++d) {
            p.position[d] = config.lower[d] + unit(rng) * (config.upper[d] - config.lower[d]);
        }
        p.velocity = Eigen::VectorXd::Zero(dims);
        p.best_position = p.position;
        p.best_value = evaluate(p.position);
    }

    int best_particle = 0;
    for (int i = 1; i < np; ++i) {
        if (swarm[i].best_value < swarm[best_particle].best_value) best_particle = i;
    }
    Eigen::VectorXd gbest_position = swarm[best_particle].best_position;
    double gbest_value = swarm[best_particle].best_value;

    PsoResult result;
    result.history.reserve(config.iterations + 1);
    result.history.push_back(gbest_value);

    Eigen::MatrixXd thetas(np, 2 * dims);
    for (int k = 0; k < config.iterations; ++k) {
        for (int i = 0; i < np; ++i) {
            auto rng = substream(config.seed, static_cast<std::uint64_t>(k) + 1, i);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (int d = 0; d < dims; ++d) {
                thetas(i, 2 * d) = unit(rng);
                thetas(i, 2 * d + 1) = unit(rng);
            }
        }
        step(swarm, gbest_position, config, k,
             [&](int i, int d, int term) { return thetas(i, 2 * d + term); });

        for (int i = 0; i < np; ++i) {
            Particle& p = swarm[i];
            const double value = evaluate(p.position);
            if (value < p.best_value) {
                p.best_value = value;
                p.best_position = p.position;
            }
            if (p.best_value < gbest_value) {
                gbest_value = p.best_value;
                gbest_position = p.best_position;
            }
        }
        result.history.push_back(gbest_value);
    }

    result.best_position = gbest_position;
    result.best_value = gbest_value;
    return result;
}

OptimizeOptions::OptimizeOptions() {
    // The swarm explores with a cheaper solver; the returned design is
    // re-certified at full settings on the fine grid.
    search_solver.max_iter = 600;
    search_solver.stall_window = 60;
}

OptimizeReport optimize_predictive_gains(const DiscretePlant& plant, int M,
                                         const GridSpec& fine_grid, const SwarmConfig& swarm,
                                         const OptimizeOptions& options) {
    plant.validate();
    fine_grid.validate();
    swarm.validate();
    if (M < 2) {
        throw ValidationError("predictive-gain optimization needs M >= 2 (got M=" +
                              std::to_string(M) + ")");
    }
    const int m = plant.m(), n = plant.n();
    const int gain_dims = m * n;
    if (swarm.dims() != (M - 1) * gain_dims) {
        throw DimensionError("swarm bounds have " + std::to_string(swarm.dims()) +
                             " dimensions, expected (M-1)*m*n = " +
                             std::to_string((M - 1) * gain_dims));
    }
    if (!(options.search_step > 0.0)) throw ValidationError("search_step must be positive");

    GridSpec search = fine_grid;
    search.step = Eigen::VectorXd::Constant(fine_grid.dims(), options.search_step);
    search.validate();

    auto unpack = [&](const Eigen::VectorXd& v) {
        std::vector<Eigen::MatrixXd> gains;
        gains.reserve(M - 1);
        for (int q = 0; q < M - 1; ++q) {
            Eigen::MatrixXd K(m, n);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < n; ++c) K(r, c) = v[q * gain_dims + r * n + c];
            gains.push_back(std::move(K));
        }
        return gains;
    };

    ScanConfig search_scan;
    search_scan.solver = options.search_solver;
    search_scan.threads = options.threads;
    search_scan.verify_certificates = options.verify_certificates;

    auto objective = [&](const Eigen::VectorXd& v) {
        return -objective_J(scan_region(plant, unpack(v), search, search_scan));
    };

    OptimizeReport report;
    report.search_grid = search;
    report.swarm = pso_minimize(objective, swarm);

    ScanConfig fine_scan = search_scan;
    fine_scan.solver = options.solver;

    const auto predictive = unpack(report.swarm.best_position);
    report.region = scan_region(plant, predictive, fine_grid, fine_scan);
    if (report.region.stable_count() == 0) {
        throw NoStableRegionError(
            "optimized predictive gains certify no stable nominal gain on the fine grid; "
            "widen the search bounds or the grid window");
    }
    report.ball = largest_inscribed_ball(report.region);
    report.J = objective_J(report.region);

    Eigen::MatrixXd K1(m, n);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) K1(r, c) = report.ball.center[r * n + c];
    report.schedule.M = M;
    report.schedule.K.reserve(M);
    report.schedule.K.push_back(std::move(K1));
    report.schedule.K.insert(report.schedule.K.end(), predictive.begin(), predictive.end());
    report.schedule.validate_against(plant);
    return report;
}

}  // namespace netgain
