#include "netgain/region.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "netgain/errors.hpp"

namespace netgain {

void GridSpec::validate() const {
    const auto d = lower.size();
    if (d < 1) throw ValidationError("grid needs at least one dimension");
    if (upper.size() != d || step.size() != d) {
        throw DimensionError("grid lower/upper/step must have matching sizes (got " +
                             std::to_string(lower.size()) + "/" + std::to_string(upper.size()) +
                             "/" + std::to_string(step.size()) + ")");
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !std::isfinite(step[i])) {
            throw ValidationError("grid bounds and steps must be finite");
        }
        if (!(lower[i] < upper[i])) {
            throw ValidationError("grid dimension " + std::to_string(i) +
                                  " needs lower < upper");
        }
        if (!(step[i] > 0.0)) {
            throw ValidationError("grid dimension " + std::to_string(i) + " needs step > 0");
        }
    }
    for (long s : shape()) {
        if (s < 3) {
            throw ValidationError("grid needs at least 3 points per dimension (got " +
                                  std::to_string(s) + ")");
        }
    }
}

std::vector<long> GridSpec::shape() const {
    std::vector<long> s(dims());
    for (int i = 0; i < dims(); ++i) {
        // Slop absorbs representation error in (upper-lower)/step for
        // commensurate windows.
        s[i] = static_cast<long>(std::floor((upper[i] - lower[i]) / step[i] + 1e-9)) + 1;
    }
    return s;
}

long GridSpec::total_points() const {
    long total = 1;
    for (long s : shape()) total *= s;
    return total;
}

std::vector<long> GridSpec::multi_index(long index) const {
    const auto s = shape();
    std::vector<long> mi(s.size());
    for (int d = static_cast<int>(s.size()) - 1; d >= 0; --d) {
        mi[d] = index % s[d];
        index /= s[d];
    }
    return mi;
}

Eigen::VectorXd GridSpec::point(long index) const {
    const auto mi = multi_index(index);
    Eigen::VectorXd p(dims());
    for (int d = 0; d < dims(); ++d) p[d] = lower[d] + static_cast<double>(mi[d]) * step[d];
    return p;
}

long StabilityRegion::stable_count() const {
    return std::count(labels.begin(), labels.end(), std::uint8_t{1});
}

namespace {

StabilityRegion scan_impl(const DiscretePlant& plant, int M,
                          const std::vector<Eigen::MatrixXd>& predictive, bool constant_gain,
                          const GridSpec& spec, const ScanConfig& config) {
    plant.validate();
    spec.validate();
    config.solver.validate();
    if (M < 1) throw ValidationError("scan needs M >= 1");
    if (spec.dims() != plant.m() * plant.n()) {
        throw DimensionError("grid has " + std::to_string(spec.dims()) +
                             " dimensions but K1 has " + std::to_string(plant.m() * plant.n()) +
                             " entries");
    }
    if (!constant_gain) {
        if (static_cast<int>(predictive.size()) != M - 1) {
            throw DimensionError("expected " + std::to_string(M - 1) +
                                 " predictive gains, got " + std::to_string(predictive.size()));
        }
        for (size_t q = 0; q < predictive.size(); ++q) {
            if (predictive[q].rows() != plant.m() || predictive[q].cols() != plant.n()) {
                throw DimensionError("predictive gain K" + std::to_string(q + 2) + " is " +
                                     std::to_string(predictive[q].rows()) + "x" +
                                     std::to_string(predictive[q].cols()) + ", expected " +
                                     std::to_string(plant.m()) + "x" + std::to_string(plant.n()));
            }
            if (!predictive[q].allFinite()) {
                throw ValidationError("predictive gain K" + std::to_string(q + 2) +
                                      " has non-finite entries");
            }
        }
    }

    const long total = spec.total_points();
    if (total > config.max_points) {
        throw ValidationError("grid has " + std::to_string(total) +
                              " points, above the configured cap of " +
                              std::to_string(config.max_points));
    }

    StabilityRegion region;
    region.spec = spec;
    region.labels.assign(static_cast<size_t>(total), 0);
    region.statuses.assign(static_cast<size_t>(total), FeasibilityStatus::Unknown);

    const int m = plant.m(), n = plant.n();
    auto classify = [&](long idx) {
        const Eigen::VectorXd g = spec.point(idx);
        Eigen::MatrixXd K1(m, n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c) K1(r, c) = g[r * n + c];

        GainSchedule schedule;
        schedule.M = M;
        if (constant_gain) {
            schedule.K.assign(static_cast<size_t>(M), K1);
        } else {
            schedule.K.reserve(M);
            schedule.K.push_back(K1);
            schedule.K.insert(schedule.K.end(), predictive.begin(), predictive.end());
        }

        const ModeSet modes = build_all_modes(plant, schedule);
        const StabilityVerdict verdict = solve_feasibility(modes, config.solver);
        if (verdict.status == FeasibilityStatus::Feasible && config.verify_certificates) {
            const auto rep =
                check_certificate(modes, *verdict.certificate, verdict.certificate->margin);
            if (!rep.passed) {
                throw Error("certificate failed re-verification at grid index " +
                            std::to_string(idx));
            }
        }
        region.labels[idx] = verdict.status == FeasibilityStatus::Feasible ? 1 : 0;
        region.statuses[idx] = verdict.status;
    };

    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<long>(threads, total));

    if (threads == 1) {
        for (long idx = 0; idx < total; ++idx) classify(idx);
    } else {
        std::atomic<long> next{0};
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    // Work stealing in fixed-size blocks; per-point results are
                    // independent so the schedule cannot change any label.
                    constexpr long block = 16;
                    for (;;) {
                        const long start = next.fetch_add(block);
                        if (start >= total) break;
                        const long stop = std::min(start + block, total);
                        for (long idx = start; idx < stop; ++idx) classify(idx);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    region.unknown_count = std::count(region.statuses.begin(), region.statuses.end(),
                                      FeasibilityStatus::Unknown);
    return region;
}

}  // namespace

StabilityRegion scan_region(const DiscretePlant& plant,
                            const std::vector<Eigen::MatrixXd>& predictive, const GridSpec& spec,
                            const ScanConfig& config) {
    return scan_impl(plant, static_cast<int>(predictive.size()) + 1, predictive, false, spec,
                     config);
}

StabilityRegion scan_region_constant_gain(const DiscretePlant& plant, int M, const GridSpec& spec,
                                          const ScanConfig& config) {
    return scan_impl(plant, M, {}, true, spec, config);
}

double objective_J(const StabilityRegion& region) {
    double cell = 1.0;
    for (int d = 0; d < region.spec.dims(); ++d) cell *= region.spec.step[d];
    return static_cast<double>(region.stable_count()) * cell;
}

namespace {

// One-dimensional squared-distance lower envelope (Felzenszwalb-Huttenlocher).
// f is read in index units; the caller scales by step^2.
void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
    const int n = static_cast<int>(f.size());
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf) continue;
        double s;
        while (true) {
            if (k < 0) {
                s = -kInf;
                break;
            }
            const double qd = q, vd = v[k];
            s = ((f[q] + qd * qd) - (f[v[k]] + vd * vd)) / (2.0 * (qd - vd));
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    if (k < 0) {
        d.assign(n, kInf);
        return;
    }
    d.resize(n);
    int idx = 0;
    for (int q = 0; q < n; ++q) {
        while (z[idx + 1] < q) ++idx;
        const double dq = q - v[idx];
        d[q] = dq * dq + f[v[idx]];
    }
}

}  // namespace

BallFit largest_inscribed_ball(const StabilityRegion& region) {
    region.spec.validate();
    const long total = region.spec.total_points();
    if (static_cast<long>(region.labels.size()) != total) {
        throw DimensionError("region labels do not match the grid cardinality");
    }
    if (region.stable_count() == 0) {
        throw NoStableRegionError("no stable grid point in the scanned window");
    }

    const auto shape = region.spec.shape();
    const int dims = region.spec.dims();
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    // Squared distance to the nearest false-labeled point, exact, one axis
    // at a time. Each pass works in index units of that axis and rescales
    // by step^2 so mixed spacings stay Euclidean.
    std::vector<double> dist2(static_cast<size_t>(total));
    for (long i = 0; i < total; ++i) dist2[i] = region.labels[i] ? kInf : 0.0;

    std::vector<long> stride(dims);
    {
        long s = 1;
        for (int d = dims - 1; d >= 0; --d) {
            stride[d] = s;
            s *= shape[d];
        }
    }

    std::vector<double> line, out;
    for (int d = 0; d < dims; ++d) {
        const long len = shape[d];
        const long lines = total / len;
        const double s2 = region.spec.step[d] * region.spec.step[d];
        line.resize(len);
        for (long l = 0; l < lines; ++l) {
            // Base offset of the l-th line along axis d.
            long rem = l, base = 0;
            for (int dd = dims - 1; dd >= 0; --dd) {
                if (dd == d) continue;
                const long size = shape[dd];
                base += (rem % size) * stride[dd];
                rem /= size;
            }
            for (long q = 0; q < len; ++q) {
                const double v = dist2[base + q * stride[d]];
                line[q] = v == kInf ? kInf : v / s2;
            }
            edt_1d(line, out);
            for (long q = 0; q < len; ++q) {
                dist2[base + q * stride[d]] = out[q] == kInf ? kInf : out[q] * s2;
            }
        }
    }

    BallFit best;
    best.radius = -1.0;
    for (long idx = 0; idx < total; ++idx) {
        if (!region.labels[idx]) continue;
        const Eigen::VectorXd p = region.spec.point(idx);
        double face = kInf;
        for (int d = 0; d < dims; ++d) {
            face = std::min(face, p[d] - region.spec.lower[d]);
            face = std::min(face, region.spec.upper[d] - p[d]);
        }
        const double r = std::min(dist2[idx] == kInf ? kInf : std::sqrt(dist2[idx]), face);
        if (r > best.radius) {
            best.radius = r;
            best.center = p;
            best.center_index = idx;
        }
    }
    return best;
}

}  // namespace netgain
