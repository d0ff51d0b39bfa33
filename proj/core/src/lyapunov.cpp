#include "netgain/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "netgain/errors.hpp"

namespace netgain {

const char* to_string(FeasibilityStatus status) {
    switch (status) {
        case FeasibilityStatus::Feasible: return "feasible";
        case FeasibilityStatus::Infeasible: return "infeasible";
        case FeasibilityStatus::Unknown: return "unknown";
    }
    return "unknown";
}

void SolverConfig::validate() const {
    if (!(target_eps > 0.0)) throw ValidationError("solver target_eps must be positive");
    if (max_iter < 1) throw ValidationError("solver max_iter must be >= 1");
    if (!(accept_fraction > 0.0 && accept_fraction <= 1.0)) {
        throw ValidationError("solver accept_fraction must lie in (0, 1]");
    }
    if (stall_window < 1) throw ValidationError("solver stall_window must be >= 1");
    if (check_interval < 1) throw ValidationError("solver check_interval must be >= 1");
    if (prefilter_depth < 1) throw ValidationError("solver prefilter_depth must be >= 1");
}

namespace {

double min_eigenvalue(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolve failed");
    return es.eigenvalues()(0);
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& S) { return 0.5 * (S + S.transpose()); }

// Projects symmetric S onto {X : X >= floor * I} by clamping eigenvalues.
// Returns the smallest eigenvalue seen before clamping.
double clamp_eigenvalues(Eigen::MatrixXd& S, double floor) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolve failed");
    const double lambda_min = es.eigenvalues()(0);
    if (lambda_min < floor) {
        const Eigen::VectorXd lifted = es.eigenvalues().cwiseMax(floor);
        S = symmetrized(es.eigenvectors() * lifted.asDiagonal() * es.eigenvectors().transpose());
    }
    return lambda_min;
}

// Margin of the current iterate: worst slack over positivity and decrement
// constraints. NaN anywhere raises NumericalError.
double measure_margin(const std::vector<Eigen::MatrixXd>& P,
                      const std::vector<Eigen::MatrixXd>& modes) {
    const int M = static_cast<int>(P.size());
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < M; ++i) {
        margin = std::min(margin, min_eigenvalue(P[i]));
    }
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const Eigen::MatrixXd S =
                symmetrized(P[i] - modes[i].transpose() * P[j] * modes[i]);
            if (!S.allFinite()) throw NumericalError("non-finite iterate in feasibility solve");
            margin = std::min(margin, min_eigenvalue(S));
        }
    }
    return margin;
}

struct PrefilterHit {
    double rho = 0.0;
    std::string word;
};

// Necessary condition: a feasible certificate forces every periodic
// switching sequence to contract, so any mode-word product with spectral
// radius >= 1 certifies infeasibility. Words are screened up to the given
// length, one representative per cyclic class.
std::optional<PrefilterHit> spectral_prefilter(const ModeSet& modes, int depth) {
    std::vector<int> word;
    std::optional<PrefilterHit> hit;

    auto is_canonical = [](const std::vector<int>& w) {
        // Lexicographically minimal among its rotations and aperiodic.
        const int L = static_cast<int>(w.size());
        for (int r = 1; r < L; ++r) {
            for (int t = 0; t < L; ++t) {
                const int a = w[t];
                const int b = w[(t + r) % L];
                if (a != b) {
                    if (b < a) return false;  // a rotation is smaller
                    break;
                }
                if (t == L - 1) return false;  // periodic with period r
            }
        }
        return true;
    };

    auto scan_word = [&](const std::vector<int>& w) {
        Eigen::MatrixXd prod = modes.modes[w[0]];
        for (size_t t = 1; t < w.size(); ++t) prod = modes.modes[w[t]] * prod;
        const double rho = spectral_radius(prod);
        if (rho >= 1.0 && (!hit || rho > hit->rho)) {
            std::string text;
            for (size_t t = 0; t < w.size(); ++t) {
                if (t) text += ",";
                text += std::to_string(w[t] + 1);
            }
            hit = PrefilterHit{rho, text};
        }
    };

    for (int L = 1; L <= depth; ++L) {
        word.assign(L, 0);
        while (true) {
            if (L == 1 || is_canonical(word)) scan_word(word);
            int pos = L - 1;
            while (pos >= 0 && word[pos] == modes.M - 1) word[pos--] = 0;
            if (pos < 0) break;
            ++word[pos];
        }
        if (hit) return hit;  // report the shortest witnessing length
    }
    return hit;
}

}  // namespace

CertificateReport check_certificate(const ModeSet& modes, const LyapunovCertificate& cert,
                                    double eps) {
    modes.validate();
    if (!(eps > 0.0)) throw ValidationError("certificate check needs eps > 0");
    if (static_cast<int>(cert.P.size()) != modes.M) {
        throw DimensionError("certificate holds " + std::to_string(cert.P.size()) +
                             " matrices, expected " + std::to_string(modes.M));
    }

    const int dim = modes.dim();
    std::vector<Eigen::MatrixXd> P;
    P.reserve(cert.P.size());
    for (int i = 0; i < modes.M; ++i) {
        const Eigen::MatrixXd& Pi = cert.P[i];
        if (Pi.rows() != dim || Pi.cols() != dim) {
            throw DimensionError("certificate matrix P" + std::to_string(i + 1) + " is " +
                                 std::to_string(Pi.rows()) + "x" + std::to_string(Pi.cols()) +
                                 ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
        }
        if (!Pi.allFinite()) {
            throw ValidationError("certificate matrix P" + std::to_string(i + 1) +
                                  " has non-finite entries");
        }
        const double asym = (Pi - Pi.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * std::max(1.0, Pi.cwiseAbs().maxCoeff())) {
            throw ValidationError("certificate matrix P" + std::to_string(i + 1) +
                                  " is not symmetric (relative asymmetry " + std::to_string(asym) +
                                  ")");
        }
        P.push_back(symmetrized(Pi));
    }

    CertificateReport rep;
    rep.min_positivity = std::numeric_limits<double>::infinity();
    rep.min_decrement = std::numeric_limits<double>::infinity();
    for (int i = 0; i < modes.M; ++i) {
        const double lam = min_eigenvalue(P[i]);
        if (lam < rep.min_positivity) {
            rep.min_positivity = lam;
            rep.worst_positivity_index = i + 1;
        }
    }
    for (int i = 0; i < modes.M; ++i) {
        const Eigen::MatrixXd& Phi = modes.modes[i];
        for (int j = 0; j < modes.M; ++j) {
            const double lam = min_eigenvalue(symmetrized(P[i] - Phi.transpose() * P[j] * Phi));
            if (lam < rep.min_decrement) {
                rep.min_decrement = lam;
                rep.worst_pair_i = i + 1;
                rep.worst_pair_j = j + 1;
            }
        }
    }
    rep.passed = rep.min_positivity >= eps && rep.min_decrement >= eps;
    return rep;
}

StabilityVerdict solve_feasibility(const ModeSet& modes, const SolverConfig& config) {
    modes.validate();
    config.validate();

    StabilityVerdict verdict;

    if (auto hit = spectral_prefilter(modes, config.prefilter_depth)) {
        verdict.status = FeasibilityStatus::Infeasible;
        verdict.iterations = 0;
        verdict.residual = hit->rho - 1.0;
        verdict.reason = "mode word (" + hit->word + ") has spectral radius " +
                         std::to_string(hit->rho) + " >= 1";
        return verdict;
    }

    const int M = modes.M;
    const int dim = modes.dim();
    const double eps = config.target_eps;
    const double accept_margin = config.accept_fraction * eps;
    const double target_trace = static_cast<double>(M) * dim;

    std::vector<Eigen::MatrixXd> P(M, Eigen::MatrixXd::Identity(dim, dim));
    std::vector<Eigen::MatrixXd> PhiT(M);
    for (int i = 0; i < M; ++i) PhiT[i] = modes.modes[i].transpose();

    double best_margin = -std::numeric_limits<double>::infinity();
    int best_sweep = 0;

    for (int sweep = 1; sweep <= config.max_iter; ++sweep) {
        for (int i = 0; i < M; ++i) {
            clamp_eigenvalues(P[i], eps);
        }
        for (int i = 0; i < M; ++i) {
            for (int j = 0; j < M; ++j) {
                const Eigen::MatrixXd C = symmetrized(PhiT[i] * P[j] * modes.modes[i]);
                Eigen::MatrixXd S = symmetrized(P[i] - C);
                clamp_eigenvalues(S, eps);
                P[i] = symmetrized(C + S);
            }
        }

        double tr = 0.0;
        for (const auto& Pi : P) tr += Pi.trace();
        if (!std::isfinite(tr) || tr <= 0.0) {
            throw NumericalError("feasibility solve produced a non-finite iterate at sweep " +
                                 std::to_string(sweep));
        }
        const double scale = target_trace / tr;
        for (auto& Pi : P) Pi *= scale;

        const bool last = sweep == config.max_iter;
        if (sweep % config.check_interval == 0 || last) {
            const double margin = measure_margin(P, modes.modes);
            if (margin >= accept_margin) {
                verdict.status = FeasibilityStatus::Feasible;
                verdict.iterations = sweep;
                verdict.residual = std::max(0.0, eps - margin);
                verdict.certificate = LyapunovCertificate{P, margin};
                return verdict;
            }
            if (margin > best_margin + 1e-15) {
                best_margin = margin;
                best_sweep = sweep;
            } else if (sweep - best_sweep >= config.stall_window) {
                verdict.status = FeasibilityStatus::Unknown;
                verdict.iterations = sweep;
                verdict.residual = eps - best_margin;
                verdict.reason = "margin stalled at " + std::to_string(best_margin) +
                                 " after " + std::to_string(sweep) + " sweeps";
                return verdict;
            }
        }
    }

    verdict.status = FeasibilityStatus::Unknown;
    verdict.iterations = config.max_iter;
    verdict.residual = eps - best_margin;
    verdict.reason = "sweep budget exhausted";
    return verdict;
}

StabilityVerdict is_stable(const DiscretePlant& plant, const GainSchedule& gains,
                           const SolverConfig& config) {
    return solve_feasibility(build_all_modes(plant, gains), config);
}

}  // namespace netgain
