#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netgain/modes.hpp"
#include "netgain/plant.hpp"

namespace netgain {

/// Witness of switched stability: positive definite P_1..P_M such that
/// every ordered mode pair (i, j) satisfies P_i - Phi_i^T P_j Phi_i >= margin*I
/// and every P_i >= margin*I. Anyone holding the modes can re-verify it with
/// check_certificate alone.
struct LyapunovCertificate {
    std::vector<Eigen::MatrixXd> P;  ///< M symmetric matrices, each (n*M) x (n*M)
    double margin = 0.0;             ///< certified smallest eigenvalue slack
};

enum class FeasibilityStatus { Feasible, Infeasible, Unknown };

const char* to_string(FeasibilityStatus status);

/// Result of re-checking a certificate: worst-case slacks over both
/// constraint families, with the offending indices (1-based).
struct CertificateReport {
    bool passed = false;
    double min_positivity = 0.0;  ///< min_i lambda_min(P_i)
    double min_decrement = 0.0;   ///< min_{i,j} lambda_min(P_i - Phi_i^T P_j Phi_i)
    int worst_positivity_index = -1;
    int worst_pair_i = -1;
    int worst_pair_j = -1;

    double slack() const { return std::min(min_positivity, min_decrement); }
};

struct SolverConfig {
    /// Eigenvalue slack targeted by the projections, measured at the
    /// normalized scale trace(sum P_i) = M * n * M.
    double target_eps = 1e-6;
    /// Projection sweeps before giving up with Unknown.
    int max_iter = 5000;
    /// A certificate is accepted once its measured margin reaches
    /// accept_fraction * target_eps.
    double accept_fraction = 0.5;
    /// Sweeps without margin improvement before bailing out early (Unknown).
    int stall_window = 250;
    /// Sweeps between full margin evaluations.
    int check_interval = 8;
    /// Longest periodic mode word screened by the necessary-condition
    /// prefilter (a product with spectral radius >= 1 proves infeasibility).
    int prefilter_depth = 3;

    void validate() const;
};

struct StabilityVerdict {
    FeasibilityStatus status = FeasibilityStatus::Unknown;
    int iterations = 0;
    /// Remaining constraint violation relative to target_eps; for a
    /// prefilter infeasibility this is the spectral-radius excess over 1.
    double residual = 0.0;
    std::optional<LyapunovCertificate> certificate;  ///< set iff Feasible
    std::string reason;  ///< witness for Infeasible, diagnostic otherwise
};

/// Verifies a certificate against the mode set using symmetric eigensolves
/// only; independent of how the certificate was produced. Throws on
/// dimension mismatch or asymmetry beyond 1e-12 relative.
CertificateReport check_certificate(const ModeSet& modes, const LyapunovCertificate& cert,
                                    double eps);

/// Decides feasibility of the coupled Lyapunov inequalities by cyclic
/// projections on the block variable (P_1..P_M):
///   - clamp eigenvalues of each P_i at target_eps (positivity),
///   - for each ordered pair (i, j), clamp P_i - Phi_i^T P_j Phi_i at
///     target_eps with P_j held fixed (Gauss-Seidel over the pairs),
///   - rescale so trace(sum P_i) = M * n * M each sweep.
/// Infeasible is only ever returned with a certified witness (a mode word
/// whose product has spectral radius >= 1); otherwise exhaustion yields
/// Unknown. Every Feasible verdict carries a certificate that passes
/// check_certificate at its own margin.
StabilityVerdict solve_feasibility(const ModeSet& modes, const SolverConfig& config = {});

/// Convenience composition: build_all_modes + solve_feasibility.
StabilityVerdict is_stable(const DiscretePlant& plant, const GainSchedule& gains,
                           const SolverConfig& config = {});

}  // namespace netgain
