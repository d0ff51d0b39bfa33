#include "netgain/plant.hpp"

#include <string>

#include "netgain/errors.hpp"

namespace netgain {

void DiscretePlant::validate() const {
    if (F.rows() < 1 || F.rows() != F.cols()) {
        throw DimensionError("plant matrix F must be square and non-empty (got " +
                             std::to_string(F.rows()) + "x" + std::to_string(F.cols()) + ")");
    }
    if (G.rows() != F.rows() || G.cols() < 1) {
        throw DimensionError("plant matrix G must be " + std::to_string(F.rows()) +
                             "x m with m >= 1 (got " + std::to_string(G.rows()) + "x" +
                             std::to_string(G.cols()) + ")");
    }
    if (!F.allFinite()) throw ValidationError("plant matrix F has non-finite entries");
    if (!G.allFinite()) throw ValidationError("plant matrix G has non-finite entries");
}

void GainSchedule::validate() const {
    if (M < 1) throw ValidationError("gain schedule needs M >= 1 (got M=" + std::to_string(M) + ")");
    if (static_cast<int>(K.size()) != M) {
        throw DimensionError("gain schedule declares M=" + std::to_string(M) + " but holds " +
                             std::to_string(K.size()) + " gains");
    }
    for (int q = 0; q < M; ++q) {
        if (K[q].rows() != K[0].rows() || K[q].cols() != K[0].cols()) {
            throw DimensionError("gain K" + std::to_string(q + 1) + " is " +
                                 std::to_string(K[q].rows()) + "x" + std::to_string(K[q].cols()) +
                                 " but K1 is " + std::to_string(K[0].rows()) + "x" +
                                 std::to_string(K[0].cols()));
        }
        if (K[q].size() == 0) throw DimensionError("gain K" + std::to_string(q + 1) + " is empty");
        if (!K[q].allFinite()) {
            throw ValidationError("gain K" + std::to_string(q + 1) + " has non-finite entries");
        }
    }
}

void GainSchedule::validate_against(const DiscretePlant& plant) const {
    validate();
    for (int q = 0; q < M; ++q) {
        if (K[q].rows() != plant.m() || K[q].cols() != plant.n()) {
            throw DimensionError("gain K" + std::to_string(q + 1) + " is " +
                                 std::to_string(K[q].rows()) + "x" + std::to_string(K[q].cols()) +
                                 ", expected " + std::to_string(plant.m()) + "x" +
                                 std::to_string(plant.n()) + " for this plant");
        }
    }
}

GainSchedule constant_schedule(const Eigen::MatrixXd& gain, int M) {
    GainSchedule s;
    s.M = M;
    s.K.assign(static_cast<size_t>(M < 0 ? 0 : M), gain);
    s.validate();
    return s;
}

}  // namespace netgain
