#ifndef ORDCLUST_FCM_HPP
#define ORDCLUST_FCM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ordclust/matrix.hpp"
#include "ordclust/ordinal.hpp"

namespace ordclust {

// Classic fuzzy c-means over real-valued points, used here as the baseline
// engine (typically fed integer ranks treated as numbers).
struct FcmConfig {
    std::size_t clusters = 2;
    double beta = 2.0;      // fuzzifier; > 1 (the membership exponent is 2/(beta-1))
    double epsilon = 1e-4;  // stop when max |w change| drops below this
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument on a bad configuration.
void validate(const FcmConfig& cfg, std::size_t n_obs);

struct FcmResult {
    MembershipMatrix memberships;
    Matrix centroids;  // c x n
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    bool converged = false;
};

// Membership update: w_ij = 1 / sum_l (||x_j - v_i|| / ||x_j - v_l||)^(2/(beta-1)).
// A point coinciding with a centroid is assigned crisply to it (smallest
// index when several coincide).
MembershipMatrix fcm_memberships(const Matrix& points, const Matrix& centroids,
                                 double beta);

// Centroid update: v_i = sum_j w_ij^beta x_j / sum_j w_ij^beta. Throws
// EngineError("degenerate cluster i") when a cluster carries no weight.
Matrix fcm_centroids(const Matrix& points, const MembershipMatrix& w, double beta);

// Q = sum_ij w_ij^beta ||x_j - v_i||^2.
double fcm_objective(const Matrix& points, const Matrix& centroids,
                     const MembershipMatrix& w, double beta);

using FcmObserver = std::function<void(std::size_t iteration,
                                       const MembershipMatrix& w,
                                       const Matrix& centroids)>;

// Alternates the centroid and membership updates from a seeded random
// row-stochastic start until max |w change| < epsilon or max_iters. The
// recorded objective trace is nonincreasing. Deterministic given
// (points, config).
FcmResult fcm_run(const Matrix& points, const FcmConfig& cfg,
                  const FcmObserver& observer = {});

}  // namespace ordclust

#endif  // ORDCLUST_FCM_HPP
