#ifndef ORDCLUST_LMFCM_HPP
#define ORDCLUST_LMFCM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ordclust/fuzzify.hpp"
#include "ordclust/matrix.hpp"
#include "ordclust/ordinal.hpp"

namespace ordclust {

// Likelihood-membership fuzzy clustering (LMFCM): the per-cluster,
// per-feature conditional probabilities are read off mode-anchored
// membership functions over fuzzified ordinal data, and the negative
// log-likelihood plays the role fuzzy c-means gives to squared distance.
struct LmfcmConfig {
    std::size_t clusters = 2;  // >= 1; the single-cluster case degenerates to all-ones memberships
    double beta = 2.0;         // fuzzifier; > 1 (membership exponent is 1/(beta-1))
    double epsilon = 1e-4;
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;
    double p_floor = 1e-6;      // probability floor in (0, 1e-3]; keeps -ln p finite
    bool neighbor_rule = true;  // terminal two-nearest-cluster reassignment
};

// Throws std::invalid_argument on a bad configuration.
void validate(const LmfcmConfig& cfg, std::size_t n_obs);

// Converged engine state.
//   p             c x N x n conditional probabilities, each in [p_floor, 1];
//   dissimilarity c x N matrix U with U_ij = -sum_k ln p_ijk;
//   memberships   N x c;
//   modes         c x n; modes(i,k) is the cluster's anchor for feature k and
//                 is always an attained fuzzified value of that feature;
//   cluster_order clusters sorted ascending by the mean of their mode vector,
//                 giving the "adjacent cluster" notion the terminal
//                 reassignment uses.
struct LmfcmState {
    std::size_t n_clusters = 0;
    std::size_t n_observations = 0;
    std::size_t n_features = 0;

    std::vector<double> p;
    Matrix dissimilarity;
    MembershipMatrix memberships;
    Matrix modes;
    std::vector<std::size_t> cluster_order;

    double probability(std::size_t cluster, std::size_t obs, std::size_t feat) const {
        return p[(cluster * n_observations + obs) * n_features + feat];
    }
};

struct LmfcmResult {
    LmfcmState state;
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t restarts = 0;  // degenerate starts discarded before this run
};

// L = product of per-feature conditional probabilities. Throws
// std::invalid_argument if any probability is <= 0.
double likelihood(std::span<const double> p_row);

// U = -ln L = -sum_k ln p_k; nonnegative for probabilities in (0,1].
double dissimilarity(std::span<const double> p_row);

// Membership update from the c x N dissimilarity matrix:
//   w_ij = 1 / sum_l (U_ij / U_lj)^(1/(beta-1)).
// An observation with a zero dissimilarity is assigned crisply to that
// cluster (smallest index on ties).
MembershipMatrix lmfcm_memberships(const Matrix& dissim, double beta);

struct ProbabilityUpdate {
    std::vector<double> p;  // c x N x n
    Matrix modes;           // c x n
};

// Recomputes per-cluster modes (weighted by raw memberships) and reads the
// conditional probabilities off the resulting membership functions, floored
// at p_floor. Throws EngineError("empty cluster") when a cluster carries no
// membership weight.
ProbabilityUpdate update_probabilities(const Matrix& fuzzified,
                                       const MembershipMatrix& w, double p_floor);

// Q = sum_ij w_ij^beta U_ij.
double lmfcm_objective(const Matrix& dissim, const MembershipMatrix& w, double beta);

// Terminal reassignment of one observation: membership is confined to the
// nearest mode vector (Euclidean, in fuzzified space) and whichever of its
// order-adjacent clusters is closer, with inverse-squared-distance weights.
struct NeighborMembership {
    std::size_t nearest = 0;
    std::size_t neighbor = 0;
    double nearest_weight = 1.0;
    double neighbor_weight = 0.0;
    bool crisp = false;  // x coincided with the nearest mode; neighbor unused
};

NeighborMembership neighbor_reassign(std::span<const double> point,
                                     const Matrix& modes,
                                     std::span<const std::size_t> cluster_order);

using LmfcmObserver = std::function<void(std::size_t iteration,
                                         const MembershipMatrix& w,
                                         const Matrix& modes)>;

// Full run: fuzzifies the data, seeds p uniformly on [p_floor, 1), then
// alternates the membership and probability updates until max |w change| <
// epsilon or max_iters. With neighbor_rule set and c >= 2, a single terminal
// pass confines each observation to its two nearest order-adjacent clusters.
// A degenerate iteration (empty cluster) triggers a restart with a fresh
// seed-derived initialization, at most 5 times, before EngineError.
// Deterministic given (dataset, config).
LmfcmResult lmfcm_run(const OrdinalView& ds, const LmfcmConfig& cfg,
                      const LmfcmObserver& observer = {});

}  // namespace ordclust

#endif  // ORDCLUST_LMFCM_HPP
