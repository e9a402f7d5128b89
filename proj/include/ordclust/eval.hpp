#ifndef ORDCLUST_EVAL_HPP
#define ORDCLUST_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ordclust/fcm.hpp"
#include "ordclust/lmfcm.hpp"
#include "ordclust/matrix.hpp"
#include "ordclust/ordinal.hpp"

namespace ordclust {

// ---------------------------------------------------------------------------
// Ordinalization of numeric data
// ---------------------------------------------------------------------------

enum class BinningStrategy { quantile, equal_width };

struct OrdinalizationSpec {
    // One entry per feature, or a single entry applied to every feature.
    std::vector<std::size_t> bins;
    BinningStrategy strategy = BinningStrategy::quantile;

    static OrdinalizationSpec uniform(std::size_t m,
                                      BinningStrategy s = BinningStrategy::quantile) {
        return OrdinalizationSpec{{m}, s};
    }
};

struct OrdinalizeResult {
    OrdinalDataset dataset;
    std::vector<std::string> warnings;
};

// Bins each numeric feature into ranks 1..m_k. Quantile binning places
// boundaries at the r/m empirical quantiles (linear interpolation) with
// values at or below a boundary taking the lower rank; equal-width binning
// splits [min, max] uniformly. Both preserve order: a larger value never
// receives a smaller rank. A constant feature collapses to a single rank and
// emits a warning. Optional labels are carried into the dataset.
OrdinalizeResult ordinalize(const Matrix& numeric, const OrdinalizationSpec& spec,
                            std::vector<int> labels = {});

// ---------------------------------------------------------------------------
// Accuracy scoring
// ---------------------------------------------------------------------------

// Best-permutation clustering accuracy: the fraction of observations matched
// under the cluster-to-class mapping that maximizes agreement. Exhaustive
// over permutations for up to 8 labels, optimal assignment on the confusion
// matrix beyond that. Invariant under relabeling of the predicted clusters.
double accuracy(std::span<const std::size_t> predicted, std::span<const int> truth);

// ---------------------------------------------------------------------------
// Multi-trial benchmark protocol
// ---------------------------------------------------------------------------

enum class Method { fcm_on_ranks, lmfcm };

std::string method_name(Method m);

struct TrialRecord {
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    double accuracy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct MethodReport {
    Method method = Method::lmfcm;
    std::vector<TrialRecord> trials;
    // Aggregates over successful trials; NaN when every trial failed.
    double avg = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t failures = 0;
    // Informational only; deliberately kept out of persisted artifacts so
    // that repeated runs produce identical files.
    double wall_clock_ms = 0.0;
};

struct BenchmarkReport {
    std::uint64_t base_seed = 0;
    std::size_t trials = 0;
    std::vector<MethodReport> methods;
};

struct BenchmarkOptions {
    std::vector<Method> methods = {Method::fcm_on_ranks, Method::lmfcm};
    std::size_t trials = 50;
    std::uint64_t base_seed = 0;
    std::size_t jobs = 1;

    std::size_t clusters = 2;
    double beta = 2.0;
    double epsilon = 1e-4;
    std::size_t max_iters = 300;
    double p_floor = 1e-6;
    bool neighbor_rule = true;
};

// Runs every method for `trials` seeded runs (trial t uses base_seed + t),
// defuzzifies, and scores accuracy against the dataset's labels. The
// fcm_on_ranks baseline feeds raw integer ranks to classic FCM; lmfcm runs
// the likelihood engine on the label-free view. Engine failures are recorded
// per trial and excluded from the aggregates. Trials may run on up to `jobs`
// worker threads; the report does not depend on the schedule.
BenchmarkReport run_benchmark(const OrdinalDataset& ds, const BenchmarkOptions& opt);

}  // namespace ordclust

#endif  // ORDCLUST_EVAL_HPP
