#include "ordclust/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ordclust/errors.hpp"

namespace ordclust {

namespace {

// Empirical quantile with linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double prob) {
    const std::size_t N = sorted.size();
    const double h = prob * static_cast<double>(N - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= N) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

OrdinalizeResult ordinalize(const Matrix& numeric, const OrdinalizationSpec& spec,
                            std::vector<int> labels) {
    const std::size_t N = numeric.rows();
    const std::size_t n = numeric.cols();
    if (N == 0 || n == 0)
        throw std::invalid_argument("ordinalize: empty input");
    if (spec.bins.size() != 1 && spec.bins.size() != n)
        throw std::invalid_argument("ordinalize: need one bin count or one per feature");
    if (!labels.empty() && labels.size() != N)
        throw std::invalid_argument("ordinalize: labels length mismatch");

    auto bins_for = [&](std::size_t k) {
        return spec.bins.size() == 1 ? spec.bins[0] : spec.bins[k];
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (bins_for(k) < 2)
            throw std::invalid_argument("ordinalize: at least 2 bins per feature");
        if (spec.strategy == BinningStrategy::quantile && N < bins_for(k))
            throw std::invalid_argument("ordinalize: quantile binning needs N >= bins");
    }

    OrdinalizeResult out;
    std::vector<RankScale> scales;
    std::vector<int> values(N * n);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = bins_for(k);
        scales.push_back(RankScale::numeric(m));

        std::vector<double> column = numeric.column(k);
        const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
        const double lo = *lo_it, hi = *hi_it;

        if (lo == hi) {
            for (std::size_t j = 0; j < N; ++j) values[j * n + k] = 1;
            out.warnings.push_back("feature " + std::to_string(k) +
                                   " is constant; all observations share rank 1");
            continue;
        }

        if (spec.strategy == BinningStrategy::quantile) {
            std::vector<double> sorted = column;
            std::sort(sorted.begin(), sorted.end());
            // Boundaries at the r/m quantiles; a value at or below a boundary
            // takes the lower rank.
            std::vector<double> bounds(m - 1);
            for (std::size_t r = 1; r < m; ++r)
                bounds[r - 1] = quantile(sorted, static_cast<double>(r) / static_cast<double>(m));
            int first_rank = 0;
            bool single = true;
            for (std::size_t j = 0; j < N; ++j) {
                int rank = 1;
                for (double b : bounds)
                    if (column[j] > b) ++rank;
                values[j * n + k] = rank;
                if (j == 0) first_rank = rank;
                else if (rank != first_rank) single = false;
            }
            if (single)
                out.warnings.push_back("feature " + std::to_string(k) +
                                       " collapsed to a single rank under quantile binning");
        } else {
            const double width = (hi - lo) / static_cast<double>(m);
            for (std::size_t j = 0; j < N; ++j) {
                auto rank = static_cast<long>((column[j] - lo) / width) + 1;
                rank = std::clamp<long>(rank, 1, static_cast<long>(m));
                values[j * n + k] = static_cast<int>(rank);
            }
        }
    }

    out.dataset = OrdinalDataset::create(std::move(scales), std::move(values),
                                         std::move(labels));
    return out;
}

// ---------------------------------------------------------------------------
// Accuracy
// ---------------------------------------------------------------------------

namespace {

// Max-weight assignment on a square count matrix via exhaustive permutation.
long best_match_exhaustive(const std::vector<std::vector<long>>& m) {
    const std::size_t s = m.size();
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    long best = 0;
    do {
        long total = 0;
        for (std::size_t i = 0; i < s; ++i) total += m[i][perm[i]];
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Max-weight assignment via the Hungarian algorithm with potentials
// (minimizes the negated matrix). O(s^3).
long best_match_assignment(const std::vector<std::vector<long>>& m) {
    const int s = static_cast<int>(m.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(s + 1, 0.0), v(s + 1, 0.0);
    std::vector<int> match(s + 1, 0), way(s + 1, 0);
    for (int i = 1; i <= s; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(s + 1, inf);
        std::vector<bool> used(s + 1, false);
        do {
            used[j0] = true;
            const int i0 = match[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= s; ++j) {
                if (used[j]) continue;
                const double cur = -static_cast<double>(m[i0 - 1][j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= s; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    long total = 0;
    for (int j = 1; j <= s; ++j) total += m[match[j] - 1][j - 1];
    return total;
}

}  // namespace

double accuracy(std::span<const std::size_t> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (predicted.empty())
        throw std::invalid_argument("accuracy: empty input");

    std::size_t clusters = 0;
    int classes = 0;
    for (std::size_t p : predicted) clusters = std::max(clusters, p + 1);
    for (int t : truth) {
        if (t < 0) throw std::invalid_argument("accuracy: negative class label");
        classes = std::max(classes, t + 1);
    }

    const std::size_t s = std::max(clusters, static_cast<std::size_t>(classes));
    std::vector<std::vector<long>> confusion(s, std::vector<long>(s, 0));
    for (std::size_t j = 0; j < predicted.size(); ++j)
        ++confusion[predicted[j]][static_cast<std::size_t>(truth[j])];

    const long matched =
        s <= 8 ? best_match_exhaustive(confusion) : best_match_assignment(confusion);
    return static_cast<double>(matched) / static_cast<double>(predicted.size());
}

// ---------------------------------------------------------------------------
// Benchmark
// ---------------------------------------------------------------------------

std::string method_name(Method m) {
    switch (m) {
        case Method::fcm_on_ranks: return "fcm-on-ranks";
        case Method::lmfcm: return "lmfcm";
    }
    return "unknown";
}

namespace {

Matrix ranks_as_numbers(const OrdinalView& ds) {
    Matrix points(ds.observations(), ds.features());
    for (std::size_t j = 0; j < ds.observations(); ++j)
        for (std::size_t k = 0; k < ds.features(); ++k)
            points(j, k) = static_cast<double>(ds.rank(j, k));
    return points;
}

TrialRecord run_trial(Method method, const Matrix& points, const OrdinalView& view,
                      std::span<const int> truth, const BenchmarkOptions& opt,
                      std::uint64_t seed) {
    TrialRecord rec;
    rec.seed = seed;
    try {
        std::vector<std::size_t> assigned;
        if (method == Method::fcm_on_ranks) {
            FcmConfig cfg;
            cfg.clusters = opt.clusters;
            cfg.beta = opt.beta;
            cfg.epsilon = opt.epsilon;
            cfg.max_iters = opt.max_iters;
            cfg.seed = seed;
            FcmResult r = fcm_run(points, cfg);
            rec.iterations = r.iterations;
            rec.converged = r.converged;
            assigned = hard_assignment(r.memberships);
        } else {
            LmfcmConfig cfg;
            cfg.clusters = opt.clusters;
            cfg.beta = opt.beta;
            cfg.epsilon = opt.epsilon;
            cfg.max_iters = opt.max_iters;
            cfg.seed = seed;
            cfg.p_floor = opt.p_floor;
            cfg.neighbor_rule = opt.neighbor_rule;
            LmfcmResult r = lmfcm_run(view, cfg);
            rec.iterations = r.iterations;
            rec.converged = r.converged;
            assigned = hard_assignment(r.state.memberships);
        }
        rec.accuracy = accuracy(assigned, truth);
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

BenchmarkReport run_benchmark(const OrdinalDataset& ds, const BenchmarkOptions& opt) {
    if (!ds.has_labels())
        throw DataError("benchmark requires ground-truth labels");
    if (opt.trials == 0)
        throw std::invalid_argument("benchmark: at least one trial required");
    if (opt.methods.empty())
        throw std::invalid_argument("benchmark: no methods selected");

    const OrdinalView view(ds);
    const Matrix points = ranks_as_numbers(view);
    const std::span<const int> truth(ds.labels);

    BenchmarkReport report;
    report.base_seed = opt.base_seed;
    report.trials = opt.trials;

    for (Method method : opt.methods) {
        MethodReport mr;
        mr.method = method;
        mr.trials.resize(opt.trials);

        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
        if (jobs == 1) {
            for (std::size_t t = 0; t < opt.trials; ++t)
                mr.trials[t] = run_trial(method, points, view, truth, opt,
                                         opt.base_seed + t);
        } else {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (;;) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= opt.trials) return;
                    mr.trials[t] = run_trial(method, points, view, truth, opt,
                                             opt.base_seed + t);
                }
            };
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < std::min(jobs, opt.trials); ++i)
                pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        const auto t1 = std::chrono::steady_clock::now();
        mr.wall_clock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        double sum = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        std::size_t ok = 0;
        for (const TrialRecord& rec : mr.trials) {
            if (rec.failed) {
                ++mr.failures;
                continue;
            }
            sum += rec.accuracy;
            lo = std::min(lo, rec.accuracy);
            hi = std::max(hi, rec.accuracy);
            ++ok;
        }
        if (ok > 0) {
            mr.avg = sum / static_cast<double>(ok);
            mr.min = lo;
            mr.max = hi;
        } else {
            mr.avg = mr.min = mr.max = std::numeric_limits<double>::quiet_NaN();
        }
        report.methods.push_back(std::move(mr));
    }
    return report;
}

}  // namespace ordclust
