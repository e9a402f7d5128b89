#include "ordclust/lmfcm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ordclust/errors.hpp"
#include "ordclust/rng.hpp"

namespace ordclust {

namespace {

constexpr std::size_t kMaxRestarts = 5;

double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

// Clusters sorted ascending by the mean of their mode vector; this is the
// ordering under which "adjacent cluster" is meaningful for ordinal data.
std::vector<std::size_t> order_by_mode_mean(const Matrix& modes) {
    std::vector<double> key(modes.rows());
    for (std::size_t i = 0; i < modes.rows(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < modes.cols(); ++k) s += modes(i, k);
        key[i] = s / static_cast<double>(modes.cols());
    }
    std::vector<std::size_t> order(modes.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    return order;
}

}  // namespace

void validate(const LmfcmConfig& cfg, std::size_t n_obs) {
    if (cfg.clusters < 1)
        throw std::invalid_argument("lmfcm: at least 1 cluster required");
    if (cfg.clusters > n_obs)
        throw std::invalid_argument("lmfcm: more clusters than observations");
    if (!(cfg.beta > 1.0))
        throw std::invalid_argument("lmfcm: fuzzifier beta must exceed 1");
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("lmfcm: epsilon must be positive");
    if (cfg.max_iters == 0)
        throw std::invalid_argument("lmfcm: max_iters must be positive");
    if (!(cfg.p_floor > 0.0) || cfg.p_floor > 1e-3)
        throw std::invalid_argument("lmfcm: p_floor must lie in (0, 1e-3]");
}

double likelihood(std::span<const double> p_row) {
    double product = 1.0;
    for (double p : p_row) {
        if (!(p > 0.0))
            throw std::invalid_argument("likelihood: probability must be positive");
        product *= p;
    }
    return product;
}

double dissimilarity(std::span<const double> p_row) {
    double u = 0.0;
    for (double p : p_row) {
        if (!(p > 0.0))
            throw std::invalid_argument("dissimilarity: probability must be positive");
        u -= std::log(p);
    }
    return u;
}

MembershipMatrix lmfcm_memberships(const Matrix& dissim, double beta) {
    if (!(beta > 1.0))
        throw std::invalid_argument("lmfcm_memberships: beta must exceed 1");

    const std::size_t c = dissim.rows();
    const std::size_t N = dissim.cols();
    const double expo = 1.0 / (beta - 1.0);

    Matrix w(N, c);
    for (std::size_t j = 0; j < N; ++j) {
        bool zero_found = false;
        std::size_t zero_at = 0;
        for (std::size_t i = 0; i < c; ++i) {
            if (!(dissim(i, j) >= 0.0))
                throw std::invalid_argument("lmfcm_memberships: negative dissimilarity");
            if (!zero_found && dissim(i, j) == 0.0) {
                zero_found = true;
                zero_at = i;
            }
        }
        if (zero_found) {
            w(j, zero_at) = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < c; ++i) {
            double denom = 0.0;
            for (std::size_t l = 0; l < c; ++l)
                denom += std::pow(dissim(i, j) / dissim(l, j), expo);
            w(j, i) = 1.0 / denom;
        }
    }
    return MembershipMatrix::unchecked(std::move(w));
}

ProbabilityUpdate update_probabilities(const Matrix& fuzzified,
                                       const MembershipMatrix& w, double p_floor) {
    const std::size_t N = fuzzified.rows();
    const std::size_t n = fuzzified.cols();
    const std::size_t c = w.clusters();
    if (w.observations() != N)
        throw std::invalid_argument("update_probabilities: shape mismatch");

    ProbabilityUpdate out;
    out.p.resize(c * N * n);
    out.modes = Matrix(c, n);

    std::vector<std::vector<double>> feature_columns(n);
    for (std::size_t k = 0; k < n; ++k) feature_columns[k] = fuzzified.column(k);

    std::vector<double> weights(N);
    for (std::size_t i = 0; i < c; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            weights[j] = w(j, i);
            total += weights[j];
        }
        if (!(total > 0.0))
            throw EngineError("empty cluster " + std::to_string(i));

        for (std::size_t k = 0; k < n; ++k) {
            const double mode = weighted_mode(feature_columns[k], weights);
            out.modes(i, k) = mode;
            const MembershipFunction mu(mode);
            for (std::size_t j = 0; j < N; ++j)
                out.p[(i * N + j) * n + k] = std::max(mu(fuzzified(j, k)), p_floor);
        }
    }
    return out;
}

double lmfcm_objective(const Matrix& dissim, const MembershipMatrix& w, double beta) {
    double q = 0.0;
    for (std::size_t i = 0; i < dissim.rows(); ++i)
        for (std::size_t j = 0; j < dissim.cols(); ++j)
            q += std::pow(w(j, i), beta) * dissim(i, j);
    return q;
}

NeighborMembership neighbor_reassign(std::span<const double> point,
                                     const Matrix& modes,
                                     std::span<const std::size_t> cluster_order) {
    const std::size_t c = modes.rows();
    if (c < 2)
        throw std::invalid_argument("neighbor_reassign: at least 2 clusters required");
    if (cluster_order.size() != c)
        throw std::invalid_argument("neighbor_reassign: cluster_order size mismatch");
    if (point.size() != modes.cols())
        throw std::invalid_argument("neighbor_reassign: dimension mismatch");

    std::vector<double> dist(c);
    for (std::size_t i = 0; i < c; ++i) dist[i] = euclidean(point, modes.row(i));

    std::size_t nearest = 0;
    for (std::size_t i = 1; i < c; ++i)
        if (dist[i] < dist[nearest]) nearest = i;

    NeighborMembership out;
    out.nearest = nearest;
    if (dist[nearest] == 0.0) {
        out.crisp = true;
        return out;
    }

    // The runner-up is whichever cluster is adjacent to the nearest one in
    // the ordinal cluster order (positions +-1); at the ends there is only
    // one candidate.
    std::size_t pos = 0;
    while (cluster_order[pos] != nearest) ++pos;
    std::size_t neighbor;
    if (pos == 0) {
        neighbor = cluster_order[1];
    } else if (pos == c - 1) {
        neighbor = cluster_order[c - 2];
    } else {
        const std::size_t lo = cluster_order[pos - 1];
        const std::size_t hi = cluster_order[pos + 1];
        neighbor = dist[lo] <= dist[hi] ? lo : hi;
    }

    const double inv_near = 1.0 / (dist[nearest] * dist[nearest]);
    const double inv_next = 1.0 / (dist[neighbor] * dist[neighbor]);
    out.neighbor = neighbor;
    out.nearest_weight = inv_near / (inv_near + inv_next);
    out.neighbor_weight = inv_next / (inv_near + inv_next);
    return out;
}

namespace {

struct Attempt {
    LmfcmState state;
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    bool converged = false;
};

Attempt run_attempt(const Matrix& fuzzified, const LmfcmConfig& cfg,
                    std::uint64_t stream_seed, const LmfcmObserver& observer) {
    const std::size_t N = fuzzified.rows();
    const std::size_t n = fuzzified.cols();
    const std::size_t c = cfg.clusters;

    Attempt a;
    a.state.n_clusters = c;
    a.state.n_observations = N;
    a.state.n_features = n;

    Rng rng(stream_seed);
    a.state.p.resize(c * N * n);
    for (double& p : a.state.p) p = rng.uniform(cfg.p_floor, 1.0);

    Matrix w_prev;
    bool have_prev = false;

    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        Matrix dissim(c, N);
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                double u = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    u -= std::log(a.state.p[(i * N + j) * n + k]);
                dissim(i, j) = u;
            }
        }

        MembershipMatrix w = lmfcm_memberships(dissim, cfg.beta);
        ProbabilityUpdate upd = update_probabilities(fuzzified, w, cfg.p_floor);

        a.objective_trace.push_back(lmfcm_objective(dissim, w, cfg.beta));
        a.iterations = iter;
        if (observer) observer(iter, w, upd.modes);

        double delta = 0.0;
        if (have_prev)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t i = 0; i < c; ++i)
                    delta = std::max(delta, std::abs(w(j, i) - w_prev(j, i)));

        a.state.dissimilarity = std::move(dissim);
        a.state.memberships = w;
        a.state.modes = std::move(upd.modes);
        a.state.p = std::move(upd.p);
        w_prev = w.matrix();

        if (have_prev && delta < cfg.epsilon) {
            a.converged = true;
            break;
        }
        have_prev = true;
    }

    a.state.cluster_order = order_by_mode_mean(a.state.modes);

    if (cfg.neighbor_rule && c >= 2) {
        Matrix sparse(N, c);
        for (std::size_t j = 0; j < N; ++j) {
            const NeighborMembership nm =
                neighbor_reassign(fuzzified.row(j), a.state.modes, a.state.cluster_order);
            sparse(j, nm.nearest) = nm.crisp ? 1.0 : nm.nearest_weight;
            if (!nm.crisp) sparse(j, nm.neighbor) = nm.neighbor_weight;
        }
        a.state.memberships = MembershipMatrix::unchecked(std::move(sparse));
    }

    return a;
}

}  // namespace

LmfcmResult lmfcm_run(const OrdinalView& ds, const LmfcmConfig& cfg,
                      const LmfcmObserver& observer) {
    validate(cfg, ds.observations());

    const auto tables = build_tables(ds);
    const Matrix fuzzified = fuzzify_dataset(ds, tables);

    std::string last_error;
    for (std::size_t attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        try {
            Attempt a = run_attempt(fuzzified, cfg, Rng::mix(cfg.seed, attempt), observer);
            LmfcmResult result;
            result.state = std::move(a.state);
            result.objective_trace = std::move(a.objective_trace);
            result.iterations = a.iterations;
            result.converged = a.converged;
            result.restarts = attempt;
            return result;
        } catch (const EngineError& e) {
            last_error = e.what();
        }
    }
    throw EngineError("no viable partition after " + std::to_string(kMaxRestarts) +
                      " restarts: " + last_error);
}

}  // namespace ordclust
