#include "ordclust/fcm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ordclust/errors.hpp"
#include "ordclust/rng.hpp"

namespace ordclust {

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

Matrix random_row_stochastic(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix w(rows, cols);
    for (std::size_t j = 0; j < rows; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < cols; ++i) {
            w(j, i) = rng.uniform01();
            sum += w(j, i);
        }
        if (sum > 0.0) {
            for (std::size_t i = 0; i < cols; ++i) w(j, i) /= sum;
        } else {
            for (std::size_t i = 0; i < cols; ++i) w(j, i) = 1.0 / static_cast<double>(cols);
        }
    }
    return w;
}

}  // namespace

void validate(const FcmConfig& cfg, std::size_t n_obs) {
    if (cfg.clusters < 2)
        throw std::invalid_argument("fcm: at least 2 clusters required");
    if (cfg.clusters > n_obs)
        throw std::invalid_argument("fcm: more clusters than observations");
    if (!(cfg.beta > 1.0))
        throw std::invalid_argument("fcm: fuzzifier beta must exceed 1");
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("fcm: epsilon must be positive");
    if (cfg.max_iters == 0)
        throw std::invalid_argument("fcm: max_iters must be positive");
}

MembershipMatrix fcm_memberships(const Matrix& points, const Matrix& centroids,
                                 double beta) {
    if (points.cols() != centroids.cols())
        throw std::invalid_argument("fcm_memberships: dimension mismatch");
    if (!(beta > 1.0))
        throw std::invalid_argument("fcm_memberships: beta must exceed 1");

    const std::size_t N = points.rows();
    const std::size_t c = centroids.rows();
    const double expo = 2.0 / (beta - 1.0);

    Matrix w(N, c);
    std::vector<double> dist(c);
    for (std::size_t j = 0; j < N; ++j) {
        bool at_centroid = false;
        std::size_t hit = 0;
        for (std::size_t i = 0; i < c; ++i) {
            dist[i] = euclidean(points.row(j), centroids.row(i));
            if (!at_centroid && dist[i] == 0.0) {
                at_centroid = true;
                hit = i;
            }
        }
        if (at_centroid) {
            for (std::size_t i = 0; i < c; ++i) w(j, i) = 0.0;
            w(j, hit) = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < c; ++i) {
            double denom = 0.0;
            for (std::size_t l = 0; l < c; ++l)
                denom += std::pow(dist[i] / dist[l], expo);
            w(j, i) = 1.0 / denom;
        }
    }
    return MembershipMatrix::unchecked(std::move(w));
}

Matrix fcm_centroids(const Matrix& points, const MembershipMatrix& w, double beta) {
    if (points.rows() != w.observations())
        throw std::invalid_argument("fcm_centroids: shape mismatch");

    const std::size_t N = points.rows();
    const std::size_t n = points.cols();
    const std::size_t c = w.clusters();

    Matrix centroids(c, n);
    for (std::size_t i = 0; i < c; ++i) {
        double denom = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double wb = std::pow(w(j, i), beta);
            denom += wb;
            for (std::size_t k = 0; k < n; ++k)
                centroids(i, k) += wb * points(j, k);
        }
        if (!(denom > 0.0))
            throw EngineError("degenerate cluster " + std::to_string(i));
        for (std::size_t k = 0; k < n; ++k) centroids(i, k) /= denom;
    }
    return centroids;
}

double fcm_objective(const Matrix& points, const Matrix& centroids,
                     const MembershipMatrix& w, double beta) {
    double q = 0.0;
    for (std::size_t i = 0; i < centroids.rows(); ++i) {
        for (std::size_t j = 0; j < points.rows(); ++j) {
            const double d = euclidean(points.row(j), centroids.row(i));
            q += std::pow(w(j, i), beta) * d * d;
        }
    }
    return q;
}

FcmResult fcm_run(const Matrix& points, const FcmConfig& cfg,
                  const FcmObserver& observer) {
    validate(cfg, points.rows());

    Rng rng(cfg.seed);
    MembershipMatrix w =
        MembershipMatrix::unchecked(random_row_stochastic(points.rows(), cfg.clusters, rng));

    FcmResult result;
    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        Matrix centroids = fcm_centroids(points, w, cfg.beta);
        MembershipMatrix w_next = fcm_memberships(points, centroids, cfg.beta);

        result.objective_trace.push_back(
            fcm_objective(points, centroids, w_next, cfg.beta));
        result.iterations = iter;
        if (observer) observer(iter, w_next, centroids);

        double delta = 0.0;
        for (std::size_t j = 0; j < w.observations(); ++j)
            for (std::size_t i = 0; i < w.clusters(); ++i)
                delta = std::max(delta, std::abs(w_next(j, i) - w(j, i)));

        w = std::move(w_next);
        result.centroids = std::move(centroids);
        if (delta < cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.memberships = std::move(w);
    return result;
}

}  // namespace ordclust
