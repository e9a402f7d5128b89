#include "ordclust/ordinal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ordclust {

// ---------------------------------------------------------------------------
// RankScale
// ---------------------------------------------------------------------------

RankScale RankScale::from_levels(std::vector<std::string> levels) {
    if (levels.empty())
        throw std::invalid_argument("RankScale: at least one level required");
    std::unordered_set<std::string_view> seen;
    for (const auto& l : levels) {
        if (!seen.insert(l).second)
            throw std::invalid_argument("RankScale: duplicate level '" + l + "'");
    }
    return RankScale{std::move(levels)};
}

RankScale RankScale::numeric(std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("RankScale: at least one level required");
    std::vector<std::string> levels;
    levels.reserve(m);
    for (std::size_t l = 1; l <= m; ++l) levels.push_back(std::to_string(l));
    return RankScale{std::move(levels)};
}

std::optional<std::size_t> RankScale::rank_of(std::string_view label) const {
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] == label) return i + 1;
    return std::nullopt;
}

const std::string& RankScale::label_of(std::size_t rank) const {
    if (rank < 1 || rank > levels.size())
        throw std::out_of_range("RankScale: rank " + std::to_string(rank) +
                                " outside 1.." + std::to_string(levels.size()));
    return levels[rank - 1];
}

// ---------------------------------------------------------------------------
// OrdinalDataset
// ---------------------------------------------------------------------------

OrdinalDataset OrdinalDataset::create(std::vector<RankScale> scales,
                                      std::vector<int> values,
                                      std::vector<int> labels) {
    OrdinalDataset ds{std::move(scales), std::move(values), std::move(labels)};
    auto violations = validate_dataset(ds);
    if (!violations.empty())
        throw DataError("invalid dataset: " + violations.front().message);
    return ds;
}

std::vector<Violation> validate_dataset(const OrdinalDataset& ds) {
    std::vector<Violation> out;
    const std::size_t n = ds.scales.size();
    if (n == 0) {
        out.push_back({"no features", std::nullopt, std::nullopt});
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto& levels = ds.scales[k].levels;
        if (levels.empty())
            out.push_back({"scale has no levels", std::nullopt, k});
        std::unordered_set<std::string_view> seen;
        for (const auto& l : levels)
            if (!seen.insert(l).second) {
                out.push_back({"scale has duplicate level '" + l + "'",
                               std::nullopt, k});
                break;
            }
    }
    if (ds.values.size() % n != 0) {
        out.push_back({"value grid is not rectangular", std::nullopt, std::nullopt});
        return out;
    }
    const std::size_t N = ds.values.size() / n;
    if (N == 0)
        out.push_back({"no observations", std::nullopt, std::nullopt});
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const int r = ds.values[j * n + k];
            const int m = static_cast<int>(ds.scales[k].size());
            if (r < 1 || r > m)
                out.push_back({"rank " + std::to_string(r) + " outside 1.." +
                                   std::to_string(m),
                               j, k});
        }
    }
    if (!ds.labels.empty()) {
        if (ds.labels.size() != N)
            out.push_back({"labels length " + std::to_string(ds.labels.size()) +
                               " does not match " + std::to_string(N) +
                               " observations",
                           std::nullopt, std::nullopt});
        for (std::size_t j = 0; j < ds.labels.size(); ++j)
            if (ds.labels[j] < 0) {
                out.push_back({"negative class label", j, std::nullopt});
                break;
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// MembershipMatrix
// ---------------------------------------------------------------------------

MembershipMatrix::MembershipMatrix(Matrix w) : w_(std::move(w)) {
    for (std::size_t j = 0; j < w_.rows(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < w_.cols(); ++i) {
            const double v = w_(j, i);
            if (!(v >= 0.0) || v > 1.0 + kRowSumTolerance)
                throw DataError("membership out of [0,1] at observation " +
                                std::to_string(j) + ", cluster " + std::to_string(i));
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance)
            throw DataError("membership row " + std::to_string(j) +
                            " sums to " + std::to_string(sum));
    }
}

MembershipMatrix MembershipMatrix::unchecked(Matrix w) {
    MembershipMatrix m;
    m.w_ = std::move(w);
    return m;
}

std::vector<Violation> validate_memberships(const MembershipMatrix& w) {
    std::vector<Violation> out;
    const auto& m = w.matrix();
    for (std::size_t j = 0; j < m.rows(); ++j) {
        double sum = 0.0;
        bool bad_entry = false;
        for (std::size_t i = 0; i < m.cols(); ++i) {
            if (!(m(j, i) >= 0.0)) bad_entry = true;
            sum += m(j, i);
        }
        if (bad_entry)
            out.push_back({"negative membership", j, std::nullopt});
        if (std::abs(sum - 1.0) > MembershipMatrix::kRowSumTolerance)
            out.push_back({"row does not sum to 1", j, std::nullopt});
    }
    for (std::size_t i = 0; i < m.cols(); ++i) {
        double col = 0.0;
        for (std::size_t j = 0; j < m.rows(); ++j) col += m(j, i);
        if (!(col > 0.0))
            out.push_back({"cluster " + std::to_string(i) + " carries no membership",
                           std::nullopt, i});
    }
    return out;
}

std::vector<std::size_t> hard_assignment(const MembershipMatrix& w) {
    std::vector<std::size_t> out(w.observations());
    for (std::size_t j = 0; j < w.observations(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < w.clusters(); ++i)
            if (w(j, i) > w(j, best)) best = i;
        out[j] = best;
    }
    return out;
}

}  // namespace ordclust
