#ifndef ORDCLUST_ORDINAL_HPP
#define ORDCLUST_ORDINAL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordclust/errors.hpp"
#include "ordclust/matrix.hpp"

namespace ordclust {

// ---------------------------------------------------------------------------
// Rank scales
// ---------------------------------------------------------------------------

// An ordered list of category labels. The rank of a label is its 1-based
// position, so rank 1 is the smallest category and rank m the largest.
struct RankScale {
    std::vector<std::string> levels;

    // Validating constructor: labels must be unique and nonempty.
    static RankScale from_levels(std::vector<std::string> levels);

    // Scale with levels "1".."m", used for rank-coded numeric columns.
    static RankScale numeric(std::size_t m);

    std::size_t size() const { return levels.size(); }

    // 1-based rank of a label, or nullopt when the label is not a level.
    std::optional<std::size_t> rank_of(std::string_view label) const;

    // Label of a 1-based rank; throws std::out_of_range for bad ranks.
    const std::string& label_of(std::size_t rank) const;
};

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

// N observations over n ordinal features. values is row-major N x n holding
// 1-based ranks; labels, when present, carry ground-truth class indices used
// only by evaluation code (engines receive an OrdinalView, which has no
// labels at all).
struct OrdinalDataset {
    std::vector<RankScale> scales;
    std::vector<int> values;
    std::vector<int> labels;

    std::size_t features() const { return scales.size(); }
    std::size_t observations() const {
        return scales.empty() ? 0 : values.size() / scales.size();
    }
    bool has_labels() const { return !labels.empty(); }

    int rank(std::size_t obs, std::size_t feat) const {
        return values[obs * scales.size() + feat];
    }

    // Validating constructor; throws DataError listing the first violation.
    static OrdinalDataset create(std::vector<RankScale> scales,
                                 std::vector<int> values,
                                 std::vector<int> labels = {});
};

// Label-free view of a dataset: what clustering engines are allowed to see.
struct OrdinalView {
    std::span<const RankScale> scales;
    std::span<const int> values;

    OrdinalView(const OrdinalDataset& ds) : scales(ds.scales), values(ds.values) {}
    OrdinalView(std::span<const RankScale> s, std::span<const int> v)
        : scales(s), values(v) {}

    std::size_t features() const { return scales.size(); }
    std::size_t observations() const {
        return scales.empty() ? 0 : values.size() / scales.size();
    }
    int rank(std::size_t obs, std::size_t feat) const {
        return values[obs * scales.size() + feat];
    }
};

// One broken invariant, with the observation/feature it was found at when
// that is meaningful.
struct Violation {
    std::string message;
    std::optional<std::size_t> observation;
    std::optional<std::size_t> feature;
};

// Empty result iff all OrdinalDataset invariants hold.
std::vector<Violation> validate_dataset(const OrdinalDataset& ds);

// ---------------------------------------------------------------------------
// Membership matrices
// ---------------------------------------------------------------------------

// N x c matrix of membership levels. Construction enforces the row
// constraints (entries in [0,1], rows summing to 1 within kRowSumTolerance).
// Column occupancy (every cluster carrying some membership) is a property of
// specific pipeline stages, not of the type: the terminal two-nearest-cluster
// reassignment can legally leave a cluster empty, so engines check it where
// the math requires it (see validate_memberships).
class MembershipMatrix {
public:
    static constexpr double kRowSumTolerance = 1e-9;

    MembershipMatrix() = default;

    // Validating; throws DataError on a row-constraint violation.
    explicit MembershipMatrix(Matrix w);

    // For engine internals that maintain the invariants themselves.
    static MembershipMatrix unchecked(Matrix w);

    std::size_t observations() const { return w_.rows(); }
    std::size_t clusters() const { return w_.cols(); }

    double operator()(std::size_t obs, std::size_t cluster) const {
        return w_(obs, cluster);
    }

    const Matrix& matrix() const { return w_; }

    friend bool operator==(const MembershipMatrix& a, const MembershipMatrix& b) {
        return a.w_ == b.w_;
    }

private:
    Matrix w_;
};

// Full membership-constraint check, including column occupancy.
std::vector<Violation> validate_memberships(const MembershipMatrix& w);

// Defuzzification: per-row argmax with ties broken toward the smallest
// cluster index.
std::vector<std::size_t> hard_assignment(const MembershipMatrix& w);

}  // namespace ordclust

#endif  // ORDCLUST_ORDINAL_HPP
