#ifndef ORDCLUST_IO_HPP
#define ORDCLUST_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordclust/matrix.hpp"
#include "ordclust/ordinal.hpp"

namespace ordclust {

// Result-file schema identifier embedded in every JSON artifact.
inline constexpr std::string_view kSchemaVersion = "ordclust-result/1";

struct NamedDataset {
    OrdinalDataset dataset;
    std::vector<std::string> feature_names;
};

struct NumericCsv {
    Matrix values;
    std::vector<std::string> feature_names;
    std::vector<int> labels;  // empty when no label column
};

// Ordered feature-name -> scale associations from a scales file. One feature
// per line: "name: level1 < level2 < ...". Blank lines and lines starting
// with '#' are skipped.
using ScaleMap = std::vector<std::pair<std::string, RankScale>>;

ScaleMap parse_scales_text(std::string_view text);
ScaleMap parse_scales_file(const std::filesystem::path& path);

// Loads an ordinal CSV (comma-separated, UTF-8, header row; optional final
// column named "label"). Cells of a feature with a scale entry are matched
// against its levels; other cells must be integer ranks >= 1, and the
// feature's scale becomes numeric with m = the largest rank seen. Label
// strings are mapped to dense class ids in order of first appearance.
// Throws DataError naming the data row and column on any bad cell.
NamedDataset load_ordinal_csv(const std::filesystem::path& path,
                              const ScaleMap& scales);

// Loads a numeric CSV (same shape rules); every non-label cell must parse as
// a real number.
NumericCsv load_numeric_csv(const std::filesystem::path& path);

// Reads back the membership matrix stored in a cluster-result JSON file.
Matrix read_memberships_json(const std::filesystem::path& path);

// Shortest round-trip decimal form of a double (used by the CSV writers).
std::string format_double(double v);

}  // namespace ordclust

#endif  // ORDCLUST_IO_HPP
