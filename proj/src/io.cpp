#include "ordclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include <json.hpp>

#include "ordclust/errors.hpp"

namespace ordclust {

namespace {

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv_cells(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(split(line, ','));
    }
    if (rows.empty()) throw DataError("empty file: " + path.string());
    return rows;
}

bool parse_int(const std::string& s, int& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

struct Header {
    std::vector<std::string> feature_names;
    bool has_label = false;
};

Header parse_header(const std::vector<std::string>& cells) {
    Header h;
    h.feature_names = cells;
    if (!cells.empty() && cells.back() == "label") {
        h.has_label = true;
        h.feature_names.pop_back();
    }
    if (h.feature_names.empty()) throw DataError("header defines no features");
    return h;
}

void check_width(const std::vector<std::string>& row, std::size_t expected,
                 std::size_t data_row) {
    if (row.size() != expected)
        throw DataError("row " + std::to_string(data_row) + " has " +
                        std::to_string(row.size()) + " cells, expected " +
                        std::to_string(expected));
}

int label_id(const std::string& text, std::vector<std::string>& seen) {
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] == text) return static_cast<int>(i);
    seen.push_back(text);
    return static_cast<int>(seen.size()) - 1;
}

}  // namespace

ScaleMap parse_scales_text(std::string_view text) {
    ScaleMap out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos)
            throw DataError("scales line " + std::to_string(line_no) +
                            ": expected 'name: level1 < level2 < ...'");
        const std::string name = trim(t.substr(0, colon));
        if (name.empty())
            throw DataError("scales line " + std::to_string(line_no) + ": empty feature name");
        for (const auto& [existing, scale] : out)
            if (existing == name)
                throw DataError("scales line " + std::to_string(line_no) +
                                ": duplicate feature '" + name + "'");
        std::vector<std::string> levels = split(t.substr(colon + 1), '<');
        for (const auto& level : levels)
            if (level.empty())
                throw DataError("scales line " + std::to_string(line_no) + ": empty level");
        try {
            out.emplace_back(name, RankScale::from_levels(std::move(levels)));
        } catch (const std::invalid_argument& e) {
            throw DataError("scales line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

ScaleMap parse_scales_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open scales file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scales_text(buffer.str());
}

NamedDataset load_ordinal_csv(const std::filesystem::path& path, const ScaleMap& scales) {
    const auto rows = read_csv_cells(path);
    const Header header = parse_header(rows.front());
    const std::size_t n = header.feature_names.size();

    std::vector<const RankScale*> feature_scales(n, nullptr);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& [name, scale] : scales)
            if (name == header.feature_names[k]) feature_scales[k] = &scale;

    const std::size_t N = rows.size() - 1;
    if (N == 0) throw DataError("no data rows in " + path.string());

    std::vector<int> values(N * n);
    std::vector<int> max_rank(n, 1);
    std::vector<int> labels;
    std::vector<std::string> label_names;

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const std::size_t data_row = r;  // 1-based over data rows
        check_width(rows[r], n + (header.has_label ? 1 : 0), data_row);
        for (std::size_t k = 0; k < n; ++k) {
            const std::string& cell = rows[r][k];
            int rank = 0;
            if (feature_scales[k] != nullptr) {
                const auto found = feature_scales[k]->rank_of(cell);
                if (!found)
                    throw DataError("row " + std::to_string(data_row) + ", column " +
                                    header.feature_names[k] + ": unknown category '" +
                                    cell + "'");
                rank = static_cast<int>(*found);
            } else {
                if (!parse_int(cell, rank) || rank < 1)
                    throw DataError("row " + std::to_string(data_row) + ", column " +
                                    header.feature_names[k] + ": '" + cell +
                                    "' is not a rank (integer >= 1)");
            }
            values[(r - 1) * n + k] = rank;
            max_rank[k] = std::max(max_rank[k], rank);
        }
        if (header.has_label)
            labels.push_back(label_id(rows[r].back(), label_names));
    }

    std::vector<RankScale> resolved;
    resolved.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (feature_scales[k] != nullptr)
            resolved.push_back(*feature_scales[k]);
        else
            resolved.push_back(RankScale::numeric(static_cast<std::size_t>(max_rank[k])));
    }

    NamedDataset out;
    out.dataset = OrdinalDataset::create(std::move(resolved), std::move(values),
                                         std::move(labels));
    out.feature_names = header.feature_names;
    return out;
}

NumericCsv load_numeric_csv(const std::filesystem::path& path) {
    const auto rows = read_csv_cells(path);
    const Header header = parse_header(rows.front());
    const std::size_t n = header.feature_names.size();
    const std::size_t N = rows.size() - 1;
    if (N == 0) throw DataError("no data rows in " + path.string());

    NumericCsv out;
    out.feature_names = header.feature_names;
    out.values = Matrix(N, n);
    std::vector<std::string> label_names;

    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], n + (header.has_label ? 1 : 0), r);
        for (std::size_t k = 0; k < n; ++k) {
            double v = 0.0;
            if (!parse_number(rows[r][k], v))
                throw DataError("row " + std::to_string(r) + ", column " +
                                header.feature_names[k] + ": '" + rows[r][k] +
                                "' is not a number");
            out.values(r - 1, k) = v;
        }
        if (header.has_label)
            out.labels.push_back(label_id(rows[r].back(), label_names));
    }
    return out;
}

Matrix read_memberships_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open results file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("cannot parse results file " + path.string() + ": " + e.what());
    }
    if (!doc.contains("result") || !doc["result"].contains("memberships"))
        throw DataError("results file has no memberships: " + path.string());
    const auto& rows = doc["result"]["memberships"];
    if (!rows.is_array() || rows.empty())
        throw DataError("malformed memberships in " + path.string());
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != m.cols())
            throw DataError("ragged memberships in " + path.string());
        for (std::size_t i = 0; i < m.cols(); ++i) m(j, i) = rows[j][i].get<double>();
    }
    return m;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "0";
    return std::string(buf, ptr);
}

}  // namespace ordclust
