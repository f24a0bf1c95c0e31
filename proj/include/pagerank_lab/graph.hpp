#ifndef PAGERANK_LAB_GRAPH_HPP
#define PAGERANK_LAB_GRAPH_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pagerank_lab {

/// Raised when a MatrixMarket stream is malformed. `line()` is the
/// 1-based line number the problem was found on.
class MtxParseError : public std::runtime_error {
public:
    MtxParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Directed edges as parsed, before deduplication. Vertex ids are
/// 0-based; duplicates may be present.
struct EdgeList {
    std::uint32_t vertex_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // (source, target)
};

/// Immutable directed graph in reverse-CSR (in-edge) layout, plus the
/// out-degrees and dangling-vertex list the rank update needs.
///
/// `in_offsets[v] .. in_offsets[v+1]` indexes the sources of v's
/// in-edges in `in_neighbors`, sorted ascending. Safe to share across
/// threads once built.
struct CsrGraph {
    std::uint32_t vertex_count = 0;
    std::vector<std::uint64_t> in_offsets;   // length N+1, non-decreasing
    std::vector<std::uint32_t> in_neighbors; // sources, concatenated per destination
    std::vector<std::uint32_t> out_degree;   // length N
    std::vector<std::uint32_t> dangling;     // out_degree == 0, ascending

    std::span<const std::uint32_t> in_edges(std::uint32_t v) const {
        return {in_neighbors.data() + in_offsets[v],
                in_neighbors.data() + in_offsets[v + 1]};
    }

    std::uint64_t edge_count() const { return in_neighbors.size(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline std::string lowered(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline bool parse_number(std::string_view tok, double& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

} // namespace detail

/// Parses a MatrixMarket coordinate stream into an EdgeList.
///
/// Accepted banner: "%%MatrixMarket matrix coordinate <field> <symmetry>"
/// with field pattern|real|integer and symmetry general|symmetric.
/// Entries are 1-based (row, col[, weight]); each yields the directed
/// edge row-1 -> col-1, and a symmetric banner additionally yields the
/// reverse of every off-diagonal entry. Weights are validated and
/// discarded. Comment lines (leading '%') and blank lines are skipped.
inline EdgeList parse_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw MtxParseError(1, "empty input, no banner");
    ++line_no;

    const auto banner = detail::split_fields(detail::trim(line));
    if (banner.size() != 5 || banner[0] != "%%MatrixMarket")
        throw MtxParseError(line_no, "malformed MatrixMarket banner");
    const std::string object = detail::lowered(banner[1]);
    const std::string format = detail::lowered(banner[2]);
    const std::string field = detail::lowered(banner[3]);
    const std::string symmetry = detail::lowered(banner[4]);
    if (object != "matrix")
        throw MtxParseError(line_no, "unsupported object '" + object + "' (want matrix)");
    if (format != "coordinate")
        throw MtxParseError(line_no, "unsupported format '" + format + "' (want coordinate)");
    if (field != "pattern" && field != "real" && field != "integer")
        throw MtxParseError(line_no, "unsupported field '" + field +
                                         "' (want pattern, real or integer)");
    if (symmetry != "general" && symmetry != "symmetric")
        throw MtxParseError(line_no, "unsupported symmetry '" + symmetry +
                                         "' (want general or symmetric)");
    const bool symmetric = symmetry == "symmetric";
    const bool has_weight = field != "pattern";

    // Size line: first non-comment, non-blank line after the banner.
    std::uint64_t rows = 0, cols = 0, entries = 0;
    for (;;) {
        if (!std::getline(in, line))
            throw MtxParseError(line_no + 1, "unexpected end of file before size line");
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '%') continue;
        const auto fields = detail::split_fields(body);
        if (fields.size() != 3 || !detail::parse_int(fields[0], rows) ||
            !detail::parse_int(fields[1], cols) || !detail::parse_int(fields[2], entries))
            throw MtxParseError(line_no, "size line must be three integers "
                                         "(rows cols entries)");
        break;
    }

    const std::uint64_t n = std::max(rows, cols);
    if (n == 0) throw MtxParseError(line_no, "graph has no vertices");
    if (n > UINT32_MAX) throw MtxParseError(line_no, "vertex count exceeds 2^32-1");

    EdgeList el;
    el.vertex_count = static_cast<std::uint32_t>(n);
    el.edges.reserve(symmetric ? 2 * entries : entries);

    std::uint64_t seen = 0;
    while (seen < entries) {
        if (!std::getline(in, line))
            throw MtxParseError(line_no + 1, "unexpected end of file: got " +
                                                 std::to_string(seen) + " of " +
                                                 std::to_string(entries) + " entries");
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '%') continue;

        const auto fields = detail::split_fields(body);
        const std::size_t expected = has_weight ? 3 : 2;
        if (fields.size() != expected)
            throw MtxParseError(line_no, "expected " + std::to_string(expected) +
                                             " fields, got " + std::to_string(fields.size()));
        std::uint64_t row = 0, col = 0;
        if (!detail::parse_int(fields[0], row) || !detail::parse_int(fields[1], col))
            throw MtxParseError(line_no, "entry indices must be integers");
        if (row < 1 || row > rows || col < 1 || col > cols)
            throw MtxParseError(line_no, "entry (" + std::to_string(row) + ", " +
                                             std::to_string(col) + ") out of range for " +
                                             std::to_string(rows) + " x " +
                                             std::to_string(cols));
        if (has_weight) {
            double weight = 0; // parsed for validation, then discarded
            if (!detail::parse_number(fields[2], weight))
                throw MtxParseError(line_no, "entry weight is not a number");
        }

        const auto src = static_cast<std::uint32_t>(row - 1);
        const auto dst = static_cast<std::uint32_t>(col - 1);
        el.edges.emplace_back(src, dst);
        if (symmetric && src != dst) el.edges.emplace_back(dst, src);
        ++seen;
    }

    return el;
}

/// Builds the reverse-CSR layout from an edge list: exact duplicate
/// edges are dropped, self-loops kept, and per-destination source
/// lists come out sorted ascending.
inline CsrGraph build_csr(EdgeList el) {
    const std::uint32_t n = el.vertex_count;

    // Sorting by (target, source) both dedups and puts edges in
    // reverse-CSR fill order.
    std::sort(el.edges.begin(), el.edges.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    el.edges.erase(std::unique(el.edges.begin(), el.edges.end()), el.edges.end());

    CsrGraph g;
    g.vertex_count = n;
    g.in_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    g.out_degree.assign(n, 0);

    for (const auto& [src, dst] : el.edges) {
        ++g.in_offsets[static_cast<std::size_t>(dst) + 1];
        ++g.out_degree[src];
    }
    for (std::size_t v = 0; v < n; ++v) g.in_offsets[v + 1] += g.in_offsets[v];

    g.in_neighbors.resize(el.edges.size());
    std::size_t next = 0;
    for (const auto& e : el.edges) g.in_neighbors[next++] = e.first;

    for (std::uint32_t v = 0; v < n; ++v)
        if (g.out_degree[v] == 0) g.dangling.push_back(v);

    return g;
}

/// Reads and parses one .mtx file; errors are reported with the file
/// named.
inline EdgeList load_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path.string());
    try {
        return parse_matrix_market(in);
    } catch (const MtxParseError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

inline CsrGraph load_csr_graph(const std::filesystem::path& path) {
    return build_csr(load_matrix_market(path));
}

} // namespace pagerank_lab

#endif
