#include "crtmst/ssv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "crtmst/errors.hpp"

namespace crtmst {

namespace {

template <typename T>
T parse_field(std::string_view token, std::size_t line_no) {
    T value{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("non-integer token '" + std::string(token) + "'", line_no);
    }
    return value;
}

Edge parse_line(std::string_view line, std::size_t line_no) {
    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
        const std::size_t sp = line.find(' ', start);
        if (count == 3) {
            throw ParseError("expected 3 fields", line_no);
        }
        fields[count++] = line.substr(start, sp == std::string_view::npos ? sp : sp - start);
        if (sp == std::string_view::npos) {
            break;
        }
        start = sp + 1;
    }
    if (count != 3) {
        throw ParseError("expected 3 fields", line_no);
    }
    const auto u = parse_field<Vertex>(fields[0], line_no);
    const auto v = parse_field<Vertex>(fields[1], line_no);
    const auto w = parse_field<Weight>(fields[2], line_no);
    if (w < 1) {
        throw ParseError("weight must be >= 1", line_no);
    }
    return {u, v, w};
}

}  // namespace

Graph read_ssv(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    Vertex max_id = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) {
            break;
        }
        const Edge e = parse_line(line, line_no);
        max_id = std::max({max_id, e.u, e.v});
        edges.push_back(e);
    }
    if (edges.empty()) {
        throw ParseError("graph file has no edges");
    }
    GraphBuilder builder(std::size_t{max_id} + 1);
    builder.reserve(edges.size());
    for (const Edge& e : edges) {
        builder.add_edge(e.u, e.v, e.weight);
    }
    return builder.freeze();
}

Graph load_ssv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    return read_ssv(in);
}

void write_ssv(const Graph& g, std::ostream& out) {
    std::string buf;
    char field[16];
    for (const Edge& e : g.edge_list()) {
        for (std::uint32_t x : {e.u, e.v, e.weight}) {
            const auto res = std::to_chars(field, field + sizeof field, x);
            buf.append(field, res.ptr);
            buf.push_back(' ');
        }
        buf.back() = '\n';
        if (buf.size() > (1u << 16)) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
}

void save_ssv(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    write_ssv(g, out);
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

}  // namespace crtmst
