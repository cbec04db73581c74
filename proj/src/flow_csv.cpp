#include "postscope/flow_csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "postscope/error.hpp"
#include "postscope/parallel.hpp"

namespace postscope {

namespace {

constexpr std::string_view kHeader =
    "timestamp,src_ip,dst_ip,src_port,dst_port,protocol,ttl,tcp_flags,ip_length,icmp_type";

// Splits a line into exactly n comma-separated fields; returns false if the
// field count is off.
bool split_fields(std::string_view line, std::span<std::string_view> out) {
    std::size_t start = 0;
    std::size_t field = 0;
    while (field < out.size()) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out[field++] = line.substr(start);
            break;
        }
        out[field++] = line.substr(start, comma - start);
        start = comma + 1;
    }
    if (field == out.size() - 1 && !line.empty() && line.back() == ',') {
        // trailing empty field after the final comma
        out[field++] = {};
    }
    return field == out.size() && line.find(',', start) == std::string_view::npos;
}

template <typename T>
bool parse_uint(std::string_view s, T& out, std::uint64_t max) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v > max) return false;
    out = static_cast<T>(v);
    return true;
}

FlowRecord parse_line(std::string_view line, std::size_t line_no, const Cidr& telescope) {
    std::array<std::string_view, 10> f;
    // Tolerate a missing trailing icmp_type field entirely (9 fields).
    std::string owned;
    if (!split_fields(line, f)) {
        std::array<std::string_view, 9> nine;
        if (split_fields(line, nine)) {
            for (std::size_t i = 0; i < 9; ++i) f[i] = nine[i];
            f[9] = {};
        } else {
            throw ParseError(line_no, "expected 10 comma-separated fields");
        }
    }

    FlowRecord rec;
    std::int64_t ts = 0;
    {
        auto s = f[0];
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), ts);
        if (ec != std::errc{} || p != s.data() + s.size() || ts < 0)
            throw ParseError(line_no, "bad timestamp '" + std::string(s) + "'");
    }
    rec.timestamp = ts;

    auto src = parse_ipv4(f[1]);
    if (!src) throw ParseError(line_no, "bad src_ip '" + std::string(f[1]) + "'");
    rec.src_ip = *src;
    auto dst = parse_ipv4(f[2]);
    if (!dst) throw ParseError(line_no, "bad dst_ip '" + std::string(f[2]) + "'");
    rec.dst_ip = *dst;

    if (!parse_uint(f[3], rec.src_port, 65535))
        throw ParseError(line_no, "bad src_port '" + std::string(f[3]) + "'");
    if (!parse_uint(f[4], rec.dst_port, 65535))
        throw ParseError(line_no, "bad dst_port '" + std::string(f[4]) + "'");

    if (f[5] == "TCP") {
        rec.protocol = Protocol::Tcp;
    } else if (f[5] == "UDP") {
        rec.protocol = Protocol::Udp;
    } else if (f[5] == "ICMP") {
        rec.protocol = Protocol::Icmp;
    } else {
        rec.protocol = Protocol::Other;
        if (!parse_uint(f[5], rec.protocol_code, 255))
            throw ParseError(line_no, "bad protocol '" + std::string(f[5]) + "'");
    }

    if (!parse_uint(f[6], rec.ttl, 255))
        throw ParseError(line_no, "bad ttl '" + std::string(f[6]) + "'");

    if (rec.protocol == Protocol::Tcp) {
        if (!parse_uint(f[7], rec.tcp_flags, 255))
            throw ParseError(line_no, "bad tcp_flags '" + std::string(f[7]) + "'");
    } else if (!f[7].empty()) {
        std::uint8_t flags = 0;
        if (!parse_uint(f[7], flags, 255) || flags != 0)
            throw ParseError(line_no, "nonzero tcp_flags on non-TCP flow");
    }

    if (!parse_uint(f[8], rec.ip_length, 0xffffffffull))
        throw ParseError(line_no, "bad ip_length '" + std::string(f[8]) + "'");

    if (rec.protocol == Protocol::Icmp) {
        std::uint8_t t = 0;
        if (!parse_uint(f[9], t, 255))
            throw ParseError(line_no, "bad icmp_type '" + std::string(f[9]) + "'");
        rec.icmp_type = t;
    } else if (!f[9].empty()) {
        throw ParseError(line_no, "icmp_type present on non-ICMP flow");
    }

    if (!telescope.contains(rec.dst_ip))
        throw Error("destination " + format_ipv4(rec.dst_ip) + " outside telescope " +
                    telescope.to_string() + " at line " + std::to_string(line_no));
    return rec;
}

bool is_header(std::string_view line) {
    return line.rfind("timestamp,", 0) == 0;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

std::vector<FlowRecord> parse_flows(std::istream& input, const Cidr& telescope) {
    std::vector<FlowRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        auto view = strip_cr(line);
        if (view.empty()) continue;
        if (line_no == 1 && is_header(view)) continue;
        out.push_back(parse_line(view, line_no, telescope));
    }
    return out;
}

std::vector<FlowRecord> parse_flows(std::string_view text, const Cidr& telescope) {
    return parse_flows(text, telescope, 1);
}

std::vector<FlowRecord> parse_flows(std::string_view text, const Cidr& telescope,
                                    unsigned threads) {
    // Collect line extents first so chunks can be parsed independently and
    // reassembled in file order.
    struct Line {
        std::size_t begin, end, no;
    };
    std::vector<Line> lines;
    lines.reserve(text.size() / 32 + 1);
    std::size_t pos = 0, no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        ++no;
        if (end > pos) lines.push_back({pos, end, no});
        pos = end + 1;
    }
    if (!lines.empty()) {
        auto first = strip_cr(text.substr(lines[0].begin, lines[0].end - lines[0].begin));
        if (lines[0].no == 1 && is_header(first)) lines.erase(lines.begin());
    }

    std::vector<FlowRecord> out(lines.size());
    parallel_for(lines.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto view = strip_cr(text.substr(lines[i].begin, lines[i].end - lines[i].begin));
            out[i] = parse_line(view, lines[i].no, telescope);
        }
    });
    return out;
}

std::vector<FlowRecord> parse_flows_file(const std::string& path, const Cidr& telescope,
                                         unsigned threads) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = std::move(buf).str();
    return parse_flows(std::string_view(text), telescope, threads);
}

std::string format_flow_line(const FlowRecord& f) {
    std::string line;
    line.reserve(64);
    line += std::to_string(f.timestamp);
    line += ',';
    line += format_ipv4(f.src_ip);
    line += ',';
    line += format_ipv4(f.dst_ip);
    line += ',';
    line += std::to_string(f.src_port);
    line += ',';
    line += std::to_string(f.dst_port);
    line += ',';
    if (f.protocol == Protocol::Other)
        line += std::to_string(f.protocol_code);
    else
        line += to_string(f.protocol);
    line += ',';
    line += std::to_string(f.ttl);
    line += ',';
    if (f.protocol == Protocol::Tcp) line += std::to_string(f.tcp_flags);
    line += ',';
    line += std::to_string(f.ip_length);
    line += ',';
    if (f.icmp_type) line += std::to_string(*f.icmp_type);
    return line;
}

void write_flow_csv(std::ostream& out, const std::vector<FlowRecord>& flows, bool header) {
    if (header) out << kHeader << '\n';
    for (const auto& f : flows) out << format_flow_line(f) << '\n';
}

}  // namespace postscope
