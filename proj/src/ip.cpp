#include "postscope/ip.hpp"

#include <charconv>

#include "postscope/error.hpp"

namespace postscope {

std::optional<Ipv4> parse_ipv4(std::string_view text) {
    Ipv4 value = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int octet = 0; octet < 4; ++octet) {
        unsigned part = 0;
        auto [next, ec] = std::from_chars(p, end, part);
        if (ec != std::errc{} || part > 255) return std::nullopt;
        value = (value << 8) | part;
        p = next;
        if (octet < 3) {
            if (p == end || *p != '.') return std::nullopt;
            ++p;
        }
    }
    if (p != end) return std::nullopt;
    return value;
}

std::string format_ipv4(Ipv4 addr) {
    std::string out;
    out.reserve(15);
    for (int shift = 24; shift >= 0; shift -= 8) {
        out += std::to_string((addr >> shift) & 0xff);
        if (shift > 0) out += '.';
    }
    return out;
}

Cidr Cidr::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw std::invalid_argument("CIDR missing '/': " + std::string(text));
    auto base = parse_ipv4(text.substr(0, slash));
    if (!base) throw std::invalid_argument("bad CIDR base address: " + std::string(text));
    int len = 0;
    auto rest = text.substr(slash + 1);
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), len);
    if (ec != std::errc{} || p != rest.data() + rest.size() || len < 0 || len > 32)
        throw std::invalid_argument("bad CIDR prefix length: " + std::string(text));
    Cidr c;
    c.prefix_len = len;
    c.base = len == 0 ? 0 : (*base >> (32 - len)) << (32 - len);
    return c;
}

std::string Cidr::to_string() const {
    return format_ipv4(base) + "/" + std::to_string(prefix_len);
}

}  // namespace postscope
