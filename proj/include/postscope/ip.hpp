#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace postscope {

using Ipv4 = std::uint32_t;  // host byte order

std::optional<Ipv4> parse_ipv4(std::string_view text);
std::string format_ipv4(Ipv4 addr);

// A CIDR prefix, e.g. "10.0.0.0/16". The base address is masked to the
// prefix length on construction.
struct Cidr {
    Ipv4 base = 0;
    int prefix_len = 0;

    static Cidr parse(std::string_view text);

    bool contains(Ipv4 addr) const {
        return prefix_len == 0 || (addr >> (32 - prefix_len)) == (base >> (32 - prefix_len));
    }
    // Number of addresses covered. Valid for prefix_len >= 1.
    std::uint64_t size() const { return std::uint64_t{1} << (32 - prefix_len); }
    // Offset of addr from the base; caller must ensure contains(addr).
    std::uint32_t index_of(Ipv4 addr) const { return addr - base; }

    std::string to_string() const;
    bool operator==(const Cidr&) const = default;
};

}  // namespace postscope
