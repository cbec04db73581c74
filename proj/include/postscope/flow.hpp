#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "postscope/ip.hpp"

namespace postscope {

enum class Protocol : std::uint8_t { Tcp, Udp, Icmp, Other };

namespace tcp_flags {
inline constexpr std::uint8_t kFin = 0x01;
inline constexpr std::uint8_t kSyn = 0x02;
inline constexpr std::uint8_t kRst = 0x04;
inline constexpr std::uint8_t kAck = 0x10;
inline constexpr std::uint8_t kSynAck = kSyn | kAck;
}  // namespace tcp_flags

// One reassembled flow as recorded by the telescope.
struct FlowRecord {
    std::int64_t timestamp = 0;  // seconds since window start
    Ipv4 src_ip = 0;
    Ipv4 dst_ip = 0;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    Protocol protocol = Protocol::Other;
    std::uint8_t protocol_code = 0;  // raw IP protocol number for Protocol::Other
    std::uint8_t ttl = 0;
    std::uint8_t tcp_flags = 0;               // zero unless protocol == Tcp
    std::optional<std::uint8_t> icmp_type;    // present only when protocol == Icmp
    std::uint32_t ip_length = 0;

    bool operator==(const FlowRecord&) const = default;
};

enum class FlowClass : std::uint8_t { Backscatter, IcmpRequest, Other };

std::string_view to_string(FlowClass c);
std::string_view to_string(Protocol p);

// Pure, total classification: TCP with flags exactly SYN+ACK or with RST set
// is backscatter; ICMP with type 0/3/4/5/11/12/14/16/18 is an ICMP request;
// everything else is "other".
FlowClass classify_flow(const FlowRecord& f);

}  // namespace postscope
