#include "postscope/flow.hpp"

namespace postscope {

namespace {

constexpr bool is_icmp_request_type(std::uint8_t t) {
    switch (t) {
        case 0: case 3: case 4: case 5: case 11:
        case 12: case 14: case 16: case 18:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::string_view to_string(FlowClass c) {
    switch (c) {
        case FlowClass::Backscatter: return "backscatter";
        case FlowClass::IcmpRequest: return "icmp_request";
        case FlowClass::Other: return "other";
    }
    return "other";
}

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::Tcp: return "TCP";
        case Protocol::Udp: return "UDP";
        case Protocol::Icmp: return "ICMP";
        case Protocol::Other: return "OTHER";
    }
    return "OTHER";
}

FlowClass classify_flow(const FlowRecord& f) {
    if (f.protocol == Protocol::Tcp) {
        if (f.tcp_flags == tcp_flags::kSynAck || (f.tcp_flags & tcp_flags::kRst))
            return FlowClass::Backscatter;
        return FlowClass::Other;
    }
    if (f.protocol == Protocol::Icmp) {
        if (f.icmp_type && is_icmp_request_type(*f.icmp_type)) return FlowClass::IcmpRequest;
        return FlowClass::Other;
    }
    return FlowClass::Other;
}

}  // namespace postscope
