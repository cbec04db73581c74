#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "postscope/flow.hpp"
#include "postscope/ip.hpp"

namespace postscope {

enum class DatasetTag : std::uint8_t { D1, D2 };

// One attack: a TCP/UDP flow in the "other" class, keyed to the telescope
// address it hit.
struct AttackFlow {
    std::int64_t timestamp = 0;
    Ipv4 src_ip = 0;
    std::uint32_t dst_index = 0;  // dst_ip - telescope base
    Protocol protocol = Protocol::Tcp;
    std::uint16_t dst_port = 0;

    bool operator==(const AttackFlow&) const = default;
};

struct AttackSet {
    Cidr telescope;
    std::int64_t window_seconds = 0;  // flows live in [0, window_seconds)
    DatasetTag tag = DatasetTag::D1;
    std::vector<AttackFlow> flows;    // file order

    bool operator==(const AttackSet&) const = default;
};

// Keeps exactly the TCP/UDP flows whose class is Other. window_seconds is
// the analysis window; flows at or past it are rejected.
AttackSet extract_d1(std::span<const FlowRecord> flows, const Cidr& telescope,
                     std::int64_t window_seconds);

// Keeps exactly the flows whose source initiated at least min_flows flows
// over the whole window. min_flows == 0 is an argument error.
AttackSet extract_d2(const AttackSet& d1, std::uint32_t min_flows = 10);

// Deterministic merge of independently ingested partitions: concatenation in
// partition order. Partitions must share telescope, window and tag.
AttackSet merge_attack_sets(std::span<const AttackSet> parts);

// Writes the flow CSV; absent fields (src_port, ttl, ip_length) are zero and
// TCP flags are zero, so re-parsing and extract_d1 round-trips the set.
void write_attack_csv(std::ostream& out, const AttackSet& set, bool header = true);

AttackSet read_attack_csv(std::istream& in, const Cidr& telescope,
                          std::int64_t window_seconds, DatasetTag tag);

}  // namespace postscope
