#include "postscope/attack_set.hpp"

#include <ostream>
#include <unordered_map>

#include "postscope/error.hpp"
#include "postscope/flow_csv.hpp"

namespace postscope {

AttackSet extract_d1(std::span<const FlowRecord> flows, const Cidr& telescope,
                     std::int64_t window_seconds) {
    if (window_seconds <= 0) throw std::invalid_argument("window_seconds must be positive");
    AttackSet set;
    set.telescope = telescope;
    set.window_seconds = window_seconds;
    set.tag = DatasetTag::D1;
    set.flows.reserve(flows.size());
    for (const auto& f : flows) {
        if (f.protocol != Protocol::Tcp && f.protocol != Protocol::Udp) continue;
        if (classify_flow(f) != FlowClass::Other) continue;
        if (f.timestamp >= window_seconds)
            throw Error("flow timestamp " + std::to_string(f.timestamp) +
                        " outside window [0, " + std::to_string(window_seconds) + ")");
        set.flows.push_back({f.timestamp, f.src_ip, telescope.index_of(f.dst_ip),
                             f.protocol, f.dst_port});
    }
    return set;
}

AttackSet extract_d2(const AttackSet& d1, std::uint32_t min_flows) {
    if (min_flows == 0) throw std::invalid_argument("min_flows must be at least 1");
    std::unordered_map<Ipv4, std::uint32_t> counts;
    counts.reserve(d1.flows.size());
    for (const auto& f : d1.flows) ++counts[f.src_ip];

    AttackSet out;
    out.telescope = d1.telescope;
    out.window_seconds = d1.window_seconds;
    out.tag = DatasetTag::D2;
    out.flows.reserve(d1.flows.size());
    for (const auto& f : d1.flows)
        if (counts[f.src_ip] >= min_flows) out.flows.push_back(f);
    return out;
}

AttackSet merge_attack_sets(std::span<const AttackSet> parts) {
    if (parts.empty()) throw std::invalid_argument("no partitions to merge");
    AttackSet out;
    out.telescope = parts.front().telescope;
    out.window_seconds = parts.front().window_seconds;
    out.tag = parts.front().tag;
    std::size_t total = 0;
    for (const auto& p : parts) {
        if (p.telescope != out.telescope || p.window_seconds != out.window_seconds ||
            p.tag != out.tag)
            throw std::invalid_argument("partition metadata mismatch in merge");
        total += p.flows.size();
    }
    out.flows.reserve(total);
    for (const auto& p : parts)
        out.flows.insert(out.flows.end(), p.flows.begin(), p.flows.end());
    return out;
}

void write_attack_csv(std::ostream& out, const AttackSet& set, bool header) {
    std::vector<FlowRecord> recs;
    recs.reserve(set.flows.size());
    for (const auto& f : set.flows) {
        FlowRecord r;
        r.timestamp = f.timestamp;
        r.src_ip = f.src_ip;
        r.dst_ip = set.telescope.base + f.dst_index;
        r.dst_port = f.dst_port;
        r.protocol = f.protocol;
        recs.push_back(r);
    }
    write_flow_csv(out, recs, header);
}

AttackSet read_attack_csv(std::istream& in, const Cidr& telescope,
                          std::int64_t window_seconds, DatasetTag tag) {
    auto flows = parse_flows(in, telescope);
    AttackSet set = extract_d1(flows, telescope, window_seconds);
    if (set.flows.size() != flows.size())
        throw Error("attack CSV contains non-attack flows");
    set.tag = tag;
    return set;
}

}  // namespace postscope
