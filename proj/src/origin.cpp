#include "postscope/origin.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "postscope/error.hpp"

namespace postscope {

const std::string OriginMap::kOthers = "others";

OriginMap::OriginMap(std::vector<std::pair<Cidr, std::string>> entries)
    : entries_(std::move(entries)) {
    std::set<std::pair<Ipv4, int>> seen;
    for (const auto& [cidr, code] : entries_) {
        if (!seen.insert({cidr.base, cidr.prefix_len}).second)
            throw std::invalid_argument("duplicate origin prefix " + cidr.to_string());
        if (code.empty()) throw std::invalid_argument("empty origin code");
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const auto& a, const auto& b) {
                         return a.first.prefix_len > b.first.prefix_len;
                     });
}

OriginMap OriginMap::read_csv(std::istream& in) {
    std::vector<std::pair<Cidr, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("prefix,", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(line_no, "expected 'prefix,code'");
        entries.emplace_back(Cidr::parse(std::string_view(line).substr(0, comma)),
                             line.substr(comma + 1));
    }
    return OriginMap(std::move(entries));
}

void OriginMap::write_csv(std::ostream& out) const {
    out << "prefix,code\n";
    for (const auto& [cidr, code] : entries_) out << cidr.to_string() << ',' << code << '\n';
}

const std::string& OriginMap::lookup(Ipv4 addr) const {
    for (const auto& [cidr, code] : entries_)
        if (cidr.contains(addr)) return code;
    return kOthers;
}

const OriginSeries* OriginAggregate::find(const std::string& code) const {
    for (const auto& o : origins)
        if (o.code == code) return &o;
    return nullptr;
}

const OriginSeries& OriginAggregate::dominant() const {
    if (origins.empty()) throw Error("no origins aggregated");
    return *std::max_element(origins.begin(), origins.end(),
                             [](const auto& a, const auto& b) { return a.share < b.share; });
}

OriginAggregate aggregate_by_origin(const AttackSet& set, const OriginMap& map, Resolution r) {
    const std::int64_t delta = interval_seconds(r);
    const auto T =
        static_cast<Eigen::Index>((set.window_seconds + delta - 1) / delta);

    OriginAggregate agg;
    agg.resolution = r;
    agg.T = T;

    std::unordered_map<Ipv4, const std::string*> source_code;
    // per code: per-interval source sets, then counts
    struct PerCode {
        std::vector<std::unordered_set<Ipv4>> interval_sources;
        std::unordered_set<Ipv4> window_sources;
    };
    std::unordered_map<std::string, PerCode> by_code;

    for (const auto& f : set.flows) {
        auto it = source_code.find(f.src_ip);
        if (it == source_code.end())
            it = source_code.emplace(f.src_ip, &map.lookup(f.src_ip)).first;
        auto& pc = by_code[*it->second];
        if (pc.interval_sources.empty()) pc.interval_sources.resize(T);
        pc.interval_sources[static_cast<std::size_t>(f.timestamp / delta)].insert(f.src_ip);
        pc.window_sources.insert(f.src_ip);
    }

    agg.total_distinct_attackers = static_cast<double>(source_code.size());
    for (auto& [code, pc] : by_code) {
        OriginSeries s;
        s.code = code;
        s.attackers.resize(T);
        for (Eigen::Index i = 0; i < T; ++i)
            s.attackers[i] = static_cast<double>(pc.interval_sources[i].size());
        s.distinct_attackers = static_cast<double>(pc.window_sources.size());
        s.share = agg.total_distinct_attackers > 0
                      ? s.distinct_attackers / agg.total_distinct_attackers
                      : 0.0;
        agg.origins.push_back(std::move(s));
    }
    std::sort(agg.origins.begin(), agg.origins.end(), [](const auto& a, const auto& b) {
        return a.share != b.share ? a.share > b.share : a.code < b.code;
    });
    return agg;
}

void write_share_csv(std::ostream& out, const OriginAggregate& agg) {
    out << "code,attackers,share\n";
    char buf[32];
    for (const auto& o : agg.origins) {
        std::snprintf(buf, sizeof buf, "%.6f", o.share);
        out << o.code << ',' << static_cast<std::int64_t>(o.distinct_attackers) << ','
            << buf << '\n';
    }
}

}  // namespace postscope
