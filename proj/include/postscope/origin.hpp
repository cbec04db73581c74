#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "postscope/attack_set.hpp"
#include "postscope/posture.hpp"

namespace postscope {

// Offline prefix -> origin-code map (longest prefix wins); sources matching
// no entry fall into "others".
class OriginMap {
public:
    OriginMap() = default;
    explicit OriginMap(std::vector<std::pair<Cidr, std::string>> entries);

    static OriginMap read_csv(std::istream& in);
    void write_csv(std::ostream& out) const;

    const std::string& lookup(Ipv4 addr) const;
    std::size_t size() const { return entries_.size(); }

    static const std::string kOthers;

private:
    // sorted by descending prefix length; first containing entry wins
    std::vector<std::pair<Cidr, std::string>> entries_;
};

struct OriginSeries {
    std::string code;
    Eigen::VectorXd attackers;   // distinct attackers per interval
    double distinct_attackers = 0;  // whole-window distinct sources
    double share = 0;               // fraction of all distinct sources
};

struct OriginAggregate {
    Resolution resolution = Resolution::Hour;
    Eigen::Index T = 0;
    double total_distinct_attackers = 0;
    std::vector<OriginSeries> origins;  // descending share, "others" included when nonempty

    const OriginSeries* find(const std::string& code) const;
    const OriginSeries& dominant() const;  // argmax share
};

OriginAggregate aggregate_by_origin(const AttackSet& set, const OriginMap& map, Resolution r);

// CSV export: code,attackers,share
void write_share_csv(std::ostream& out, const OriginAggregate& agg);

}  // namespace postscope
