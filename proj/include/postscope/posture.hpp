#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "postscope/attack_set.hpp"

namespace postscope {

enum class Resolution : std::uint8_t { Hour, Minute };

inline std::int64_t interval_seconds(Resolution r) {
    return r == Resolution::Hour ? 3600 : 60;
}

std::string_view to_string(Resolution r);
Resolution resolution_from_string(std::string_view s);

// Per-interval victim index sets in CSR form: set i holds the sorted unique
// dst indices of interval i.
class IntervalVictimSets {
public:
    IntervalVictimSets() = default;
    IntervalVictimSets(std::vector<std::uint32_t> offsets_, std::vector<std::uint32_t> indices_,
                       std::size_t space)
        : offsets(std::move(offsets_)), indices(std::move(indices_)), space_size(space) {}

    std::size_t intervals() const { return offsets.empty() ? 0 : offsets.size() - 1; }
    std::span<const std::uint32_t> set(std::size_t i) const {
        return {indices.data() + offsets[i], indices.data() + offsets[i + 1]};
    }
    std::size_t set_size(std::size_t i) const { return offsets[i + 1] - offsets[i]; }

    std::vector<std::uint32_t> offsets;  // intervals() + 1 entries
    std::vector<std::uint32_t> indices;
    std::size_t space_size = 0;  // telescope size; indices lie in [0, space_size)
};

// The three aligned posture time series at one resolution, plus the victim
// index sets the sweep-time computation needs.
struct PostureSeries {
    Resolution resolution = Resolution::Hour;
    Eigen::Index T = 0;
    Eigen::VectorXd victims;    // distinct dst indices per interval
    Eigen::VectorXd attackers;  // distinct source addresses per interval
    Eigen::VectorXd attacks;    // flow count per interval
    IntervalVictimSets victim_sets;
};

// Incremental construction with deterministic partition merge: building one
// series in a single pass equals building per-partition and merging, for any
// split of the flows by time.
class PostureBuilder {
public:
    PostureBuilder(const Cidr& telescope, std::int64_t window_seconds, Resolution r);

    void add(const AttackFlow& flow);
    void merge(const PostureBuilder& other);
    PostureSeries finish() const;

private:
    Resolution resolution_;
    std::int64_t delta_;
    std::size_t space_;
    Eigen::Index intervals_;
    std::vector<std::vector<std::uint32_t>> victim_sets_;
    std::vector<std::vector<Ipv4>> attacker_sets_;
    std::vector<double> attack_counts_;
};

PostureSeries build_series(const AttackSet& set, Resolution r);

// Test-support factory: victims from explicit per-interval index sets, one
// synthetic attacker and one attack per victim hit.
PostureSeries posture_from_victim_sets(const std::vector<std::vector<std::uint32_t>>& sets,
                                       std::size_t space, Resolution r);

// |union of victim sets over [i, j)|; monotone nondecreasing in j.
std::size_t cumulative_victims(const PostureSeries& p, std::size_t i, std::size_t j);

// Lag in [2, T/3] maximizing the sample autocorrelation of the mean-removed
// series, when that maximum exceeds 0.3; nullopt otherwise (including for
// constant series).
std::optional<Eigen::Index> detect_period(const Eigen::Ref<const Eigen::VectorXd>& series);

// CSV export/import: interval,victims,attackers,attacks
void write_posture_csv(std::ostream& out, const PostureSeries& p);
struct PostureTable {
    Resolution resolution;
    Eigen::VectorXd victims, attackers, attacks;
};
PostureTable read_posture_csv(std::istream& in, Resolution r);

}  // namespace postscope
