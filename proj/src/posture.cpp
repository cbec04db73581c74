#include "postscope/posture.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "postscope/bitset.hpp"
#include "postscope/error.hpp"

namespace postscope {

std::string_view to_string(Resolution r) {
    return r == Resolution::Hour ? "H" : "m";
}

Resolution resolution_from_string(std::string_view s) {
    if (s == "H" || s == "hour") return Resolution::Hour;
    if (s == "m" || s == "minute") return Resolution::Minute;
    throw std::invalid_argument("unknown resolution '" + std::string(s) + "'");
}

PostureBuilder::PostureBuilder(const Cidr& telescope, std::int64_t window_seconds,
                               Resolution r)
    : resolution_(r), delta_(interval_seconds(r)), space_(telescope.size()) {
    if (window_seconds <= 0) throw std::invalid_argument("empty window");
    intervals_ = static_cast<Eigen::Index>((window_seconds + delta_ - 1) / delta_);
    victim_sets_.resize(intervals_);
    attacker_sets_.resize(intervals_);
    attack_counts_.assign(intervals_, 0.0);
}

void PostureBuilder::add(const AttackFlow& flow) {
    const auto i = static_cast<std::size_t>(flow.timestamp / delta_);
    victim_sets_[i].push_back(flow.dst_index);
    attacker_sets_[i].push_back(flow.src_ip);
    attack_counts_[i] += 1.0;
}

void PostureBuilder::merge(const PostureBuilder& other) {
    if (other.intervals_ != intervals_ || other.delta_ != delta_ || other.space_ != space_)
        throw std::invalid_argument("builder shape mismatch in merge");
    for (Eigen::Index i = 0; i < intervals_; ++i) {
        auto& v = victim_sets_[i];
        v.insert(v.end(), other.victim_sets_[i].begin(), other.victim_sets_[i].end());
        auto& a = attacker_sets_[i];
        a.insert(a.end(), other.attacker_sets_[i].begin(), other.attacker_sets_[i].end());
        attack_counts_[i] += other.attack_counts_[i];
    }
}

PostureSeries PostureBuilder::finish() const {
    PostureSeries p;
    p.resolution = resolution_;
    p.T = intervals_;
    p.victims.resize(intervals_);
    p.attackers.resize(intervals_);
    p.attacks = Eigen::Map<const Eigen::VectorXd>(attack_counts_.data(), intervals_);

    std::vector<std::uint32_t> offsets(intervals_ + 1, 0);
    std::vector<std::uint32_t> indices;
    std::unordered_set<Ipv4> attacker_dedup;
    for (Eigen::Index i = 0; i < intervals_; ++i) {
        auto set = victim_sets_[i];
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        p.victims[i] = static_cast<double>(set.size());
        indices.insert(indices.end(), set.begin(), set.end());
        offsets[i + 1] = static_cast<std::uint32_t>(indices.size());

        attacker_dedup.clear();
        attacker_dedup.insert(attacker_sets_[i].begin(), attacker_sets_[i].end());
        p.attackers[i] = static_cast<double>(attacker_dedup.size());
    }
    p.victim_sets = IntervalVictimSets(std::move(offsets), std::move(indices), space_);
    return p;
}

PostureSeries build_series(const AttackSet& set, Resolution r) {
    PostureBuilder builder(set.telescope, set.window_seconds, r);
    for (const auto& f : set.flows) builder.add(f);
    return builder.finish();
}

PostureSeries posture_from_victim_sets(const std::vector<std::vector<std::uint32_t>>& sets,
                                       std::size_t space, Resolution r) {
    const auto T = static_cast<Eigen::Index>(sets.size());
    PostureSeries p;
    p.resolution = r;
    p.T = T;
    p.victims.resize(T);
    p.attackers.resize(T);
    p.attacks.resize(T);
    std::vector<std::uint32_t> offsets(T + 1, 0);
    std::vector<std::uint32_t> indices;
    for (Eigen::Index i = 0; i < T; ++i) {
        auto set = sets[i];
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        indices.insert(indices.end(), set.begin(), set.end());
        offsets[i + 1] = static_cast<std::uint32_t>(indices.size());
        p.victims[i] = static_cast<double>(set.size());
        p.attackers[i] = set.empty() ? 0.0 : 1.0;
        p.attacks[i] = static_cast<double>(set.size());
    }
    p.victim_sets = IntervalVictimSets(std::move(offsets), std::move(indices), space);
    return p;
}

std::size_t cumulative_victims(const PostureSeries& p, std::size_t i, std::size_t j) {
    if (i >= j) throw std::invalid_argument("cumulative_victims requires i < j");
    if (j > static_cast<std::size_t>(p.T)) throw std::invalid_argument("interval out of range");
    DenseBitset seen(p.victim_sets.space_size);
    for (std::size_t k = i; k < j; ++k)
        for (auto idx : p.victim_sets.set(k)) seen.set(idx);
    return seen.count();
}

std::optional<Eigen::Index> detect_period(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const Eigen::Index n = series.size();
    const Eigen::Index max_lag = n / 3;
    if (max_lag < 2) throw std::invalid_argument("series too short for period detection");

    const Eigen::VectorXd centered = series.array() - series.mean();
    const double denom = centered.squaredNorm();
    if (denom <= 0.0) return std::nullopt;

    double best = 0.0;
    Eigen::Index best_lag = 0;
    for (Eigen::Index lag = 2; lag <= max_lag; ++lag) {
        const double ac =
            centered.head(n - lag).dot(centered.tail(n - lag)) / denom;
        if (ac > best) {
            best = ac;
            best_lag = lag;
        }
    }
    if (best <= 0.3) return std::nullopt;
    return best_lag;
}

void write_posture_csv(std::ostream& out, const PostureSeries& p) {
    out << "interval,victims,attackers,attacks\n";
    for (Eigen::Index i = 0; i < p.T; ++i)
        out << i << ',' << static_cast<std::int64_t>(p.victims[i]) << ','
            << static_cast<std::int64_t>(p.attackers[i]) << ','
            << static_cast<std::int64_t>(p.attacks[i]) << '\n';
}

PostureTable read_posture_csv(std::istream& in, Resolution r) {
    PostureTable t;
    t.resolution = r;
    std::vector<double> v, a, y;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("interval,", 0) == 0) continue;
        double cols[4];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int c = 0; c < 4; ++c) {
            auto [next, ec] = std::from_chars(p, end, cols[c]);
            if (ec != std::errc{}) throw ParseError(line_no, "bad posture row");
            p = next;
            if (c < 3) {
                if (p == end || *p != ',') throw ParseError(line_no, "bad posture row");
                ++p;
            }
        }
        v.push_back(cols[1]);
        a.push_back(cols[2]);
        y.push_back(cols[3]);
    }
    const auto n = static_cast<Eigen::Index>(v.size());
    t.victims = Eigen::Map<const Eigen::VectorXd>(v.data(), n);
    t.attackers = Eigen::Map<const Eigen::VectorXd>(a.data(), n);
    t.attacks = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    return t;
}

}  // namespace postscope
