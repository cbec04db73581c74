#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "postscope/flow.hpp"
#include "postscope/ip.hpp"

namespace postscope {

// Flow CSV, one record per line, optional header:
//   timestamp,src_ip,dst_ip,src_port,dst_port,protocol,ttl,tcp_flags,ip_length,icmp_type
// tcp_flags is decimal and empty for non-TCP; icmp_type is empty for non-ICMP.

// Parses records in file order. Throws ParseError on a malformed line and
// Error when a destination lies outside the telescope prefix.
std::vector<FlowRecord> parse_flows(std::istream& input, const Cidr& telescope);
std::vector<FlowRecord> parse_flows(std::string_view text, const Cidr& telescope);

// Chunk-parallel variant; output is identical to the sequential parse.
std::vector<FlowRecord> parse_flows(std::string_view text, const Cidr& telescope,
                                    unsigned threads);

std::vector<FlowRecord> parse_flows_file(const std::string& path, const Cidr& telescope,
                                         unsigned threads = 1);

void write_flow_csv(std::ostream& out, const std::vector<FlowRecord>& flows,
                    bool header = true);

std::string format_flow_line(const FlowRecord& f);

}  // namespace postscope
