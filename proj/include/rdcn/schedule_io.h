#ifndef RDCN_SCHEDULE_IO_H_
#define RDCN_SCHEDULE_IO_H_

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "rdcn/emulated_graph.h"
#include "rdcn/periodic_graph.h"

namespace rdcn {

// Schedule file:
//   {"format": 1, "nt": 16, "nu": 2, "delta_us": 100, "delta_r_us": 10,
//    "capacity_gbps": 400, "switches": [[[...perm...], ...], ...]}
// Times are written at picosecond resolution so a written file parses back
// to the same Schedule.
nlohmann::json ScheduleToJson(const Schedule& s);
Schedule ScheduleFromJson(const nlohmann::json& j);

std::string WriteScheduleJson(const Schedule& s);
Schedule ParseScheduleJson(const std::string& text);
Schedule ReadScheduleFile(const std::string& path);

// "src,dst,label,capacity_bps" with one row per labeled edge.
std::string EmulatedGraphCsv(const EmulatedGraph& g);

// Reads an edge list with header "src,dst,label,capacity_bps" or
// "src,dst,capacity_bps"; labels are summed away. The node count is the
// largest id + 1 unless `num_nodes` is positive.
SimpleGraph ReadEdgeListCsv(std::istream& in, int num_nodes = 0);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

// Whole-unit conversions used at file and CLI boundaries.
inline double MicrosToSeconds(double us) { return us / 1e6; }
double SecondsToMicros(double s);
inline double GbpsToBps(double gbps) { return gbps * 1e9; }
double BpsToGbps(double bps);

}  // namespace rdcn

#endif  // RDCN_SCHEDULE_IO_H_
