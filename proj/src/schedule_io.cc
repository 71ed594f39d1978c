#include "rdcn/schedule_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rdcn/error.h"

namespace rdcn {

using nlohmann::json;

double SecondsToMicros(double s) { return std::round(s * 1e12) / 1e6; }
double BpsToGbps(double bps) { return std::round(bps / 1e3) / 1e6; }

json ScheduleToJson(const Schedule& s) {
  json switches = json::array();
  for (const auto& sw : s.switches) {
    json seq = json::array();
    for (const Matching& m : sw) seq.push_back(m.permutation());
    switches.push_back(std::move(seq));
  }
  return json{{"format", 1},
              {"nt", s.num_tors},
              {"nu", s.uplinks},
              {"delta_us", SecondsToMicros(s.timeslot_s)},
              {"delta_r_us", SecondsToMicros(s.reconfig_s)},
              {"capacity_gbps", BpsToGbps(s.capacity_bps)},
              {"switches", std::move(switches)}};
}

Schedule ScheduleFromJson(const json& j) {
  Schedule s;
  try {
    if (j.contains("format") && j.at("format").get<int>() != 1) {
      Fail("parse", "unsupported schedule format " + j.at("format").dump());
    }
    s.num_tors = j.at("nt").get<int>();
    s.uplinks = j.at("nu").get<int>();
    s.timeslot_s = MicrosToSeconds(j.at("delta_us").get<double>());
    s.reconfig_s = MicrosToSeconds(j.at("delta_r_us").get<double>());
    s.capacity_bps = GbpsToBps(j.at("capacity_gbps").get<double>());
    for (const json& sw : j.at("switches")) {
      std::vector<Matching> seq;
      for (const json& perm : sw) {
        seq.emplace_back(perm.get<std::vector<NodeId>>());
      }
      s.switches.push_back(std::move(seq));
    }
  } catch (const json::exception& e) {
    Fail("parse", std::string("schedule: ") + e.what());
  }
  ValidateSchedule(s);
  return s;
}

std::string WriteScheduleJson(const Schedule& s) {
  return ScheduleToJson(s).dump(1) + "\n";
}

Schedule ParseScheduleJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Fail("parse", std::string("schedule: ") + e.what());
  }
  return ScheduleFromJson(j);
}

Schedule ReadScheduleFile(const std::string& path) {
  return ParseScheduleJson(ReadTextFile(path));
}

std::string EmulatedGraphCsv(const EmulatedGraph& g) {
  std::ostringstream os;
  os.precision(17);
  os << "src,dst,label,capacity_bps\n";
  for (const auto& [le, cap] : g.edges()) {
    os << le.edge.src << "," << le.edge.dst << "," << le.label << "," << cap
       << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

double ParseNumber(const std::string& field, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  Fail("parse", "line " + std::to_string(line_no) + ": bad number '" + field +
                    "'");
}

}  // namespace

SimpleGraph ReadEdgeListCsv(std::istream& in, int num_nodes) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = SplitCsv(line);
  }
  const bool labeled =
      header == std::vector<std::string>{"src", "dst", "label", "capacity_bps"};
  if (!labeled &&
      header != std::vector<std::string>{"src", "dst", "capacity_bps"}) {
    Fail("parse", "line " + std::to_string(line_no) +
                      ": expected header src,dst,label,capacity_bps");
  }
  struct Row {
    Edge e;
    double cap;
  };
  std::vector<Row> rows;
  int max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = SplitCsv(line);
    if (f.size() != header.size()) {
      Fail("parse", "line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    const double src = ParseNumber(f[0], line_no);
    const double dst = ParseNumber(f[1], line_no);
    const double cap = ParseNumber(f.back(), line_no);
    if (src < 0 || dst < 0 || src != std::floor(src) || dst != std::floor(dst)) {
      Fail("parse", "line " + std::to_string(line_no) + ": bad node id");
    }
    if (cap < 0) {
      Fail("parse", "line " + std::to_string(line_no) + ": negative capacity");
    }
    rows.push_back(Row{Edge{static_cast<NodeId>(src), static_cast<NodeId>(dst)}, cap});
    max_id = std::max({max_id, static_cast<int>(src), static_cast<int>(dst)});
  }
  const int n = num_nodes > 0 ? num_nodes : max_id + 1;
  if (n < 1) Fail("parse", "edge list is empty");
  SimpleGraph g(n);
  for (const Row& r : rows) g.AddCapacity(r.e, r.cap);
  return g;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail("io", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail("io", "cannot write " + path);
  out << text;
  if (!out) Fail("io", "write failed for " + path);
}

}  // namespace rdcn
