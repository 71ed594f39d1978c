#include "rdcn/workload.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdcn/error.h"
#include "rdcn/rng.h"

namespace rdcn {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

[[noreturn]] void ParseFail(int line, const std::string& msg) {
  Fail("parse", "line " + std::to_string(line) + ": " + msg);
}

double ParseNumber(const std::string& field, int line) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    ParseFail(line, "not a number: '" + field + "'");
  }
  if (used != field.size() || !std::isfinite(v)) {
    ParseFail(line, "not a number: '" + field + "'");
  }
  return v;
}

}  // namespace

SizeDistribution::SizeDistribution(std::vector<Point> points)
    : points_(std::move(points)) {
  if (points_.empty()) Fail("config", "size distribution needs at least one point");
  for (size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!(p.bytes >= 1) || !(p.cdf >= 0 && p.cdf <= 1)) {
      Fail("config", "size distribution point " + std::to_string(i) +
                         " needs bytes >= 1 and cdf in [0, 1]");
    }
    if (i > 0 && (p.bytes <= points_[i - 1].bytes || p.cdf < points_[i - 1].cdf)) {
      Fail("config", "size distribution must increase in bytes and cdf at point " +
                         std::to_string(i));
    }
  }
  if (points_.back().cdf != 1.0) Fail("config", "size distribution must end at cdf 1");
}

SizeDistribution SizeDistribution::WebSearch() {
  return SizeDistribution({{6e3, 0.0},
                           {10e3, 0.15},
                           {20e3, 0.20},
                           {30e3, 0.30},
                           {50e3, 0.40},
                           {80e3, 0.53},
                           {200e3, 0.60},
                           {1e6, 0.70},
                           {2e6, 0.80},
                           {5e6, 0.90},
                           {10e6, 0.97},
                           {30e6, 1.0}});
}

SizeDistribution SizeDistribution::Fixed(double bytes) {
  return SizeDistribution({{bytes, 1.0}});
}

SizeDistribution SizeDistribution::Parse(std::istream& in) {
  std::vector<Point> points;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = Trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream fields(text);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.size() != 2) ParseFail(line, "expected 'bytes cdf'");
    const Point p{ParseNumber(parts[0], line), ParseNumber(parts[1], line)};
    if (!(p.bytes >= 1)) ParseFail(line, "size must be at least 1 byte");
    if (p.cdf < 0 || p.cdf > 1) ParseFail(line, "cdf must be in [0, 1]");
    if (!points.empty() &&
        (p.bytes <= points.back().bytes || p.cdf < points.back().cdf)) {
      ParseFail(line, "sizes must increase and cdf must not decrease");
    }
    points.push_back(p);
  }
  if (points.empty()) ParseFail(line, "no CDF points");
  if (points.back().cdf != 1.0) ParseFail(line, "last cdf value must be 1");
  return SizeDistribution(std::move(points));
}

double SizeDistribution::MeanBytes() const {
  double mean = points_[0].cdf * points_[0].bytes;
  for (size_t i = 1; i < points_.size(); ++i) {
    mean += (points_[i].cdf - points_[i - 1].cdf) *
            0.5 * (points_[i].bytes + points_[i - 1].bytes);
  }
  return mean;
}

int64_t SizeDistribution::SampleBytes(double u) const {
  if (u <= points_[0].cdf) return std::llround(points_[0].bytes);
  for (size_t i = 1; i < points_.size(); ++i) {
    if (u <= points_[i].cdf) {
      const Point& a = points_[i - 1];
      const Point& b = points_[i];
      const double f = (u - a.cdf) / (b.cdf - a.cdf);
      return std::max<int64_t>(1, std::llround(a.bytes + f * (b.bytes - a.bytes)));
    }
  }
  return std::llround(points_.back().bytes);
}

std::vector<NodeId> RandomDerangement(int n, uint64_t seed) {
  if (n < 2) Fail("config", "a derangement needs at least two nodes");
  std::vector<NodeId> perm(n);
  Rng rng(seed);
  while (true) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.Shuffle(perm);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = perm[i] != i;
    if (ok) return perm;
  }
}

std::vector<FlowArrival> GenerateWorkload(DemandKind kind, double load,
                                          uint64_t seed, int nt,
                                          double server_bps,
                                          const SizeDistribution& sizes,
                                          double horizon_s,
                                          const std::vector<NodeId>& perm) {
  if (!(load >= 0 && load <= 1)) Fail("config", "load must be in [0, 1]");
  if (nt < 2) Fail("config", "workload needs at least two nodes");
  if (kind == DemandKind::kTrace) Fail("config", "trace workloads are read, not generated");
  if (kind == DemandKind::kPermutation && static_cast<int>(perm.size()) != nt) {
    Fail("config", "permutation demand needs a permutation of every node");
  }
  std::vector<FlowArrival> flows;
  if (load == 0) return flows;
  const double rate = load * server_bps / (8.0 * sizes.MeanBytes());
  Rng rng(seed);
  for (NodeId s = 0; s < nt; ++s) {
    if (kind == DemandKind::kPermutation && perm[s] == s) continue;
    double t = rng.Exponential(1.0 / rate);
    while (t < horizon_s) {
      FlowArrival f;
      f.time_s = t;
      f.src = s;
      if (kind == DemandKind::kPermutation) {
        f.dst = perm[s];
      } else {
        const NodeId k = static_cast<NodeId>(rng.Below(nt - 1));
        f.dst = k >= s ? k + 1 : k;
      }
      f.bits = 8 * sizes.SampleBytes(rng.Uniform());
      flows.push_back(f);
      t += rng.Exponential(1.0 / rate);
    }
  }
  std::sort(flows.begin(), flows.end());
  return flows;
}

std::vector<FlowArrival> ReadTrace(std::istream& in, int nt) {
  std::vector<FlowArrival> flows;
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = Trim(raw);
    if (text.empty() || text[0] == '#') continue;
    if (!header) {
      if (text != "time_us,src,dst,size_bytes") {
        ParseFail(line, "expected header time_us,src,dst,size_bytes");
      }
      header = true;
      continue;
    }
    std::vector<std::string> parts;
    std::istringstream fields(text);
    for (std::string f; std::getline(fields, f, ',');) parts.push_back(Trim(f));
    if (parts.size() != 4) ParseFail(line, "expected 4 fields");
    const double t = ParseNumber(parts[0], line);
    const double src = ParseNumber(parts[1], line);
    const double dst = ParseNumber(parts[2], line);
    const double bytes = ParseNumber(parts[3], line);
    if (t < 0) ParseFail(line, "negative time");
    if (src != std::floor(src) || dst != std::floor(dst) || src < 0 || dst < 0 ||
        src >= nt || dst >= nt) {
      ParseFail(line, "src and dst must be node ids below " + std::to_string(nt));
    }
    if (src == dst) ParseFail(line, "src equals dst");
    if (bytes < 1 || bytes != std::floor(bytes)) ParseFail(line, "size must be a positive integer");
    flows.push_back(FlowArrival{t * 1e-6, static_cast<NodeId>(src),
                                static_cast<NodeId>(dst),
                                static_cast<int64_t>(bytes) * 8});
  }
  if (!header) ParseFail(line, "missing header");
  std::sort(flows.begin(), flows.end());
  return flows;
}

}  // namespace rdcn
