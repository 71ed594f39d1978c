#ifndef RDCN_WORKLOAD_H_
#define RDCN_WORKLOAD_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "rdcn/periodic_graph.h"

namespace rdcn {

// Piecewise-linear flow size CDF. The first point carries its cdf value as a
// point mass; sizes between points are uniform.
class SizeDistribution {
 public:
  struct Point {
    double bytes;
    double cdf;
  };

  // Throws config unless sizes are positive and increasing, cdf values are
  // nondecreasing in [0, 1] and the last one is 1.
  explicit SizeDistribution(std::vector<Point> points);

  // Heavy-tailed web-search-like mix from 6 KB to 30 MB.
  static SizeDistribution WebSearch();
  static SizeDistribution Fixed(double bytes);
  // Lines of "bytes cdf" separated by whitespace or a comma; '#' starts a
  // comment. Throws parse with the offending line number.
  static SizeDistribution Parse(std::istream& in);

  double MeanBytes() const;
  // Inverse-CDF sample for u in [0, 1).
  int64_t SampleBytes(double u) const;
  const std::vector<Point>& points() const { return points_; }

 private:
  std::vector<Point> points_;
};

struct FlowArrival {
  double time_s = 0;
  NodeId src = 0;
  NodeId dst = 0;
  int64_t bits = 0;

  auto operator<=>(const FlowArrival&) const = default;
};

enum class DemandKind { kAllToAll, kPermutation, kTrace };

// Derangement drawn by reshuffling until no point is fixed.
std::vector<NodeId> RandomDerangement(int n, uint64_t seed);

// Poisson arrivals per source with rate load·server_bps / mean size, over
// [0, horizon_s). Destinations are uniform over the other nodes
// (all-to-all) or fixed by `perm` (permutation). Sorted by time, then source.
std::vector<FlowArrival> GenerateWorkload(DemandKind kind, double load,
                                          uint64_t seed, int nt,
                                          double server_bps,
                                          const SizeDistribution& sizes,
                                          double horizon_s,
                                          const std::vector<NodeId>& perm = {});

// CSV with header time_us,src,dst,size_bytes. Throws parse with a line number.
std::vector<FlowArrival> ReadTrace(std::istream& in, int nt);

}  // namespace rdcn

#endif  // RDCN_WORKLOAD_H_
