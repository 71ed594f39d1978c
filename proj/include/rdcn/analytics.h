#ifndef RDCN_ANALYTICS_H_
#define RDCN_ANALYTICS_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdcn/demand.h"
#include "rdcn/periodic_graph.h"
#include "rdcn/temporal.h"

namespace rdcn {

enum class LambertBranch { kPrincipal, kMinusOne };

// w with w·e^w = x. Domain: x >= -1/e (principal), -1/e <= x < 0 (minus one).
// Throws domain otherwise.
double LambertW(LambertBranch branch, double x);

struct Route {
  int hops = 0;
  double fraction = 0;
};
struct TemporalRoute {
  TemporalPath path;
  double fraction = 0;
};
using RouteEnsemble = std::map<PairKey, std::vector<Route>>;
using TemporalRouteEnsemble = std::map<PairKey, std::vector<TemporalRoute>>;

// Σ (m_sd / M) Σ_p r_p·len(p). Throws coverage if a pair with positive demand
// has no routes, routing if fractions are outside [0,1] or do not sum to 1.
double Arl(const DemandMatrix& m, const RouteEnsemble& routes);
double Arl(const DemandMatrix& m, const TemporalRouteEnsemble& routes);
// Σ (m_sd / M) Σ_δ r_δ·L(δ), in seconds.
double Ard(const DemandMatrix& m, const TemporalRouteEnsemble& routes,
           double timeslot_s, int period);

// Ĉ / (M·ARL)
double ThroughputUpperBound(double total_capacity, double total_demand,
                            double arl);

// 1 / (2·log_d nt)
double UnconstrainedTheta(int d, int nt);

// 2·log_d(nt)·d·Δ/nu, no special cases.
double DelayFormula(int d, int nt, int nu, double timeslot_s);
// DelayFormula, except that a static design (d == nu, Γ = 1) reports 0.
double DelayEstimate(int d, int nt, int nu, double timeslot_s);

// θ·M·ARD, the total network buffer needed to sustain θ.
double BufferRequirement(double theta, double total_demand, double ard_s);
// d·c·Δ bits.
double PerNodeBuffer(int d, double capacity_bps, double timeslot_s);

// Throughput of a d-regular design when each node holds only `buffer_bits`:
// min(θ*, B / (2·log_d(nt)·d·c·Δ)). Static designs are not buffer limited.
double BufferLimitedTheta(int d, int nt, int nu, double buffer_bits,
                          double capacity_bps, double timeslot_s);

// Largest schedulable degree whose delay estimate fits in `latency_s`.
// Throws infeasible-delay.
int OptimalDegreeDelay(int nt, int nu, double timeslot_s, double latency_s);
// Largest schedulable degree whose per-node buffer fits. Throws
// infeasible-buffer.
int OptimalDegreeBuffer(int nt, int nu, double buffer_bits,
                        double capacity_bps, double timeslot_s);

struct DesignInput {
  int nt = 0;
  int nu = 0;
  double timeslot_s = 0;
  double reconfig_s = 0;
  double capacity_bps = 0;
  std::optional<double> buffer_bits;
  std::optional<double> latency_s;
  uint64_t seed = 1;
};

struct DesignReport {
  int degree = 0;
  int period = 0;
  double theta = 0;
  double arl = 0;          // hops, 2·log_d nt
  double ard_s = 0;        // ARL·Γ·Δ
  double max_delay_s = 0;  // DelayEstimate
  double per_node_buffer_bits = 0;
  double total_buffer_bits = 0;
  bool static_design = false;  // delay and buffer reported as 0 by convention
  std::optional<int> degree_from_buffer;
  std::optional<int> degree_from_latency;
};

// Report for a d-regular deBruijn design on the given fabric.
DesignReport EvaluateDegree(int d, int nt, int nu, double timeslot_s,
                            double capacity_bps);

struct Design {
  DesignReport report;
  Schedule schedule;
};

// Degree = min over the supplied constraints; emits a deBruijn schedule.
Design MakeDesign(const DesignInput& in);

struct TradeoffRow {
  std::string name;
  int degree = 0;
  double theta = 0;
  double delay_s = 0;
  double buffer_bits = 0;
};

// Static (d=2), complete (d=16), complete with a 20 MB buffer, and the
// constrained deBruijn design, for nt=16, nu=2, Δ=100 µs, c=400 Gbps.
std::vector<TradeoffRow> TradeoffTable();

}  // namespace rdcn

#endif  // RDCN_ANALYTICS_H_
