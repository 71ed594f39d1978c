#include "rdcn/analytics.h"

#include <algorithm>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>

#include "rdcn/error.h"
#include "rdcn/topology.h"

namespace rdcn {
namespace {

constexpr double kMinusInvE = -0.36787944117144233;  // -1/e rounded down
constexpr double kFloorSlack = 1e-9;                 // relative

// log_d(n), exact when n is an integer power of d.
double LogBase(int d, int n) {
  int64_t p = 1;
  for (int k = 0; p <= n; ++k, p *= d) {
    if (p == n) return k;
  }
  return std::log(static_cast<double>(n)) / std::log(static_cast<double>(d));
}

int FloorWithSlack(double x) {
  return static_cast<int>(std::floor(x * (1 + kFloorSlack)));
}

void CheckFractions(const PairKey& pair, const std::vector<double>& fractions) {
  const std::string where =
      "pair " + std::to_string(pair.first) + "->" + std::to_string(pair.second);
  double sum = 0;
  for (double r : fractions) {
    if (!(r >= -1e-12 && r <= 1 + 1e-12)) {
      Fail("routing", where + ": route fraction outside [0,1]");
    }
    sum += r;
  }
  if (std::abs(sum - 1) > 1e-9) {
    Fail("routing", where + ": route fractions sum to " + std::to_string(sum));
  }
}

template <typename Ensemble, typename Cost>
double WeightedAverage(const DemandMatrix& m, const Ensemble& routes, Cost cost) {
  const double total = m.Total();
  if (total == 0) Fail("undefined-throughput", "demand matrix is zero");
  double sum = 0;
  for (NodeId s = 0; s < m.size(); ++s) {
    for (NodeId d = 0; d < m.size(); ++d) {
      if (s == d || m.At(s, d) == 0) continue;
      auto it = routes.find({s, d});
      if (it == routes.end() || it->second.empty()) {
        Fail("coverage", "no routes for pair " + std::to_string(s) + "->" +
                             std::to_string(d));
      }
      std::vector<double> fractions;
      double pair_sum = 0;
      for (const auto& r : it->second) {
        fractions.push_back(r.fraction);
        pair_sum += r.fraction * cost(r);
      }
      CheckFractions(it->first, fractions);
      sum += m.At(s, d) / total * pair_sum;
    }
  }
  return sum;
}

}  // namespace

double LambertW(LambertBranch branch, double x) {
  if (std::isnan(x) || x < kMinusInvE) {
    Fail("domain", "Lambert W is undefined below -1/e");
  }
  if (branch == LambertBranch::kPrincipal) {
    if (std::isinf(x)) Fail("domain", "Lambert W of infinity");
    return boost::math::lambert_w0(x);
  }
  if (x >= 0) Fail("domain", "the -1 branch requires x < 0");
  return boost::math::lambert_wm1(x);
}

double Arl(const DemandMatrix& m, const RouteEnsemble& routes) {
  return WeightedAverage(m, routes, [](const Route& r) { return r.hops; });
}

double Arl(const DemandMatrix& m, const TemporalRouteEnsemble& routes) {
  return WeightedAverage(m, routes,
                         [](const TemporalRoute& r) { return r.path.length(); });
}

double Ard(const DemandMatrix& m, const TemporalRouteEnsemble& routes,
           double timeslot_s, int period) {
  return WeightedAverage(m, routes, [&](const TemporalRoute& r) {
    return TemporalPathDelay(r.path, timeslot_s, period);
  });
}

double ThroughputUpperBound(double total_capacity, double total_demand,
                            double arl) {
  if (!(total_demand > 0)) Fail("undefined-throughput", "total demand is zero");
  if (!(arl >= 1)) Fail("config", "average route length must be at least 1");
  return total_capacity / (total_demand * arl);
}

double UnconstrainedTheta(int d, int nt) {
  if (d < 2) Fail("degenerate-degree", "degree must be at least 2");
  if (d > nt) Fail("config", "degree exceeds nt");
  return 1.0 / (2.0 * LogBase(d, nt));
}

double DelayFormula(int d, int nt, int nu, double timeslot_s) {
  if (d < 2) Fail("degenerate-degree", "degree must be at least 2");
  if (nu < 1) Fail("config", "nu must be at least 1");
  return 2.0 * LogBase(d, nt) * d * timeslot_s / nu;
}

double DelayEstimate(int d, int nt, int nu, double timeslot_s) {
  if (d == nu) return 0;
  return DelayFormula(d, nt, nu, timeslot_s);
}

double BufferRequirement(double theta, double total_demand, double ard_s) {
  if (theta < 0 || total_demand < 0 || ard_s < 0) {
    Fail("config", "buffer requirement inputs must be nonnegative");
  }
  return theta * total_demand * ard_s;
}

double PerNodeBuffer(int d, double capacity_bps, double timeslot_s) {
  return d * capacity_bps * timeslot_s;
}

double BufferLimitedTheta(int d, int nt, int nu, double buffer_bits,
                          double capacity_bps, double timeslot_s) {
  const double theta = UnconstrainedTheta(d, nt);
  if (d == nu) return theta;
  const double limit =
      buffer_bits / (2.0 * LogBase(d, nt) * d * capacity_bps * timeslot_s);
  return std::min(theta, limit);
}

int OptimalDegreeDelay(int nt, int nu, double timeslot_s, double latency_s) {
  if (nt < 2) Fail("config", "nt must be at least 2");
  if (nu < 1) Fail("config", "nu must be at least 1");
  if (latency_s < timeslot_s) {
    FailInfeasible("infeasible-delay", "latency bound is shorter than a timeslot");
  }
  const double k = -2.0 * std::log(static_cast<double>(nt)) * timeslot_s /
                   (nu * latency_s);
  if (k < kMinusInvE) {
    FailInfeasible("infeasible-delay",
                   "no degree meets the latency bound (k = " + std::to_string(k) +
                       " < -1/e)");
  }
  // Both branches give a root of d·ln(nt)/ln(d) = nu·L/(2Δ); take the larger.
  const double d_principal = std::exp(-LambertW(LambertBranch::kPrincipal, k));
  const double d_minus_one = std::exp(-LambertW(LambertBranch::kMinusOne, k));
  int d = FloorWithSlack(std::max(d_principal, d_minus_one));
  d = std::clamp(d, 2, nt);
  d -= d % nu;
  if (d < 2) {
    FailInfeasible("infeasible-delay",
                   "no multiple of nu=" + std::to_string(nu) +
                       " meets the latency bound");
  }
  if (DelayFormula(d, nt, nu, timeslot_s) > latency_s * (1 + kFloorSlack)) {
    FailInfeasible("infeasible-delay",
                   "degree " + std::to_string(d) +
                       " (largest multiple of nu below the optimum) exceeds the "
                       "latency bound");
  }
  return d;
}

int OptimalDegreeBuffer(int nt, int nu, double buffer_bits,
                        double capacity_bps, double timeslot_s) {
  if (nt < 2) Fail("config", "nt must be at least 2");
  if (nu < 1) Fail("config", "nu must be at least 1");
  const double per_degree = capacity_bps * timeslot_s;
  if (buffer_bits < per_degree * (1 - kFloorSlack)) {
    FailInfeasible("infeasible-buffer", "buffer is smaller than c·Δ");
  }
  int d = FloorWithSlack(buffer_bits / per_degree);
  d = std::clamp(d, 2, nt);
  d -= d % nu;
  if (d < 2) {
    FailInfeasible("infeasible-buffer", "no multiple of nu=" +
                                            std::to_string(nu) +
                                            " fits in the buffer");
  }
  return d;
}

DesignReport EvaluateDegree(int d, int nt, int nu, double timeslot_s,
                            double capacity_bps) {
  if (nu < 1 || d % nu != 0) {
    Fail("divisibility", "degree " + std::to_string(d) +
                             " is not a multiple of nu=" + std::to_string(nu));
  }
  DesignReport r;
  r.degree = d;
  r.period = d / nu;
  r.static_design = r.period == 1;
  r.theta = UnconstrainedTheta(d, nt);
  r.arl = 2.0 * LogBase(d, nt);
  r.max_delay_s = DelayEstimate(d, nt, nu, timeslot_s);
  r.ard_s = r.static_design ? 0.0 : r.arl * r.period * timeslot_s;
  r.per_node_buffer_bits =
      r.static_design ? 0.0 : PerNodeBuffer(d, capacity_bps, timeslot_s);
  // Saturated demand: every ToR sources nu·c.
  r.total_buffer_bits = BufferRequirement(r.theta, nt * nu * capacity_bps, r.ard_s);
  return r;
}

Design MakeDesign(const DesignInput& in) {
  if (!in.buffer_bits && !in.latency_s) {
    Fail("config", "design needs a buffer or latency constraint");
  }
  std::optional<int> by_buffer, by_latency;
  if (in.buffer_bits) {
    by_buffer = OptimalDegreeBuffer(in.nt, in.nu, *in.buffer_bits,
                                    in.capacity_bps, in.timeslot_s);
  }
  if (in.latency_s) {
    by_latency = OptimalDegreeDelay(in.nt, in.nu, in.timeslot_s, *in.latency_s);
  }
  const int d = std::min(by_buffer.value_or(in.nt), by_latency.value_or(in.nt));
  Design out;
  out.report = EvaluateDegree(d, in.nt, in.nu, in.timeslot_s, in.capacity_bps);
  out.report.degree_from_buffer = by_buffer;
  out.report.degree_from_latency = by_latency;
  out.schedule = MakeSchedule(in.nt, in.nu, in.timeslot_s, in.reconfig_s,
                              in.capacity_bps,
                              DebruijnSchedule(in.nt, d, in.nu, in.seed));
  return out;
}

std::vector<TradeoffRow> TradeoffTable() {
  constexpr int kNt = 16, kNu = 2;
  constexpr double kDelta = 100e-6, kDeltaR = 10e-6, kCap = 400e9;
  constexpr double kMB = 8e6;
  std::vector<TradeoffRow> rows;
  auto add = [&](std::string name, int d, double theta, double buffer) {
    const DesignReport r = EvaluateDegree(d, kNt, kNu, kDelta, kCap);
    rows.push_back(TradeoffRow{std::move(name), d, theta, r.max_delay_s, buffer});
  };
  add("static", 2, UnconstrainedTheta(2, kNt), 0.0);
  add("complete", kNt, UnconstrainedTheta(kNt, kNt),
      PerNodeBuffer(kNt, kCap, kDelta));
  add("complete-20MB", kNt,
      BufferLimitedTheta(kNt, kNt, kNu, 20 * kMB, kCap, kDelta), 20 * kMB);
  DesignInput in{kNt, kNu, kDelta, kDeltaR, kCap, 20 * kMB, 850e-6};
  const Design mars = MakeDesign(in);
  add("mars", mars.report.degree, mars.report.theta,
      mars.report.per_node_buffer_bits);
  return rows;
}

}  // namespace rdcn
