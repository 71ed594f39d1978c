#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rdcn/emulated_graph.h"
#include "rdcn/topology.h"
#include "test_util.h"

namespace rdcn {
namespace {

using testing::ErrorKind;

std::vector<NodeId> SuccessorsOf(const Digraph& g, NodeId u) {
  std::vector<NodeId> out;
  for (const Edge& e : g.edges()) {
    if (e.src == u) out.push_back(e.dst);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Brute-force multiset union of matchings.
std::vector<Edge> UnionOf(const std::vector<Matching>& ms) {
  std::vector<Edge> out;
  for (const Matching& m : ms) {
    for (int u = 0; u < m.size(); ++u) out.push_back(Edge{u, m(u)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Debruijn, Successors) {
  const Digraph g = DebruijnDigraph(16, 4);
  EXPECT_EQ(SuccessorsOf(g, 1), (std::vector<NodeId>{4, 5, 6, 7}));
  EXPECT_EQ(SuccessorsOf(g, 0), (std::vector<NodeId>{0, 1, 2, 3}));
}

TEST(Debruijn, SelfLoops) {
  const Digraph g = DebruijnDigraph(16, 4);
  std::vector<NodeId> loops;
  for (const Edge& e : g.edges()) {
    if (e.self_loop()) loops.push_back(e.src);
  }
  EXPECT_EQ(loops, (std::vector<NodeId>{0, 5, 10, 15}));
}

TEST(Debruijn, Diameter) {
  EXPECT_EQ(DebruijnDigraph(16, 4).ToSimpleGraph(1).Diameter(), 2);
  EXPECT_EQ(DebruijnDigraph(16, 2).ToSimpleGraph(1).Diameter(), 4);
  EXPECT_EQ(DebruijnDigraph(16, 16).ToSimpleGraph(1).Diameter(), 1);
}

TEST(Debruijn, DiameterEqualsLogOnPowerGrids) {
  for (int d = 2; d <= 5; ++d) {
    int nt = d;
    for (int k = 1; nt <= 256; ++k, nt *= d) {
      EXPECT_EQ(DebruijnDigraph(nt, d).ToSimpleGraph(1).Diameter(), k)
          << "nt=" << nt << " d=" << d;
    }
  }
}

TEST(Debruijn, RegularForAnySize) {
  for (int nt = 2; nt <= 40; ++nt) {
    for (int d = 2; d <= nt; ++d) {
      EXPECT_EQ(DebruijnDigraph(nt, d).RegularDegree(), d) << nt << "," << d;
    }
  }
}

TEST(Debruijn, NonPowerDiameterWithinOneOfLog) {
  for (int nt = 5; nt <= 60; ++nt) {
    for (int d = 2; d <= 4 && d < nt; ++d) {
      const int diameter = DebruijnDigraph(nt, d).ToSimpleGraph(1).Diameter();
      const int log_ceil = static_cast<int>(std::ceil(std::log(nt) / std::log(d) - 1e-12));
      EXPECT_GE(diameter, 1);
      EXPECT_LE(diameter, log_ceil + 1) << nt << "," << d;
    }
  }
}

TEST(Debruijn, Errors) {
  EXPECT_EQ(ErrorKind([] { DebruijnDigraph(16, 1); }), "degenerate-degree");
  EXPECT_EQ(ErrorKind([] { DebruijnDigraph(4, 5); }), "config");
}

TEST(Decompose, DirectedCycle) {
  Digraph g(5);
  for (int u = 0; u < 5; ++u) g.AddEdge(u, (u + 1) % 5);
  const auto ms = DecomposeMatchings(g);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0], Matching::Shift(5, 1));
}

TEST(Decompose, CompleteWithSelfLoops) {
  Digraph g(4);
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) g.AddEdge(u, v);
  }
  const auto ms = DecomposeMatchings(g);
  ASSERT_EQ(ms.size(), 4u);
  EXPECT_EQ(UnionOf(ms), g.SortedEdges());
}

TEST(Decompose, Debruijn16x4) {
  const Digraph g = DebruijnDigraph(16, 4);
  const auto ms = DecomposeMatchings(g);
  ASSERT_EQ(ms.size(), 4u);
  for (const Matching& m : ms) {
    std::set<NodeId> image(m.permutation().begin(), m.permutation().end());
    EXPECT_EQ(image.size(), 16u);
  }
  EXPECT_EQ(UnionOf(ms), g.SortedEdges());
}

TEST(Decompose, ParallelEdgesAndProperty) {
  // nt not a multiple of d produces parallel edges.
  for (int nt = 2; nt <= 24; ++nt) {
    for (int d = 2; d <= std::min(nt, 6); ++d) {
      const Digraph g = DebruijnDigraph(nt, d);
      EXPECT_EQ(UnionOf(DecomposeMatchings(g)), g.SortedEdges()) << nt << "," << d;
    }
  }
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + rng.Below(12), d = 1 + rng.Below(5);
    Digraph g(n);
    for (int k = 0; k < d; ++k) {
      const Matching m = testing::RandomMatching(n, rng);
      for (int u = 0; u < n; ++u) g.AddEdge(u, m(u));
    }
    EXPECT_EQ(UnionOf(DecomposeMatchings(g)), g.SortedEdges());
  }
}

TEST(Decompose, NonRegular) {
  Digraph g(3);
  g.AddEdge(0, 1);
  g.AddEdge(1, 2);
  EXPECT_EQ(ErrorKind([&] { DecomposeMatchings(g); }), "regularity");
}

TEST(AssignToSwitches, Periods) {
  for (auto [d, nu, period] : {std::tuple{4, 2, 2}, {16, 2, 8}, {2, 2, 1}}) {
    const auto ms = DecomposeMatchings(DebruijnDigraph(16, d));
    const auto sw = AssignToSwitches(ms, nu, 42);
    ASSERT_EQ(static_cast<int>(sw.size()), nu);
    for (const auto& seq : sw) EXPECT_EQ(static_cast<int>(seq.size()), period);
    // Concatenation is a permutation of the input.
    std::vector<Matching> all;
    for (const auto& seq : sw) all.insert(all.end(), seq.begin(), seq.end());
    auto key = [](const Matching& m) { return m.permutation(); };
    std::vector<std::vector<NodeId>> a, b;
    for (const auto& m : all) a.push_back(key(m));
    for (const auto& m : ms) b.push_back(key(m));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(AssignToSwitches, DivisibilityHint) {
  const auto ms = DecomposeMatchings(DebruijnDigraph(16, 5));
  try {
    AssignToSwitches(ms, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "divisibility");
    EXPECT_NE(std::string(e.what()).find("4 or 6"), std::string::npos);
  }
}

TEST(AssignToSwitches, SeedDeterminism) {
  const auto ms = DecomposeMatchings(DebruijnDigraph(16, 8));
  EXPECT_EQ(AssignToSwitches(ms, 2, 9), AssignToSwitches(ms, 2, 9));
  EXPECT_NE(AssignToSwitches(ms, 2, 9), AssignToSwitches(ms, 2, 10));
}

TEST(CompleteGraphSchedule, Shapes) {
  auto sw = CompleteGraphSchedule(16, 2);
  ASSERT_EQ(sw.size(), 2u);
  EXPECT_EQ(sw[0].size(), 8u);
  sw = CompleteGraphSchedule(4, 4);
  EXPECT_EQ(sw[0].size(), 1u);
  sw = CompleteGraphSchedule(4, 1);
  ASSERT_EQ(sw[0].size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(sw[0][k], Matching::Shift(4, k));
  EXPECT_EQ(ErrorKind([] { CompleteGraphSchedule(6, 4); }), "divisibility");
}

TEST(CompleteGraphSchedule, EmulatesCompleteGraphWithSelfLoops) {
  Digraph full(16);
  for (int u = 0; u < 16; ++u) {
    for (int v = 0; v < 16; ++v) full.AddEdge(u, v);
  }
  EXPECT_EQ(ScheduleDigraph(CompleteGraphSchedule(16, 2)).SortedEdges(),
            full.SortedEdges());
  EXPECT_EQ(DebruijnDigraph(16, 16).SortedEdges(), full.SortedEdges());
}

// The evolving graph built from the assigned schedule emulates exactly the
// generating digraph.
TEST(MatchingUnion, ScheduleRoundTripProperty) {
  for (auto [nt, d, nu] : {std::tuple{16, 4, 2}, {16, 8, 2}, {16, 16, 2}, {27, 3, 3},
                           {10, 4, 2}, {12, 6, 3}}) {
    const Digraph g = DebruijnDigraph(nt, d);
    const auto sched = MakeSchedule(nt, nu, 100e-6, 1e-6, 1.0,
                                    AssignToSwitches(DecomposeMatchings(g), nu, 3));
    EXPECT_EQ(sched.period(), d / nu);
    EXPECT_EQ(ScheduleDigraph(sched.switches).SortedEdges(), g.SortedEdges());
    const EmulatedGraph eg(BuildPeriodicGraph(sched));
    // Parallel edges within one slot merge into one labeled edge with summed
    // capacity, so compare capacity-weighted multisets.
    std::map<Edge, double> want, got;
    for (const Edge& e : g.edges()) want[e] += 1.0;
    for (const auto& [le, cap] : eg.edges()) got[le.edge] += cap * sched.period() / (1 - 0.01);
    ASSERT_EQ(want.size(), got.size());
    for (const auto& [e, w] : want) EXPECT_NEAR(got[e], w, 1e-9);
  }
}

// Power iteration with deflation of the trivial eigenvector, independent of
// the dense solver used by the library.
double PowerIterationLambda2(const Digraph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : g.edges()) adj[e.src].push_back(e.dst);
  // A² has eigenvalues λ²; deflate the all-ones vector and iterate.
  std::vector<double> x(n);
  Rng rng(99);
  for (double& v : x) v = rng.Uniform() - 0.5;
  auto deflate = [&](std::vector<double>& v) {
    double mean = 0;
    for (double a : v) mean += a;
    mean /= n;
    for (double& a : v) a -= mean;
  };
  auto multiply = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (int u = 0; u < n; ++u) {
      for (NodeId w : adj[u]) out[u] += v[w];
    }
    return out;
  };
  double lambda_sq = 0;
  for (int it = 0; it < 20000; ++it) {
    deflate(x);
    std::vector<double> y = multiply(multiply(x));
    deflate(y);
    double norm_x = 0, dot = 0, norm_y = 0;
    for (int i = 0; i < n; ++i) {
      norm_x += x[i] * x[i];
      dot += x[i] * y[i];
      norm_y += y[i] * y[i];
    }
    const double next = dot / norm_x;
    for (int i = 0; i < n; ++i) x[i] = y[i] / std::sqrt(norm_y);
    if (it > 100 && std::abs(next - lambda_sq) < 1e-13) {
      lambda_sq = next;
      break;
    }
    lambda_sq = next;
  }
  return std::sqrt(lambda_sq);
}

TEST(Expander, SpectralCertificate) {
  const ExpanderResult r = RandomRegularExpander(64, 4, 2024);
  EXPECT_EQ(r.graph.RegularDegree(), 4);
  EXPECT_LE(r.lambda2, 2 * std::sqrt(3.0));
  EXPECT_NEAR(SecondEigenvalue(r.graph), r.lambda2, 1e-9);
  EXPECT_NEAR(PowerIterationLambda2(r.graph), r.lambda2, 1e-6);
  // Simple and symmetric, no self-loops.
  std::set<Edge> seen;
  for (const Edge& e : r.graph.edges()) {
    EXPECT_FALSE(e.self_loop());
    EXPECT_TRUE(seen.insert(e).second);
  }
  for (const Edge& e : r.graph.edges()) EXPECT_TRUE(seen.count(Edge{e.dst, e.src}));
}

TEST(Expander, Determinism) {
  const ExpanderResult a = RandomRegularExpander(64, 4, 17);
  const ExpanderResult b = RandomRegularExpander(64, 4, 17);
  EXPECT_EQ(a.graph.SortedEdges(), b.graph.SortedEdges());
  EXPECT_NEAR(a.lambda2, b.lambda2, 1e-9);
  EXPECT_NEAR(SecondEigenvalue(a.graph), SecondEigenvalue(b.graph), 1e-9);
}

TEST(Expander, CompleteBipartiteIsNotAnExpander) {
  // K_{4,4}: eigenvalue -4 makes λ₂ = d.
  Digraph g(8);
  for (int u = 0; u < 4; ++u) {
    for (int v = 4; v < 8; ++v) {
      g.AddEdge(u, v);
      g.AddEdge(v, u);
    }
  }
  EXPECT_NEAR(SecondEigenvalue(g), 4.0, 1e-9);
}

TEST(Expander, Errors) {
  EXPECT_EQ(ErrorKind([] { RandomRegularExpander(5, 3, 1); }), "config");
  EXPECT_EQ(ErrorKind([] { RandomRegularExpander(4, 4, 1); }), "config");
  EXPECT_EQ(ErrorKind([] { RandomRegularExpander(12, 2, 1); }), "config");
}

}  // namespace
}  // namespace rdcn
