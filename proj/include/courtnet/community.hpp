#pragma once

// Deterministic Louvain-style modularity maximization and per-community
// appellant win rates.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "courtnet/networks.hpp"
#include "courtnet/types.hpp"

namespace courtnet {

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// Undirected weighted graph over nodes 0..node_count-1.
struct WeightedGraph {
  std::size_t node_count = 0;
  std::vector<WeightedEdge> edges;
};

inline constexpr double kModularityGainEpsilon = 1e-9;

/// Newman modularity of `membership` (community id per node).
inline double modularity(const WeightedGraph& g, const std::vector<std::size_t>& membership) {
  std::vector<double> degree(g.node_count, 0.0);
  double total = 0.0;
  for (const auto& e : g.edges) {
    degree[e.u] += e.weight;
    degree[e.v] += e.weight;
    total += e.weight;
  }
  if (total <= 0.0) return 0.0;
  std::map<std::size_t, double> internal, tot;
  for (const auto& e : g.edges) {
    if (membership[e.u] == membership[e.v]) internal[membership[e.u]] += e.weight;
  }
  for (std::size_t i = 0; i < g.node_count; ++i) tot[membership[i]] += degree[i];
  double q = 0.0;
  for (const auto& [c, t] : tot) {
    const auto in = internal.find(c);
    q += (in == internal.end() ? 0.0 : in->second) / total - (t / (2.0 * total)) * (t / (2.0 * total));
  }
  return q;
}

namespace louvain_detail {

struct Level {
  std::size_t n = 0;
  std::vector<std::map<std::size_t, double>> adj;  // off-diagonal, symmetric
  std::vector<double> self;                        // internal weight per node
};

inline Level from_graph(const WeightedGraph& g) {
  Level lv;
  lv.n = g.node_count;
  lv.adj.resize(lv.n);
  lv.self.assign(lv.n, 0.0);
  for (const auto& e : g.edges) {
    if (e.u == e.v) {
      lv.self[e.u] += e.weight;
    } else {
      lv.adj[e.u][e.v] += e.weight;
      lv.adj[e.v][e.u] += e.weight;
    }
  }
  return lv;
}

/// Moves nodes one at a time, in ascending id order, to the neighbouring
/// community with the largest modularity gain. Returns true if any node moved.
inline bool local_moves(const Level& lv, std::vector<std::size_t>& comm) {
  std::vector<double> k(lv.n, 0.0);
  double m2 = 0.0;
  for (std::size_t i = 0; i < lv.n; ++i) {
    for (const auto& [j, w] : lv.adj[i]) k[i] += w;
    k[i] += 2.0 * lv.self[i];
    m2 += k[i];
  }
  if (m2 <= 0.0) return false;
  std::vector<double> tot(lv.n, 0.0);
  for (std::size_t i = 0; i < lv.n; ++i) tot[comm[i]] += k[i];

  bool any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < lv.n; ++i) {
      const std::size_t own = comm[i];
      std::map<std::size_t, double> links;  // community -> weight from i
      for (const auto& [j, w] : lv.adj[i]) links[comm[j]] += w;
      tot[own] -= k[i];
      auto gain = [&](std::size_t c) {
        const auto it = links.find(c);
        return (it == links.end() ? 0.0 : it->second) - tot[c] * k[i] / m2;
      };
      const double stay = gain(own);
      std::size_t best = own;
      double best_gain = stay;
      for (const auto& [c, w] : links) {  // ascending community id
        const double g = gain(c);
        if (g > best_gain + 1e-15) {
          best = c;
          best_gain = g;
        }
      }
      // Gain is in units of 2/m2 modularity.
      if (best != own && (best_gain - stay) * 2.0 / m2 > kModularityGainEpsilon) {
        comm[i] = best;
        improved = any = true;
      }
      tot[comm[i]] += k[i];
    }
  }
  return any;
}

/// Renumbers community ids by order of their smallest member.
inline std::size_t compact(std::vector<std::size_t>& comm) {
  std::map<std::size_t, std::size_t> remap;
  for (auto& c : comm) {
    auto [it, inserted] = remap.try_emplace(c, remap.size());
    c = it->second;
  }
  return remap.size();
}

inline Level aggregate(const Level& lv, const std::vector<std::size_t>& comm, std::size_t count) {
  Level next;
  next.n = count;
  next.adj.resize(count);
  next.self.assign(count, 0.0);
  for (std::size_t i = 0; i < lv.n; ++i) {
    next.self[comm[i]] += lv.self[i];
    for (const auto& [j, w] : lv.adj[i]) {
      if (comm[i] == comm[j]) {
        if (i < j) next.self[comm[i]] += w;
      } else {
        next.adj[comm[i]][comm[j]] += w;
      }
    }
  }
  return next;
}

}  // namespace louvain_detail

/// Community id per node. Ids are dense and ordered by smallest member, so
/// isolated nodes become singleton communities.
inline std::vector<std::size_t> louvain(const WeightedGraph& g) {
  using namespace louvain_detail;
  std::vector<std::size_t> membership(g.node_count);
  for (std::size_t i = 0; i < g.node_count; ++i) membership[i] = i;
  Level lv = from_graph(g);
  while (lv.n > 0) {
    std::vector<std::size_t> comm(lv.n);
    for (std::size_t i = 0; i < lv.n; ++i) comm[i] = i;
    if (!local_moves(lv, comm)) break;
    const std::size_t count = compact(comm);
    for (auto& m : membership) m = comm[m];
    if (count == lv.n) break;
    lv = aggregate(lv, comm, count);
  }
  compact(membership);
  return membership;
}

// ---------------------------------------------------------------------------
// Case communities

struct CommunityInfo {
  std::size_t id = 0;
  std::size_t size = 0;
  std::optional<double> appellant_win_rate;  // absent without determined members
};

struct CommunityPartition {
  std::map<std::string, std::size_t> community_of;  // doc_id -> community id
  std::vector<CommunityInfo> communities;           // indexed by id
};

/// Unweighted view of a case graph (shared-article counts only gate edges).
inline WeightedGraph to_weighted(const CaseGraph& g) {
  WeightedGraph w{g.nodes.size(), {}};
  for (const auto& e : g.edges) w.edges.push_back({e.a, e.b, 1.0});
  return w;
}

/// Collaboration graph weighted by the number of decided collaborations;
/// node indices follow `net.nodes`.
inline WeightedGraph to_weighted(const CollaborationNetwork& net) {
  WeightedGraph w{net.nodes.size(), {}};
  auto index = [&](const LawyerId& id) {
    return static_cast<std::size_t>(
        std::lower_bound(net.nodes.begin(), net.nodes.end(), id,
                         [](const LawyerStats& s, const LawyerId& key) { return s.id < key; }) -
        net.nodes.begin());
  };
  for (const auto& e : net.edges) {
    w.edges.push_back({index(e.a), index(e.b), static_cast<double>(e.collaborations())});
  }
  return w;
}

inline std::map<std::size_t, double> community_win_rate(const CommunityPartition& partition,
                                                        const std::map<std::string, Outcome>& outcomes) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> tally;  // (appellant wins, determined)
  for (const auto& [doc_id, c] : partition.community_of) {
    const auto it = outcomes.find(doc_id);
    if (it == outcomes.end() || it->second == Outcome::Undetermined) continue;
    auto& t = tally[c];
    ++t.second;
    if (it->second == Outcome::AppellantWins) ++t.first;
  }
  std::map<std::size_t, double> out;
  for (const auto& [c, t] : tally) out[c] = static_cast<double>(t.first) / static_cast<double>(t.second);
  return out;
}

/// Detects communities of the case graph, stores them on its nodes and fills
/// sizes and appellant win rates.
inline CommunityPartition detect_communities(CaseGraph& graph) {
  const auto membership = louvain(to_weighted(graph));
  CommunityPartition p;
  std::map<std::string, Outcome> outcomes;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    graph.nodes[i].community = membership[i];
    p.community_of[graph.nodes[i].doc_id] = membership[i];
    outcomes[graph.nodes[i].doc_id] = graph.nodes[i].outcome;
    if (membership[i] >= p.communities.size()) p.communities.resize(membership[i] + 1);
    ++p.communities[membership[i]].size;
  }
  for (std::size_t c = 0; c < p.communities.size(); ++c) p.communities[c].id = c;
  for (const auto& [c, rate] : community_win_rate(p, outcomes)) p.communities[c].appellant_win_rate = rate;
  return p;
}

}  // namespace courtnet
