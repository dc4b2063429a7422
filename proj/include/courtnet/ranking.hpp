#pragma once

// Lawyer rankings: experience, win rate and weighted PageRank on the
// opposing network.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "courtnet/error.hpp"
#include "courtnet/networks.hpp"

namespace courtnet {

/// Number of distinct judgments listing `lawyer` on either side.
inline std::size_t experience(const std::vector<CaseResult>& results, const LawyerId& lawyer) {
  std::set<std::string> docs;
  for (const auto& r : results) {
    if (network_detail::lists(r.appellant_lawyers, lawyer) || network_detail::lists(r.appellee_lawyers, lawyer)) {
      docs.insert(r.doc_id);
    }
  }
  if (docs.empty()) throw Error(Errc::UnknownLawyer, "no judgment lists lawyer '" + lawyer + "'");
  return docs.size();
}

/// wins / (wins + losses) over the lawyer's determined judgments.
inline double win_rate(const std::vector<CaseResult>& results, const LawyerId& lawyer) {
  const auto stats = lawyer_stats(results);
  const auto it = stats.find(lawyer);
  if (it == stats.end()) throw Error(Errc::UnknownLawyer, "no judgment lists lawyer '" + lawyer + "'");
  const std::size_t decided = it->second.wins + it->second.losses;
  if (decided == 0) throw Error(Errc::NoDeterminedCases, "lawyer '" + lawyer + "' has no determined judgment");
  return static_cast<double>(it->second.wins) / static_cast<double>(decided);
}

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-10;
  std::size_t max_iter = 10000;

  void validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw Error(Errc::InvalidParams, "damping must lie in (0, 1)");
    if (!(tol > 0.0)) throw Error(Errc::InvalidParams, "tol must be positive");
  }
};

struct PageRankResult {
  std::vector<double> scores;  // aligned with the network's nodes
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;  // last L1 change
};

/// Weighted directed PageRank by power iteration. Each node passes its score
/// along out-edges in proportion to their weights; nodes without out-edges
/// spread theirs uniformly. Stops when the L1 change drops below `tol`; when
/// `max_iter` is hit first the result is returned with converged = false.
inline PageRankResult pagerank(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                               const PageRankOptions& options = {}) {
  options.validate();
  if (n == 0) throw Error(Errc::EmptyNetwork, "PageRank needs at least one node");
  std::vector<double> out_weight(n, 0.0);
  for (const auto& [u, v, w] : edges) out_weight[u] += w;

  const double base = (1.0 - options.damping) / static_cast<double>(n);
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  PageRankResult result;
  while (result.iterations < options.max_iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (out_weight[i] <= 0.0) dangling += x[i];
    std::fill(next.begin(), next.end(), base + options.damping * dangling / static_cast<double>(n));
    for (const auto& [u, v, w] : edges) {
      if (out_weight[u] > 0.0) next[v] += options.damping * x[u] * w / out_weight[u];
    }
    double sum = 0.0;
    for (double s : next) sum += s;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= sum;
      change += std::abs(next[i] - x[i]);
    }
    x.swap(next);
    ++result.iterations;
    result.residual = change;
    if (change < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(x);
  return result;
}

inline PageRankResult pagerank(const OpposingNetwork& network, const PageRankOptions& options = {}) {
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  edges.reserve(network.edges.size());
  for (const auto& e : network.edges) {
    const auto u = network.index_of(e.from);
    const auto v = network.index_of(e.to);
    if (u && v) edges.emplace_back(*u, *v, e.weight);
  }
  return pagerank(network.nodes.size(), edges, options);
}

struct LawyerRanking {
  LawyerId lawyer;
  std::string display;
  std::size_t experience = 0;
  std::size_t wins = 0;
  std::size_t losses = 0;
  double win_rate = 0.0;  // 0 when the lawyer has no determined judgment
  double pagerank = 0.0;
};

enum class RankMetric { Experience, WinRate, PageRank };

/// Descending by the metric. Win-rate ties go to the more experienced
/// lawyer; remaining ties are broken by canonical name.
inline void sort_rankings(std::vector<LawyerRanking>& rows, RankMetric metric) {
  std::sort(rows.begin(), rows.end(), [metric](const LawyerRanking& x, const LawyerRanking& y) {
    switch (metric) {
      case RankMetric::Experience:
        if (x.experience != y.experience) return x.experience > y.experience;
        break;
      case RankMetric::WinRate:
        if (x.win_rate != y.win_rate) return x.win_rate > y.win_rate;
        if (x.experience != y.experience) return x.experience > y.experience;
        break;
      case RankMetric::PageRank:
        if (x.pagerank != y.pagerank) return x.pagerank > y.pagerank;
        break;
    }
    return x.lawyer < y.lawyer;
  });
}

/// One row per lawyer of the (pruned) opposing network.
inline std::vector<LawyerRanking> rank_table(const std::vector<CaseResult>& results, const OpposingNetwork& network,
                                             const PageRankOptions& options = {},
                                             RankMetric order = RankMetric::PageRank) {
  std::vector<LawyerRanking> rows;
  if (network.nodes.empty()) return rows;
  const auto pr = pagerank(network, options);
  const auto stats = lawyer_stats(results);
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    const auto& node = network.nodes[i];
    const auto it = stats.find(node.id);
    const LawyerStats& s = it == stats.end() ? node : it->second;
    LawyerRanking row{node.id, s.display, s.total_cases, s.wins, s.losses, 0.0, pr.scores[i]};
    if (s.wins + s.losses > 0) row.win_rate = static_cast<double>(s.wins) / static_cast<double>(s.wins + s.losses);
    rows.push_back(std::move(row));
  }
  sort_rankings(rows, order);
  return rows;
}

}  // namespace courtnet
