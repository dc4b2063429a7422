#pragma once

// Lawyer networks (opposing and collaborating) and the case-similarity graph.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "courtnet/error.hpp"
#include "courtnet/extract.hpp"
#include "courtnet/text.hpp"
#include "courtnet/types.hpp"

namespace courtnet {

/// Canonical lawyer name; equal strings denote the same lawyer.
using LawyerId = std::string;

/// One judgment as seen by the networks. Undetermined outcomes are admitted
/// so that experience counts every judgment; win/loss tallies skip them.
struct CaseResult {
  std::string doc_id;
  std::vector<LawyerName> appellant_lawyers;
  std::vector<LawyerName> appellee_lawyers;
  Outcome outcome = Outcome::Undetermined;

  bool determined() const { return outcome != Outcome::Undetermined; }
};

struct NetworkParams {
  double a = 2.0;  // weight of a win as the appellant's lawyer
  double b = 1.0;  // weight of a win as the appellee's lawyer
  std::size_t min_cases = 2;
  std::size_t collab_min = 2;

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0)) throw Error(Errc::InvalidParams, "a and b must be positive");
    if (!(a >= b)) throw Error(Errc::InvalidParams, "a must be at least b");
  }
};

/// Cases with at least one lawyer on some side; others are dropped.
inline std::vector<CaseResult> make_case_results(const std::vector<ExtractedCase>& cases) {
  std::vector<CaseResult> out;
  for (const auto& c : cases) {
    if (!c.has_lawyers()) continue;
    out.push_back({c.doc_id, c.appellant_lawyers, c.appellee_lawyers, c.vote.outcome});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-lawyer tallies

struct LawyerStats {
  LawyerId id;
  std::string display;
  std::size_t total_cases = 0;
  std::size_t wins = 0;
  std::size_t losses = 0;
};

namespace network_detail {

inline bool lists(const std::vector<LawyerName>& side, const LawyerId& id) {
  return std::any_of(side.begin(), side.end(), [&](const LawyerName& l) { return l.canonical == id; });
}

/// Cases sorted by doc_id so that every derived quantity, including which
/// display spelling is kept, is independent of input order.
inline std::vector<const CaseResult*> canonical_order(const std::vector<CaseResult>& results) {
  std::vector<const CaseResult*> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const CaseResult* x, const CaseResult* y) {
    return x->doc_id < y->doc_id;
  });
  return out;
}

}  // namespace network_detail

/// Experience, wins and losses for every lawyer in `results`, keyed by id.
inline std::map<LawyerId, LawyerStats> lawyer_stats(const std::vector<CaseResult>& results) {
  std::map<LawyerId, LawyerStats> stats;
  for (const CaseResult* r : network_detail::canonical_order(results)) {
    std::set<LawyerId> in_case;
    auto visit = [&](const std::vector<LawyerName>& side, bool appellant_side) {
      for (const auto& l : side) {
        auto [it, inserted] = stats.try_emplace(l.canonical);
        if (inserted) {
          it->second.id = l.canonical;
          it->second.display = l.display;
        }
        if (!in_case.insert(l.canonical).second) continue;
        ++it->second.total_cases;
        const bool both_sides = network_detail::lists(appellant_side ? r->appellee_lawyers : r->appellant_lawyers,
                                                      l.canonical);
        if (!r->determined() || both_sides) continue;
        const bool won = (r->outcome == Outcome::AppellantWins) == appellant_side;
        ++(won ? it->second.wins : it->second.losses);
      }
    };
    visit(r->appellant_lawyers, true);
    visit(r->appellee_lawyers, false);
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Opposing network

using PairWins = std::map<std::pair<LawyerId, LawyerId>, double>;

struct PairWinsResult {
  PairWins wins;                    // (i, j) -> weighted wins of i over j
  std::size_t self_pairs_dropped = 0;
};

/// Weighted wins of every lawyer over every opponent: a lawyer on the
/// winning side earns `a` per case when representing the appellant and `b`
/// when representing the appellee, once per cross-side opponent.
inline PairWinsResult pair_wins_detailed(const std::vector<CaseResult>& results, const NetworkParams& params) {
  PairWinsResult out;
  for (const auto& r : results) {
    if (!r.determined()) continue;
    const bool appellant_won = r.outcome == Outcome::AppellantWins;
    const auto& winners = appellant_won ? r.appellant_lawyers : r.appellee_lawyers;
    const auto& losers = appellant_won ? r.appellee_lawyers : r.appellant_lawyers;
    const double credit = appellant_won ? params.a : params.b;
    for (const auto& w : winners) {
      for (const auto& l : losers) {
        if (w.canonical == l.canonical) {
          ++out.self_pairs_dropped;
          continue;
        }
        out.wins[{w.canonical, l.canonical}] += credit;
      }
    }
  }
  return out;
}

inline PairWins pair_wins(const std::vector<CaseResult>& results, const NetworkParams& params) {
  return pair_wins_detailed(results, params).wins;
}

/// |fw - bw| * ln(fw + bw + 1).
inline double collapse_weight(double wins_fw, double wins_bw) {
  return std::abs(wins_fw - wins_bw) * std::log(wins_fw + wins_bw + 1.0);
}

struct OpposingEdge {
  LawyerId from;  // the pair member with fewer wins
  LawyerId to;    // the pair member with more wins
  double weight = 0.0;
  double wins_fw = 0.0;  // wins of `to` over `from`
  double wins_bw = 0.0;  // wins of `from` over `to`
};

/// Collapsed edge for one unordered pair, or nullopt when the pair is even.
/// `wins_ij` / `wins_ji` are the wins of i over j and of j over i.
inline std::optional<OpposingEdge> collapse_pair(const LawyerId& i, const LawyerId& j, double wins_ij, double wins_ji) {
  const double delta = wins_ij - wins_ji;
  // Sums of the same a/b credits can differ by rounding only.
  if (std::abs(delta) <= 1e-12 * std::max(1.0, wins_ij + wins_ji)) return std::nullopt;
  if (delta > 0) return OpposingEdge{j, i, collapse_weight(wins_ij, wins_ji), wins_ij, wins_ji};
  return OpposingEdge{i, j, collapse_weight(wins_ji, wins_ij), wins_ji, wins_ij};
}

struct OpposingNetwork {
  std::vector<LawyerStats> nodes;   // sorted by id
  std::vector<OpposingEdge> edges;  // sorted by (from, to)
  std::size_t self_pairs_dropped = 0;

  std::optional<std::size_t> index_of(const LawyerId& id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const LawyerStats& n, const LawyerId& key) { return n.id < key; });
    if (it == nodes.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
  }
};

/// Directed loser-to-winner graph with one collapsed edge per opposed pair.
/// Lawyers with fewer than `min_cases` judgments are removed after weighting,
/// together with their edges.
inline OpposingNetwork build_opposing_network(const std::vector<CaseResult>& results, const NetworkParams& params) {
  params.validate();
  const auto tallies = pair_wins_detailed(results, params);
  const auto stats = lawyer_stats(results);

  OpposingNetwork net;
  net.self_pairs_dropped = tallies.self_pairs_dropped;
  for (const auto& [id, s] : stats) {
    if (s.total_cases >= params.min_cases) net.nodes.push_back(s);
  }
  auto kept = [&](const LawyerId& id) { return net.index_of(id).has_value(); };

  std::set<std::pair<LawyerId, LawyerId>> visited;
  for (const auto& [key, w] : tallies.wins) {
    const auto& [i, j] = key;
    const auto unordered = i < j ? std::pair{i, j} : std::pair{j, i};
    if (!visited.insert(unordered).second) continue;
    const auto reverse = tallies.wins.find({j, i});
    const double wins_ji = reverse == tallies.wins.end() ? 0.0 : reverse->second;
    auto edge = collapse_pair(i, j, w, wins_ji);
    if (edge && kept(edge->from) && kept(edge->to)) net.edges.push_back(std::move(*edge));
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const OpposingEdge& x, const OpposingEdge& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  return net;
}

// ---------------------------------------------------------------------------
// Collaboration network

struct CollaborationEdge {
  LawyerId a;  // a < b
  LawyerId b;
  long wins = 0;
  long losses = 0;

  long weight() const { return wins - losses; }
  long collaborations() const { return wins + losses; }
};

struct CollaborationNetwork {
  std::vector<LawyerStats> nodes;       // endpoints of retained edges, sorted by id
  std::vector<CollaborationEdge> edges;  // sorted by (a, b)
};

/// Undirected graph of lawyers sharing a side, weighted by joint wins minus
/// joint losses. Pairs with fewer than `collab_min` decided collaborations
/// are dropped.
inline CollaborationNetwork build_collaboration_network(const std::vector<CaseResult>& results,
                                                        const NetworkParams& params) {
  params.validate();
  std::map<std::pair<LawyerId, LawyerId>, CollaborationEdge> pairs;
  for (const auto& r : results) {
    if (!r.determined()) continue;
    auto tally = [&](const std::vector<LawyerName>& side, bool won) {
      for (std::size_t p = 0; p < side.size(); ++p) {
        for (std::size_t q = p + 1; q < side.size(); ++q) {
          if (side[p].canonical == side[q].canonical) continue;
          auto key = std::minmax(side[p].canonical, side[q].canonical);
          auto& e = pairs[{key.first, key.second}];
          e.a = key.first;
          e.b = key.second;
          ++(won ? e.wins : e.losses);
        }
      }
    };
    tally(r.appellant_lawyers, r.outcome == Outcome::AppellantWins);
    tally(r.appellee_lawyers, r.outcome == Outcome::AppelleeWins);
  }
  CollaborationNetwork net;
  std::set<LawyerId> endpoints;
  for (auto& [key, e] : pairs) {
    if (static_cast<std::size_t>(e.collaborations()) < params.collab_min) continue;
    endpoints.insert(e.a);
    endpoints.insert(e.b);
    net.edges.push_back(std::move(e));
  }
  const auto stats = lawyer_stats(results);
  for (const auto& id : endpoints) net.nodes.push_back(stats.at(id));
  return net;
}

// ---------------------------------------------------------------------------
// Case graph

struct CaseNode {
  std::string doc_id;
  Outcome outcome = Outcome::Undetermined;
  std::optional<std::size_t> community;
};

struct CaseEdge {
  std::size_t a = 0;  // node indices, a < b
  std::size_t b = 0;
  std::size_t shared = 0;

  bool operator==(const CaseEdge&) const = default;
};

struct CaseGraph {
  std::vector<CaseNode> nodes;  // sorted by doc_id
  std::vector<CaseEdge> edges;  // sorted by (a, b)
  std::size_t k = 1;
};

/// Links two cases when they cite at least `k` common articles. Uses an
/// inverted index from article to citing cases.
inline CaseGraph build_case_graph(const std::map<std::string, std::set<ArticleRef>>& articles,
                                  const std::map<std::string, Outcome>& outcomes, std::size_t k) {
  if (k < 1) throw Error(Errc::InvalidParams, "k must be at least 1");
  CaseGraph g;
  g.k = k;
  std::vector<const std::set<ArticleRef>*> cited;
  for (const auto& [doc_id, refs] : articles) {
    const auto o = outcomes.find(doc_id);
    g.nodes.push_back({doc_id, o == outcomes.end() ? Outcome::Undetermined : o->second, std::nullopt});
    cited.push_back(&refs);
  }
  std::map<ArticleRef, std::vector<std::size_t>> postings;
  for (std::size_t i = 0; i < cited.size(); ++i)
    for (const auto& ref : *cited[i]) postings[ref].push_back(i);

  std::vector<std::size_t> counts(g.nodes.size(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < cited.size(); ++i) {
    touched.clear();
    for (const auto& ref : *cited[i]) {
      const auto& list = postings[ref];
      // Postings are ascending; only partners after i are counted.
      for (auto it = std::upper_bound(list.begin(), list.end(), i); it != list.end(); ++it) {
        if (counts[*it]++ == 0) touched.push_back(*it);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      if (counts[j] >= k) g.edges.push_back({i, j, counts[j]});
      counts[j] = 0;
    }
  }
  return g;
}

}  // namespace courtnet
