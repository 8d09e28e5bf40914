#include "ontoekg/matching.hpp"

#include <algorithm>
#include <queue>

namespace ontoekg {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

struct HopcroftKarp {
  const BipartiteAdjacency& adj;
  std::vector<std::size_t> match_l, match_r, dist;

  HopcroftKarp(const BipartiteAdjacency& a, std::size_t n_right)
      : adj(a), match_l(a.size(), kUnmatched), match_r(n_right, kUnmatched), dist(a.size()) {}

  bool bfs() {
    std::queue<std::size_t> q;
    for (std::size_t l = 0; l < adj.size(); ++l) {
      dist[l] = match_l[l] == kUnmatched ? 0 : kInf;
      if (dist[l] == 0) q.push(l);
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (std::size_t r : adj[l]) {
        const std::size_t next = match_r[r];
        if (next == kUnmatched) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t l) {
    for (std::size_t r : adj[l]) {
      const std::size_t next = match_r[r];
      if (next == kUnmatched || (dist[next] == dist[l] + 1 && dfs(next))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  }

  void run() {
    while (bfs()) {
      for (std::size_t l = 0; l < adj.size(); ++l) {
        if (match_l[l] == kUnmatched) dfs(l);
      }
    }
  }
};

// Alternating-path search over the vertices still in play.
struct Augmenter {
  const BipartiteAdjacency& adj;
  const std::vector<bool>& left_alive;
  const std::vector<bool>& right_alive;
  std::vector<std::size_t>& match_l;
  std::vector<std::size_t>& match_r;
  std::vector<bool> seen;

  bool dfs(std::size_t l) {
    for (std::size_t r : adj[l]) {
      if (!right_alive[r] || seen[r]) continue;
      seen[r] = true;
      if (match_r[r] == kUnmatched || dfs(match_r[r])) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    return false;
  }

  bool augment_once() {
    seen.assign(match_r.size(), false);
    for (std::size_t l = 0; l < adj.size(); ++l) {
      if (left_alive[l] && match_l[l] == kUnmatched && dfs(l)) return true;
    }
    return false;
  }
};

}  // namespace

std::vector<std::size_t> hopcroft_karp(const BipartiteAdjacency& adj, std::size_t n_right) {
  HopcroftKarp hk(adj, n_right);
  hk.run();
  return hk.match_l;
}

std::vector<std::pair<std::size_t, std::size_t>> lexicographic_max_matching(
    const BipartiteAdjacency& adj, std::size_t n_right) {
  BipartiteAdjacency sorted = adj;
  for (auto& row : sorted) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  HopcroftKarp hk(sorted, n_right);
  hk.run();
  std::vector<std::size_t> match_l = std::move(hk.match_l);
  std::vector<std::size_t> match_r = std::move(hk.match_r);

  // Fix left vertices in order, each to the smallest partner that still
  // admits a maximum matching of the remaining graph. `match` is always a
  // maximum matching of the vertices still alive.
  std::vector<bool> left_alive(sorted.size(), true);
  std::vector<bool> right_alive(n_right, true);
  std::vector<std::pair<std::size_t, std::size_t>> result;

  for (std::size_t l = 0; l < sorted.size(); ++l) {
    std::size_t chosen = kUnmatched;
    for (std::size_t r : sorted[l]) {
      if (!right_alive[r]) continue;
      if (match_l[l] == r) {
        chosen = r;
        break;
      }
      auto trial_l = match_l;
      auto trial_r = match_r;
      const std::size_t old_r = trial_l[l];
      const std::size_t old_l = trial_r[r];
      if (old_r != kUnmatched) trial_r[old_r] = kUnmatched;
      if (old_l != kUnmatched) trial_l[old_l] = kUnmatched;
      trial_l[l] = r;
      trial_r[r] = l;
      if (old_r == kUnmatched || old_l == kUnmatched) {
        // Only one matched edge displaced: size is unchanged.
        match_l = std::move(trial_l);
        match_r = std::move(trial_r);
        chosen = r;
        break;
      }
      left_alive[l] = false;
      right_alive[r] = false;
      Augmenter aug{sorted, left_alive, right_alive, trial_l, trial_r, {}};
      const bool ok = aug.augment_once();
      left_alive[l] = true;
      right_alive[r] = true;
      if (ok) {
        match_l = std::move(trial_l);
        match_r = std::move(trial_r);
        chosen = r;
        break;
      }
    }
    left_alive[l] = false;
    if (chosen != kUnmatched) {
      right_alive[chosen] = false;
      result.emplace_back(l, chosen);
    }
  }
  return result;
}

}  // namespace ontoekg
