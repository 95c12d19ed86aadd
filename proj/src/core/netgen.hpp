#pragma once

#include <cstdint>
#include <vector>

#include "core/model.hpp"

namespace bpo {

// Directed follower graph: an edge leader -> follower means the follower sees
// the leader's posts. Undirected generators emit both directions per edge.
struct SocialGraph {
  int32_t n_nodes = 0;
  std::vector<std::vector<int32_t>> followers;  // followers[u] = users following u
  std::vector<double> post_rates;               // lambda
  std::vector<double> repost_rates;             // mu

  int64_t edge_count() const;
  std::vector<int64_t> follower_counts() const;
  void set_uniform_rates(double lambda, double mu);
};

// Preferential attachment seeded with a clique on the first `a` nodes; each
// later node attaches to `a` distinct existing nodes in proportion to degree.
// Attachment edges number a*(n-a); the clique adds C(a,2) more.
SocialGraph gen_ab(int32_t n, int32_t a, uint64_t seed);

// Uniform random graph with edge probability a*(n-a)/C(n,2), so the expected
// edge count matches the preferential-attachment generator.
SocialGraph gen_er(int32_t n, int32_t a, uint64_t seed);
SocialGraph gen_er_p(int32_t n, double p, uint64_t seed);

struct FeedSimConfig {
  int32_t feed_size = 20;
  int64_t warmup_events = -1;          // -1: 50 * n
  int32_t snapshots = 200;
  int64_t events_between_snapshots = -1;  // -1: n
  uint64_t seed = 0;
};

// Event-driven Newsfeed simulation. Posts enter followers' fixed-size FIFO
// feeds; reposts copy a uniformly chosen item (origin preserved) from the
// actor's own feed into the followers' feeds. After warmup, snapshots record
// per-viewer origin fractions; the estimate is their mean over snapshots.
// Self-origin items are dropped at matrix construction, so viewer column sums
// stay at most 1.
ImpressionMatrix estimate_impressions(const SocialGraph& g, const FeedSimConfig& cfg);

}  // namespace bpo
