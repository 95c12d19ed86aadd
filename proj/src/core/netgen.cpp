#include "core/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "core/rng.hpp"

namespace bpo {

int64_t SocialGraph::edge_count() const {
  int64_t total = 0;
  for (const auto& f : followers) total += static_cast<int64_t>(f.size());
  return total;
}

std::vector<int64_t> SocialGraph::follower_counts() const {
  std::vector<int64_t> counts(n_nodes);
  for (int32_t u = 0; u < n_nodes; ++u) counts[u] = static_cast<int64_t>(followers[u].size());
  return counts;
}

void SocialGraph::set_uniform_rates(double lambda, double mu) {
  if (!(lambda >= 0.0) || !(mu >= 0.0)) throw std::invalid_argument("rates must be nonnegative");
  post_rates.assign(n_nodes, lambda);
  repost_rates.assign(n_nodes, mu);
}

namespace {

SocialGraph make_graph(int32_t n) {
  SocialGraph g;
  g.n_nodes = n;
  g.followers.resize(n);
  g.post_rates.assign(n, 1.0);
  g.repost_rates.assign(n, 0.0);
  return g;
}

void add_undirected(SocialGraph& g, int32_t u, int32_t v) {
  g.followers[u].push_back(v);
  g.followers[v].push_back(u);
}

}  // namespace

SocialGraph gen_ab(int32_t n, int32_t a, uint64_t seed) {
  if (a < 1 || a >= n) throw std::invalid_argument("preferential attachment requires 1 <= a < n");
  SocialGraph g = make_graph(n);
  Rng rng(seed);

  // endpoint list: each node appears once per incident edge, so uniform draws
  // from it sample existing nodes in proportion to degree
  std::vector<int32_t> endpoints;
  endpoints.reserve(2u * static_cast<size_t>(a) * static_cast<size_t>(n));
  for (int32_t u = 0; u < a; ++u)
    for (int32_t v = u + 1; v < a; ++v) {
      add_undirected(g, u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  if (a == 1) endpoints.push_back(0);  // degenerate clique has no edges to sample from

  std::vector<int32_t> targets;
  for (int32_t u = a; u < n; ++u) {
    targets.clear();
    while (static_cast<int32_t>(targets.size()) < a) {
      const int32_t cand = endpoints[rng.next_below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end())
        targets.push_back(cand);
    }
    for (int32_t v : targets) {
      add_undirected(g, u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return g;
}

SocialGraph gen_er(int32_t n, int32_t a, uint64_t seed) {
  if (n < 1 || a < 0) throw std::invalid_argument("uniform graph requires n >= 1, a >= 0");
  const double pairs = 0.5 * static_cast<double>(n) * (n - 1);
  const double p = pairs > 0 ? static_cast<double>(a) * (n - a) / pairs : 0.0;
  return gen_er_p(n, p, seed);
}

SocialGraph gen_er_p(int32_t n, double p, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("uniform graph requires n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability out of [0,1]");
  SocialGraph g = make_graph(n);
  if (p == 0.0) return g;
  Rng rng(seed);

  if (p >= 1.0) {
    for (int32_t u = 0; u < n; ++u)
      for (int32_t v = u + 1; v < n; ++v) add_undirected(g, u, v);
    return g;
  }

  // geometric skips over the ordered pair list
  const double log1mp = std::log1p(-p);
  const int64_t total = static_cast<int64_t>(n) * (n - 1) / 2;
  int64_t idx = -1;
  while (true) {
    const double u01 = std::max(rng.next_double(), 1e-300);
    idx += 1 + static_cast<int64_t>(std::floor(std::log(u01) / log1mp));
    if (idx >= total) break;
    // unrank pair index -> (u, v)
    int64_t row = 0, before = 0;
    {
      // binary search over the row with cumulative pair counts
      int64_t lo = 0, hi = n - 1;
      while (lo < hi) {
        const int64_t mid = (lo + hi) / 2;
        const int64_t cum = (mid + 1) * (2 * n - mid - 2) / 2;  // pairs with u <= mid
        if (cum > idx)
          hi = mid;
        else
          lo = mid + 1;
      }
      row = lo;
      before = row * (2 * n - row - 1) / 2;
    }
    const int32_t u = static_cast<int32_t>(row);
    const int32_t v = static_cast<int32_t>(row + 1 + (idx - before));
    add_undirected(g, u, v);
  }
  return g;
}

namespace {

// fixed-capacity FIFO of origin ids, newest first
class Feed {
 public:
  void init(int32_t capacity) {
    items_.assign(capacity, -1);
    head_ = 0;
    count_ = 0;
  }
  void push(int32_t origin) {
    head_ = head_ == 0 ? static_cast<int32_t>(items_.size()) - 1 : head_ - 1;
    items_[head_] = origin;
    if (count_ < static_cast<int32_t>(items_.size())) count_++;
  }
  int32_t size() const { return count_; }
  int32_t at(int32_t i) const {  // i = 0 is newest
    return items_[(head_ + i) % static_cast<int32_t>(items_.size())];
  }

 private:
  std::vector<int32_t> items_;
  int32_t head_ = 0;
  int32_t count_ = 0;
};

}  // namespace

ImpressionMatrix estimate_impressions(const SocialGraph& g, const FeedSimConfig& cfg) {
  if (cfg.feed_size < 1) throw std::invalid_argument("feed size must be >= 1");
  if (cfg.snapshots < 1) throw std::invalid_argument("snapshot count must be >= 1");
  const int32_t n = g.n_nodes;
  double total_rate = 0.0;
  for (int32_t u = 0; u < n; ++u) total_rate += g.post_rates[u] + g.repost_rates[u];
  if (!(total_rate > 0.0)) throw std::invalid_argument("all user rates are zero");

  const int64_t warmup = cfg.warmup_events >= 0 ? cfg.warmup_events : 50ll * n;
  const int64_t between =
      cfg.events_between_snapshots >= 0 ? cfg.events_between_snapshots : static_cast<int64_t>(n);

  // cumulative rate table for categorical event draws
  std::vector<double> cum(n);
  double acc = 0.0;
  for (int32_t u = 0; u < n; ++u) {
    acc += g.post_rates[u] + g.repost_rates[u];
    cum[u] = acc;
  }

  std::vector<Feed> feeds(n);
  for (auto& f : feeds) f.init(cfg.feed_size);
  Rng rng(cfg.seed);

  auto step = [&]() {
    const double x = rng.next_double() * acc;
    const int32_t u = static_cast<int32_t>(
        std::lower_bound(cum.begin(), cum.end(), x) - cum.begin());
    const int32_t actor = std::min(u, n - 1);
    const double rate_sum = g.post_rates[actor] + g.repost_rates[actor];
    const bool is_post = rng.next_double() * rate_sum < g.post_rates[actor];
    int32_t origin = actor;
    if (!is_post) {
      if (feeds[actor].size() == 0) return;  // nothing to repost
      origin = feeds[actor].at(static_cast<int32_t>(rng.next_below(feeds[actor].size())));
    }
    for (int32_t f : g.followers[actor]) feeds[f].push(origin);
  };

  for (int64_t e = 0; e < warmup; ++e) step();

  std::unordered_map<int64_t, double> fractions;  // (source, viewer) -> accumulated fraction
  std::vector<int32_t> scratch;
  for (int32_t snap = 0; snap < cfg.snapshots; ++snap) {
    if (snap > 0)
      for (int64_t e = 0; e < between; ++e) step();
    for (int32_t viewer = 0; viewer < n; ++viewer) {
      const int32_t count = feeds[viewer].size();
      if (count == 0) continue;
      scratch.clear();
      for (int32_t i = 0; i < count; ++i) scratch.push_back(feeds[viewer].at(i));
      std::sort(scratch.begin(), scratch.end());
      for (int32_t i = 0; i < count;) {
        int32_t j = i;
        while (j < count && scratch[j] == scratch[i]) ++j;
        const int64_t key = static_cast<int64_t>(scratch[i]) * n + viewer;
        fractions[key] += static_cast<double>(j - i) / count;
        i = j;
      }
    }
  }

  std::vector<ImpressionEntry> entries;
  entries.reserve(fractions.size());
  for (const auto& [key, sum] : fractions) {
    const int32_t source = static_cast<int32_t>(key / n);
    const int32_t viewer = static_cast<int32_t>(key % n);
    entries.push_back({source, viewer, sum / cfg.snapshots});
  }
  // self-origin entries are dropped by the matrix constructor
  return ImpressionMatrix(n, std::move(entries));
}

}  // namespace bpo
