#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/netgen.hpp"

namespace bpo {

// one post from an activity log; retweet_id == -1 marks a self-post
struct TraceRecord {
  int64_t tweet_id = 0;
  double timestamp = 0.0;
  int64_t user_id = 0;
  int64_t retweet_id = -1;
};

struct ParsedTrace {
  std::vector<TraceRecord> records;
  std::vector<std::string> rejects;  // malformed lines, "line <k>: <content>"
};

// Whitespace- or comma-separated 4-field records, one per line. Blank lines
// and '#' comments are skipped; malformed lines are collected, not fatal.
ParsedTrace parse_trace(const std::string& path);
ParsedTrace parse_trace_text(const std::string& text);

struct UserRates {
  std::vector<int64_t> user_ids;  // distinct authors in first-appearance order
  std::vector<double> lambda;     // self-posts per window
  std::vector<double> mu;         // re-posts per window
  int64_t windows = 1;

  int32_t index_of(int64_t user_id) const;  // -1 when absent
};

// Empirical post and re-post rates. The window count is ceil(span / length)
// with span taken from the record timestamps, at least one window.
UserRates derive_rates(const std::vector<TraceRecord>& records, double window_length);

struct StarGraphResult {
  SocialGraph graph;                // nodes indexed like UserRates.user_ids
  int64_t dangling_retweets = 0;    // retweet targets outside the trace
};

// Directed leader -> follower edge per distinct (author, retweeter) pair,
// resolved through the tweet-id index. Self-retweets are dropped.
StarGraphResult build_star_graph(const std::vector<TraceRecord>& records,
                                 const UserRates& rates);

struct TierAssignment {
  std::vector<Tier> tiers;       // per node
  int64_t nano_threshold = 0;    // 6th decile of candidate follower counts
  int64_t macro_threshold = 0;   // 9th decile
};

// Candidates are users with positive posting rate and at least one follower.
// Decile cuts use rank floor(p*M) over the sorted candidate follower counts;
// ties at a threshold fall to the lower tier.
TierAssignment classify_influencers(const SocialGraph& g, const std::vector<double>& lambda);

enum class CostScale { PerThousand, Unit };

// market-practice price per post: 2 * followers, optionally per thousand
std::vector<double> default_costs(const SocialGraph& g, CostScale scale);

}  // namespace bpo
