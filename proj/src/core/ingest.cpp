#include "core/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bpo {

namespace {

bool parse_int(std::string_view s, int64_t& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_real(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r'))
      ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',' && line[j] != '\r')
      ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace

ParsedTrace parse_trace_text(const std::string& text) {
  ParsedTrace out;
  std::istringstream in(text);
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    const auto fields = split_fields(view);
    if (fields.empty()) continue;
    TraceRecord rec;
    if (fields.size() != 4 || !parse_int(fields[0], rec.tweet_id) ||
        !parse_real(fields[1], rec.timestamp) || !parse_int(fields[2], rec.user_id) ||
        !parse_int(fields[3], rec.retweet_id)) {
      out.rejects.push_back("line " + std::to_string(line_no) + ": " + line);
      continue;
    }
    out.records.push_back(rec);
  }
  return out;
}

ParsedTrace parse_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_text(buf.str());
}

int32_t UserRates::index_of(int64_t user_id) const {
  for (size_t i = 0; i < user_ids.size(); ++i)
    if (user_ids[i] == user_id) return static_cast<int32_t>(i);
  return -1;
}

UserRates derive_rates(const std::vector<TraceRecord>& records, double window_length) {
  if (records.empty()) throw std::invalid_argument("trace has no records");
  if (!(window_length > 0.0)) throw std::invalid_argument("window length must be positive");

  UserRates out;
  std::unordered_map<int64_t, int32_t> index;
  double t_min = records.front().timestamp, t_max = records.front().timestamp;
  for (const auto& rec : records) {
    t_min = std::min(t_min, rec.timestamp);
    t_max = std::max(t_max, rec.timestamp);
    if (index.emplace(rec.user_id, static_cast<int32_t>(out.user_ids.size())).second)
      out.user_ids.push_back(rec.user_id);
  }
  out.windows = std::max<int64_t>(1, static_cast<int64_t>(std::ceil((t_max - t_min) / window_length)));
  out.lambda.assign(out.user_ids.size(), 0.0);
  out.mu.assign(out.user_ids.size(), 0.0);
  for (const auto& rec : records) {
    const int32_t u = index[rec.user_id];
    if (rec.retweet_id == -1)
      out.lambda[u] += 1.0;
    else
      out.mu[u] += 1.0;
  }
  for (auto& v : out.lambda) v /= static_cast<double>(out.windows);
  for (auto& v : out.mu) v /= static_cast<double>(out.windows);
  return out;
}

StarGraphResult build_star_graph(const std::vector<TraceRecord>& records, const UserRates& rates) {
  StarGraphResult out;
  out.graph.n_nodes = static_cast<int32_t>(rates.user_ids.size());
  out.graph.followers.resize(out.graph.n_nodes);
  out.graph.post_rates = rates.lambda;
  out.graph.repost_rates = rates.mu;

  std::unordered_map<int64_t, int64_t> author_of_tweet;
  for (const auto& rec : records) author_of_tweet.emplace(rec.tweet_id, rec.user_id);
  std::unordered_map<int64_t, int32_t> index;
  for (size_t i = 0; i < rates.user_ids.size(); ++i)
    index.emplace(rates.user_ids[i], static_cast<int32_t>(i));

  std::set<std::pair<int32_t, int32_t>> seen;
  for (const auto& rec : records) {
    if (rec.retweet_id == -1) continue;
    const auto it = author_of_tweet.find(rec.retweet_id);
    if (it == author_of_tweet.end()) {
      out.dangling_retweets++;
      continue;
    }
    const int32_t leader = index.at(it->second);
    const int32_t follower = index.at(rec.user_id);
    if (leader == follower) continue;  // self-retweet
    if (seen.emplace(leader, follower).second) out.graph.followers[leader].push_back(follower);
  }
  return out;
}

TierAssignment classify_influencers(const SocialGraph& g, const std::vector<double>& lambda) {
  if (static_cast<int32_t>(lambda.size()) != g.n_nodes)
    throw std::invalid_argument("rate vector does not match the graph");
  const auto counts = g.follower_counts();
  std::vector<int64_t> candidate_counts;
  for (int32_t u = 0; u < g.n_nodes; ++u)
    if (lambda[u] > 0.0 && counts[u] >= 1) candidate_counts.push_back(counts[u]);
  if (candidate_counts.empty()) throw std::invalid_argument("no influencer candidates");
  std::sort(candidate_counts.begin(), candidate_counts.end());

  const auto decile = [&](double p) {
    const auto m = static_cast<double>(candidate_counts.size());
    const auto rank = std::max<int64_t>(1, static_cast<int64_t>(std::floor(p * m)));
    return candidate_counts[rank - 1];
  };

  TierAssignment out;
  out.nano_threshold = decile(0.6);
  out.macro_threshold = decile(0.9);
  out.tiers.assign(g.n_nodes, Tier::NonInfluencer);
  for (int32_t u = 0; u < g.n_nodes; ++u) {
    if (!(lambda[u] > 0.0) || counts[u] < 1) continue;
    if (counts[u] <= out.nano_threshold)
      out.tiers[u] = Tier::Nano;
    else if (counts[u] <= out.macro_threshold)
      out.tiers[u] = Tier::Micro;
    else
      out.tiers[u] = Tier::Macro;
  }
  return out;
}

std::vector<double> default_costs(const SocialGraph& g, CostScale scale) {
  const auto counts = g.follower_counts();
  std::vector<double> costs(g.n_nodes);
  for (int32_t u = 0; u < g.n_nodes; ++u) {
    costs[u] = 2.0 * static_cast<double>(counts[u]);
    if (scale == CostScale::PerThousand) costs[u] /= 1000.0;
  }
  return costs;
}

}  // namespace bpo
