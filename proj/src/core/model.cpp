#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bpo {

ImpressionMatrix::ImpressionMatrix(int32_t n_users, std::vector<ImpressionEntry> entries)
    : n_users_(n_users), entries_(std::move(entries)) {
  if (n_users < 0) throw std::invalid_argument("impression matrix: negative user count");
  // every sum in the model excludes a user's own posts, so self entries go
  std::erase_if(entries_, [](const ImpressionEntry& e) { return e.source == e.viewer; });
  for (const auto& e : entries_) {
    if (e.source < 0 || e.source >= n_users_ || e.viewer < 0 || e.viewer >= n_users_)
      throw std::invalid_argument("impression matrix: entry index out of range");
  }
  std::stable_sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.source != b.source ? a.source < b.source : a.viewer < b.viewer;
  });
  offsets_.assign(static_cast<size_t>(n_users_) + 1, 0);
  for (const auto& e : entries_) offsets_[static_cast<size_t>(e.source) + 1]++;
  for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
}

std::vector<double> ImpressionMatrix::column_sums() const {
  std::vector<double> sums(n_users_, 0.0);
  for (const auto& e : entries_) sums[e.viewer] += e.value;
  return sums;
}

std::vector<double> CampaignInstance::decision_unit_costs() const {
  std::vector<double> rho(dimension());
  for (int32_t d = 0; d < dimension(); ++d) {
    const int32_t u = user_of(d);
    rho[d] = costs[u] * rates[u];
  }
  return rho;
}

std::vector<double> CampaignInstance::decision_caps() const {
  std::vector<double> r(dimension());
  for (int32_t d = 0; d < dimension(); ++d) r[d] = caps[user_of(d)];
  return r;
}

std::vector<Violation> validate_instance(const CampaignInstance& inst) {
  std::vector<Violation> out;
  auto error = [&out](std::string msg) {
    out.push_back({Violation::Severity::Error, std::move(msg)});
  };
  auto warning = [&out](std::string msg) {
    out.push_back({Violation::Severity::Warning, std::move(msg)});
  };

  const int32_t n = inst.n_users();
  if (n < 2) error("instance needs at least two users");
  if (inst.advertiser < 0 || inst.advertiser >= n)
    error("advertiser id " + std::to_string(inst.advertiser) + " is not a valid user index");
  if (!(inst.budget >= 0.0)) error("budget must be nonnegative");
  if (static_cast<int32_t>(inst.rates.size()) != n || static_cast<int32_t>(inst.costs.size()) != n ||
      static_cast<int32_t>(inst.caps.size()) != n) {
    error("per-user vectors do not match the user count");
    return out;  // indexing below would be unsafe
  }
  for (int32_t u = 0; u < n; ++u) {
    if (!(inst.rates[u] >= 0.0)) error("user " + std::to_string(u) + ": negative posting rate");
    if (!(inst.costs[u] >= 0.0)) error("user " + std::to_string(u) + ": negative cost per post");
    if (!(inst.caps[u] >= 0.0 && inst.caps[u] <= 1.0))
      error("user " + std::to_string(u) + ": cap out of [0,1]");
  }

  const auto& entries = inst.impressions.entries();
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!(e.value >= 0.0 && e.value <= 1.0))
      error("entry (" + std::to_string(e.source) + "," + std::to_string(e.viewer) +
            "): value out of [0,1]");
    if (i > 0 && entries[i - 1].source == e.source && entries[i - 1].viewer == e.viewer)
      error("entry (" + std::to_string(e.source) + "," + std::to_string(e.viewer) +
            "): duplicate pair");
  }
  const auto sums = inst.impressions.column_sums();
  for (int32_t j = 0; j < n; ++j) {
    if (sums[j] > 1.0 + kColumnSumTolerance)
      error("viewer " + std::to_string(j) + ": column normalization exceeded (sum " +
            std::to_string(sums[j]) + ")");
    else if (sums[j] < 1.0 - 1e-9)
      warning("viewer " + std::to_string(j) + ": column sum " + std::to_string(sums[j]) +
              " below 1 (impressions from outside the user set)");
  }
  return out;
}

bool is_valid(const std::vector<Violation>& violations) {
  return std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.severity == Violation::Severity::Error;
  });
}

namespace {

// participation of a user under decision vector a, advertiser pinned at cap
inline double participation_of(const CampaignInstance& inst, const std::vector<double>& a,
                               int32_t user) {
  return user == inst.advertiser ? inst.caps[user] : a[inst.decision_of(user)];
}

void check_dimension(const CampaignInstance& inst, const std::vector<double>& a) {
  if (static_cast<int32_t>(a.size()) != inst.dimension())
    throw std::invalid_argument("participation vector has wrong dimension");
}

}  // namespace

std::vector<double> potentials(const CampaignInstance& inst, const std::vector<double>& a) {
  check_dimension(inst, a);
  std::vector<double> omega(inst.n_users(), 0.0);
  const int32_t n = inst.n_users();
  for (int32_t src = 0; src < n; ++src) {
    const double part = participation_of(inst, a, src);
    if (part == 0.0) continue;
    for (const auto* e = inst.impressions.source_begin(src); e != inst.impressions.source_end(src);
         ++e)
      omega[e->viewer] += part * e->value;
  }
  return omega;
}

double spend(const CampaignInstance& inst, const std::vector<double>& a) {
  check_dimension(inst, a);
  double total = 0.0;
  for (int32_t d = 0; d < inst.dimension(); ++d) {
    const int32_t u = inst.user_of(d);
    total += inst.costs[u] * a[d] * inst.rates[u];
  }
  return total;
}

double budget_excess(const CampaignInstance& inst, const std::vector<double>& a) {
  return std::max(0.0, spend(inst, a) - inst.budget);
}

double box_excess(const CampaignInstance& inst, const std::vector<double>& a) {
  check_dimension(inst, a);
  double excess = 0.0;
  for (int32_t d = 0; d < inst.dimension(); ++d) {
    excess = std::max(excess, -a[d]);
    excess = std::max(excess, a[d] - inst.caps[inst.user_of(d)]);
  }
  return excess;
}

MetricsReport metrics(const CampaignInstance& inst, const std::vector<double>& a, double delta,
                      double epsilon, const std::vector<Tier>* tiers) {
  if (!(delta > 0.0)) throw std::invalid_argument("metrics: delta must be positive");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("metrics: epsilon must be nonnegative");
  const auto omega = potentials(inst, a);
  MetricsReport rep;
  for (int32_t j = 0; j < inst.n_users(); ++j) {
    if (j == inst.advertiser) continue;
    rep.total_impressions += delta * omega[j];
    rep.total_sales += std::log(delta * omega[j] + 1.0);
    if (omega[j] > epsilon) rep.total_reach++;
  }
  rep.has_tiers = tiers != nullptr;
  for (int32_t d = 0; d < inst.dimension(); ++d) {
    if (a[d] <= kSelectionTolerance) continue;
    rep.selected++;
    if (!tiers) continue;
    switch ((*tiers)[inst.user_of(d)]) {
      case Tier::Nano: rep.selected_nano++; break;
      case Tier::Micro: rep.selected_micro++; break;
      case Tier::Macro: rep.selected_macro++; break;
      case Tier::NonInfluencer: break;
    }
  }
  rep.spend = spend(inst, a);
  return rep;
}

}  // namespace bpo
