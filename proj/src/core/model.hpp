#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bpo {

struct ImpressionEntry {
  int32_t source;
  int32_t viewer;
  double value;
};

// Sparse matrix of average impression ratios: value(source, viewer) is the
// fraction of the viewer's feed impressions that originate at source.
// Entries are kept sorted by (source, viewer) with a per-source index so a
// pass over one source column or over the whole matrix touches only stored
// entries. Self-impressions are dropped at construction; everything else is
// kept as given so validation can report it.
class ImpressionMatrix {
 public:
  ImpressionMatrix() = default;
  ImpressionMatrix(int32_t n_users, std::vector<ImpressionEntry> entries);

  int32_t n_users() const { return n_users_; }
  const std::vector<ImpressionEntry>& entries() const { return entries_; }

  // entries with source == n, contiguous
  const ImpressionEntry* source_begin(int32_t n) const { return entries_.data() + offsets_[n]; }
  const ImpressionEntry* source_end(int32_t n) const { return entries_.data() + offsets_[n + 1]; }

  // per-viewer sums of stored values
  std::vector<double> column_sums() const;

 private:
  int32_t n_users_ = 0;
  std::vector<ImpressionEntry> entries_;
  std::vector<size_t> offsets_;  // length n_users_ + 1
};

// One advertiser's campaign over a fixed user set. The advertiser's own
// participation is pinned to its cap, so the decision vector has N-1 entries,
// one per non-advertiser user.
struct CampaignInstance {
  ImpressionMatrix impressions;
  int32_t advertiser = 0;
  std::vector<double> rates;   // posts per time window, length N
  std::vector<double> costs;   // money per post, length N
  std::vector<double> caps;    // participation caps in [0,1], length N
  double budget = 0.0;

  int32_t n_users() const { return impressions.n_users(); }
  int32_t dimension() const { return impressions.n_users() - 1; }

  // decision index <-> user id (advertiser skipped)
  int32_t user_of(int32_t decision_index) const {
    return decision_index < advertiser ? decision_index : decision_index + 1;
  }
  int32_t decision_of(int32_t user) const { return user < advertiser ? user : user - 1; }

  // c_n * lambda_n per decision index
  std::vector<double> decision_unit_costs() const;
  std::vector<double> decision_caps() const;
};

struct Violation {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string message;
};

// Diagnostic pass over all instance invariants. Errors make the instance
// unusable; warnings flag sub-stochastic viewer columns, which estimated
// matrices legitimately produce (the deficit is content from outside the
// modeled user set).
std::vector<Violation> validate_instance(const CampaignInstance& inst);
bool is_valid(const std::vector<Violation>& violations);

constexpr double kColumnSumTolerance = 1e-6;
constexpr double kBudgetTolerance = 1e-9;
constexpr double kBoxTolerance = 1e-12;
constexpr double kSelectionTolerance = 1e-9;

// omega(j) = sum over sources n != j of a_n * p_n^(j), with the advertiser's
// fixed participation included. Returned vector has length N; the entry at
// the advertiser's own index is computed too but never enters any objective.
std::vector<double> potentials(const CampaignInstance& inst, const std::vector<double>& a);

// total campaign outlay, sum of c_n * a_n * lambda_n over non-advertiser users
double spend(const CampaignInstance& inst, const std::vector<double>& a);

double budget_excess(const CampaignInstance& inst, const std::vector<double>& a);
double box_excess(const CampaignInstance& inst, const std::vector<double>& a);

enum class Tier : int8_t { NonInfluencer = 0, Nano = 1, Micro = 2, Macro = 3 };

struct MetricsReport {
  double total_impressions = 0.0;
  double total_sales = 0.0;
  int64_t total_reach = 0;
  int64_t selected = 0;  // users with participation above the selection tolerance
  int64_t selected_nano = 0;
  int64_t selected_micro = 0;
  int64_t selected_macro = 0;
  bool has_tiers = false;
  double spend = 0.0;
};

// Campaign metrics from a single potentials pass. Tier counts are filled when
// a per-user tier assignment is supplied (tiers come from the graph side and
// are not part of the instance file).
MetricsReport metrics(const CampaignInstance& inst, const std::vector<double>& a, double delta,
                      double epsilon, const std::vector<Tier>* tiers = nullptr);

}  // namespace bpo
