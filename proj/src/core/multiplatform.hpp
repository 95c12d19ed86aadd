#pragma once

#include <cstdint>
#include <vector>

#include "core/model.hpp"
#include "core/solver.hpp"
#include "core/utility.hpp"

namespace bpo {

// impression entry of one (platform, content) pair
struct MpEntry {
  int32_t platform;
  int32_t content;
  int32_t source;
  int32_t viewer;
  double value;
};

enum class MpVariant { PerPlatformUtility, SharedUtility };

// Campaign over L platforms and Q content types sharing one budget. Absent
// user/content combinations are encoded with zero rates and impressions.
// Decision variables enumerate (platform, content, user != advertiser).
class MultiPlatformInstance {
 public:
  MultiPlatformInstance(int32_t platforms, int32_t contents, int32_t users, int32_t advertiser,
                        double budget);

  int32_t platforms() const { return platforms_; }
  int32_t contents() const { return contents_; }
  int32_t n_users() const { return users_; }
  int32_t advertiser() const { return advertiser_; }
  double budget() const { return budget_; }
  int32_t dimension() const { return platforms_ * contents_ * (users_ - 1); }

  // flattened decision index of (l, q, user), user != advertiser
  int32_t flat_index(int32_t l, int32_t q, int32_t user) const;
  struct Coordinate {
    int32_t platform, content, user;
  };
  Coordinate coordinate(int32_t flat) const;

  void set_rate(int32_t l, int32_t q, int32_t user, double rate);
  void set_cost(int32_t l, int32_t q, int32_t user, double cost);
  void set_cap(int32_t l, int32_t q, int32_t user, double cap);
  void set_zeta(int32_t l, int32_t q, double weight);
  void set_sigma(int32_t l, double weight);
  // named preset: platform weight proportional to its price level
  void set_sigma_cost_proportional(const std::vector<double>& platform_costs);
  void add_impression(int32_t l, int32_t q, int32_t source, int32_t viewer, double value);
  void finalize();  // sorts entries; call after the last add_impression

  double rate(int32_t l, int32_t q, int32_t user) const { return rates_[cell(l, q, user)]; }
  double cost(int32_t l, int32_t q, int32_t user) const { return costs_[cell(l, q, user)]; }
  double cap(int32_t l, int32_t q, int32_t user) const { return caps_[cell(l, q, user)]; }
  double zeta(int32_t l, int32_t q) const { return zeta_[l * contents_ + q]; }
  double sigma(int32_t l) const { return sigma_[l]; }
  const std::vector<MpEntry>& entries() const { return entries_; }

  // oracle data over flattened coordinates
  std::vector<double> flat_unit_costs() const;
  std::vector<double> flat_caps() const;

  // per-(l, viewer) potential: zeta-weighted sparse sums with the advertiser
  // pinned at its caps; indexed l * N + viewer
  std::vector<double> mp_potentials(const std::vector<double>& a) const;

  std::vector<Violation> validate() const;

 private:
  size_t cell(int32_t l, int32_t q, int32_t user) const {
    return (static_cast<size_t>(l) * contents_ + q) * users_ + user;
  }
  int32_t platforms_, contents_, users_, advertiser_;
  double budget_;
  std::vector<double> rates_, costs_, caps_;  // L*Q*N cells
  std::vector<double> zeta_, sigma_;
  std::vector<MpEntry> entries_;
  bool finalized_ = false;

  friend class MpObjective;
};

// [M-BPO] objective over flattened coordinates; per-platform weighted sum or
// one utility of the summed potentials, depending on the variant
class MpObjective final : public FwObjective {
 public:
  MpObjective(const MultiPlatformInstance& mp, const UtilitySpec& spec, MpVariant variant);
  int32_t dimension() const override;
  double value(const std::vector<double>& a) override;
  double value_and_gradient(const std::vector<double>& a, std::vector<double>& grad) override;
  void prepare_segment(const std::vector<double>& a, const std::vector<double>& dir) override;
  double segment_value(double gamma) override;

  double value_at(const std::vector<double>& omega) const;

 private:
  const MultiPlatformInstance& mp_;
  UtilitySpec spec_;
  MpVariant variant_;
  std::vector<double> omega_base_, omega_dir_;
};

double mp_objective(const MultiPlatformInstance& mp, const UtilitySpec& spec, MpVariant variant,
                    const std::vector<double>& a);
std::vector<double> mp_gradient(const MultiPlatformInstance& mp, const UtilitySpec& spec,
                                MpVariant variant, const std::vector<double>& a);

// Frank-Wolfe on the flattened problem; the report gains per-platform spend
// and ROI (sigma-weighted utility of that platform's potentials).
SolveReport solve_mp(const MultiPlatformInstance& mp, const UtilitySpec& spec, MpVariant variant,
                     const SolverConfig& cfg);

}  // namespace bpo
