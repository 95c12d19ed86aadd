#include "core/multiplatform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bpo {

MultiPlatformInstance::MultiPlatformInstance(int32_t platforms, int32_t contents, int32_t users,
                                             int32_t advertiser, double budget)
    : platforms_(platforms), contents_(contents), users_(users), advertiser_(advertiser),
      budget_(budget) {
  if (platforms < 1 || contents < 1 || users < 2)
    throw std::invalid_argument("multi-platform instance needs L >= 1, Q >= 1, N >= 2");
  if (advertiser < 0 || advertiser >= users)
    throw std::invalid_argument("advertiser id out of range");
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
  const size_t cells = static_cast<size_t>(platforms) * contents * users;
  rates_.assign(cells, 0.0);
  costs_.assign(cells, 0.0);
  caps_.assign(cells, 1.0);
  zeta_.assign(static_cast<size_t>(platforms) * contents, 1.0 / contents);
  sigma_.assign(platforms, 1.0);
}

int32_t MultiPlatformInstance::flat_index(int32_t l, int32_t q, int32_t user) const {
  const int32_t d = user < advertiser_ ? user : user - 1;
  return (l * contents_ + q) * (users_ - 1) + d;
}

MultiPlatformInstance::Coordinate MultiPlatformInstance::coordinate(int32_t flat) const {
  const int32_t per_pair = users_ - 1;
  const int32_t pair = flat / per_pair;
  const int32_t d = flat % per_pair;
  return {pair / contents_, pair % contents_, d < advertiser_ ? d : d + 1};
}

void MultiPlatformInstance::set_rate(int32_t l, int32_t q, int32_t user, double rate) {
  rates_[cell(l, q, user)] = rate;
}
void MultiPlatformInstance::set_cost(int32_t l, int32_t q, int32_t user, double cost) {
  costs_[cell(l, q, user)] = cost;
}
void MultiPlatformInstance::set_cap(int32_t l, int32_t q, int32_t user, double cap) {
  caps_[cell(l, q, user)] = cap;
}
void MultiPlatformInstance::set_zeta(int32_t l, int32_t q, double weight) {
  if (!(weight >= 0.0)) throw std::invalid_argument("zeta weights must be nonnegative");
  zeta_[static_cast<size_t>(l) * contents_ + q] = weight;
}
void MultiPlatformInstance::set_sigma(int32_t l, double weight) {
  if (!(weight >= 0.0)) throw std::invalid_argument("sigma weights must be nonnegative");
  sigma_[l] = weight;
}

void MultiPlatformInstance::set_sigma_cost_proportional(const std::vector<double>& platform_costs) {
  if (static_cast<int32_t>(platform_costs.size()) != platforms_)
    throw std::invalid_argument("need one cost level per platform");
  double total = 0.0;
  for (double c : platform_costs) {
    if (!(c >= 0.0)) throw std::invalid_argument("cost levels must be nonnegative");
    total += c;
  }
  if (!(total > 0.0)) throw std::invalid_argument("cost levels must not all be zero");
  for (int32_t l = 0; l < platforms_; ++l) sigma_[l] = platform_costs[l] / total;
}

void MultiPlatformInstance::add_impression(int32_t l, int32_t q, int32_t source, int32_t viewer,
                                           double value) {
  if (l < 0 || l >= platforms_ || q < 0 || q >= contents_)
    throw std::invalid_argument("impression platform/content out of range");
  if (source < 0 || source >= users_ || viewer < 0 || viewer >= users_)
    throw std::invalid_argument("impression user out of range");
  if (source == viewer) return;  // self-impressions dropped as in the single-platform model
  entries_.push_back({l, q, source, viewer, value});
  finalized_ = false;
}

void MultiPlatformInstance::finalize() {
  std::stable_sort(entries_.begin(), entries_.end(), [](const MpEntry& a, const MpEntry& b) {
    if (a.platform != b.platform) return a.platform < b.platform;
    if (a.content != b.content) return a.content < b.content;
    if (a.source != b.source) return a.source < b.source;
    return a.viewer < b.viewer;
  });
  finalized_ = true;
}

std::vector<double> MultiPlatformInstance::flat_unit_costs() const {
  std::vector<double> rho(dimension());
  for (int32_t i = 0; i < dimension(); ++i) {
    const auto c = coordinate(i);
    rho[i] = cost(c.platform, c.content, c.user) * rate(c.platform, c.content, c.user);
  }
  return rho;
}

std::vector<double> MultiPlatformInstance::flat_caps() const {
  std::vector<double> r(dimension());
  for (int32_t i = 0; i < dimension(); ++i) {
    const auto c = coordinate(i);
    r[i] = cap(c.platform, c.content, c.user);
  }
  return r;
}

std::vector<double> MultiPlatformInstance::mp_potentials(const std::vector<double>& a) const {
  if (static_cast<int32_t>(a.size()) != dimension())
    throw std::invalid_argument("participation vector has wrong dimension");
  if (!finalized_) throw std::logic_error("instance not finalized");
  std::vector<double> omega(static_cast<size_t>(platforms_) * users_, 0.0);
  for (const auto& e : entries_) {
    const double part = e.source == advertiser_
                            ? cap(e.platform, e.content, e.source)
                            : a[flat_index(e.platform, e.content, e.source)];
    if (part == 0.0) continue;
    omega[static_cast<size_t>(e.platform) * users_ + e.viewer] +=
        zeta(e.platform, e.content) * part * e.value;
  }
  return omega;
}

std::vector<Violation> MultiPlatformInstance::validate() const {
  std::vector<Violation> out;
  std::vector<double> col(static_cast<size_t>(platforms_) * users_, 0.0);
  for (const auto& e : entries_) {
    if (!(e.value >= 0.0 && e.value <= 1.0))
      out.push_back({Violation::Severity::Error,
                     "entry (" + std::to_string(e.platform) + "," + std::to_string(e.content) +
                         "," + std::to_string(e.source) + "," + std::to_string(e.viewer) +
                         "): value out of [0,1]"});
    col[static_cast<size_t>(e.platform) * users_ + e.viewer] += e.value;
  }
  for (int32_t l = 0; l < platforms_; ++l)
    for (int32_t j = 0; j < users_; ++j)
      if (col[static_cast<size_t>(l) * users_ + j] > 1.0 + kColumnSumTolerance)
        out.push_back({Violation::Severity::Error,
                       "platform " + std::to_string(l) + " viewer " + std::to_string(j) +
                           ": column normalization exceeded"});
  for (size_t i = 0; i < caps_.size(); ++i)
    if (!(caps_[i] >= 0.0 && caps_[i] <= 1.0))
      out.push_back({Violation::Severity::Error, "cap out of [0,1]"});
  return out;
}

MpObjective::MpObjective(const MultiPlatformInstance& mp, const UtilitySpec& spec,
                         MpVariant variant)
    : mp_(mp), spec_(spec), variant_(variant) {
  if (!spec.differentiable())
    throw std::invalid_argument("non-differentiable utility rejected by solver");
}

int32_t MpObjective::dimension() const { return mp_.dimension(); }

double MpObjective::value_at(const std::vector<double>& omega) const {
  const int32_t n = mp_.n_users();
  double total = 0.0;
  if (variant_ == MpVariant::PerPlatformUtility) {
    for (int32_t l = 0; l < mp_.platforms(); ++l) {
      const double sigma = mp_.sigma(l);
      for (int32_t j = 0; j < n; ++j) {
        if (j == mp_.advertiser()) continue;
        total += sigma * eval(spec_, omega[static_cast<size_t>(l) * n + j]);
      }
    }
  } else {
    for (int32_t j = 0; j < n; ++j) {
      if (j == mp_.advertiser()) continue;
      double sum = 0.0;
      for (int32_t l = 0; l < mp_.platforms(); ++l) sum += omega[static_cast<size_t>(l) * n + j];
      total += eval(spec_, sum);
    }
  }
  return total;
}

double MpObjective::value(const std::vector<double>& a) { return value_at(mp_.mp_potentials(a)); }

double MpObjective::value_and_gradient(const std::vector<double>& a, std::vector<double>& grad) {
  const auto omega = mp_.mp_potentials(a);
  const int32_t n = mp_.n_users();

  // per-(l, viewer) derivative weight
  std::vector<double> marginal(omega.size(), 0.0);
  if (variant_ == MpVariant::PerPlatformUtility) {
    for (int32_t l = 0; l < mp_.platforms(); ++l)
      for (int32_t j = 0; j < n; ++j) {
        if (j == mp_.advertiser()) continue;
        marginal[static_cast<size_t>(l) * n + j] =
            mp_.sigma(l) * deriv(spec_, omega[static_cast<size_t>(l) * n + j]);
      }
  } else {
    for (int32_t j = 0; j < n; ++j) {
      if (j == mp_.advertiser()) continue;
      double sum = 0.0;
      for (int32_t l = 0; l < mp_.platforms(); ++l) sum += omega[static_cast<size_t>(l) * n + j];
      const double d = deriv(spec_, sum);
      for (int32_t l = 0; l < mp_.platforms(); ++l) marginal[static_cast<size_t>(l) * n + j] = d;
    }
  }

  grad.assign(mp_.dimension(), 0.0);
  for (const auto& e : mp_.entries()) {
    if (e.source == mp_.advertiser()) continue;
    if (e.viewer == mp_.advertiser()) continue;
    grad[mp_.flat_index(e.platform, e.content, e.source)] +=
        mp_.zeta(e.platform, e.content) * marginal[static_cast<size_t>(e.platform) * n + e.viewer] *
        e.value;
  }
  return value_at(omega);
}

void MpObjective::prepare_segment(const std::vector<double>& a, const std::vector<double>& dir) {
  omega_base_ = mp_.mp_potentials(a);
  // direction image: same sparse pass without the advertiser constant
  omega_dir_.assign(omega_base_.size(), 0.0);
  const int32_t n = mp_.n_users();
  for (const auto& e : mp_.entries()) {
    if (e.source == mp_.advertiser()) continue;
    const double w = dir[mp_.flat_index(e.platform, e.content, e.source)];
    if (w == 0.0) continue;
    omega_dir_[static_cast<size_t>(e.platform) * n + e.viewer] +=
        mp_.zeta(e.platform, e.content) * w * e.value;
  }
}

double MpObjective::segment_value(double gamma) {
  std::vector<double> omega(omega_base_.size());
  for (size_t i = 0; i < omega.size(); ++i)
    omega[i] = std::max(0.0, omega_base_[i] + gamma * omega_dir_[i]);
  return value_at(omega);
}

double mp_objective(const MultiPlatformInstance& mp, const UtilitySpec& spec, MpVariant variant,
                    const std::vector<double>& a) {
  MpObjective obj(mp, spec, variant);
  return obj.value(a);
}

std::vector<double> mp_gradient(const MultiPlatformInstance& mp, const UtilitySpec& spec,
                                MpVariant variant, const std::vector<double>& a) {
  MpObjective obj(mp, spec, variant);
  std::vector<double> grad;
  obj.value_and_gradient(a, grad);
  return grad;
}

SolveReport solve_mp(const MultiPlatformInstance& mp, const UtilitySpec& spec, MpVariant variant,
                     const SolverConfig& cfg) {
  MpObjective objective(mp, spec, variant);
  auto rep = run_frank_wolfe(objective, mp.flat_unit_costs(), mp.flat_caps(), mp.budget(), cfg);
  rep.utility = spec.name();

  const auto rho = mp.flat_unit_costs();
  rep.platform_spend.assign(mp.platforms(), 0.0);
  for (int32_t i = 0; i < mp.dimension(); ++i)
    rep.platform_spend[mp.coordinate(i).platform] += rho[i] * rep.solution[i];

  const auto omega = mp.mp_potentials(rep.solution);
  rep.platform_roi.assign(mp.platforms(), 0.0);
  for (int32_t l = 0; l < mp.platforms(); ++l) {
    double roi = 0.0;
    for (int32_t j = 0; j < mp.n_users(); ++j) {
      if (j == mp.advertiser()) continue;
      roi += eval(spec, omega[static_cast<size_t>(l) * mp.n_users() + j]);
    }
    rep.platform_roi[l] = mp.sigma(l) * roi;
  }
  return rep;
}

}  // namespace bpo
