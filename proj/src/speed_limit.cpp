#include "zzbound/speed_limit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "zzbound/errors.hpp"

namespace zzb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_z(double z) {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("fidelity models require z >= 0");
  }
}

}  // namespace

double alpha_inverse(double t) {
  if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
    throw DomainError("alpha_inverse requires t in [0, 1]");
  }
  const double c = std::cos(std::numbers::pi * std::sqrt(t) / 2.0);
  return c * c;
}

FidelityModel FidelityModel::qsl_number_operator(double h_mean) {
  if (!std::isfinite(h_mean) || h_mean <= 0.0) {
    throw InvalidArgumentError("qsl fidelity requires H > 0");
  }
  return FidelityModel(FidelityKind::kQslNumberOperator, h_mean);
}

FidelityModel FidelityModel::bhattacharyya_variance(double h_std) {
  if (!std::isfinite(h_std) || h_std <= 0.0) {
    throw InvalidArgumentError("bhattacharyya fidelity requires dH > 0");
  }
  return FidelityModel(FidelityKind::kBhattacharyyaVariance, h_std);
}

FidelityModel FidelityModel::coherent_state_exact(double n_mean) {
  if (!std::isfinite(n_mean) || n_mean <= 0.0) {
    throw InvalidArgumentError("coherent-state fidelity requires N > 0");
  }
  return FidelityModel(FidelityKind::kCoherentStateExact, n_mean);
}

FidelityModel FidelityModel::constant(double value) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw InvalidArgumentError("constant fidelity must lie in [0, 1]");
  }
  return FidelityModel(FidelityKind::kConstant, value);
}

FidelityModel FidelityModel::tabulated(std::vector<double> z,
                                       std::vector<double> f) {
  if (z.size() != f.size() || z.size() < 2) {
    throw InvalidArgumentError(
        "tabulated fidelity needs >= 2 matching (z, F) pairs");
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i]) || !std::isfinite(f[i]) || z[i] < 0.0) {
      throw InvalidArgumentError("tabulated fidelity values must be finite "
                                 "with z >= 0");
    }
    if (i > 0 && !(z[i] > z[i - 1])) {
      throw InvalidArgumentError("tabulated fidelity z must strictly "
                                 "increase");
    }
  }
  if (z.front() > 0.0) {
    z.insert(z.begin(), 0.0);
    f.insert(f.begin(), 1.0);
  }
  FidelityModel m(FidelityKind::kTabulated, 0.0);
  m.tab_z_ = std::move(z);
  m.tab_f_ = std::move(f);
  for (double& v : m.tab_f_) v = std::min(1.0, std::max(0.0, v));
  return m;
}

FidelityModel FidelityModel::tabulated_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open fidelity CSV: " + path);
  }
  std::vector<double> zs;
  std::vector<double> fs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream ss(cleaned);
    double z = 0.0, f = 0.0;
    if (!(ss >> z >> f)) {
      if (first) {
        first = false;
        continue;
      }
      throw InvalidArgumentError("malformed CSV line in " + path + ": " +
                                 line);
    }
    first = false;
    zs.push_back(z);
    fs.push_back(f);
  }
  return tabulated(std::move(zs), std::move(fs));
}

double FidelityModel::operator()(double z) const {
  require_z(z);
  switch (kind_) {
    case FidelityKind::kQslNumberOperator: {
      const double t = 2.0 * scale_ * z / std::numbers::pi;
      return t >= 1.0 ? 0.0 : alpha_inverse(t);
    }
    case FidelityKind::kBhattacharyyaVariance: {
      const double arg = scale_ * z;
      if (arg >= std::numbers::pi / 2.0) return 0.0;
      const double c = std::cos(arg);
      return c * c;
    }
    case FidelityKind::kCoherentStateExact:
      return std::exp(-2.0 * scale_ * (1.0 - std::cos(z)));
    case FidelityKind::kConstant:
      return scale_;
    case FidelityKind::kTabulated: {
      if (z >= tab_z_.back()) return tab_f_.back();
      const auto it = std::upper_bound(tab_z_.begin(), tab_z_.end(), z);
      const std::size_t i =
          it == tab_z_.begin()
              ? 0
              : static_cast<std::size_t>(it - tab_z_.begin()) - 1;
      const double t = (z - tab_z_[i]) / (tab_z_[i + 1] - tab_z_[i]);
      const double f = tab_f_[i] + t * (tab_f_[i + 1] - tab_f_[i]);
      return std::min(1.0, std::max(0.0, f));
    }
  }
  throw Error(ErrorCode::kInternal, "unreachable fidelity kind");
}

double FidelityModel::support_end() const {
  switch (kind_) {
    case FidelityKind::kQslNumberOperator:
      return std::numbers::pi / (2.0 * scale_);
    case FidelityKind::kBhattacharyyaVariance:
      return std::numbers::pi / (2.0 * scale_);
    case FidelityKind::kCoherentStateExact:
      return kInf;
    case FidelityKind::kConstant:
      return scale_ == 0.0 ? 0.0 : kInf;
    case FidelityKind::kTabulated:
      return tab_f_.back() == 0.0 ? tab_z_.back() : kInf;
  }
  throw Error(ErrorCode::kInternal, "unreachable fidelity kind");
}

double fidelity_qsl(double z, double h_mean) {
  return FidelityModel::qsl_number_operator(h_mean)(z);
}

double fidelity_bhatta(double z, double h_std) {
  return FidelityModel::bhattacharyya_variance(h_std)(z);
}

double fidelity_coherent(double z, double n_mean) {
  return FidelityModel::coherent_state_exact(n_mean)(z);
}

}  // namespace zzb
