// The quantum-speed-limit function alpha^-1 and the scalar fidelity
// lower-bound models z -> F(z) in [0, 1] that feed the estimation bounds.
#pragma once

#include <string>
#include <vector>

namespace zzb {

// alpha^-1(t) = cos^2(pi sqrt(t) / 2) on [0, 1]; the inverse of the stated
// closed-form approximation alpha(eps) ~ 4 arccos^2(sqrt(eps)) / pi^2.
// Monotone decreasing from 1 to 0; t outside [0, 1] is a domain error.
double alpha_inverse(double t);

enum class FidelityKind {
  kQslNumberOperator,    // scale = mean generator above ground level (H)
  kBhattacharyyaVariance,  // scale = generator standard deviation (dH)
  kCoherentStateExact,   // scale = mean photon number N
  kConstant,             // scale = the constant value F
  kTabulated,            // piecewise-linear (z, F) table
};

class FidelityModel {
 public:
  static FidelityModel qsl_number_operator(double h_mean);
  static FidelityModel bhattacharyya_variance(double h_std);
  static FidelityModel coherent_state_exact(double n_mean);
  static FidelityModel constant(double value);
  // Tabulated (z, F) pairs, strictly increasing z, linearly interpolated and
  // clamped to [0, 1].  If the first z is positive, an anchor point (0, 1)
  // is prepended so F(0) = 1 holds for every model.
  static FidelityModel tabulated(std::vector<double> z, std::vector<double> f);
  static FidelityModel tabulated_from_csv(const std::string& path);

  FidelityKind kind() const { return kind_; }
  double scale() const { return scale_; }

  // F(z) for z >= 0 (domain error otherwise); always in [0, 1].
  double operator()(double z) const;

  // z beyond which F(z) == 0 identically, or +inf if F never vanishes.
  // Used by the direct bound to truncate its z-integral.
  double support_end() const;

 private:
  FidelityModel(FidelityKind kind, double scale)
      : kind_(kind), scale_(scale) {}
  FidelityKind kind_;
  double scale_;
  std::vector<double> tab_z_;
  std::vector<double> tab_f_;
};

// Convenience wrappers matching the operation-level contracts.
double fidelity_qsl(double z, double h_mean);
double fidelity_bhatta(double z, double h_std);
double fidelity_coherent(double z, double n_mean);

}  // namespace zzb
