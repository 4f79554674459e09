#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qperc/rng.hpp"

namespace qperc {

// Raised by density queries on models that only provide a sampler.
class SamplerOnlyModelError : public std::logic_error {
 public:
  explicit SamplerOnlyModelError(const std::string& what)
      : std::logic_error(what) {}
};

class CalibrationError : public std::runtime_error {
 public:
  explicit CalibrationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Singlet-conversion probability of a post-selected polarization pair
// with loss imbalance P (dB): X(P) = 2 / (1 + 10^(P/10)).
double scp_from_pdl(double pdl_db);

// Inverse map: P(x) = 10 log10((2 - x) / x) for x in (0, 1].
double pdl_from_scp(double scp);

// First-order small-imbalance expansion of the mean SCP,
// E[X] ~= 1 - (ln 10 / 20) E[P], clamped to [0, 1].
double weak_pdl_mean_approx(double mean_pdl_db);

// 2x2 complex amplitude transfer matrix of the two polarization modes.
struct JonesMatrix {
  std::complex<double> m00, m01, m10, m11;

  static JonesMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

  // Partial polarizer: diag(1, 10^(-rho/20)). Overall loss has no effect
  // on the singular-value ratio, so the strong axis is normalized to 1.
  static JonesMatrix diattenuator(double pdl_db);

  // Haar-distributed unitary via Gram-Schmidt on a complex Gaussian
  // matrix (positive-diagonal R convention).
  static JonesMatrix haar_unitary(RandomStream& rng);

  JonesMatrix operator*(const JonesMatrix& rhs) const;

  // Singular values s1 >= s2 >= 0.
  std::array<double, 2> singular_values() const;

  // 20 log10(s1 / s2).
  double pdl_db() const;

  // Frobenius norm of (M^dagger M - I); zero for unitaries.
  double unitarity_defect() const;
};

// Total PDL (dB) of a chain D_n U_n ... D_1 U_1 with Haar-random mode
// coupling U_i between diattenuators of the given element PDLs.
double jones_concatenation_sample(std::span<const double> elements_db,
                                  RandomStream& rng);

// Maxwellian density in the PDL magnitude:
// f(P) = sqrt(2/pi) P^2 exp(-P^2 / (2 a^2)) / a^3, mean 2 a sqrt(2/pi).
double maxwellian_density(double a_db, double pdl_db);
double maxwellian_cdf(double a_db, double pdl_db);

// Distribution of the accumulated PDL magnitude of a link.
class PdlModel {
 public:
  enum class Kind { Maxwellian, ConcatenatedLink, WeakElementChain };

  struct Calibration {
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    long samples_per_iteration = 100000;
    int max_iterations = 30;
    double relative_tolerance = 0.005;
  };

  static PdlModel maxwellian_mean_db(double mean_db);
  static PdlModel maxwellian_scale(double a_db);
  static PdlModel concatenated_link(std::vector<double> elements_db);

  // Chain of n equal elements whose per-element PDL is fixed-point
  // calibrated so that the Monte Carlo mean of the total PDL hits
  // target_mean_db. n = 1 is exact and needs no calibration.
  static PdlModel weak_element_chain(double target_mean_db, int n,
                                     const Calibration& cal = {});

  Kind kind() const { return kind_; }
  bool has_density() const { return kind_ == Kind::Maxwellian; }

  // f_P; throws SamplerOnlyModelError unless has_density().
  double density(double pdl_db) const;
  double cdf(double pdl_db) const;

  double sample(RandomStream& rng) const;

  // Analytic mean for the Maxwellian; the calibration target for chains;
  // throws for concatenated links (sampler-only statistic).
  double mean_pdl_db() const;

  double maxwellian_scale_db() const;
  const std::vector<double>& elements_db() const { return elements_; }
  double chain_element_db() const { return chain_element_; }
  int chain_length() const { return chain_length_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::Maxwellian;
  double scale_a_ = 0.0;        // Maxwellian
  std::vector<double> elements_;  // concatenated link
  double chain_element_ = 0.0;  // weak-element chain
  int chain_length_ = 0;
  double chain_target_mean_ = 0.0;
};

// Pushforward of the model's PDL density through the SCP map:
// f_X(x) = f_P(P(x)) * (20 / ln 10) / (x (2 - x)) on (0, 1), else 0.
double induced_scp_density(const PdlModel& model, double x);

// CDF of the induced SCP: F_X(x) = 1 - F_P(P(x)).
double induced_scp_cdf(const PdlModel& model, double x);

struct MeanScpEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // quadrature error bound on the analytic path
  long samples = 0;        // 0 on the analytic path
  bool analytic = false;
};

struct MeanScpBudget {
  long samples = 1000000;
  double quadrature_tol = 1e-10;
  std::uint64_t seed = 1;
};

// Mean SCP of the induced edge distribution: quadrature against the
// analytic density when available, Monte Carlo otherwise.
MeanScpEstimate mean_scp(const PdlModel& model, const MeanScpBudget& budget = {});

}  // namespace qperc
