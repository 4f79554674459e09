#include "qperc/pdl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qperc/quadrature.hpp"

namespace qperc {

namespace {
constexpr double kLn10 = 2.302585092994045684;
constexpr double kSqrt2OverPi = 0.7978845608028653559;  // sqrt(2/pi)
}  // namespace

double scp_from_pdl(double pdl_db) {
  if (!(pdl_db >= 0.0))
    throw std::domain_error("scp_from_pdl: PDL must be >= 0 dB");
  return 2.0 / (1.0 + std::pow(10.0, pdl_db / 10.0));
}

double pdl_from_scp(double scp) {
  if (!(scp > 0.0 && scp <= 1.0))
    throw std::domain_error("pdl_from_scp: SCP must be in (0, 1]");
  return 10.0 * std::log10((2.0 - scp) / scp);
}

double weak_pdl_mean_approx(double mean_pdl_db) {
  if (!(mean_pdl_db >= 0.0))
    throw std::domain_error("weak_pdl_mean_approx: mean PDL must be >= 0 dB");
  return std::clamp(1.0 - kLn10 / 20.0 * mean_pdl_db, 0.0, 1.0);
}

JonesMatrix JonesMatrix::diattenuator(double pdl_db) {
  if (!(pdl_db >= 0.0))
    throw std::domain_error("diattenuator: PDL must be >= 0 dB");
  return {1.0, 0.0, 0.0, std::pow(10.0, -pdl_db / 20.0)};
}

JonesMatrix JonesMatrix::haar_unitary(RandomStream& rng) {
  using C = std::complex<double>;
  for (;;) {
    C a{rng.normal(), rng.normal()};
    C b{rng.normal(), rng.normal()};
    C c{rng.normal(), rng.normal()};
    C d{rng.normal(), rng.normal()};
    const double n1 = std::sqrt(std::norm(a) + std::norm(b));
    if (n1 < 1e-150) continue;
    a /= n1;
    b /= n1;
    const C proj = std::conj(a) * c + std::conj(b) * d;
    c -= proj * a;
    d -= proj * b;
    const double n2 = std::sqrt(std::norm(c) + std::norm(d));
    if (n2 < 1e-150) continue;
    return {a, c / n2, b, d / n2};
  }
}

JonesMatrix JonesMatrix::operator*(const JonesMatrix& r) const {
  return {m00 * r.m00 + m01 * r.m10, m00 * r.m01 + m01 * r.m11,
          m10 * r.m00 + m11 * r.m10, m10 * r.m01 + m11 * r.m11};
}

std::array<double, 2> JonesMatrix::singular_values() const {
  const double tr =
      std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
  const double det2 = std::norm(m00 * m11 - m01 * m10);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det2, 0.0));
  const double s1sq = 0.5 * (tr + disc);
  const double s2sq = s1sq > 0.0 ? det2 / s1sq : 0.0;
  return {std::sqrt(s1sq), std::sqrt(s2sq)};
}

double JonesMatrix::pdl_db() const {
  const auto s = singular_values();
  if (s[1] <= 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(s[0] / s[1]);
}

double JonesMatrix::unitarity_defect() const {
  using C = std::complex<double>;
  const C g00 = std::conj(m00) * m00 + std::conj(m10) * m10 - 1.0;
  const C g01 = std::conj(m00) * m01 + std::conj(m10) * m11;
  const C g11 = std::conj(m01) * m01 + std::conj(m11) * m11 - 1.0;
  return std::sqrt(std::norm(g00) + 2.0 * std::norm(g01) + std::norm(g11));
}

namespace {

// Total PDL of an accumulated transfer matrix whose |det|^2 is known
// exactly from the element losses; avoids cancellation in the small
// singular value. s2^2 = det2 / s1^2, so P = 10 (2 log10 s1^2 - log10 det2).
double chain_pdl_db(const JonesMatrix& t, double log10_det2) {
  const double tr =
      std::norm(t.m00) + std::norm(t.m01) + std::norm(t.m10) + std::norm(t.m11);
  const double det2 = std::pow(10.0, log10_det2);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det2, 0.0));
  const double s1sq = 0.5 * (tr + disc);
  return 10.0 * (2.0 * std::log10(s1sq) - log10_det2);
}

}  // namespace

double jones_concatenation_sample(std::span<const double> elements_db,
                                  RandomStream& rng) {
  JonesMatrix t = JonesMatrix::identity();
  double log10_det2 = 0.0;
  for (const double rho : elements_db) {
    if (!(rho >= 0.0))
      throw std::domain_error("jones_concatenation_sample: element PDL < 0");
    t = JonesMatrix::diattenuator(rho) * (JonesMatrix::haar_unitary(rng) * t);
    log10_det2 -= rho / 10.0;
  }
  return chain_pdl_db(t, log10_det2);
}

double maxwellian_density(double a_db, double pdl_db) {
  if (!(a_db > 0.0))
    throw std::domain_error("maxwellian_density: scale must be > 0");
  if (pdl_db < 0.0) return 0.0;
  const double z = pdl_db / a_db;
  return kSqrt2OverPi * z * z * std::exp(-0.5 * z * z) / a_db;
}

double maxwellian_cdf(double a_db, double pdl_db) {
  if (!(a_db > 0.0)) throw std::domain_error("maxwellian_cdf: scale must be > 0");
  if (pdl_db <= 0.0) return 0.0;
  const double z = pdl_db / a_db;
  return std::erf(z / std::sqrt(2.0)) -
         kSqrt2OverPi * z * std::exp(-0.5 * z * z);
}

PdlModel PdlModel::maxwellian_mean_db(double mean_db) {
  if (!(mean_db > 0.0))
    throw std::domain_error("maxwellian_mean_db: mean must be > 0 dB");
  // mean = 2 a sqrt(2/pi)  =>  a = mean sqrt(pi/2) / 2
  return maxwellian_scale(mean_db / (2.0 * kSqrt2OverPi));
}

PdlModel PdlModel::maxwellian_scale(double a_db) {
  if (!(a_db > 0.0))
    throw std::domain_error("maxwellian_scale: scale must be > 0 dB");
  PdlModel m;
  m.kind_ = Kind::Maxwellian;
  m.scale_a_ = a_db;
  return m;
}

PdlModel PdlModel::concatenated_link(std::vector<double> elements_db) {
  if (elements_db.empty())
    throw std::invalid_argument("concatenated_link: no elements");
  for (const double rho : elements_db)
    if (!(rho >= 0.0))
      throw std::domain_error("concatenated_link: element PDL < 0");
  PdlModel m;
  m.kind_ = Kind::ConcatenatedLink;
  m.elements_ = std::move(elements_db);
  return m;
}

PdlModel PdlModel::weak_element_chain(double target_mean_db, int n,
                                      const Calibration& cal) {
  if (!(target_mean_db > 0.0))
    throw std::domain_error("weak_element_chain: target mean must be > 0 dB");
  if (n < 1) throw std::domain_error("weak_element_chain: n must be >= 1");
  PdlModel m;
  m.kind_ = Kind::WeakElementChain;
  m.chain_length_ = n;
  m.chain_target_mean_ = target_mean_db;
  if (n == 1) {
    m.chain_element_ = target_mean_db;  // single element is deterministic
    return m;
  }
  // Isotropic accumulation gives mean ~ rho0 sqrt(n/3) * 2 sqrt(2/pi);
  // start there and iterate rho0 <- rho0 * target / measured.
  double rho0 = target_mean_db / (std::sqrt(n / 3.0) * 2.0 * kSqrt2OverPi);
  const RandomStream root(cal.seed);
  std::vector<double> chain(static_cast<std::size_t>(n));
  for (int iter = 0; iter < cal.max_iterations; ++iter) {
    std::fill(chain.begin(), chain.end(), rho0);
    double sum = 0.0;
    for (long i = 0; i < cal.samples_per_iteration; ++i) {
      RandomStream s = root.at(static_cast<std::uint64_t>(i),
                               static_cast<std::uint32_t>(iter));
      sum += jones_concatenation_sample(chain, s);
    }
    const double measured = sum / static_cast<double>(cal.samples_per_iteration);
    if (std::abs(measured - target_mean_db) <=
        cal.relative_tolerance * target_mean_db) {
      m.chain_element_ = rho0;
      return m;
    }
    rho0 *= target_mean_db / measured;
  }
  throw CalibrationError("weak_element_chain: calibration did not converge");
}

double PdlModel::density(double pdl_db) const {
  if (kind_ != Kind::Maxwellian)
    throw SamplerOnlyModelError("sampler-only model: no analytic PDL density");
  return maxwellian_density(scale_a_, pdl_db);
}

double PdlModel::cdf(double pdl_db) const {
  if (kind_ != Kind::Maxwellian)
    throw SamplerOnlyModelError("sampler-only model: no analytic PDL CDF");
  return maxwellian_cdf(scale_a_, pdl_db);
}

double PdlModel::sample(RandomStream& rng) const {
  switch (kind_) {
    case Kind::Maxwellian: {
      const double x = rng.normal();
      const double y = rng.normal();
      const double z = rng.normal();
      return scale_a_ * std::sqrt(x * x + y * y + z * z);
    }
    case Kind::ConcatenatedLink:
      return jones_concatenation_sample(elements_, rng);
    case Kind::WeakElementChain: {
      JonesMatrix t = JonesMatrix::identity();
      for (int i = 0; i < chain_length_; ++i) {
        t = JonesMatrix::diattenuator(chain_element_) *
            (JonesMatrix::haar_unitary(rng) * t);
      }
      return chain_pdl_db(t, -chain_length_ * chain_element_ / 10.0);
    }
  }
  return 0.0;
}

double PdlModel::mean_pdl_db() const {
  switch (kind_) {
    case Kind::Maxwellian:
      return 2.0 * scale_a_ * kSqrt2OverPi;
    case Kind::WeakElementChain:
      return chain_target_mean_;
    case Kind::ConcatenatedLink:
      throw SamplerOnlyModelError(
          "sampler-only model: mean PDL requires Monte Carlo");
  }
  return 0.0;
}

double PdlModel::maxwellian_scale_db() const {
  if (kind_ != Kind::Maxwellian)
    throw std::logic_error("maxwellian_scale_db: not a Maxwellian model");
  return scale_a_;
}

std::string PdlModel::describe() const {
  switch (kind_) {
    case Kind::Maxwellian:
      return "maxwellian(a=" + std::to_string(scale_a_) +
             " dB, mean=" + std::to_string(mean_pdl_db()) + " dB)";
    case Kind::ConcatenatedLink: {
      std::string s = "concatenated-link(";
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(elements_[i]);
      }
      return s + " dB)";
    }
    case Kind::WeakElementChain:
      return "weak-element-chain(n=" + std::to_string(chain_length_) +
             ", element=" + std::to_string(chain_element_) + " dB)";
  }
  return "";
}

double induced_scp_density(const PdlModel& model, double x) {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  const double p = pdl_from_scp(x);
  return model.density(p) * (20.0 / kLn10) / (x * (2.0 - x));
}

double induced_scp_cdf(const PdlModel& model, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 1.0 - model.cdf(pdl_from_scp(x));
}

MeanScpEstimate mean_scp(const PdlModel& model, const MeanScpBudget& budget) {
  MeanScpEstimate est;
  if (model.has_density()) {
    double err = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double p) { return scp_from_pdl(p) * model.density(p); }, 0.0,
            std::numeric_limits<double>::infinity(), 15, 1e-14, &err);
    if (!(err <= budget.quadrature_tol))
      throw QuadratureError(err, budget.quadrature_tol);
    est.mean = value;
    est.std_error = err;
    est.analytic = true;
    return est;
  }
  if (budget.samples < 1)
    throw std::invalid_argument("mean_scp: sample budget must be >= 1");
  const RandomStream root(budget.seed);
  double sum = 0.0;
  double sumsq = 0.0;
  for (long i = 0; i < budget.samples; ++i) {
    RandomStream s = root.at(static_cast<std::uint64_t>(i));
    const double x = scp_from_pdl(model.sample(s));
    sum += x;
    sumsq += x * x;
  }
  const double n = static_cast<double>(budget.samples);
  est.mean = sum / n;
  const double var = std::max(sumsq / n - est.mean * est.mean, 0.0);
  est.std_error = std::sqrt(var / n);
  est.samples = budget.samples;
  return est;
}

}  // namespace qperc
