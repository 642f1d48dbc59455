#include "gpbo/acquisition.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gpbo/errors.hpp"
#include "gpbo/math.hpp"

namespace gpbo {

AcquisitionKind acquisition_kind_from_string(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "ei") return AcquisitionKind::EI;
  if (s == "poi") return AcquisitionKind::PoI;
  if (s == "lcb") return AcquisitionKind::LCB;
  if (s == "mes") return AcquisitionKind::MES;
  if (s == "hvpoi") return AcquisitionKind::HvPoI;
  if (s == "pof") return AcquisitionKind::PoF;
  throw ConfigurationError("unknown acquisition '" + name + "'");
}

std::string to_string(AcquisitionKind kind) {
  switch (kind) {
    case AcquisitionKind::EI: return "ei";
    case AcquisitionKind::PoI: return "poi";
    case AcquisitionKind::LCB: return "lcb";
    case AcquisitionKind::MES: return "mes";
    case AcquisitionKind::HvPoI: return "hvpoi";
    case AcquisitionKind::PoF: return "pof";
  }
  return "?";
}

double expected_improvement(double mu, double variance, double f_best) {
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) return std::max(f_best - mu, 0.0);
  const double z = (f_best - mu) / sigma;
  return (f_best - mu) * normal_cdf(z) + sigma * normal_pdf(z);
}

double probability_of_improvement(double mu, double variance, double f_best) {
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) return mu < f_best ? 1.0 : 0.0;
  return normal_cdf((f_best - mu) / sigma);
}

double lower_confidence_bound(double mu, double variance, double beta) {
  const double sigma = std::sqrt(std::max(variance, 0.0));
  return -(mu - beta * sigma);
}

double probability_of_feasibility(double mu, double variance, double threshold) {
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) return mu <= threshold ? 1.0 : 0.0;
  return normal_cdf((threshold - mu) / sigma);
}

AcquisitionPartials expected_improvement_partials(double mu, double variance, double f_best) {
  AcquisitionPartials out;
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) {
    out.value = std::max(f_best - mu, 0.0);
    out.d_mu = f_best > mu ? -1.0 : 0.0;
    out.d_variance = 0.0;
    return out;
  }
  const double z = (f_best - mu) / sigma;
  const double Phi = normal_cdf(z);
  const double phi = normal_pdf(z);
  out.value = (f_best - mu) * Phi + sigma * phi;
  out.d_mu = -Phi;
  out.d_variance = phi / (2.0 * sigma);  // dEI/dsigma = phi(z), chain to variance
  return out;
}

AcquisitionPartials probability_of_improvement_partials(double mu, double variance, double f_best) {
  AcquisitionPartials out;
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) {
    out.value = mu < f_best ? 1.0 : 0.0;
    return out;
  }
  const double z = (f_best - mu) / sigma;
  const double phi = normal_pdf(z);
  out.value = normal_cdf(z);
  out.d_mu = -phi / sigma;
  out.d_variance = -phi * z / (2.0 * variance);
  return out;
}

AcquisitionPartials lower_confidence_bound_partials(double mu, double variance, double beta) {
  AcquisitionPartials out;
  const double sigma = std::sqrt(std::max(variance, 0.0));
  out.value = -(mu - beta * sigma);
  out.d_mu = -1.0;
  out.d_variance = sigma < kDeterministicSigma ? 0.0 : beta / (2.0 * sigma);
  return out;
}

AcquisitionPartials probability_of_feasibility_partials(double mu, double variance, double threshold) {
  AcquisitionPartials out;
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) {
    out.value = mu <= threshold ? 1.0 : 0.0;
    return out;
  }
  const double z = (threshold - mu) / sigma;
  const double phi = normal_pdf(z);
  out.value = normal_cdf(z);
  out.d_mu = -phi / sigma;
  out.d_variance = -phi * z / (2.0 * variance);
  return out;
}

double GumbelMinValueFit::cdf(double y) const {
  double p = 1.0;
  for (Eigen::Index i = 0; i < mu_g.size(); ++i) {
    p *= normal_cdf((y - mu_g[i]) / sigma[i]);
    if (p == 0.0) break;
  }
  return p;
}

GumbelMinValueFit fit_min_value_gumbel(const GpModel& model, const Domain& domain, int grid_size,
                                       Rng& rng) {
  if (grid_size < 1) throw ArgumentError("fit_min_value_gumbel: grid size must be >= 1");
  if (domain.dimension() != model.dimension()) {
    throw DimensionError("fit_min_value_gumbel: domain and model dimensions differ");
  }

  const Eigen::MatrixXd unit = scrambled_halton(grid_size, domain.dimension(), rng);
  Eigen::MatrixXd grid(grid_size + model.size(), model.dimension());
  for (int i = 0; i < grid_size; ++i) grid.row(i) = domain.from_unit(unit.row(i).transpose()).transpose();
  grid.bottomRows(model.size()) = model.X;

  const Prediction pred = predict(model, grid, false);
  GumbelMinValueFit fit;
  fit.mu_g = -pred.mean;
  fit.sigma.resize(pred.variance.size());
  bool any_alive = false;
  for (Eigen::Index i = 0; i < pred.variance.size(); ++i) {
    const double s = std::sqrt(std::max(pred.variance[i], 0.0));
    if (s >= kDeterministicSigma) any_alive = true;
    fit.sigma[i] = std::max(s, 1e-6);  // floor keeps the CDF product continuous
  }
  if (!any_alive) {
    throw SamplingError("fit_min_value_gumbel: predictive distribution is degenerate everywhere");
  }

  double lo = (fit.mu_g - 8.0 * fit.sigma).minCoeff();
  double hi = (fit.mu_g + 8.0 * fit.sigma).maxCoeff();
  auto quantile = [&](double q) {
    double a = lo, b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      const double p = fit.cdf(mid);
      if (std::abs(p - q) < 1e-9) return mid;
      (p < q ? a : b) = mid;
    }
    return 0.5 * (a + b);
  };
  fit.y25 = quantile(0.25);
  fit.y50 = quantile(0.50);
  fit.y75 = quantile(0.75);

  // Method-of-quantiles Gumbel fit.
  const double denom = std::log(std::log(4.0)) - std::log(std::log(4.0 / 3.0));
  fit.scale = std::max((fit.y75 - fit.y25) / denom, 1e-12);
  fit.location = fit.y50 + fit.scale * std::log(std::log(2.0));
  return fit;
}

Eigen::VectorXd sample_min_values(const GpModel& model, const Domain& domain, int n_samples,
                                  int grid_size, Rng& rng) {
  if (n_samples < 1) throw ArgumentError("sample_min_values: needs at least one sample");
  const GumbelMinValueFit fit = fit_min_value_gumbel(model, domain, grid_size, rng);
  Eigen::VectorXd samples(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double r = rng.uniform_open();
    samples[k] = fit.location - fit.scale * std::log(-std::log(r));
  }
  return samples;
}

double mes_term(double gamma) {
  const double log_cdf = log_normal_cdf(gamma);
  const double ratio = normal_pdf_over_cdf(gamma);
  return 0.5 * gamma * ratio - log_cdf;
}

double mes(double mu, double variance, const Eigen::VectorXd& min_value_samples) {
  if (min_value_samples.size() < 1) throw ArgumentError("mes: needs at least one min-value sample");
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (sigma < kDeterministicSigma) return 0.0;
  const double mu_g = -mu;
  double total = 0.0;
  for (Eigen::Index k = 0; k < min_value_samples.size(); ++k) {
    total += mes_term((min_value_samples[k] - mu_g) / sigma);
  }
  return total / static_cast<double>(min_value_samples.size());
}

double hvpoi_probability(const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
                         const CellDecomposition& cells) {
  const Eigen::Index m = cells.reference.size();
  if (means.size() != m || variances.size() != m) {
    throw DimensionError("hvpoi_probability: objective count mismatch");
  }
  double prob = 0.0;
  for (Eigen::Index c = 0; c < cells.lower.rows(); ++c) {
    double cell_prob = 1.0;
    for (Eigen::Index j = 0; j < m && cell_prob > 0.0; ++j) {
      const double sigma = std::sqrt(std::max(variances[j], 0.0));
      if (sigma < kDeterministicSigma) {
        cell_prob *= (means[j] >= cells.lower(c, j) && means[j] < cells.upper(c, j)) ? 1.0 : 0.0;
      } else {
        cell_prob *= normal_cdf((cells.upper(c, j) - means[j]) / sigma) -
                     normal_cdf((cells.lower(c, j) - means[j]) / sigma);
      }
    }
    prob += cell_prob;
  }
  return std::clamp(prob, 0.0, 1.0);
}

double hvpoi(const Eigen::VectorXd& candidate_means, const Eigen::VectorXd& candidate_variances,
             const ParetoFront& front, const CellDecomposition& cells) {
  if (candidate_means.size() != front.points.cols()) {
    throw DimensionError("hvpoi: candidate and front objective counts differ");
  }
  const double gain = exclusive_hypervolume(candidate_means, front, cells.reference);
  if (gain == 0.0) return 0.0;
  return gain * hvpoi_probability(candidate_means, candidate_variances, cells);
}

double joint_acquisition(double objective_score, const std::vector<double>& pof_scores) {
  double value = objective_score;
  for (double p : pof_scores) value *= p;
  return value;
}

Eigen::VectorXd joint_acquisition_gradient(double objective_score,
                                           const Eigen::VectorXd& objective_gradient,
                                           const std::vector<double>& pof_scores,
                                           const std::vector<Eigen::VectorXd>& pof_gradients) {
  if (pof_scores.size() != pof_gradients.size()) {
    throw DimensionError("joint_acquisition_gradient: per-constraint values and gradients differ");
  }
  double product = 1.0;
  for (double p : pof_scores) product *= p;
  Eigen::VectorXd grad = objective_gradient * product;
  for (std::size_t j = 0; j < pof_scores.size(); ++j) {
    double others = objective_score;
    for (std::size_t k = 0; k < pof_scores.size(); ++k) {
      if (k != j) others *= pof_scores[k];
    }
    grad += others * pof_gradients[j];
  }
  return grad;
}

double marginalized_acquisition(const std::function<double(const HyperparameterSample&)>& base_eval,
                                const std::vector<HyperparameterSample>& samples) {
  if (samples.empty()) throw ArgumentError("marginalized_acquisition: empty sample list");
  double total = 0.0;
  for (const auto& s : samples) total += base_eval(s);
  return total / static_cast<double>(samples.size());
}

}  // namespace gpbo
