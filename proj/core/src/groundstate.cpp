#include "gpsplit/groundstate.hpp"

#include <cmath>
#include <deque>

#include "gpsplit/errors.hpp"
#include "gpsplit/transforms.hpp"

namespace gpsplit {

void MinimizeConfig::validate() const {
  if (!(grad_tol > 0.0)) throw ValidationError("grad_tol must be positive");
  if (max_iters < 1) throw ValidationError("max_iters must be positive");
  if (lbfgs_memory < 1) throw ValidationError("lbfgs_memory must be >= 1");
  if (!(armijo_c1 > 0.0 && armijo_c1 < 1.0)) throw ValidationError("Armijo constant must lie in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw ValidationError("backtracking factor must lie in (0, 1)");
}

namespace {

// Evaluates E and G for fixed potential samples.
class EnergyFunctional {
 public:
  EnergyFunctional(const Grid& grid, const Potential& pot, const PhysParams& params)
      : grid_(grid), fft_(grid), potential_(sample_potential(pot, 0.0, grid)), params_(params) {
    const auto k = grid.modes();
    const int n = grid.points();
    k_sq_.resize(grid.size());
    if (grid.dim() == 1) {
      for (int i = 0; i < n; ++i) k_sq_[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)];
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          k_sq_[static_cast<std::size_t>(i) * n + j] = k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)] + k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
    }
    work_.resize(grid.size());
  }

  double evaluate(std::span<const Complex> u, std::span<Complex> gradient) {
    const double w = grid_.cell_volume();
    const double disp = params_.dispersion();
    const double g = params_.nonlinearity();
    std::copy(u.begin(), u.end(), work_.begin());
    fft_.forward(work_);
    double kinetic = 0.0;
    for (std::size_t i = 0; i < work_.size(); ++i) {
      kinetic += k_sq_[i] * std::norm(work_[i]);
      work_[i] *= -k_sq_[i];
    }
    kinetic *= w / static_cast<double>(work_.size());
    fft_.inverse(work_);  // Laplacian of u
    double well = 0.0;
    double coupling = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = 1.0 - std::norm(u[i]);
      well += d * d;
      coupling += potential_[i] * d;
      gradient[i] = 2.0 * (-disp * work_[i] - g * d * u[i] - potential_[i] * u[i]);
    }
    return disp * kinetic + 0.5 * g * w * well + w * coupling;
  }

 private:
  Grid grid_;
  FourierTransform fft_;
  std::vector<double> potential_;
  PhysParams params_;
  std::vector<double> k_sq_;
  std::vector<Complex> work_;
};

double real_dot(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

struct CorrectionPair {
  std::vector<Complex> s;
  std::vector<Complex> y;
  double rho;
};

}  // namespace

EnergyGradient energy_and_gradient(const Field& u, const Potential& pot, const PhysParams& params) {
  if (u.grid().bc() != BoundaryKind::periodic)
    throw ValidationError("energy_and_gradient requires a periodic grid");
  params.validate();
  EnergyFunctional functional(u.grid(), pot, params);
  Field gradient(u.grid());
  const double energy = functional.evaluate(u.values(), gradient.values());
  return {energy, std::move(gradient)};
}

MinimizeResult minimize(const Grid& grid, const Potential& pot, const PhysParams& params,
                        const MinimizeConfig& cfg) {
  cfg.validate();
  params.validate();
  if (grid.bc() != BoundaryKind::periodic) throw ValidationError("minimize requires a periodic grid");
  if (cfg.initial_guess && !cfg.initial_guess->grid().same_layout(grid))
    throw ValidationError("initial guess lives on a different grid");

  EnergyFunctional functional(grid, pot, params);
  constexpr double energy_noise = 1e-13;
  const double w = grid.cell_volume();
  const std::size_t n = grid.size();

  std::vector<Complex> x = cfg.initial_guess
                               ? std::vector<Complex>(cfg.initial_guess->values().begin(),
                                                      cfg.initial_guess->values().end())
                               : std::vector<Complex>(n, Complex{1.0, 0.0});
  std::vector<Complex> grad_field(n), trial(n), trial_grad(n), direction(n);
  double energy = functional.evaluate(x, grad_field);
  // Euclidean gradient over (Re, Im) is h^dim * G.
  auto euclidean = [w](std::span<const Complex> g, std::span<Complex> out) {
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = w * g[i];
  };
  std::vector<Complex> g(n), g_new(n);
  euclidean(grad_field, g);
  auto l2 = [w](std::span<const Complex> f) { return l2_norm(f, w); };

  MinimizeResult result{Field(grid)};
  result.initial_gradient_norm = l2(grad_field);
  result.energy_history.push_back(energy);
  double gnorm = result.initial_gradient_norm;
  const double target = cfg.grad_tol * std::max(1.0, result.initial_gradient_norm);

  std::deque<CorrectionPair> memory;
  std::vector<double> alpha_coeff;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    if (gnorm <= target) {
      result.converged = true;
      break;
    }
    // Two-loop recursion for direction = -H g.
    for (std::size_t i = 0; i < n; ++i) direction[i] = -g[i];
    alpha_coeff.assign(memory.size(), 0.0);
    for (std::size_t m = memory.size(); m-- > 0;) {
      alpha_coeff[m] = memory[m].rho * real_dot(memory[m].s, direction);
      for (std::size_t i = 0; i < n; ++i) direction[i] -= alpha_coeff[m] * memory[m].y[i];
    }
    double step = 1.0;
    if (!memory.empty()) {
      const auto& last = memory.back();
      const double gamma = real_dot(last.s, last.y) / real_dot(last.y, last.y);
      for (auto& d : direction) d *= gamma;
    } else {
      step = std::min(1.0, 1.0 / std::sqrt(real_dot(g, g)));
    }
    for (std::size_t m = 0; m < memory.size(); ++m) {
      const double beta = memory[m].rho * real_dot(memory[m].y, direction);
      for (std::size_t i = 0; i < n; ++i) direction[i] += (alpha_coeff[m] - beta) * memory[m].s[i];
    }
    double slope = real_dot(g, direction);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t i = 0; i < n; ++i) direction[i] = -g[i];
      slope = -real_dot(g, g);
      step = std::min(1.0, 1.0 / std::sqrt(-slope));
    }

    bool accepted = false;
    double trial_energy = energy;
    for (int tries = 0; tries < 60; ++tries, step *= cfg.backtrack_factor) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * direction[i];
      trial_energy = functional.evaluate(trial, trial_grad);
      if (!std::isfinite(trial_energy)) continue;
      if (trial_energy <= energy + cfg.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      // Near the minimum the Armijo decrease drops below the rounding level of
      // the energy sum; accept steps that still flatten the directional slope.
      const double trial_slope = w * real_dot(trial_grad, direction);
      if (trial_energy <= energy + energy_noise * std::max(1.0, std::abs(energy)) &&
          std::abs(trial_slope) <= 0.9 * std::abs(slope)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no further decrease representable in floating point

    euclidean(trial_grad, g_new);
    CorrectionPair pair{std::vector<Complex>(n), std::vector<Complex>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = trial[i] - x[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = real_dot(pair.s, pair.y);
    if (sy > 0.0) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > static_cast<std::size_t>(cfg.lbfgs_memory)) memory.pop_front();
    }
    x.swap(trial);
    g.swap(g_new);
    grad_field.swap(trial_grad);
    energy = trial_energy;
    gnorm = l2(grad_field);
    result.energy_history.push_back(energy);
  }
  if (!result.converged && gnorm <= target) result.converged = true;

  Complex mean{0.0, 0.0};
  for (auto z : x) mean += z;
  if (std::abs(mean) > 0.0) {
    const Complex rotation = std::conj(mean) / std::abs(mean);
    for (auto& z : x) z *= rotation;
  }
  result.minimizer = Field(grid, std::move(x));
  result.iterations = iter;
  result.energy = energy;
  result.gradient_norm = gnorm;
  return result;
}

}  // namespace gpsplit
