#include "herdsim/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "herdsim/errors.hpp"

namespace herdsim {

namespace {

constexpr double kPi = std::numbers::pi;

// max over s >= 0 of s exp(-s^2), attained at s = 1/sqrt(2); also the
// per-axis supremum of |u_1| exp(-|u|^2) over the plane.
double gauss_axis_sup() { return std::exp(-0.5) / std::numbers::sqrt2; }

// A = integral over s >= 0 of s^2 |2 - s^2| exp(-s^2) ds, in closed form via
// the complementary error function. Shows up in the divergence-gradient
// integral of every Gaussian-shaped drift term.
double gauss_div_grad_integral() {
  const double a = std::numbers::sqrt2;
  const double e2 = std::exp(-2.0);
  const double sqrt_pi = std::sqrt(kPi);
  const double i2 = 0.5 * a * e2 + 0.25 * sqrt_pi * std::erfc(a);  // s^2 tail
  const double i4 = 0.5 * a * a * a * e2 + 1.5 * i2;               // s^4 tail
  return sqrt_pi / 8.0 + 2.0 * (i4 - 2.0 * i2);
}

double max_congestion_slope_times(double v_max) { return v_max; }

class PiperModel final : public ScenarioModel {
 public:
  PiperModel(const PiperParams& prm, DirectionProfile psi)
      : prm_(prm), psi_(std::move(psi)) {
    name_ = "piper";
    rho_max_ = prm.rho_max;
    v_max_ = prm.v_max;
    state_dim_ = 2;
    mode_ = AveragingMode::value;
    kernel_radius_ = prm.kernel_radius;
    p0_ = {prm.start.x, prm.start.y};
    rho0_.shape = InitialDensity::Shape::rectangle;
    rho0_.rect_x0 = prm.rect_x0;
    rho0_.rect_x1 = prm.rect_x1;
    rho0_.rect_y0 = prm.rect_y0;
    rho0_.rect_y1 = prm.rect_y1;
    rho0_.scale = prm.rho0_scale;

    v_cfl_ = max_congestion_slope_times(prm.v_max) * gauss_axis_sup();
    c_phi_ = std::max(prm.speed_max, prm.speed_min);
    // |D_x W| <= 1 for W = u exp(-|u|^2)
    tv_flux_gradient_sup_ = prm.v_max;
    // 8 pi A, times the congestion-flux peak v_max rho_max / 4
    tv_divergence_integral_ =
        0.25 * prm.v_max * prm.rho_max * 8.0 * kPi * gauss_div_grad_integral();
    if (!psi_) {
      double omega = prm.omega;
      psi_ = [omega](double t) {
        return Vec2{std::cos(omega * t), -std::sin(omega * t)};
      };
    }
  }

  Vec2 drift_field(double /*t*/, Vec2 x, std::span<const double> p) const override {
    Vec2 u{p[0] - x.x, p[1] - x.y};
    return std::exp(-u.norm_sq()) * u;
  }

  std::vector<double> agent_velocity(double t, std::span<const double>,
                                     std::span<const double> r) const override {
    double q = prm_.speed_min +
               (prm_.speed_max - prm_.speed_min) * r[0] / prm_.rho_max;
    Vec2 dir = psi_(t);
    return {q * dir.x, q * dir.y};
  }

  std::vector<Vec2> sample_points(std::span<const double> p) const override {
    return {Vec2{p[0], p[1]}};
  }

 private:
  PiperParams prm_;
  DirectionProfile psi_;
};

class DogsModel final : public ScenarioModel {
 public:
  explicit DogsModel(const DogsParams& prm) : prm_(prm) {
    if (prm.starts.empty()) {
      throw ConfigError("dogs: at least one driver position required");
    }
    name_ = "dogs";
    rho_max_ = prm.rho_max;
    v_max_ = prm.v_max;
    state_dim_ = 2 * static_cast<int>(prm.starts.size());
    mode_ = AveragingMode::gradient;
    kernel_radius_ = prm.kernel_radius;
    for (Vec2 s : prm.starts) {
      p0_.push_back(s.x);
      p0_.push_back(s.y);
    }
    rho0_.shape = InitialDensity::Shape::disc;
    rho0_.disc_center = prm.disc_center;
    rho0_.disc_radius = prm.disc_radius;
    rho0_.scale = prm.rho0_scale;

    const double n = static_cast<double>(prm.starts.size());
    // per-axis suprema: beta s/(1+s^2) peaks at 1/2; each Gaussian repulsion
    // term peaks at alpha exp(-1/2)/sqrt(2), independent of ell
    v_cfl_ = prm.v_max *
             (0.5 * prm.beta + n * prm.alpha * gauss_axis_sup());
    c_phi_ = prm.dog_speed;
    tv_flux_gradient_sup_ =
        prm.v_max * (prm.beta + n * prm.alpha / std::sqrt(prm.ell));
    tv_divergence_integral_ =
        0.25 * prm.v_max * prm.rho_max *
        (kPi * kPi * prm.beta + n * 8.0 * kPi * prm.alpha * gauss_div_grad_integral());
  }

  Vec2 drift_field(double /*t*/, Vec2 x, std::span<const double> p) const override {
    Vec2 w = (prm_.beta / (1.0 + x.norm_sq())) * x;
    const double scale = prm_.alpha / std::sqrt(prm_.ell);
    for (std::size_t i = 0; i + 1 < p.size(); i += 2) {
      Vec2 u{x.x - p[i], x.y - p[i + 1]};
      w += (scale * std::exp(-u.norm_sq() / prm_.ell)) * u;
    }
    return w;
  }

  std::vector<double> agent_velocity(double /*t*/, std::span<const double> p,
                                     std::span<const double> r) const override {
    double norm_sq = 0.0;
    for (double ri : r) norm_sq += ri * ri;
    const double factor = prm_.dog_speed / std::sqrt(1.0 + norm_sq);
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i + 1 < r.size(); i += 2) {
      Vec2 rp = Vec2{r[i], r[i + 1]}.perp();
      out[i] = factor * rp.x;
      out[i + 1] = factor * rp.y;
    }
    return out;
  }

  std::vector<Vec2> sample_points(std::span<const double> p) const override {
    std::vector<Vec2> pts;
    pts.reserve(p.size() / 2);
    for (std::size_t i = 0; i + 1 < p.size(); i += 2) {
      pts.push_back({p[i], p[i + 1]});
    }
    return pts;
  }

 private:
  DogsParams prm_;
};

class PreyModel final : public ScenarioModel {
 public:
  explicit PreyModel(const PreyParams& prm) : prm_(prm) {
    name_ = "prey";
    rho_max_ = prm.rho_max;
    v_max_ = prm.v_max;
    state_dim_ = 4;  // position-velocity pair
    mode_ = AveragingMode::gradient;
    kernel_radius_ = prm.kernel_radius;
    p0_ = {prm.start.x, prm.start.y, prm.start_velocity.x, prm.start_velocity.y};
    rho0_.shape = InitialDensity::Shape::rectangle;
    rho0_.rect_x0 = prm.rect_x0;
    rho0_.rect_x1 = prm.rect_x1;
    rho0_.rect_y0 = prm.rect_y0;
    rho0_.rect_y1 = prm.rect_y1;
    rho0_.scale = prm.rho0_scale;

    const double axis_drift = std::max(std::abs(prm.drift.x), std::abs(prm.drift.y));
    // B s exp(-C s) peaks at s = 1/C with value B/(C e)
    v_cfl_ = prm.v_max *
             (axis_drift + prm.escape_rate / (prm.escape_range * std::numbers::e));
    MollifierKernel kernel(prm.kernel_radius);
    const double mass0 = rho0_.analytic_mass(prm.rho_max);
    c_phi_ = std::max(1.0, prm.accel_gain * kernel.max_gradient_norm() * mass0);
    tv_flux_gradient_sup_ = prm.v_max * prm.escape_rate;
    // (2 pi B / C) (1 + 10 exp(-3)), times the congestion-flux peak
    tv_divergence_integral_ = 0.25 * prm.v_max * prm.rho_max * 2.0 * kPi *
                              prm.escape_rate / prm.escape_range *
                              (1.0 + 10.0 * std::exp(-3.0));
  }

  Vec2 drift_field(double /*t*/, Vec2 x, std::span<const double> p) const override {
    Vec2 u{x.x - p[0], x.y - p[1]};
    double s = u.norm();
    return prm_.drift + (prm_.escape_rate * std::exp(-prm_.escape_range * s)) * u;
  }

  std::vector<double> agent_velocity(double /*t*/, std::span<const double> p,
                                     std::span<const double> r) const override {
    return {p[2], p[3], prm_.accel_gain * r[0], prm_.accel_gain * r[1]};
  }

  std::vector<Vec2> sample_points(std::span<const double> p) const override {
    return {Vec2{p[0], p[1]}};
  }

 private:
  PreyParams prm_;
};

double scalar(const ParamOverrides& ov, const std::string& key, double fallback) {
  auto it = ov.find(key);
  if (it == ov.end()) return fallback;
  if (it->second.size() != 1) {
    throw ConfigError("parameter '" + key + "' expects a single value");
  }
  return it->second[0];
}

void reject_unknown(const ParamOverrides& ov,
                    std::initializer_list<const char*> known,
                    const std::string& scenario) {
  for (const auto& [key, _] : ov) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return key == k;
        }) == known.end()) {
      throw ConfigError("unknown parameter '" + scenario + "." + key + "'");
    }
  }
}

}  // namespace

double InitialDensity::analytic_mass(double rho_max) const {
  switch (shape) {
    case Shape::none:
      return 0.0;
    case Shape::rectangle:
      return rho_max * scale * (rect_x1 - rect_x0) * (rect_y1 - rect_y0);
    case Shape::disc:
      return rho_max * scale * kPi * disc_radius * disc_radius;
  }
  return 0.0;
}

std::array<double, 4> InitialDensity::bounding_box() const {
  switch (shape) {
    case Shape::none:
      return {0.0, 0.0, 0.0, 0.0};
    case Shape::rectangle:
      return {rect_x0, rect_y0, rect_x1, rect_y1};
    case Shape::disc:
      return {disc_center.x - disc_radius, disc_center.y - disc_radius,
              disc_center.x + disc_radius, disc_center.y + disc_radius};
  }
  return {0.0, 0.0, 0.0, 0.0};
}

std::unique_ptr<ScenarioModel> make_piper(const PiperParams& params,
                                          DirectionProfile psi) {
  return std::make_unique<PiperModel>(params, std::move(psi));
}

std::unique_ptr<ScenarioModel> make_dogs(const DogsParams& params) {
  return std::make_unique<DogsModel>(params);
}

std::unique_ptr<ScenarioModel> make_prey(const PreyParams& params) {
  return std::make_unique<PreyModel>(params);
}

PiperParams piper_params(const ParamOverrides& ov) {
  reject_unknown(ov,
                 {"v_max", "rho_max", "speed_max", "speed_min", "omega",
                  "kernel_radius", "start_x", "start_y", "rect_x0", "rect_x1",
                  "rect_y0", "rect_y1", "rho0_scale"},
                 "piper");
  PiperParams p;
  p.v_max = scalar(ov, "v_max", p.v_max);
  p.rho_max = scalar(ov, "rho_max", p.rho_max);
  p.speed_max = scalar(ov, "speed_max", p.speed_max);
  p.speed_min = scalar(ov, "speed_min", p.speed_min);
  p.omega = scalar(ov, "omega", p.omega);
  p.kernel_radius = scalar(ov, "kernel_radius", p.kernel_radius);
  p.start.x = scalar(ov, "start_x", p.start.x);
  p.start.y = scalar(ov, "start_y", p.start.y);
  p.rect_x0 = scalar(ov, "rect_x0", p.rect_x0);
  p.rect_x1 = scalar(ov, "rect_x1", p.rect_x1);
  p.rect_y0 = scalar(ov, "rect_y0", p.rect_y0);
  p.rect_y1 = scalar(ov, "rect_y1", p.rect_y1);
  p.rho0_scale = scalar(ov, "rho0_scale", p.rho0_scale);
  return p;
}

DogsParams dogs_params(const ParamOverrides& ov) {
  reject_unknown(ov,
                 {"v_max", "rho_max", "alpha", "ell", "beta", "kernel_radius",
                  "dog_speed", "start", "disc_cx", "disc_cy", "disc_radius",
                  "rho0_scale"},
                 "dogs");
  DogsParams p;
  p.v_max = scalar(ov, "v_max", p.v_max);
  p.rho_max = scalar(ov, "rho_max", p.rho_max);
  p.alpha = scalar(ov, "alpha", p.alpha);
  p.ell = scalar(ov, "ell", p.ell);
  p.beta = scalar(ov, "beta", p.beta);
  p.kernel_radius = scalar(ov, "kernel_radius", p.kernel_radius);
  p.dog_speed = scalar(ov, "dog_speed", p.dog_speed);
  p.disc_center.x = scalar(ov, "disc_cx", p.disc_center.x);
  p.disc_center.y = scalar(ov, "disc_cy", p.disc_center.y);
  p.disc_radius = scalar(ov, "disc_radius", p.disc_radius);
  p.rho0_scale = scalar(ov, "rho0_scale", p.rho0_scale);
  if (auto it = ov.find("start"); it != ov.end()) {
    const auto& list = it->second;
    if (list.size() < 2 || list.size() % 2 != 0) {
      throw ConfigError("dogs.start expects an even number of coordinates");
    }
    p.starts.clear();
    for (std::size_t i = 0; i < list.size(); i += 2) {
      p.starts.push_back({list[i], list[i + 1]});
    }
  }
  return p;
}

PreyParams prey_params(const ParamOverrides& ov) {
  reject_unknown(ov,
                 {"v_max", "rho_max", "escape_rate", "escape_range", "drift_x",
                  "drift_y", "accel_gain", "kernel_radius", "start_x", "start_y",
                  "vel_x", "vel_y", "rect_x0", "rect_x1", "rect_y0", "rect_y1",
                  "rho0_scale"},
                 "prey");
  PreyParams p;
  p.v_max = scalar(ov, "v_max", p.v_max);
  p.rho_max = scalar(ov, "rho_max", p.rho_max);
  p.escape_rate = scalar(ov, "escape_rate", p.escape_rate);
  p.escape_range = scalar(ov, "escape_range", p.escape_range);
  p.drift.x = scalar(ov, "drift_x", p.drift.x);
  p.drift.y = scalar(ov, "drift_y", p.drift.y);
  p.accel_gain = scalar(ov, "accel_gain", p.accel_gain);
  p.kernel_radius = scalar(ov, "kernel_radius", p.kernel_radius);
  p.start.x = scalar(ov, "start_x", p.start.x);
  p.start.y = scalar(ov, "start_y", p.start.y);
  p.start_velocity.x = scalar(ov, "vel_x", p.start_velocity.x);
  p.start_velocity.y = scalar(ov, "vel_y", p.start_velocity.y);
  p.rect_x0 = scalar(ov, "rect_x0", p.rect_x0);
  p.rect_x1 = scalar(ov, "rect_x1", p.rect_x1);
  p.rect_y0 = scalar(ov, "rect_y0", p.rect_y0);
  p.rect_y1 = scalar(ov, "rect_y1", p.rect_y1);
  p.rho0_scale = scalar(ov, "rho0_scale", p.rho0_scale);
  return p;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"piper", "dogs", "prey"};
  return names;
}

std::unique_ptr<ScenarioModel> make_scenario(const std::string& name,
                                             const ParamOverrides& overrides) {
  if (name == "piper") return make_piper(piper_params(overrides));
  if (name == "dogs") return make_dogs(dogs_params(overrides));
  if (name == "prey") return make_prey(prey_params(overrides));
  std::ostringstream msg;
  msg << "unknown scenario '" << name << "'; valid scenarios:";
  for (const auto& n : scenario_names()) msg << " " << n;
  throw ConfigError(msg.str());
}

DensityField initial_density(const ScenarioModel& model, const GridSpec& grid) {
  grid.validate();
  const InitialDensity& spec = model.initial_density_spec();
  DensityField field(grid, model.rho_max());
  if (spec.shape == InitialDensity::Shape::none || spec.scale == 0.0) {
    return field;
  }

  const auto box = spec.bounding_box();
  const double margin = model.kernel_radius() + 2.0 * std::max(grid.dx, grid.dy);
  if (box[0] - margin < grid.x0 || box[1] - margin < grid.y0 ||
      box[2] + margin > grid.x_max() || box[3] + margin > grid.y_max()) {
    std::ostringstream msg;
    msg << "initial density needs the domain to cover at least ["
        << box[0] - margin << ", " << box[2] + margin << "] x ["
        << box[1] - margin << ", " << box[3] + margin << "], got ["
        << grid.x0 << ", " << grid.x_max() << "] x [" << grid.y0 << ", "
        << grid.y_max() << "]";
    throw DomainTooSmallError(msg.str());
  }

  auto inside = [&spec](Vec2 pt) {
    if (spec.shape == InitialDensity::Shape::rectangle) {
      return pt.x >= spec.rect_x0 && pt.x <= spec.rect_x1 &&
             pt.y >= spec.rect_y0 && pt.y <= spec.rect_y1;
    }
    return (pt - spec.disc_center).norm_sq() <= spec.disc_radius * spec.disc_radius;
  };

  const double peak = model.rho_max() * spec.scale;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      int hits = 0;
      for (int sj = 0; sj < 4; ++sj) {
        for (int si = 0; si < 4; ++si) {
          Vec2 pt{grid.x0 + (i + (si + 0.5) / 4.0) * grid.dx,
                  grid.y0 + (j + (sj + 0.5) / 4.0) * grid.dy};
          if (inside(pt)) ++hits;
        }
      }
      if (hits > 0) field(i, j) = peak * (hits / 16.0);
    }
  }
  return field;
}

double sampled_flux_slope(const ScenarioModel& model, unsigned long long seed,
                          int samples) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  const double R = model.rho_max();
  double worst = 0.0;
  const double h = 1e-6 * R;
  std::vector<double> p(model.state_dim());
  for (int k = 0; k < samples; ++k) {
    Vec2 x{uniform(-3.0, 3.0), uniform(-3.0, 3.0)};
    for (double& pi : p) pi = uniform(-2.0, 2.0);
    double t = uniform(0.0, 2.0);
    double rho = uniform(h, R - h);
    Vec2 fp = model.flux(t, x, rho + h, p);
    Vec2 fm = model.flux(t, x, rho - h, p);
    worst = std::max({worst, std::abs(fp.x - fm.x) / (2.0 * h),
                      std::abs(fp.y - fm.y) / (2.0 * h)});
  }
  return worst;
}

}  // namespace herdsim
