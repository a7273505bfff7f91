#include "radargait/gait_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radargait/height.hpp"
#include "radargait/rng.hpp"

namespace radargait {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Body parts sampled per frame. Lateral offsets are measured to the left
// of the travel direction. Feet reflect strongly near the ground, so they
// dominate the return mix; sampling weights are in tenths.
enum Part { kTorso = 0, kLeftFoot, kRightFoot, kLeftArm, kRightArm, kPartCount };

constexpr double kPartLateral[kPartCount] = {0.0, 0.12, -0.12, 0.25, -0.25};
constexpr int kPartWeight[kPartCount] = {4, 7, 7, 1, 1};  // sums to 20

Part sample_part(Rng& rng) {
  int pick = static_cast<int>(rng.uniform_index(20));
  for (int p = 0; p < kPartCount; ++p) {
    pick -= kPartWeight[p];
    if (pick < 0) return static_cast<Part>(p);
  }
  return kTorso;
}

// Along-path state of one body part at time t: arc-length position and
// instantaneous along-path velocity.
struct PartState {
  double d = 0.0;
  double v = 0.0;
};

// Foot kinematics for gait cycles of length cycle_m: the foot rests for
// the stance fraction and swings through one cycle length with a
// half-sine velocity profile, so its long-run average speed equals the
// body speed. phase shifts the cycle; swing_fraction = q.
PartState foot_state(double body_d, double speed, double cycle_m,
                     double swing_fraction, double phase) {
  const double c = body_d / cycle_m + phase;
  const double cycle = std::floor(c);
  const double u_cycle = c - cycle;
  PartState st;
  const double base = cycle * cycle_m;
  if (u_cycle < swing_fraction) {
    const double u = u_cycle / swing_fraction;
    const double peak = M_PI * speed / (2.0 * swing_fraction);
    st.v = peak * std::sin(M_PI * u);
    st.d = base + 0.5 * cycle_m * (1.0 - std::cos(M_PI * u));
  } else {
    st.v = 0.0;
    st.d = base + cycle_m;
  }
  // Center the oscillation on the torso.
  st.d -= (0.5 + phase) * cycle_m;
  return st;
}

// Sinusoidal limb swing around the body speed, one swing per cycle.
PartState swing_state(double body_d, double speed, double cycle_m,
                      double amplitude, double sign) {
  const double psi = kTwoPi * body_d / cycle_m;
  PartState st;
  st.v = speed * (1.0 + sign * amplitude * std::sin(psi));
  st.d = body_d + sign * amplitude * cycle_m / kTwoPi * (1.0 - std::cos(psi));
  return st;
}

double class_cycle_length(const SubjectSpec& spec) {
  const double model = model_stride_length(spec.speed_mps, spec.height_m);
  // The closed-form law describes the average human; simulated subjects
  // deviate from it with a mild speed-dependent gait style (slow walkers
  // take relatively shorter strides than the square-root law predicts).
  // A fixed model equation cannot absorb this, a trained regressor can.
  const double style = 1.0 + 0.06 * (spec.speed_mps - 1.35);
  switch (spec.motion) {
    case MotionClass::kWalk:
      return style * model;
    case MotionClass::kRun:
      return 1.3 * style * model;  // longer strides at speed
    case MotionClass::kCrutches:
      return 1.1 * style * model;  // long swing-through hops
    default:
      return model;
  }
}

PartState part_state(const SubjectSpec& spec, Part part, double t,
                     double body_d) {
  const double v = spec.speed_mps;
  const double cycle = class_cycle_length(spec);
  PartState st{body_d, v};

  switch (spec.motion) {
    case MotionClass::kWalk:
    case MotionClass::kRun: {
      const double q = spec.motion == MotionClass::kWalk ? 0.5 : 0.35;
      if (part == kLeftFoot) return foot_state(body_d, v, cycle, q, 0.0);
      if (part == kRightFoot) return foot_state(body_d, v, cycle, q, 0.5);
      if (part == kLeftArm) return swing_state(body_d, v, cycle, 0.15, +1.0);
      if (part == kRightArm) return swing_state(body_d, v, cycle, 0.15, -1.0);
      return st;
    }
    case MotionClass::kJump: {
      // Whole-body bursts: every part accelerates in phase, which is the
      // signature that separates jumping from gait cycles.
      const double burst = std::max(0.0, std::sin(kTwoPi * 1.1 * t));
      const double mod = burst * burst - 0.25;  // zero long-run mean
      st.v = v + 2.4 * mod;
      st.d = body_d + 0.15 * std::sin(kTwoPi * 1.1 * t);
      return st;
    }
    case MotionClass::kCrutches: {
      // Swing-through gait: both feet move together, both crutch tips
      // (modeled by the arm slots) plant in the opposite half cycle.
      if (part == kLeftFoot || part == kRightFoot) {
        return foot_state(body_d, v, cycle, 0.4, 0.0);
      }
      if (part == kLeftArm || part == kRightArm) {
        return foot_state(body_d, v, cycle, 0.4, 0.5);
      }
      return st;
    }
    case MotionClass::kSkateboard: {
      // Rolling at constant speed; the pushing foot kicks periodically.
      if (part == kRightFoot) {
        const double period = 2.2;
        const double u = std::fmod(t, period) / 0.5;
        if (u < 1.0) st.v = v * (1.0 + 1.1 * std::sin(M_PI * u));
      }
      return st;
    }
    case MotionClass::kWheelchair: {
      // Push-rim strokes barely modulate the arms; everything else rolls.
      if (part == kLeftArm || part == kRightArm) {
        st.v = v * (1.0 + 0.10 * std::sin(kTwoPi * 0.9 * t));
      }
      return st;
    }
  }
  return st;
}

}  // namespace

SpeedBounds speed_bounds(MotionClass c) {
  switch (c) {
    case MotionClass::kWalk: return {0.7, 2.0};
    case MotionClass::kRun: return {2.0, 5.0};
    case MotionClass::kJump: return {0.3, 1.5};
    case MotionClass::kCrutches: return {0.4, 1.2};
    case MotionClass::kSkateboard: return {1.5, 5.0};
    case MotionClass::kWheelchair: return {0.5, 2.0};
  }
  return {0.0, 0.0};
}

double simulated_stride_length(const SubjectSpec& spec) {
  return class_cycle_length(spec);
}

std::vector<RadarTarget> simulate(const SubjectSpec& spec, const SimConfig& cfg) {
  if (spec.height_m < 1.4 || spec.height_m > 2.1) {
    throw std::invalid_argument("simulate: height outside 1.4 .. 2.1 m");
  }
  const SpeedBounds bounds = speed_bounds(spec.motion);
  if (spec.speed_mps < bounds.lo || spec.speed_mps > bounds.hi) {
    throw std::invalid_argument("simulate: speed outside class bounds");
  }
  if (cfg.duration_s < 3.0 || !(cfg.mean_dt_s > 0.0)) {
    throw std::invalid_argument("simulate: bad config");
  }

  const double ux = std::cos(spec.heading_rad);
  const double uy = std::sin(spec.heading_rad);
  const double nx = -uy;  // left normal
  const double ny = ux;

  double sensor_x = cfg.sensor_x;
  double sensor_y = cfg.sensor_y;
  if (cfg.sensor_on_path) {
    sensor_x = spec.start_x - cfg.sensor_back_off_m * ux;
    sensor_y = spec.start_y - cfg.sensor_back_off_m * uy;
  }

  Rng rng(spec.seed);
  std::vector<RadarTarget> out;
  out.reserve(static_cast<std::size_t>(cfg.duration_s / cfg.mean_dt_s) * 3);

  double t = 0.0;
  while (t < cfg.duration_s) {
    const double body_d = spec.speed_mps * t;
    const int count = cfg.min_targets_per_frame +
                      static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(
                          cfg.max_targets_per_frame - cfg.min_targets_per_frame + 1)));
    for (int i = 0; i < count; ++i) {
      const Part part = sample_part(rng);
      const PartState st = part_state(spec, part, t, body_d);

      const double true_x = spec.start_x + st.d * ux + kPartLateral[part] * nx;
      const double true_y = spec.start_y + st.d * uy + kPartLateral[part] * ny;

      // Measurement noise in the sensor's polar frame: tight along the
      // radial (range), loose across it (bearing).
      double rx = true_x - sensor_x;
      double ry = true_y - sensor_y;
      double rn = std::hypot(rx, ry);
      const double rux = rn > 0.0 ? rx / rn : ux;
      const double ruy = rn > 0.0 ? ry / rn : uy;
      const double e_range = rng.normal(0.0, cfg.range_noise_sigma);
      const double e_cross = rng.normal(0.0, cfg.position_noise_sigma);
      const double px = true_x + e_range * rux + e_cross * (-ruy);
      const double py = true_y + e_range * ruy + e_cross * rux;

      // Radial Doppler toward the sensor; with the default geometry this
      // is essentially the along-path velocity.
      rx = px - sensor_x;
      ry = py - sensor_y;
      rn = std::hypot(rx, ry);
      const double radial = rn > 0.0
                                ? (st.v * ux) * (rx / rn) + (st.v * uy) * (ry / rn)
                                : st.v;
      double doppler = radial + rng.normal(0.0, cfg.doppler_noise_sigma);
      // Keep generated streams inside the ingestion sanity bound.
      doppler = std::clamp(doppler, -14.5, 14.5);

      RadarTarget rt;
      rt.t = t;
      rt.x = px;
      rt.y = py;
      rt.v = doppler;
      rt.track_id = spec.track_id;
      out.push_back(std::move(rt));
    }
    t += cfg.mean_dt_s * (1.0 + cfg.dt_jitter * (2.0 * rng.uniform() - 1.0));
  }
  return out;
}

}  // namespace radargait
