#include "upcint/event_generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "upcint/errors.hpp"
#include "upcint/parallel.hpp"

namespace upcint {
namespace {

constexpr double kHbarC = PhysicalConstants::hbar_c;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kPtTableSize = 8192;
constexpr std::size_t kPilotTrials = 50000;
constexpr std::size_t kMaxTrialsPerEvent = 50'000'000;

Vec3 isotropic_direction(CounterStream& rng) {
  const double cos_theta = rng.uniform(-1.0, 1.0);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double phi = rng.uniform(0.0, kTwoPi);
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

// Back-to-back pair in the parent rest frame.
std::pair<FourVector, FourVector> two_body_rest(double m, double m1, double m2,
                                                CounterStream& rng) {
  const double p = two_body_momentum(m, m1, m2);
  const Vec3 dir = isotropic_direction(rng);
  const Vec3 p1 = dir * p;
  return {{std::sqrt(p * p + m1 * m1), p1}, {std::sqrt(p * p + m2 * m2), p1 * -1.0}};
}

}  // namespace

void GeneratorConfig::validate() const {
  if (!(y_max >= y_min)) throw std::invalid_argument("generator: empty rapidity window");
  if (!(pt_min >= 0.0 && pt_max > pt_min)) throw std::invalid_argument("generator: empty pT window");
  if (b_min > 0.0 && b_max > 0.0 && !(b_max > b_min))
    throw std::invalid_argument("generator: empty impact-parameter window");
  if (decoherence.kind == DecoherenceKind::FixedEta &&
      !(decoherence.fixed_eta >= 0.0 && decoherence.fixed_eta <= 1.0))
    throw std::invalid_argument("generator: fixed eta outside [0, 1]");
}

double sample_decay_time(const MesonSpec& meson, double omega_mev, CounterStream& rng) {
  if (!(omega_mev >= meson.mass_mev * (1.0 - 1e-12)))
    throw std::domain_error("sample_decay_time: energy below the meson mass");
  return rng.exponential(std::max(1.0, omega_mev / meson.mass_mev) * meson.lifetime_s);
}

std::vector<Product> decay_event(const FourVector& meson, const DecayChannel& channel,
                                 const Vec3& vertex, CounterStream& rng) {
  const double m = meson.mass();
  const auto& masses = channel.product_masses;
  if (!(channel.mass_sum() < m))
    throw ConfigError(fmt::format("channel '{}' is closed for M = {} MeV", channel.id, m));
  std::vector<FourVector> rest;
  if (masses.size() == 2) {
    auto [p1, p2] = two_body_rest(m, masses[0], masses[1], rng);
    rest = {p1, p2};
  } else if (masses.size() == 3) {
    const double m1 = masses[0], m2 = masses[1], m3 = masses[2];
    const double lo = m1 + m2, hi = m - m3;
    const double bound = two_body_momentum(m, lo, m3) * two_body_momentum(hi, m1, m2);
    double m12 = lo;
    for (;;) {
      m12 = rng.uniform(lo, hi);
      const double w = two_body_momentum(m, m12, m3) * two_body_momentum(m12, m1, m2);
      if (rng.uniform() * bound <= w) break;
    }
    auto [p12, p3] = two_body_rest(m, m12, m3, rng);
    auto [q1, q2] = two_body_rest(m12, m1, m2, rng);
    const Vec3 beta12 = p12.velocity();
    rest = {boost(q1, beta12), boost(q2, beta12), p3};
  } else {
    throw ConfigError(fmt::format("channel '{}' must have 2 or 3 products", channel.id));
  }
  const Vec3 beta = meson.velocity();
  std::vector<Product> out;
  out.reserve(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) out.push_back({masses[i], boost(rest[i], beta), vertex});
  return out;
}

std::pair<std::complex<double>, std::complex<double>> entangled_phase(const Event& ev,
                                                                      const AmplitudeRatio& c) {
  // b = (0, b, 0): p.b / hbar c = p_y b / hbar c.
  const double half = 0.5 * ev.meson.p.y * ev.b / kHbarC;
  return {std::polar(1.0, half), -c.magnitude * std::polar(1.0, -(half + c.phase_rad))};
}

EventGenerator::EventGenerator(const PhotoproductionModel& model, GeneratorConfig config)
    : model_(model), config_(std::move(config)) {
  config_.validate();
  const double y_edge = std::max(std::abs(config_.y_min), std::abs(config_.y_max));
  window_ = resolve_b_window(model_, y_edge);
  if (config_.b_min > 0.0) window_.b_min = config_.b_min;
  if (config_.b_max > 0.0) window_.b_max = config_.b_max;
  if (!(window_.b_max > window_.b_min && window_.b_min >= 0.1))
    throw std::invalid_argument("generator: invalid impact-parameter window");
  u_lo_ = std::log(window_.b_min);
  u_hi_ = std::log(window_.b_max);

  // Envelope for b^2 (w1 + w2) over the (ln b, y) proposal box.
  constexpr int nu = 400, ny = 41;
  for (int j = 0; j < ny; ++j) {
    const double y = config_.y_min == config_.y_max
                         ? config_.y_min
                         : config_.y_min + (config_.y_max - config_.y_min) * j / (ny - 1);
    for (int i = 0; i <= nu; ++i) {
      const double b = std::exp(u_lo_ + (u_hi_ - u_lo_) * i / nu);
      envelope_ = std::max(envelope_, b * b * model_.source_weights(y, b).total());
    }
  }
  envelope_ *= 1.1;
  if (!(envelope_ > 0.0)) throw SamplingFailure("generator: production weight vanishes in window");

  // Inverse-CDF table for pT |F(pT)|^2.
  pt_grid_.resize(kPtTableSize + 1);
  pt_cdf_.assign(kPtTableSize + 1, 0.0);
  auto density = [&](double pt) {
    const double f = model_.form_factor()(pt);
    return pt * f * f;
  };
  for (std::size_t i = 0; i <= kPtTableSize; ++i)
    pt_grid_[i] = config_.pt_min + (config_.pt_max - config_.pt_min) * i / kPtTableSize;
  for (std::size_t i = 1; i <= kPtTableSize; ++i) {
    const double mid = 0.5 * (pt_grid_[i - 1] + pt_grid_[i]);
    const double h = pt_grid_[i] - pt_grid_[i - 1];
    // Simpson on each cell.
    pt_cdf_[i] = pt_cdf_[i - 1] +
                 h / 6.0 * (density(pt_grid_[i - 1]) + 4.0 * density(mid) + density(pt_grid_[i]));
  }
  if (!(pt_cdf_.back() > 0.0)) throw SamplingFailure("generator: form factor vanishes in pT window");
  for (auto& c : pt_cdf_) c /= pt_cdf_.back();

  const auto& meson = model_.meson();
  if (config_.channel.empty()) {
    double total = 0.0;
    for (const auto& ch : meson.channels) total += ch.fraction;
    double acc = 0.0;
    for (const auto& ch : meson.channels) {
      acc += ch.fraction / total;
      channels_.emplace_back(ch.id, acc);
    }
    channels_.back().second = 1.0;
  } else {
    meson.channel(config_.channel);  // throws for an unknown id
    channels_.emplace_back(config_.channel, 1.0);
  }

  CounterStream pilot(config_.seed, 0, StreamPurpose::Pilot);
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < kPilotTrials; ++i)
    if (try_once(pilot).accepted) ++accepted;
  stats_.pilot_trials = kPilotTrials;
  stats_.pilot_acceptance = static_cast<double>(accepted) / kPilotTrials;
  if (stats_.pilot_acceptance < kMinAcceptance)
    throw SamplingFailure(fmt::format(
        "kinematic sampler acceptance {:.2e} is below {:.0e}: the y/pT/b windows are too "
        "restrictive for this model",
        stats_.pilot_acceptance, kMinAcceptance));
}

double EventGenerator::event_eta(double b, double pt, double omega) const {
  if (config_.timing_resolution_s >= 0.0 &&
      config_.timing_resolution_s < b / PhysicalConstants::c_light)
    return 1.0;
  return eta(b, model_.meson(), omega, pt, config_.decoherence);
}

EventGenerator::Trial EventGenerator::try_once(CounterStream& rng) const {
  Trial t;
  const double u = rng.uniform(u_lo_, u_hi_);
  const double y = config_.y_min == config_.y_max ? config_.y_min
                                                  : rng.uniform(config_.y_min, config_.y_max);
  const double b = std::exp(u);
  const auto w = model_.source_weights(y, b);
  if (rng.uniform() * envelope_ >= b * b * w.total()) return t;

  const double r = rng.uniform();
  const auto it = std::upper_bound(pt_cdf_.begin(), pt_cdf_.end(), r);
  const std::size_t i = std::clamp<std::size_t>(it - pt_cdf_.begin(), 1, kPtTableSize);
  const double span = pt_cdf_[i] - pt_cdf_[i - 1];
  const double frac = span > 0.0 ? (r - pt_cdf_[i - 1]) / span : 0.0;
  const double pt = pt_grid_[i - 1] + frac * (pt_grid_[i] - pt_grid_[i - 1]);
  const double phi = rng.uniform(0.0, kTwoPi);

  const double mass = model_.meson().mass_mev;
  const double mt = std::sqrt(mass * mass + pt * pt);
  const double omega = mt * std::cosh(y);
  const double e = event_eta(b, pt, omega);
  const double delta = model_.cross_section().phase_delta_rad;
  const double s1 = std::sqrt(w.w1), s2 = std::sqrt(w.w2);
  const double phase = pt * b * std::cos(phi) / kHbarC + delta;
  const double accept = (w.total() - 2.0 * s1 * s2 * (1.0 - e) * std::cos(phase)) /
                        ((s1 + s2) * (s1 + s2));
  if (rng.uniform() >= accept) return t;

  t.accepted = true;
  Event& ev = t.event;
  ev.y = y;
  ev.pt = pt;
  ev.phi = phi;
  ev.b = b;
  ev.eta = e;
  ev.localizing = config_.timing_resolution_s >= 0.0 &&
                  config_.timing_resolution_s < b / PhysicalConstants::c_light;
  ev.meson = {omega, {pt * std::sin(phi), pt * std::cos(phi), mt * std::sinh(y)}};
  return t;
}

Event EventGenerator::sample_kinematics(std::uint64_t index) const {
  CounterStream rng(config_.seed, index, StreamPurpose::Kinematics);
  for (std::size_t n = 0; n < kMaxTrialsPerEvent; ++n) {
    auto t = try_once(rng);
    if (!t.accepted) continue;
    Event& ev = t.event;
    ev.index = index;
    const auto w = model_.source_weights(ev.y, ev.b);
    CounterStream src(config_.seed, index, StreamPurpose::Source);
    ev.source = src.uniform() * w.total() < w.w1 ? 1 : 2;
    const auto c = model_.amplitude_ratio_c(ev.y, ev.b);
    std::tie(ev.a1, ev.a2) = entangled_phase(ev, c);
    return std::move(ev);
  }
  throw SamplingFailure(fmt::format("event {}: no kinematic point accepted in {} trials", index,
                                    kMaxTrialsPerEvent));
}

Event EventGenerator::generate(std::uint64_t index) const {
  Event ev = sample_kinematics(index);
  const auto& meson = model_.meson();

  CounterStream time_rng(config_.seed, index, StreamPurpose::DecayTime);
  ev.t_decay_s = sample_decay_time(meson, ev.meson.e, time_rng);
  // x_d = (p / omega) c t_lab.
  ev.x_decay = ev.meson.p * (PhysicalConstants::c_light * ev.t_decay_s / ev.meson.e);

  CounterStream channel_rng(config_.seed, index, StreamPurpose::Channel);
  const double r = channel_rng.uniform();
  const auto it = std::find_if(channels_.begin(), channels_.end(),
                               [&](const auto& c) { return r < c.second; });
  ev.channel = (it == channels_.end() ? channels_.back() : *it).first;

  CounterStream angle_rng(config_.seed, index, StreamPurpose::DecayAngles);
  ev.products = decay_event(ev.meson, meson.channel(ev.channel), ev.decay_vertex(), angle_rng);
  return ev;
}

std::vector<Event> EventGenerator::generate_range(std::uint64_t first, std::size_t count,
                                                  unsigned threads) const {
  std::vector<Event> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = generate(first + i); });
  return out;
}

}  // namespace upcint
