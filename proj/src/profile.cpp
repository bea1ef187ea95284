#include "lebedev/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "lebedev/error.hpp"

namespace lebedev {

namespace {

using std::numbers::pi;

constexpr double kSpanTolerance = 1e-6;
constexpr std::size_t kMinSamples = 8;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidProfile, what); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, const char* what) {
  text = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    invalid(std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + 1);
  }
}

}  // namespace

double wrap_angle(double u) {
  double w = std::fmod(u + pi, 2.0 * pi);
  if (w < 0.0) w += 2.0 * pi;
  w -= pi;
  return w >= pi ? -pi : w;
}

double PeriodicProfile::phi(double u) const { return psi(u) * std::sinh(u); }

PeriodicProfile PeriodicProfile::zero() {
  return {[](double) { return 0.0; }, 1.0, "zero"};
}

PeriodicProfile PeriodicProfile::sine_series(std::vector<double> b, std::string label) {
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!std::isfinite(b[k])) invalid("non-finite sine coefficient");
    lipschitz += static_cast<double>(k + 1) * std::abs(b[k]);
  }
  if (label.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "fourier:";
    for (std::size_t k = 0; k < b.size(); ++k) os << (k ? "," : "") << b[k];
    label = os.str();
  }
  auto coeffs = std::make_shared<const std::vector<double>>(std::move(b));
  auto psi = [coeffs](double u) {
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs->size(); ++k) {
      s += (*coeffs)[k] * std::sin(static_cast<double>(k + 1) * u);
    }
    return s;
  };
  return {psi, lipschitz > 0.0 ? lipschitz : 1.0, label};
}

PeriodicProfile PeriodicProfile::builtin(std::string_view name, double amplitude) {
  if (!std::isfinite(amplitude)) invalid("amplitude must be finite");
  const double a = amplitude;
  const double lip = std::abs(a) > 0.0 ? std::abs(a) : 1.0;
  std::ostringstream label;
  label.precision(17);
  label << "builtin:" << name;
  if (a != 1.0) label << ":" << a;
  if (name == "zero") return {[](double) { return 0.0; }, 1.0, label.str()};
  if (name == "sin") return {[a](double u) { return a * std::sin(u); }, lip, label.str()};
  if (name == "cos") return {[a](double u) { return a * std::cos(u); }, lip, label.str()};
  if (name == "sawtooth") {
    return {[a](double u) { return a * wrap_angle(u); }, lip, label.str()};
  }
  invalid("unknown builtin profile '" + std::string(name) + "'");
}

PeriodicProfile PeriodicProfile::sampled(std::vector<std::pair<double, double>> samples,
                                         std::string label) {
  if (samples.size() < kMinSamples) invalid("sampled profile needs at least 8 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [u, v] = samples[i];
    if (!std::isfinite(u) || !std::isfinite(v)) invalid("non-finite sample");
    if (i > 0 && !(u > samples[i - 1].first)) invalid("sample abscissae must increase strictly");
  }
  if (samples.front().first > -pi + kSpanTolerance || samples.back().first < pi - kSpanTolerance) {
    invalid("samples must span [-pi, pi]");
  }
  if (samples.front().first < -pi - kSpanTolerance || samples.back().first > pi + kSpanTolerance) {
    invalid("samples must lie in [-pi, pi]");
  }
  double lipschitz = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double slope = (samples[i].second - samples[i - 1].second) /
                         (samples[i].first - samples[i - 1].first);
    lipschitz = std::max(lipschitz, std::abs(slope));
  }
  auto data = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(samples));
  auto psi = [data](double u) {
    const auto& s = *data;
    const double w = wrap_angle(u);
    if (w <= s.front().first) return s.front().second;
    if (w >= s.back().first) return s.back().second;
    const auto it = std::upper_bound(s.begin(), s.end(), w,
                                     [](double value, const auto& p) { return value < p.first; });
    const auto& [u1, v1] = *it;
    const auto& [u0, v0] = *(it - 1);
    return v0 + (v1 - v0) * (w - u0) / (u1 - u0);
  };
  return {psi, lipschitz > 0.0 ? lipschitz : 1.0, label.empty() ? "sampled" : label};
}

void check_profile(const PeriodicProfile& p, std::uint64_t seed, int pairs) {
  if (!p.psi) invalid("profile has no generator");
  if (!(p.lipschitz_bound > 0.0 && std::isfinite(p.lipschitz_bound))) {
    invalid("Lipschitz bound must be positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int i = 0; i < pairs; ++i) {
    const double u = angle(rng);
    const double v = angle(rng);
    const double lhs = std::abs(p(u) - p(v));
    const double rhs = p.lipschitz_bound * std::abs(u - v) * (1.0 + 1e-9) + 1e-12;
    if (!(lhs <= rhs)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "Lipschitz bound " << p.lipschitz_bound << " violated at u=" << u << ", v=" << v;
      invalid(msg.str());
    }
  }
  constexpr int kProbes = 64;
  for (int k = 0; k < kProbes; ++k) {
    const double u = -pi + 2.0 * pi * k / kProbes;
    if (!(std::abs(p(u + 2.0 * pi) - p(u)) <= 1e-12)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "profile is not 2 pi-periodic at u=" << u;
      invalid(msg.str());
    }
  }
}

std::vector<std::pair<double, double>> read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) invalid("empty profile file '" + path + "'");
  {
    const auto cols = split(trim(line), ',');
    if (cols.size() != 2 || trim(cols[0]) != "u" || trim(cols[1]) != "psi") {
      invalid("profile CSV header must be 'u,psi'");
    }
  }
  std::vector<std::pair<double, double>> samples;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2) invalid("profile CSV rows need two columns: '" + line + "'");
    samples.emplace_back(parse_number(cols[0], "u"), parse_number(cols[1], "psi"));
  }
  return samples;
}

PeriodicProfile parse_profile(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto kind = spec.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (kind == "builtin") {
    const auto parts = split(rest, ':');
    if (parts.size() > 2 || trim(parts[0]).empty()) invalid("expected builtin:NAME[:AMPLITUDE]");
    const double amplitude = parts.size() == 2 ? parse_number(parts[1], "amplitude") : 1.0;
    return PeriodicProfile::builtin(trim(parts[0]), amplitude);
  }
  if (kind == "fourier") {
    if (trim(rest).empty()) invalid("fourier profile needs at least one coefficient");
    std::vector<double> b;
    for (auto part : split(rest, ',')) b.push_back(parse_number(part, "fourier coefficient"));
    return PeriodicProfile::sine_series(std::move(b));
  }
  if (kind == "sampled") {
    if (rest.empty()) invalid("expected sampled:PATH");
    return PeriodicProfile::sampled(read_profile_csv(std::string(rest)), "sampled:" + std::string(rest));
  }
  invalid("unknown profile kind in '" + std::string(spec) + "'");
}

}  // namespace lebedev
