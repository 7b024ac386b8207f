#include "dyn/profile.hpp"

#include <algorithm>
#include <cmath>

#include "util/errors.hpp"

namespace hoferlab::dyn {

namespace {
double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
double dsmooth(double t) { return 6.0 * t * (1.0 - t); }
}  // namespace

TimeProfile TimeProfile::constant(double v) {
  TimeProfile p;
  p.kind_ = Kind::Constant;
  p.coeffs_ = {v};
  return p;
}

TimeProfile TimeProfile::poly(std::vector<double> coeffs) {
  TimeProfile p;
  p.kind_ = Kind::Poly;
  if (coeffs.empty()) coeffs.push_back(0.0);
  p.coeffs_ = std::move(coeffs);
  return p;
}

TimeProfile TimeProfile::smoothstep() {
  TimeProfile p;
  p.kind_ = Kind::Smoothstep;
  return p;
}

TimeProfile TimeProfile::smoothstep_flat() {
  TimeProfile p;
  p.kind_ = Kind::SmoothstepFlat;
  return p;
}

TimeProfile TimeProfile::pwlinear(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw_structural("pwlinear profile needs matching times/values, at least two");
  if (!std::is_sorted(times.begin(), times.end()))
    throw_structural("pwlinear profile times must be sorted");
  TimeProfile p;
  p.kind_ = Kind::PwLinear;
  p.times_ = std::move(times);
  p.coeffs_ = std::move(values);
  return p;
}

double TimeProfile::value(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return coeffs_[0];
    case Kind::Poly: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * t + coeffs_[k];
      return v;
    }
    case Kind::Smoothstep:
      return smooth(t);
    case Kind::SmoothstepFlat:
      return smooth(smooth(t));
    case Kind::PwLinear: {
      if (t <= times_.front()) return coeffs_.front();
      if (t >= times_.back()) return coeffs_.back();
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      std::size_t hi = static_cast<std::size_t>(it - times_.begin());
      std::size_t lo = hi - 1;
      double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
      return coeffs_[lo] + w * (coeffs_[hi] - coeffs_[lo]);
    }
  }
  return 0.0;
}

bool TimeProfile::is_constant() const {
  if (kind_ == Kind::Constant) return true;
  if (kind_ == Kind::Poly) {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      if (coeffs_[k] != 0.0) return false;
    return true;
  }
  if (kind_ == Kind::PwLinear) {
    for (double v : coeffs_)
      if (v != coeffs_.front()) return false;
    return true;
  }
  return false;
}

double TimeProfile::constant_value() const { return value(0.0); }

TimeProfile TimeProfile::from_json(const nlohmann::json& j) {
  if (j.is_number()) return constant(j.get<double>());
  if (!j.is_object() || !j.contains("type")) throw_structural("profile needs a 'type'");
  std::string type = j.at("type").get<std::string>();
  if (type == "constant") return constant(j.at("value").get<double>());
  if (type == "poly") return poly(j.at("coeffs").get<std::vector<double>>());
  if (type == "smoothstep") return smoothstep();
  if (type == "smoothstep_flat") return smoothstep_flat();
  if (type == "pwlinear")
    return pwlinear(j.at("times").get<std::vector<double>>(),
                    j.at("values").get<std::vector<double>>());
  throw_structural("unknown profile type '" + type + "'");
}

nlohmann::json TimeProfile::to_json() const {
  switch (kind_) {
    case Kind::Constant:
      return {{"type", "constant"}, {"value", coeffs_[0]}};
    case Kind::Poly:
      return {{"type", "poly"}, {"coeffs", coeffs_}};
    case Kind::Smoothstep:
      return {{"type", "smoothstep"}};
    case Kind::SmoothstepFlat:
      return {{"type", "smoothstep_flat"}};
    case Kind::PwLinear:
      return {{"type", "pwlinear"}, {"times", times_}, {"values", coeffs_}};
  }
  return nullptr;
}

TimeMap TimeMap::identity() { return TimeMap(); }

TimeMap TimeMap::smoothstep() {
  TimeMap m;
  m.kind_ = Kind::Smoothstep;
  return m;
}

TimeMap TimeMap::smoothstep_flat() {
  TimeMap m;
  m.kind_ = Kind::SmoothstepFlat;
  return m;
}

TimeMap TimeMap::poly(std::vector<double> coeffs) {
  TimeMap m;
  m.kind_ = Kind::Poly;
  m.coeffs_ = std::move(coeffs);
  return m;
}

double TimeMap::value(double t) const {
  switch (kind_) {
    case Kind::Identity:
      return t;
    case Kind::Smoothstep:
      return smooth(t);
    case Kind::SmoothstepFlat:
      return smooth(smooth(t));
    case Kind::Poly: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * t + coeffs_[k];
      return v;
    }
  }
  return t;
}

double TimeMap::derivative(double t) const {
  switch (kind_) {
    case Kind::Identity:
      return 1.0;
    case Kind::Smoothstep:
      return dsmooth(t);
    case Kind::SmoothstepFlat:
      return dsmooth(smooth(t)) * dsmooth(t);
    case Kind::Poly: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;)
        v = v * t + coeffs_[k] * static_cast<double>(k);
      return v;
    }
  }
  return 1.0;
}

void TimeMap::validate() const {
  const int kProbes = 4096;
  if (std::abs(value(0.0)) > 1e-12 || std::abs(value(1.0) - 1.0) > 1e-12)
    throw_precondition("time map must fix 0 and 1");
  for (int k = 0; k <= kProbes; ++k) {
    double t = static_cast<double>(k) / kProbes;
    if (derivative(t) < -1e-12)
      throw_precondition("time map is not monotone at t = " + std::to_string(t));
  }
}

TimeMap TimeMap::from_json(const nlohmann::json& j) {
  std::string type = j.is_string() ? j.get<std::string>() : j.at("type").get<std::string>();
  if (type == "identity") return identity();
  if (type == "smoothstep") return smoothstep();
  if (type == "smoothstep_flat") return smoothstep_flat();
  if (type == "poly") return poly(j.at("coeffs").get<std::vector<double>>());
  throw_structural("unknown time map '" + type + "'");
}

nlohmann::json TimeMap::to_json() const {
  switch (kind_) {
    case Kind::Identity:
      return {{"type", "identity"}};
    case Kind::Smoothstep:
      return {{"type", "smoothstep"}};
    case Kind::SmoothstepFlat:
      return {{"type", "smoothstep_flat"}};
    case Kind::Poly:
      return {{"type", "poly"}, {"coeffs", coeffs_}};
  }
  return nullptr;
}

}  // namespace hoferlab::dyn
