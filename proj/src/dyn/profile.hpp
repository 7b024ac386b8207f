#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hoferlab::dyn {

// Time-dependent scalar coefficient c(t) on [0,1].
class TimeProfile {
 public:
  enum class Kind { Constant, Poly, Smoothstep, SmoothstepFlat, PwLinear };

  static TimeProfile constant(double v);
  static TimeProfile poly(std::vector<double> coeffs);  // sum c_k t^k
  static TimeProfile smoothstep();                      // 3t^2 - 2t^3
  static TimeProfile smoothstep_flat();                 // smoothstep composed with itself
  static TimeProfile pwlinear(std::vector<double> times, std::vector<double> values);

  double value(double t) const;
  bool is_constant() const;
  double constant_value() const;  // only when is_constant()

  static TimeProfile from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  TimeProfile() = default;
  Kind kind_ = Kind::Constant;
  std::vector<double> coeffs_{0.0};
  std::vector<double> times_;
};

// Monotone time substitution alpha: [0,1] -> [0,1] with alpha(0)=0,
// alpha(1)=1 and alpha' >= 0. The flat variant has alpha' vanishing to
// second order at the endpoints.
class TimeMap {
 public:
  enum class Kind { Identity, Smoothstep, SmoothstepFlat, Poly };

  static TimeMap identity();
  static TimeMap smoothstep();
  static TimeMap smoothstep_flat();
  static TimeMap poly(std::vector<double> coeffs);

  double value(double t) const;
  double derivative(double t) const;

  // Endpoint and monotonicity conditions, checked on a dense grid; throws
  // a precondition error on failure.
  void validate() const;

  static TimeMap from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  TimeMap() = default;
  Kind kind_ = Kind::Identity;
  std::vector<double> coeffs_;
};

}  // namespace hoferlab::dyn
