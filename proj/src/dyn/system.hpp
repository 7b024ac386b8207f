#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dyn/profile.hpp"
#include "json.hpp"

namespace hoferlab::dyn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Coordinates are (q_1..q_n, p_1..p_n). The symplectic pairing is
// sum dq_i ^ dp_i and the field satisfies i_X omega = -dH, which in these
// coordinates reads X = Jhat grad H with Jhat = [[0, -I], [I, 0]].
Mat standard_J(int dim);

struct Domain {
  enum class Type { Torus, Chart };
  Type type = Type::Torus;
  int n = 1;

  int dim() const { return 2 * n; }
  bool torus() const { return type == Type::Torus; }

  // Componentwise difference wrapped to [-1/2, 1/2) on the torus.
  Vec wrap_diff(const Vec& a, const Vec& b) const;
  // Representative in [0,1)^dim on the torus; identity on charts.
  Vec canonical(const Vec& x) const;
  double distance(const Vec& a, const Vec& b) const;

  static Domain from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// One closed-form term of a Hamiltonian, with a time-dependent coefficient.
//  - trig:     c(t) * cos(2 pi freq . x + phase)     (torus or chart)
//  - poly:     c(t) * prod x_i^{e_i}                 (chart only)
//  - constant: c(t)
struct Term {
  enum class Kind { Trig, Poly, Constant };
  Kind kind = Kind::Constant;
  std::vector<int> freq;       // trig
  double phase = 0.0;          // trig
  std::vector<int> exponents;  // poly
  TimeProfile profile = TimeProfile::constant(1.0);

  double space_value(const Vec& x) const;
  void add_gradient(const Vec& x, double coeff, Vec& g) const;
  void add_hessian(const Vec& x, double coeff, Mat& h) const;

  static Term from_json(const nlohmann::json& j, int dim);
  nlohmann::json to_json() const;
};

struct FlowOptions;
struct FlowResult;

// A time-periodic Hamiltonian on a flat torus or an R^{2n} chart. Immutable
// description; evaluation is pure. Derived systems may provide a structural
// flow (the defining composition identity) which the integrator front end
// uses instead of generic integration; tests compare the two routes.
class HamiltonianSystem {
 public:
  explicit HamiltonianSystem(Domain d) : domain_(d) {}
  virtual ~HamiltonianSystem() = default;

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }

  virtual double value(double t, const Vec& x) const = 0;
  virtual Vec gradient(double t, const Vec& x) const = 0;
  // Spatial Hessian; default central differences of the gradient.
  virtual Mat hessian(double t, const Vec& x) const;

  virtual bool autonomous() const { return false; }

  virtual bool has_structural_flow() const { return false; }
  virtual FlowResult structural_flow(const Vec& x0, double t0, double t1,
                                     const FlowOptions& opts) const;

  virtual nlohmann::json describe() const = 0;

 private:
  Domain domain_;
};

using SystemPtr = std::shared_ptr<const HamiltonianSystem>;

// Finite sum of closed-form terms, optionally scaled by a global profile.
class TermSystem : public HamiltonianSystem {
 public:
  TermSystem(Domain d, std::vector<Term> terms,
             std::optional<TimeProfile> global = std::nullopt,
             bool declared_normalized = false, bool periodic = false);

  double value(double t, const Vec& x) const override;
  Vec gradient(double t, const Vec& x) const override;
  Mat hessian(double t, const Vec& x) const override;
  bool autonomous() const override;
  nlohmann::json describe() const override;

  const std::vector<Term>& terms() const { return terms_; }
  bool declared_normalized() const { return declared_normalized_; }

  // Exact normalization for torus term systems: drops the spatially constant
  // part of every term (k = 0 harmonics and constants).
  std::shared_ptr<TermSystem> structurally_normalized() const;

  static std::shared_ptr<TermSystem> from_json(const nlohmann::json& j);

 private:
  double global_coeff(double t) const;

  std::vector<Term> terms_;
  std::optional<TimeProfile> global_;
  bool declared_normalized_ = false;
  bool periodic_ = false;
};

SystemPtr system_from_json(const nlohmann::json& j);

// Convenience builders used across tests and the certificate pipeline.
SystemPtr make_cos_cos(double eps);                       // eps(cos 2 pi q + cos 2 pi p) on T^2
SystemPtr make_linear_rotation(double a);                 // (a/2)(q^2 + p^2) on a chart
// Autonomous Morse-type well with unique maximum 0 at P:
// sum_j (cos(2 pi (x_j - P_j)) - 1).
std::shared_ptr<TermSystem> make_cap_well(const Domain& d, const Vec& P);

}  // namespace hoferlab::dyn
