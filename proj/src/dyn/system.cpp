#include "dyn/system.hpp"

#include <algorithm>
#include <cmath>

#include "dyn/flow.hpp"
#include "util/errors.hpp"

namespace hoferlab::dyn {

Mat standard_J(int dim) {
  int n = dim / 2;
  Mat J = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = -1.0;
    J(n + i, i) = 1.0;
  }
  return J;
}

Vec Domain::wrap_diff(const Vec& a, const Vec& b) const {
  Vec d = a - b;
  if (torus())
    for (int i = 0; i < d.size(); ++i) d[i] -= std::round(d[i]);
  return d;
}

Vec Domain::canonical(const Vec& x) const {
  if (!torus()) return x;
  Vec y = x;
  for (int i = 0; i < y.size(); ++i) {
    y[i] -= std::floor(y[i]);
    if (y[i] >= 1.0) y[i] = 0.0;  // guard against floor rounding at 1-eps
  }
  return y;
}

double Domain::distance(const Vec& a, const Vec& b) const {
  return wrap_diff(a, b).lpNorm<Eigen::Infinity>();
}

Domain Domain::from_json(const nlohmann::json& j) {
  Domain d;
  std::string type = j.at("type").get<std::string>();
  if (type == "torus")
    d.type = Type::Torus;
  else if (type == "chart")
    d.type = Type::Chart;
  else
    throw_structural("domain type must be 'torus' or 'chart'");
  d.n = j.at("n").get<int>();
  if (d.n < 1) throw_structural("domain needs n >= 1");
  return d;
}

nlohmann::json Domain::to_json() const {
  return {{"type", torus() ? "torus" : "chart"}, {"n", n}};
}

double Term::space_value(const Vec& x) const {
  switch (kind) {
    case Kind::Trig: {
      double arg = phase;
      for (std::size_t i = 0; i < freq.size(); ++i) arg += 2.0 * M_PI * freq[i] * x[static_cast<int>(i)];
      return std::cos(arg);
    }
    case Kind::Poly: {
      double v = 1.0;
      for (std::size_t i = 0; i < exponents.size(); ++i)
        for (int e = 0; e < exponents[i]; ++e) v *= x[static_cast<int>(i)];
      return v;
    }
    case Kind::Constant:
      return 1.0;
  }
  return 0.0;
}

void Term::add_gradient(const Vec& x, double coeff, Vec& g) const {
  switch (kind) {
    case Kind::Trig: {
      double arg = phase;
      for (std::size_t i = 0; i < freq.size(); ++i) arg += 2.0 * M_PI * freq[i] * x[static_cast<int>(i)];
      double s = -std::sin(arg) * 2.0 * M_PI * coeff;
      for (std::size_t i = 0; i < freq.size(); ++i) g[static_cast<int>(i)] += s * freq[i];
      return;
    }
    case Kind::Poly: {
      for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) continue;
        double v = coeff * exponents[i];
        for (std::size_t k = 0; k < exponents.size(); ++k) {
          int e = exponents[k] - (k == i ? 1 : 0);
          for (int r = 0; r < e; ++r) v *= x[static_cast<int>(k)];
        }
        g[static_cast<int>(i)] += v;
      }
      return;
    }
    case Kind::Constant:
      return;
  }
}

void Term::add_hessian(const Vec& x, double coeff, Mat& h) const {
  switch (kind) {
    case Kind::Trig: {
      double arg = phase;
      for (std::size_t i = 0; i < freq.size(); ++i) arg += 2.0 * M_PI * freq[i] * x[static_cast<int>(i)];
      double c = -std::cos(arg) * 4.0 * M_PI * M_PI * coeff;
      for (std::size_t i = 0; i < freq.size(); ++i)
        for (std::size_t j = 0; j < freq.size(); ++j)
          h(static_cast<int>(i), static_cast<int>(j)) += c * freq[i] * freq[j];
      return;
    }
    case Kind::Poly: {
      auto partial = [&](std::size_t i, std::size_t j) {
        std::vector<int> e = exponents;
        double f = coeff;
        for (std::size_t d : {i, j}) {
          if (e[d] == 0) return 0.0;
          f *= e[d];
          e[d] -= 1;
        }
        for (std::size_t k = 0; k < e.size(); ++k)
          for (int r = 0; r < e[k]; ++r) f *= x[static_cast<int>(k)];
        return f;
      };
      for (std::size_t i = 0; i < exponents.size(); ++i)
        for (std::size_t j = 0; j < exponents.size(); ++j)
          h(static_cast<int>(i), static_cast<int>(j)) += partial(i, j);
      return;
    }
    case Kind::Constant:
      return;
  }
}

Term Term::from_json(const nlohmann::json& j, int dim) {
  Term t;
  std::string type = j.at("type").get<std::string>();
  if (type == "trig") {
    t.kind = Kind::Trig;
    t.freq = j.at("freq").get<std::vector<int>>();
    if (static_cast<int>(t.freq.size()) != dim)
      throw_structural("trig term freq must have 2n entries");
    t.phase = j.value("phase", 0.0);
  } else if (type == "poly") {
    t.kind = Kind::Poly;
    t.exponents = j.at("exponents").get<std::vector<int>>();
    if (static_cast<int>(t.exponents.size()) != dim)
      throw_structural("poly term exponents must have 2n entries");
    for (int e : t.exponents)
      if (e < 0) throw_structural("poly exponents must be nonnegative");
  } else if (type == "constant") {
    t.kind = Kind::Constant;
  } else {
    throw_structural("unknown term type '" + type + "'");
  }
  if (j.contains("profile")) t.profile = TimeProfile::from_json(j.at("profile"));
  return t;
}

nlohmann::json Term::to_json() const {
  switch (kind) {
    case Kind::Trig:
      return {{"type", "trig"}, {"freq", freq}, {"phase", phase}, {"profile", profile.to_json()}};
    case Kind::Poly:
      return {{"type", "poly"}, {"exponents", exponents}, {"profile", profile.to_json()}};
    case Kind::Constant:
      return {{"type", "constant"}, {"profile", profile.to_json()}};
  }
  return nullptr;
}

Mat HamiltonianSystem::hessian(double t, const Vec& x) const {
  const int d = dim();
  const double h = 1e-5;
  Mat H(d, d);
  for (int j = 0; j < d; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    H.col(j) = (gradient(t, xp) - gradient(t, xm)) / (2.0 * h);
  }
  // Symmetrize; the finite differences are only approximately symmetric.
  return 0.5 * (H + H.transpose());
}

FlowResult HamiltonianSystem::structural_flow(const Vec&, double, double,
                                              const FlowOptions&) const {
  throw_numeric("system has no structural flow");
}

TermSystem::TermSystem(Domain d, std::vector<Term> terms, std::optional<TimeProfile> global,
                       bool declared_normalized, bool periodic)
    : HamiltonianSystem(d),
      terms_(std::move(terms)),
      global_(std::move(global)),
      declared_normalized_(declared_normalized),
      periodic_(periodic) {
  for (const auto& t : terms_) {
    if (t.kind == Term::Kind::Poly && d.torus())
      throw_structural("poly terms are only defined on charts");
  }
  if (periodic_) {
    auto check = [](const TimeProfile& p, const char* what) {
      if (std::abs(p.value(0.0) - p.value(1.0)) > 1e-12)
        throw_structural(std::string(what) + " is not 1-periodic in t");
    };
    for (const auto& t : terms_) check(t.profile, "term profile");
    if (global_) check(*global_, "global profile");
  }
  if (declared_normalized_) {
    if (!d.torus()) throw_structural("normalized flag requires a torus domain");
    for (const auto& t : terms_) {
      bool constant_in_space =
          t.kind == Term::Kind::Constant ||
          (t.kind == Term::Kind::Trig &&
           std::all_of(t.freq.begin(), t.freq.end(), [](int k) { return k == 0; }));
      if (constant_in_space)
        throw_structural("system declared normalized but has a spatially constant term");
    }
  }
}

double TermSystem::global_coeff(double t) const { return global_ ? global_->value(t) : 1.0; }

double TermSystem::value(double t, const Vec& x) const {
  double v = 0.0;
  for (const auto& term : terms_) v += term.profile.value(t) * term.space_value(x);
  return global_coeff(t) * v;
}

Vec TermSystem::gradient(double t, const Vec& x) const {
  Vec g = Vec::Zero(dim());
  double c = global_coeff(t);
  for (const auto& term : terms_) term.add_gradient(x, c * term.profile.value(t), g);
  return g;
}

Mat TermSystem::hessian(double t, const Vec& x) const {
  Mat h = Mat::Zero(dim(), dim());
  double c = global_coeff(t);
  for (const auto& term : terms_) term.add_hessian(x, c * term.profile.value(t), h);
  return h;
}

bool TermSystem::autonomous() const {
  if (global_ && !global_->is_constant()) return false;
  for (const auto& t : terms_)
    if (!t.profile.is_constant()) return false;
  return true;
}

nlohmann::json TermSystem::describe() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) terms.push_back(t.to_json());
  nlohmann::json j = {{"domain", domain().to_json()},
                      {"terms", terms},
                      {"normalized", declared_normalized_},
                      {"periodic", periodic_}};
  if (global_) j["time_profile"] = global_->to_json();
  return j;
}

std::shared_ptr<TermSystem> TermSystem::structurally_normalized() const {
  if (!domain().torus()) throw_precondition("normalize needs a torus domain (no finite volume on charts)");
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (t.kind == Term::Kind::Constant) continue;
    if (t.kind == Term::Kind::Trig &&
        std::all_of(t.freq.begin(), t.freq.end(), [](int k) { return k == 0; }))
      continue;
    kept.push_back(t);
  }
  return std::make_shared<TermSystem>(domain(), std::move(kept), global_, true, periodic_);
}

std::shared_ptr<TermSystem> TermSystem::from_json(const nlohmann::json& j) {
  Domain d = Domain::from_json(j.at("domain"));
  std::vector<Term> terms;
  for (const auto& tj : j.at("terms")) terms.push_back(Term::from_json(tj, d.dim()));
  std::optional<TimeProfile> global;
  if (j.contains("time_profile")) global = TimeProfile::from_json(j.at("time_profile"));
  bool normalized = j.value("normalized", false);
  bool periodic = j.value("periodic", false);
  return std::make_shared<TermSystem>(d, std::move(terms), std::move(global), normalized,
                                      periodic);
}

SystemPtr system_from_json(const nlohmann::json& j) { return TermSystem::from_json(j); }

SystemPtr make_cos_cos(double eps) {
  Domain d{Domain::Type::Torus, 1};
  Term cq{Term::Kind::Trig, {1, 0}, 0.0, {}, TimeProfile::constant(eps)};
  Term cp{Term::Kind::Trig, {0, 1}, 0.0, {}, TimeProfile::constant(eps)};
  return std::make_shared<TermSystem>(d, std::vector<Term>{cq, cp});
}

SystemPtr make_linear_rotation(double a) {
  Domain d{Domain::Type::Chart, 1};
  Term q2{Term::Kind::Poly, {}, 0.0, {2, 0}, TimeProfile::constant(a / 2.0)};
  Term p2{Term::Kind::Poly, {}, 0.0, {0, 2}, TimeProfile::constant(a / 2.0)};
  return std::make_shared<TermSystem>(d, std::vector<Term>{q2, p2});
}

std::shared_ptr<TermSystem> make_cap_well(const Domain& d, const Vec& P) {
  std::vector<Term> terms;
  for (int j = 0; j < d.dim(); ++j) {
    Term t;
    t.kind = Term::Kind::Trig;
    t.freq.assign(static_cast<std::size_t>(d.dim()), 0);
    t.freq[static_cast<std::size_t>(j)] = 1;
    t.phase = -(2.0 * M_PI * P[j]);
    terms.push_back(t);
  }
  Term c;
  c.kind = Term::Kind::Constant;
  c.profile = TimeProfile::constant(-d.dim());
  terms.push_back(c);
  return std::make_shared<TermSystem>(d, std::move(terms));
}

}  // namespace hoferlab::dyn
