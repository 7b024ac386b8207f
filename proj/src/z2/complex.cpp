#include "z2/complex.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "util/errors.hpp"

namespace hoferlab::z2 {

BitVec& BitVec::operator^=(const BitVec& o) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

bool BitVec::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t BitVec::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

int BitVec::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
  return -1;
}

int BitVec::next_set(int from) const {
  std::size_t i = static_cast<std::size_t>(from) + 1;
  if (i >= n_) return -1;
  std::size_t w = i >> 6;
  std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (i & 63));
  for (;;) {
    if (cur) return static_cast<int>(w * 64 + std::countr_zero(cur));
    if (++w >= words_.size()) return -1;
    cur = words_[w];
  }
}

GradedComplex::GradedComplex(
    std::vector<BasisElement> basis,
    const std::map<std::string, std::vector<std::string>>& boundary)
    : basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto [it, fresh] = index_.emplace(basis_[i].id, i);
    (void)it;
    if (!fresh) throw_structural("duplicate basis id '" + basis_[i].id + "'");
  }
  boundary_.assign(basis_.size(), BitVec(basis_.size()));
  for (const auto& [id, targets] : boundary) {
    auto it = index_.find(id);
    if (it == index_.end())
      throw_structural("boundary mentions unknown id '" + id + "'");
    BitVec& row = boundary_[it->second];
    for (const auto& tid : targets) {
      auto jt = index_.find(tid);
      if (jt == index_.end())
        throw_structural("boundary of '" + id + "' mentions unknown id '" + tid + "'");
      // Repeated mentions cancel mod 2.
      row.flip(jt->second);
    }
  }
}

int GradedComplex::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

std::size_t GradedComplex::require_index(const std::string& id) const {
  int i = index_of(id);
  if (i < 0) throw_structural("unknown basis id '" + id + "'");
  return static_cast<std::size_t>(i);
}

std::vector<std::size_t> GradedComplex::degree_indices(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == degree) out.push_back(i);
  return out;
}

std::vector<int> GradedComplex::degrees_present() const {
  std::set<int> degs;
  for (const auto& b : basis_) degs.insert(b.degree);
  return {degs.begin(), degs.end()};
}

BitVec GradedComplex::apply_boundary(const BitVec& chain) const {
  BitVec out(size());
  for (int i = chain.first_set(); i >= 0; i = chain.next_set(i))
    out ^= boundary_[static_cast<std::size_t>(i)];
  return out;
}

Chain GradedComplex::chain_from_ids(const std::vector<std::string>& ids) const {
  Chain c{BitVec(size())};
  for (const auto& id : ids) c.support.flip(require_index(id));
  return c;
}

std::vector<std::string> GradedComplex::ids_of(const BitVec& support) const {
  std::vector<std::string> out;
  for (int i = support.first_set(); i >= 0; i = support.next_set(i))
    out.push_back(basis_[static_cast<std::size_t>(i)].id);
  return out;
}

std::optional<int> GradedComplex::chain_degree(const BitVec& support) const {
  std::optional<int> deg;
  for (int i = support.first_set(); i >= 0; i = support.next_set(i)) {
    int d = basis_[static_cast<std::size_t>(i)].degree;
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      throw_precondition("chain mixes degrees " + std::to_string(*deg) + " and " +
                         std::to_string(d));
    }
  }
  return deg;
}

GradedComplex GradedComplex::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("basis"))
    throw_structural("complex file must be an object with a 'basis' array");
  std::vector<BasisElement> basis;
  for (const auto& e : j.at("basis")) {
    if (!e.contains("id") || !e.contains("degree"))
      throw_structural("basis entries need 'id' and 'degree'");
    basis.push_back({e.at("id").get<std::string>(), e.at("degree").get<int>()});
  }
  std::map<std::string, std::vector<std::string>> boundary;
  if (j.contains("boundary")) {
    for (const auto& [id, arr] : j.at("boundary").items())
      boundary[id] = arr.get<std::vector<std::string>>();
  }
  return GradedComplex(std::move(basis), boundary);
}

nlohmann::json GradedComplex::to_json() const {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : basis_) basis.push_back({{"degree", b.degree}, {"id", b.id}});
  nlohmann::json boundary = nlohmann::json::object();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (boundary_[i].any()) boundary[basis_[i].id] = ids_of(boundary_[i]);
  }
  return {{"basis", basis}, {"boundary", boundary}};
}

nlohmann::json violations_to_json(const std::vector<Violation>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) {
    const char* kind = nullptr;
    switch (x.kind) {
      case ViolationKind::DegreeMismatch: kind = "degree-mismatch"; break;
      case ViolationKind::BoundarySquare: kind = "boundary-square"; break;
      case ViolationKind::NonDecreasing: kind = "non-decreasing"; break;
    }
    out.push_back({{"kind", kind}, {"id", x.id}, {"detail", x.detail}});
  }
  return out;
}

std::vector<Violation> validate_complex(const GradedComplex& c) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& b = c.boundary_of(i);
    for (int t = b.first_set(); t >= 0; t = b.next_set(t)) {
      int want = c.element(i).degree - 1;
      int got = c.element(static_cast<std::size_t>(t)).degree;
      if (got != want) {
        out.push_back({ViolationKind::DegreeMismatch, c.element(i).id,
                       "boundary hits '" + c.element(static_cast<std::size_t>(t)).id +
                           "' of degree " + std::to_string(got) + ", expected " +
                           std::to_string(want)});
      }
    }
    BitVec sq = c.apply_boundary(b);
    if (sq.any()) {
      auto ids = c.ids_of(sq);
      std::string detail = "d(d(" + c.element(i).id + ")) =";
      for (const auto& id : ids) detail += " " + id;
      out.push_back({ViolationKind::BoundarySquare, c.element(i).id, detail});
    }
  }
  return out;
}

void require_valid(const GradedComplex& c) {
  auto v = validate_complex(c);
  if (!v.empty())
    throw_precondition("complex is invalid: " + v.front().detail +
                       (v.size() > 1 ? " (+" + std::to_string(v.size() - 1) + " more)" : ""));
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

Elimination::Elimination(std::vector<std::size_t> rank_of)
    : rank_of_(std::move(rank_of)), pivot_at_rank_(rank_of_.size(), -1) {}

int Elimination::lead(const BitVec& v) const {
  std::size_t best = rank_of_.size();
  for (int i = v.first_set(); i >= 0; i = v.next_set(i))
    best = std::min(best, rank_of_[static_cast<std::size_t>(i)]);
  return best == rank_of_.size() ? -1 : static_cast<int>(best);
}

bool Elimination::add(BitVec column, BitVec tag) {
  for (;;) {
    int l = lead(column);
    if (l < 0) return false;
    int slot = pivot_at_rank_[static_cast<std::size_t>(l)];
    if (slot < 0) {
      pivot_at_rank_[static_cast<std::size_t>(l)] = static_cast<int>(pivots_.size());
      pivots_.push_back(std::move(column));
      tags_.push_back(std::move(tag));
      return true;
    }
    column ^= pivots_[static_cast<std::size_t>(slot)];
    tag ^= tags_[static_cast<std::size_t>(slot)];
  }
}

BitVec Elimination::reduce(BitVec v, BitVec* combo) const {
  // Clears every pivot lead from v. Terminates: each xor removes the bit at
  // one pivot's lead rank and only toggles bits of strictly larger rank, so
  // the set of occupied pivot-lead ranks decreases in the well-founded order.
  for (;;) {
    bool changed = false;
    for (int i = v.first_set(); i >= 0; i = v.next_set(i)) {
      int slot = pivot_at_rank_[rank_of_[static_cast<std::size_t>(i)]];
      if (slot >= 0) {
        v ^= pivots_[static_cast<std::size_t>(slot)];
        if (combo) *combo ^= tags_[static_cast<std::size_t>(slot)];
        changed = true;
        break;
      }
    }
    if (!changed) return v;
  }
}

Elimination image_basis(const GradedComplex& c, int source_degree,
                        const std::vector<std::size_t>& rank_of) {
  Elimination elim(rank_of);
  for (std::size_t i : c.degree_indices(source_degree)) {
    BitVec tag(c.size());
    tag.set(i);
    elim.add(c.boundary_of(i), std::move(tag));
  }
  return elim;
}

std::vector<BitVec> kernel_basis(const GradedComplex& c, int degree) {
  Elimination elim(identity_order(c.size()));
  std::vector<BitVec> kernel;
  for (std::size_t i : c.degree_indices(degree)) {
    BitVec tag(c.size());
    tag.set(i);
    BitVec col = c.boundary_of(i);
    // Reduce against current pivots while tracking the combination; a zero
    // residue certifies a kernel vector.
    BitVec combo = tag;
    BitVec reduced = elim.reduce(col, &combo);
    if (reduced.none()) {
      kernel.push_back(combo);
    } else {
      elim.add(std::move(col), std::move(tag));
    }
  }
  return kernel;
}

std::map<int, int> homology_ranks(const GradedComplex& c) {
  require_valid(c);
  std::map<int, int> ranks;
  for (int deg : c.degrees_present()) {
    std::size_t dim_k = c.degree_indices(deg).size();
    Elimination d_k(identity_order(c.size()));
    for (std::size_t i : c.degree_indices(deg)) d_k.add(c.boundary_of(i), BitVec(c.size()));
    Elimination d_k1 = image_basis(c, deg + 1, identity_order(c.size()));
    ranks[deg] = static_cast<int>(dim_k - d_k.rank() - d_k1.rank());
  }
  return ranks;
}

const char* chain_class_name(ChainClass k) {
  switch (k) {
    case ChainClass::NotCycle: return "not-cycle";
    case ChainClass::Boundary: return "boundary";
    case ChainClass::NontrivialCycle: return "nontrivial-cycle";
  }
  return "?";
}

Classification classify_chain(const GradedComplex& c, const Chain& chain) {
  require_valid(c);
  auto deg = c.chain_degree(chain.support);  // throws on mixed degrees
  if (!deg) {
    // Zero chain: boundary of the zero chain.
    return {ChainClass::Boundary, Chain{BitVec(c.size())}};
  }
  if (c.apply_boundary(chain.support).any()) return {ChainClass::NotCycle, std::nullopt};
  Elimination im = image_basis(c, *deg + 1, identity_order(c.size()));
  BitVec combo(c.size());
  BitVec residue = im.reduce(chain.support, &combo);
  if (residue.none()) return {ChainClass::Boundary, Chain{combo}};
  return {ChainClass::NontrivialCycle, std::nullopt};
}

std::vector<Chain> representatives(const GradedComplex& c, int degree) {
  require_valid(c);
  Elimination im = image_basis(c, degree + 1, identity_order(c.size()));
  // Reduce each kernel vector to canonical form, then keep an independent set.
  Elimination quotient(identity_order(c.size()));
  std::vector<Chain> reps;
  for (auto& k : kernel_basis(c, degree)) {
    BitVec reduced = im.reduce(k);
    if (reduced.none()) continue;
    BitVec copy = reduced;
    if (quotient.add(std::move(copy), BitVec(c.size()))) reps.push_back(Chain{reduced});
  }
  return reps;
}

}  // namespace hoferlab::z2
