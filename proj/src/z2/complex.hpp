#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hoferlab::z2 {

// Dense bit vector over Z/2. Indices refer to positions in a fixed basis.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

  BitVec& operator^=(const BitVec& o);
  bool any() const;
  bool none() const { return !any(); }
  std::size_t count() const;
  // Lowest set index, or -1 when empty.
  int first_set() const;
  // Lowest set index strictly greater than from, or -1.
  int next_set(int from) const;

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BasisElement {
  std::string id;
  int degree = 0;
};

// A chain is a Z/2 combination of basis elements of one complex. The zero
// chain has empty support and no degree of its own.
struct Chain {
  BitVec support;
};

// Finite Z/2 chain complex with integer grading. Immutable once built;
// construction rejects structurally broken input (duplicate or unknown ids),
// while mathematical defects (grading drift, d^2 != 0) are left to
// validate_complex so they can be reported rather than thrown.
class GradedComplex {
 public:
  GradedComplex(std::vector<BasisElement> basis,
                const std::map<std::string, std::vector<std::string>>& boundary);

  std::size_t size() const { return basis_.size(); }
  const BasisElement& element(std::size_t i) const { return basis_[i]; }
  // -1 when the id is not present.
  int index_of(const std::string& id) const;
  std::size_t require_index(const std::string& id) const;
  const BitVec& boundary_of(std::size_t i) const { return boundary_[i]; }

  // Basis indices of the given degree, in basis order.
  std::vector<std::size_t> degree_indices(int degree) const;
  std::vector<int> degrees_present() const;

  // Boundary of an arbitrary chain.
  BitVec apply_boundary(const BitVec& chain) const;

  Chain chain_from_ids(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids_of(const BitVec& support) const;

  // Degree shared by all support elements; throws on mixed degrees.
  // std::nullopt for the zero chain.
  std::optional<int> chain_degree(const BitVec& support) const;

  static GradedComplex from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::vector<BasisElement> basis_;
  std::map<std::string, std::size_t> index_;
  std::vector<BitVec> boundary_;
};

enum class ViolationKind { DegreeMismatch, BoundarySquare, NonDecreasing };

struct Violation {
  ViolationKind kind;
  std::string id;
  std::string detail;
};

nlohmann::json violations_to_json(const std::vector<Violation>& v);

// Grading and d^2 = 0, checked by direct expansion. Empty result == valid.
std::vector<Violation> validate_complex(const GradedComplex& c);

void require_valid(const GradedComplex& c);

// Exact Z/2 Betti numbers per degree: dim ker d_k - dim im d_{k+1}.
std::map<int, int> homology_ranks(const GradedComplex& c);

enum class ChainClass { NotCycle, Boundary, NontrivialCycle };

struct Classification {
  ChainClass kind;
  // Preimage d(witness) == chain, present when kind == Boundary.
  std::optional<Chain> witness;
};

const char* chain_class_name(ChainClass k);

Classification classify_chain(const GradedComplex& c, const Chain& chain);

// Canonical cycles whose classes form a basis of H_degree. Deterministic in
// basis order; empty when the rank is zero.
std::vector<Chain> representatives(const GradedComplex& c, int degree);

// --- Z/2 elimination -------------------------------------------------------
//
// Column reduction with distinct leads against an arbitrary total order on
// basis positions. "rank_of[i] = r" places basis element i at position r of
// the order; the lead of a vector is its minimum-rank set bit. Canonical
// reduction clears every pivot lead from a vector, which realizes the unique
// coset-minimal representative for any order refining the filtration.

class Elimination {
 public:
  // rank_of.size() == n; must be a permutation of 0..n-1.
  explicit Elimination(std::vector<std::size_t> rank_of);

  // Adds a column with an attached tag (combination bookkeeping in caller
  // space). Returns true when the column was independent (became a pivot).
  bool add(BitVec column, BitVec tag);

  std::size_t rank() const { return pivots_.size(); }
  const std::vector<BitVec>& pivot_columns() const { return pivots_; }
  const std::vector<BitVec>& pivot_tags() const { return tags_; }

  // Fully reduces v (clears every pivot lead). When combo != nullptr it
  // accumulates the tags of the pivots used.
  BitVec reduce(BitVec v, BitVec* combo = nullptr) const;

 private:
  int lead(const BitVec& v) const;

  std::vector<std::size_t> rank_of_;
  std::vector<int> pivot_at_rank_;     // rank -> pivot slot, -1 when free
  std::vector<BitVec> pivots_;
  std::vector<BitVec> tags_;
};

std::vector<std::size_t> identity_order(std::size_t n);

// Image of d restricted to degree source_degree, with preimage tags over the
// full basis. Pivot tags satisfy d(tag) == pivot column.
Elimination image_basis(const GradedComplex& c, int source_degree,
                        const std::vector<std::size_t>& rank_of);

// Kernel of d on degree k as full-basis vectors, deterministic in basis order.
std::vector<BitVec> kernel_basis(const GradedComplex& c, int degree);

}  // namespace hoferlab::z2
