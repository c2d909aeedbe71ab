#pragma once

#include <functional>
#include <optional>

#include "common.hpp"

namespace holobrace {

// Element of a finite abelian p-group in invariant-factor coordinates.
// Coordinate i lives modulo p^{e_i}; unused slots stay zero so default
// equality works.
struct Element {
  std::array<uint32_t, kMaxRank> c{};
  friend bool operator==(const Element&, const Element&) = default;
};

// Endomorphism as an integer matrix, entry (i,j) modulo p^{e_i}; column j
// is the image of generator j. Row-major, fixed stride kMaxRank.
struct Mat {
  std::array<uint32_t, kMaxRank * kMaxRank> e{};
  uint32_t at(int i, int j) const { return e[i * kMaxRank + j]; }
  uint32_t& at(int i, int j) { return e[i * kMaxRank + j]; }
  friend bool operator==(const Mat&, const Mat&) = default;
};

// Entry (i,j) of the rejected matrix fails the divisibility constraint.
struct EndoReject {
  int i, j;
};

class AbelianType {
 public:
  // Exponents are normalized to non-increasing order on construction.
  AbelianType(uint32_t p, std::vector<uint32_t> exponents);

  uint32_t p() const { return p_; }
  int rank() const { return static_cast<int>(exps_.size()); }
  uint64_t order() const { return order_; }
  uint32_t exponent_of_group() const { return mod_[0]; }  // p^{e_1}
  const std::vector<uint32_t>& exponents() const { return exps_; }
  uint32_t modulus(int i) const { return mod_[i]; }

  bool operator==(const AbelianType& o) const {
    return p_ == o.p_ && exps_ == o.exps_;
  }

  std::string describe() const;

  // -- elements -------------------------------------------------------
  Element zero() const { return Element{}; }
  Element basis(int i) const;
  bool valid(const Element& x) const;
  Element add(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element sub(const Element& x, const Element& y) const;
  Element smul(uint64_t k, const Element& x) const;
  bool is_zero(const Element& x) const;
  uint64_t element_order(const Element& x) const;  // least p^k killing x

  uint32_t pack(const Element& x) const;
  Element unpack(uint32_t idx) const;

  // -- endomorphism ring ---------------------------------------------
  Mat mat_zero() const { return Mat{}; }
  Mat mat_identity() const;
  // Reduces entries row-wise; does not enforce the congruences.
  Mat mat_reduce(const Mat& raw) const;
  // Well-definedness: p^{e_i - e_j} | entry(i,j) whenever e_i > e_j.
  std::optional<EndoReject> endo_validate(const Mat& m) const;
  Element apply(const Mat& m, const Element& x) const;
  Mat compose(const Mat& a, const Mat& b) const;  // apply(compose(a,b),x) == apply(a, apply(b,x))
  Mat mat_add(const Mat& a, const Mat& b) const;
  Mat mat_neg(const Mat& a) const;
  Mat mat_smul(uint64_t k, const Mat& a) const;
  Mat mat_pow(const Mat& a, uint64_t k) const;
  // Id + m + m^2 + ... + m^{k-1}
  Mat power_sum(const Mat& m, uint64_t k) const;

  // Ground truth: the induced map on all `order()` elements is a bijection.
  bool is_bijective(const Mat& m) const;
  // Fast path: every equal-exponent diagonal block is invertible mod p.
  // Valid because a validated matrix is block lower triangular mod p.
  // Must agree with is_bijective; the unit tests check this exhaustively.
  bool is_invertible(const Mat& m) const;
  Mat inverse(const Mat& m) const;

  // -- automorphism enumeration ----------------------------------------
  // Valid matrices are indexed by a mixed-radix code over the free part of
  // each entry; the code space has size prod p^{min(e_i, e_j)}.
  uint64_t aut_code_space() const;
  uint64_t mat_code(const Mat& m) const;
  Mat mat_from_code(uint64_t code) const;
  // Calls fn for every automorphism in increasing code order until fn
  // returns false. Streams; nothing is stored.
  void for_each_aut(const std::function<bool(const Mat&, uint64_t)>& fn) const;

  // order statistics: p^k -> number of elements of order exactly p^k,
  // from the closed-form count of solutions of p^k x = 0.
  std::vector<std::pair<uint64_t, uint64_t>> order_statistics() const;

 private:
  uint32_t p_;
  std::vector<uint32_t> exps_;
  std::vector<uint32_t> mod_;      // p^{e_i}
  std::vector<uint32_t> weight_;   // mixed-radix weights for pack()
  uint64_t order_;
  // per-entry divisibility stride p^{max(0, e_i - e_j)} and code radix
  std::array<uint32_t, kMaxRank * kMaxRank> stride_{};
  std::array<uint32_t, kMaxRank * kMaxRank> radix_{};
};

// Exact |Aut(N)| by a counting pass over the candidate code space.
// Cached per type. Throws BudgetExceeded if the code space is too large.
uint64_t aut_order(const AbelianType& t, uint64_t candidate_budget = 200000000ull);

struct AutGroup {
  uint64_t order = 0;
  std::vector<Mat> gens;    // generate the full group; verified by closure
  std::vector<Mat> elems;   // full element list when within list_budget
  bool elems_listed = false;
};

// Counting pass that also collects generators until their closure reaches
// the counted order. closure_budget bounds the closure set; list_budget
// bounds the materialized element list (0 = don't list).
AutGroup aut_group(const AbelianType& t, uint64_t candidate_budget = 200000000ull,
                   uint64_t closure_budget = 4000000ull, uint64_t list_budget = 100000ull);

struct Omega1 {
  std::vector<Element> gens;
  uint64_t order = 0;
};

// Omega_1 = {x : p x = 0}; order p^rank; invariant under every endomorphism.
Omega1 omega1(const AbelianType& t);
bool omega1_contains(const AbelianType& t, const Element& x);

}  // namespace holobrace
