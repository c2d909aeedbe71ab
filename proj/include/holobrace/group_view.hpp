#pragma once

#include <map>
#include <memory>
#include <optional>

#include "common.hpp"

namespace holobrace {

// Finite group presented through element indices 0..order-1 with a
// multiplication oracle. Everything downstream (order statistics,
// isomorphism testing, automorphism counting) works on this view.
class GroupView {
 public:
  virtual ~GroupView() = default;
  virtual uint32_t order() const = 0;
  virtual uint32_t id() const = 0;
  virtual uint32_t mul(uint32_t a, uint32_t b) const = 0;
  virtual uint32_t inv(uint32_t a) const = 0;
  virtual std::string name() const { return "group"; }
};

// Dense multiplication table; makes the search loops cache-friendly.
class TableGroup : public GroupView {
 public:
  explicit TableGroup(const GroupView& g);
  uint32_t order() const override { return n_; }
  uint32_t id() const override { return id_; }
  uint32_t mul(uint32_t a, uint32_t b) const override { return table_[a * n_ + b]; }
  uint32_t inv(uint32_t a) const override { return inv_[a]; }
  std::string name() const override { return name_; }

 private:
  uint32_t n_, id_;
  std::vector<uint32_t> table_;
  std::vector<uint32_t> inv_;
  std::string name_;
};

uint64_t element_order(const GroupView& g, uint32_t a);
// p^k -> count of elements of that exact order; only sensible for p-groups
// but computed generically.
std::map<uint64_t, uint64_t> order_statistics(const GroupView& g);
bool is_abelian(const GroupView& g);
uint64_t center_order(const GroupView& g);
// Subgroup generated by all commutators, via closure.
uint64_t derived_subgroup_order(const GroupView& g);
std::vector<uint32_t> closure(const GroupView& g, std::vector<uint32_t> seed);

// Deterministic small generating sequence: elements sorted by (order desc,
// index asc), greedily added while they enlarge the closure.
std::vector<uint32_t> generating_sequence(const GroupView& g);

struct IsoWitness {
  // images of generating_sequence(a) in b
  std::vector<uint32_t> gen_images;
  // full map a -> b
  std::vector<uint32_t> map;
};

// Backtracking isomorphism test with invariant prefilter (order statistics,
// abelianness, center and derived subgroup orders) and exact partial-map
// extension at every level. The returned witness is verified to be a
// bijective homomorphism on all pairs.
std::optional<IsoWitness> iso_check(const GroupView& a, const GroupView& b);

// Number of automorphisms, by the same backtracking specialized to b == a.
uint64_t automorphism_count(const GroupView& g);

}  // namespace holobrace
