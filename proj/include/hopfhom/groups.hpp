#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hopfhom {

// A finite group as a validated Cayley table.  Element 0 need not be the
// identity; `identity()` finds it.
class GroupTable {
 public:
  // Validates closure, associativity, identity and inverses; throws
  // std::invalid_argument with a witness triple otherwise.
  static GroupTable from_cayley(std::vector<std::vector<std::size_t>> table,
                                std::vector<std::string> labels = {});

  // Expands permutation generators (images of 0..m-1) by closure.
  // Throws if the generated group exceeds `element_cap`.
  static GroupTable from_permutation_generators(const std::vector<std::vector<std::size_t>>& gens,
                                                std::size_t element_cap = 5000);

  static GroupTable cyclic(std::size_t n);
  static GroupTable symmetric3();  // S3 via permutation generators, fixed element order

  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t identity() const { return id_; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_abelian() const;

  // The sub-table on `elems` (must be closed and contain the identity);
  // returned together with the index of each subgroup element in the parent.
  struct Subgroup;
  Subgroup subgroup(std::vector<std::size_t> elems) const;

 private:
  GroupTable() = default;
  void finalize();  // finds identity/inverses after table_ is set

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> inv_;
  std::size_t id_ = 0;
};

struct GroupTable::Subgroup {
  GroupTable group;
  std::vector<std::size_t> parent_index;
};

}  // namespace hopfhom
