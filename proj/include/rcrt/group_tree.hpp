#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rcrt/moduli.hpp"

namespace rcrt {

/// Nested grouping plan. A leaf lists modulus indices (one group of a
/// single-stage solve); a node fuses two or more children. Leaves may share
/// indices.
///
/// Serialized as nested JSON arrays: [0,1,2] is a single leaf,
/// [[0,1],[2,3]] a two-stage plan, [[[0,1],[2,3]],[4,5]] a three-stage one.
class GroupTree {
 public:
  static GroupTree leaf(std::vector<std::size_t> indices);
  static GroupTree node(std::vector<GroupTree> children);

  bool is_leaf() const { return children_.empty(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<GroupTree>& children() const { return children_; }

  /// Leaf index lists in depth-first order.
  std::vector<std::vector<std::size_t>> leaves() const;
  /// Number of solve stages: 1 for a leaf.
  std::size_t depth() const;

  /// Structural and arithmetic validity against a moduli set: indices in
  /// range and unique within a leaf, every modulus covered, nodes with at
  /// least two children whose lcms are pairwise distinct. Throws
  /// std::invalid_argument.
  void validate(const ModuliSet& moduli) const;

  /// lcm of the moduli under this subtree.
  Integer lcm(const ModuliSet& moduli) const;

  static GroupTree parse(std::string_view json);
  std::string to_json() const;

  friend bool operator==(const GroupTree&, const GroupTree&) = default;

 private:
  std::vector<std::size_t> indices_;
  std::vector<GroupTree> children_;
};

}  // namespace rcrt
