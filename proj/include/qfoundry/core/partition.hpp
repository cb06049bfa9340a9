#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qfoundry {

using LabelSet = std::vector<std::string>;

/// Tensor-factor structure of a finite-dimensional Hilbert space: one dimension and one unique label per factor.
/// Factor 0 is the most significant index of the flattened basis (row-major Kronecker order).
class HilbertPartition {
 public:
  HilbertPartition() = default;
  HilbertPartition(std::vector<std::size_t> dims, std::vector<std::string> labels);

  /// Single factor of dimension `dim`.
  static HilbertPartition single(std::size_t dim, std::string label);
  /// `n` qubits labelled prefix0, prefix1, ...
  static HilbertPartition qubits(std::size_t n, const std::string& prefix = "q");

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t total_dimension() const noexcept { return total_; }

  bool contains(const std::string& label) const;
  /// Throws DomainError on an unknown label.
  std::size_t index_of(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const { return dims_[index_of(label)]; }

  /// Factors of `*this` followed by factors of `other`; labels must stay unique.
  HilbertPartition concat(const HilbertPartition& other) const;
  /// Sub-partition with the given labels, in the order they appear in `*this`.
  HilbertPartition restrict(const LabelSet& keep) const;
  HilbertPartition relabeled(std::vector<std::string> labels) const;

  /// Multi-index of a flattened basis index.
  std::vector<std::size_t> unflatten(std::size_t index) const;
  std::size_t flatten(const std::vector<std::size_t>& digits) const;

  bool operator==(const HilbertPartition& other) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::size_t total_ = 1;
};

/// Upper bound on the total dimension of dense states; configurable process-wide.
std::size_t max_total_dimension() noexcept;
void set_max_total_dimension(std::size_t cap) noexcept;

}  // namespace qfoundry
