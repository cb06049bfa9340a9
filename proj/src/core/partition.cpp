#include "qfoundry/core/partition.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include <fmt/format.h>

#include "qfoundry/error.hpp"

namespace qfoundry {

namespace {
std::atomic<std::size_t> g_max_dimension{std::size_t{1} << 14};
}

std::size_t max_total_dimension() noexcept { return g_max_dimension.load(); }
void set_max_total_dimension(std::size_t cap) noexcept { g_max_dimension.store(cap); }

HilbertPartition::HilbertPartition(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw DomainError(fmt::format("partition has {} dims but {} labels", dims_.size(), labels_.size()));
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] == 0) throw DomainError(fmt::format("factor '{}' has dimension 0", labels_[i]));
    if (!seen.insert(labels_[i]).second) throw DomainError(fmt::format("duplicate label '{}'", labels_[i]));
    total_ *= dims_[i];
    if (total_ > max_total_dimension()) {
      throw DomainError(fmt::format("total dimension exceeds cap {}", max_total_dimension()));
    }
  }
}

HilbertPartition HilbertPartition::single(std::size_t dim, std::string label) {
  return HilbertPartition({dim}, {std::move(label)});
}

HilbertPartition HilbertPartition::qubits(std::size_t n, const std::string& prefix) {
  std::vector<std::size_t> dims(n, 2);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return HilbertPartition(std::move(dims), std::move(labels));
}

bool HilbertPartition::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t HilbertPartition::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DomainError(fmt::format("unknown label '{}'", label));
  return static_cast<std::size_t>(it - labels_.begin());
}

HilbertPartition HilbertPartition::concat(const HilbertPartition& other) const {
  auto dims = dims_;
  auto labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return HilbertPartition(std::move(dims), std::move(labels));
}

HilbertPartition HilbertPartition::restrict(const LabelSet& keep) const {
  for (const auto& l : keep) (void)index_of(l);
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), labels_[i]) != keep.end()) {
      dims.push_back(dims_[i]);
      labels.push_back(labels_[i]);
    }
  }
  return HilbertPartition(std::move(dims), std::move(labels));
}

HilbertPartition HilbertPartition::relabeled(std::vector<std::string> labels) const {
  return HilbertPartition(dims_, std::move(labels));
}

std::vector<std::size_t> HilbertPartition::unflatten(std::size_t index) const {
  std::vector<std::size_t> digits(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    digits[k] = index % dims_[k];
    index /= dims_[k];
  }
  return digits;
}

std::size_t HilbertPartition::flatten(const std::vector<std::size_t>& digits) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) index = index * dims_[k] + digits[k];
  return index;
}

}  // namespace qfoundry
