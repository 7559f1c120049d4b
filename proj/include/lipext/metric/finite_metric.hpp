#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lipext/core/scalar.hpp"

namespace lipext::metric {

// Labeled point set with a dense row-major distance matrix.
//
// Construction only checks the shape; metric axioms are audited by
// validate_metric(). Values are immutable once built.
template <class T>
class FiniteMetric {
 public:
  FiniteMetric() = default;
  FiniteMetric(std::vector<std::string> labels, std::vector<T> dist);

  // Labels default to "0", "1", ...
  static FiniteMetric from_rows(const std::vector<std::vector<T>>& rows,
                                std::vector<std::string> labels = {});

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const T& operator()(std::size_t i, std::size_t j) const {
    return dist_[i * size() + j];
  }
  [[nodiscard]] std::span<const T> row(std::size_t i) const {
    return {dist_.data() + i * size(), size()};
  }
  [[nodiscard]] const std::vector<T>& data() const noexcept { return dist_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept {
    return labels_;
  }
  [[nodiscard]] const std::string& label(std::size_t i) const {
    return labels_[i];
  }
  // Throws kDomain when the label is unknown.
  [[nodiscard]] std::size_t index_of(const std::string& label) const;

  [[nodiscard]] std::vector<std::vector<T>> rows() const;

 private:
  std::vector<std::string> labels_;
  std::vector<T> dist_;
};

// Indices into a FiniteMetric's points (the sets S and T).
struct Subset {
  std::vector<std::size_t> indices;

  [[nodiscard]] std::size_t size() const noexcept { return indices.size(); }
  [[nodiscard]] bool empty() const noexcept { return indices.empty(); }
  [[nodiscard]] bool contains(std::size_t i) const;
  // Membership mask over 0..n-1.
  [[nodiscard]] std::vector<char> mask(std::size_t n) const;

  // Throws kDomain on duplicates, out-of-range indices, or (when
  // `nonempty`) an empty set.
  void check(std::size_t n, bool nonempty = true) const;

  static Subset all(std::size_t n);
  static Subset range(std::size_t first, std::size_t count);
};

// Sub-metric on the points of `s`, in s's order.
template <class T>
FiniteMetric<T> restrict_to(const FiniteMetric<T>& m, const Subset& s);

template <class T>
T diameter(const FiniteMetric<T>& m);

// Diameter of the subset s (0 for |s| <= 1).
template <class T>
T diameter(const FiniteMetric<T>& m, const Subset& s);

// Smallest positive distance between distinct points of s; 0 if |s| <= 1.
template <class T>
T min_positive_distance(const FiniteMetric<T>& m, const Subset& s);

FiniteMetric<double> to_double(const FiniteMetric<Rational>& m);
FiniteMetric<Rational> to_rational(const FiniteMetric<double>& m);

extern template class FiniteMetric<double>;
extern template class FiniteMetric<Rational>;

}  // namespace lipext::metric
