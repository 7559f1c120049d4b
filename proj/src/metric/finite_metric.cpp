#include "lipext/metric/finite_metric.hpp"

#include <algorithm>

#include "lipext/core/error.hpp"

namespace lipext::metric {

template <class T>
FiniteMetric<T>::FiniteMetric(std::vector<std::string> labels,
                              std::vector<T> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  require(dist_.size() == labels_.size() * labels_.size(), ErrorKind::kShape,
          "distance matrix must be " + std::to_string(labels_.size()) + "x" +
              std::to_string(labels_.size()));
}

template <class T>
FiniteMetric<T> FiniteMetric<T>::from_rows(
    const std::vector<std::vector<T>>& rows, std::vector<std::string> labels) {
  const std::size_t n = rows.size();
  for (const auto& r : rows) {
    require(r.size() == n, ErrorKind::kShape, "distance matrix is not square");
  }
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  require(labels.size() == n, ErrorKind::kShape,
          "label count does not match matrix size");
  std::vector<T> dist;
  dist.reserve(n * n);
  for (const auto& r : rows) dist.insert(dist.end(), r.begin(), r.end());
  return FiniteMetric(std::move(labels), std::move(dist));
}

template <class T>
std::size_t FiniteMetric<T>::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  require(it != labels_.end(), ErrorKind::kDomain,
          "unknown point label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

template <class T>
std::vector<std::vector<T>> FiniteMetric<T>::rows() const {
  std::vector<std::vector<T>> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i].assign(row(i).begin(), row(i).end());
  }
  return out;
}

bool Subset::contains(std::size_t i) const {
  return std::find(indices.begin(), indices.end(), i) != indices.end();
}

std::vector<char> Subset::mask(std::size_t n) const {
  std::vector<char> m(n, 0);
  for (std::size_t i : indices) {
    if (i < n) m[i] = 1;
  }
  return m;
}

void Subset::check(std::size_t n, bool nonempty) const {
  require(!nonempty || !indices.empty(), ErrorKind::kDomain,
          "subset must be nonempty");
  std::vector<char> seen(n, 0);
  for (std::size_t i : indices) {
    require(i < n, ErrorKind::kDomain,
            "subset index " + std::to_string(i) + " out of range");
    require(!seen[i], ErrorKind::kDomain,
            "duplicate subset index " + std::to_string(i));
    seen[i] = 1;
  }
}

Subset Subset::all(std::size_t n) { return range(0, n); }

Subset Subset::range(std::size_t first, std::size_t count) {
  Subset s;
  s.indices.resize(count);
  for (std::size_t i = 0; i < count; ++i) s.indices[i] = first + i;
  return s;
}

template <class T>
FiniteMetric<T> restrict_to(const FiniteMetric<T>& m, const Subset& s) {
  s.check(m.size(), false);
  std::vector<std::string> labels;
  std::vector<T> dist;
  dist.reserve(s.size() * s.size());
  for (std::size_t a : s.indices) {
    labels.push_back(m.label(a));
    for (std::size_t b : s.indices) dist.push_back(m(a, b));
  }
  return FiniteMetric<T>(std::move(labels), std::move(dist));
}

template <class T>
T diameter(const FiniteMetric<T>& m) {
  T best(0);
  for (const T& v : m.data()) {
    if (best < v) best = v;
  }
  return best;
}

template <class T>
T diameter(const FiniteMetric<T>& m, const Subset& s) {
  T best(0);
  for (std::size_t a : s.indices) {
    for (std::size_t b : s.indices) {
      if (best < m(a, b)) best = m(a, b);
    }
  }
  return best;
}

template <class T>
T min_positive_distance(const FiniteMetric<T>& m, const Subset& s) {
  bool found = false;
  T best(0);
  for (std::size_t a : s.indices) {
    for (std::size_t b : s.indices) {
      if (a == b || !(T(0) < m(a, b))) continue;
      if (!found || m(a, b) < best) {
        best = m(a, b);
        found = true;
      }
    }
  }
  return best;
}

FiniteMetric<double> to_double(const FiniteMetric<Rational>& m) {
  std::vector<double> d;
  d.reserve(m.data().size());
  for (const auto& v : m.data()) d.push_back(lipext::to_double(v));
  return FiniteMetric<double>(m.labels(), std::move(d));
}

FiniteMetric<Rational> to_rational(const FiniteMetric<double>& m) {
  std::vector<Rational> d;
  d.reserve(m.data().size());
  for (double v : m.data()) d.emplace_back(v);
  return FiniteMetric<Rational>(m.labels(), std::move(d));
}

template class FiniteMetric<double>;
template class FiniteMetric<Rational>;

#define LIPEXT_INSTANTIATE(T)                                                 \
  template FiniteMetric<T> restrict_to(const FiniteMetric<T>&, const Subset&); \
  template T diameter(const FiniteMetric<T>&);                                 \
  template T diameter(const FiniteMetric<T>&, const Subset&);                  \
  template T min_positive_distance(const FiniteMetric<T>&, const Subset&);

LIPEXT_INSTANTIATE(double)
LIPEXT_INSTANTIATE(Rational)
#undef LIPEXT_INSTANTIATE

}  // namespace lipext::metric
