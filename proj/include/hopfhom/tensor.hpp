#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfhom/matrix.hpp"

namespace hopfhom {

// Rank-3 tensor of structure constants.  The index meaning is fixed per use:
//   multiplication m(i,j,k):  e_i e_j = sum_k m(i,j,k) e_k
//   comultiplication c(i,j,k): Delta e_i = sum_{j,k} c(i,j,k) e_j (x) e_k
template <FieldScalar K>
class Tensor3 {
 public:
  Tensor3() : d_{0, 0, 0} {}
  Tensor3(std::size_t a, std::size_t b, std::size_t c) : d_{a, b, c}, e_(a * b * c) {}

  std::size_t dim(std::size_t axis) const { return d_[axis]; }

  K& operator()(std::size_t i, std::size_t j, std::size_t k) { return e_[(i * d_[1] + j) * d_[2] + k]; }
  const K& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return e_[(i * d_[1] + j) * d_[2] + k];
  }
  K& at(std::size_t i, std::size_t j, std::size_t k) {
    check(i, j, k);
    return (*this)(i, j, k);
  }
  const K& at(std::size_t i, std::size_t j, std::size_t k) const {
    check(i, j, k);
    return (*this)(i, j, k);
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b) { return a.d_ == b.d_ && a.e_ == b.e_; }
  friend bool operator!=(const Tensor3& a, const Tensor3& b) { return !(a == b); }

  const std::vector<K>& data() const { return e_; }

 private:
  void check(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= d_[0] || j >= d_[1] || k >= d_[2]) throw std::out_of_range("Tensor3: index out of range");
  }

  std::array<std::size_t, 3> d_;
  std::vector<K> e_;
};

// Dense tensor of arbitrary rank, row-major; the common currency of einsum.
template <FieldScalar K>
struct TensorData {
  std::vector<std::size_t> dims;
  std::vector<K> vals;

  static TensorData from_matrix(const Matrix<K>& m) {
    TensorData t;
    t.dims = {m.rows(), m.cols()};
    t.vals = m.data();
    return t;
  }
  static TensorData from_tensor3(const Tensor3<K>& t3) {
    TensorData t;
    t.dims = {t3.dim(0), t3.dim(1), t3.dim(2)};
    t.vals = t3.data();
    return t;
  }
  static TensorData scalar(const K& v) { return {{}, {v}}; }

  Matrix<K> to_matrix() const {
    if (dims.size() != 2) throw std::invalid_argument("TensorData: not rank 2");
    Matrix<K> m(dims[0], dims[1]);
    m.data() = vals;
    return m;
  }
  K to_scalar() const {
    if (!dims.empty()) throw std::invalid_argument("TensorData: not rank 0");
    return vals.at(0);
  }
  std::size_t total() const {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
  }
};

// General exact contraction over index labels, e.g.
//   einsum("ijk,jl->ikl", {&t, &m})
// Labels appearing in inputs but not in the output are summed.  This is the
// plain nested-loop evaluation; composite maps in the main build are instead
// assembled from matrix products, which keeps the two routes independent.
template <FieldScalar K>
TensorData<K> einsum(const std::string& spec, const std::vector<const TensorData<K>*>& inputs) {
  const auto arrow = spec.find("->");
  if (arrow == std::string::npos) throw std::invalid_argument("einsum: missing '->' in spec");
  std::vector<std::string> in_labels;
  {
    std::string cur;
    for (std::size_t i = 0; i < arrow; ++i) {
      if (spec[i] == ',') {
        in_labels.push_back(cur);
        cur.clear();
      } else {
        cur += spec[i];
      }
    }
    in_labels.push_back(cur);
  }
  const std::string out_labels = spec.substr(arrow + 2);
  if (in_labels.size() != inputs.size()) throw std::invalid_argument("einsum: input count mismatch");

  // Gather label extents, checking consistency.
  std::map<char, std::size_t> extent;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const auto& lab = in_labels[t];
    if (lab.size() != inputs[t]->dims.size())
      throw std::invalid_argument("einsum: label/rank mismatch for input " + std::to_string(t));
    std::string seen;
    for (std::size_t a = 0; a < lab.size(); ++a) {
      if (seen.find(lab[a]) != std::string::npos)
        throw std::invalid_argument("einsum: repeated label within one input");
      seen += lab[a];
      auto [it, fresh] = extent.emplace(lab[a], inputs[t]->dims[a]);
      if (!fresh && it->second != inputs[t]->dims[a])
        throw std::invalid_argument("einsum: extent mismatch for label " + std::string(1, lab[a]));
    }
  }
  for (char c : out_labels)
    if (!extent.count(c)) throw std::invalid_argument("einsum: output label not found in inputs");

  std::string sum_labels;
  for (const auto& [c, _] : extent)
    if (out_labels.find(c) == std::string::npos) sum_labels += c;

  TensorData<K> out;
  for (char c : out_labels) out.dims.push_back(extent[c]);
  out.vals.assign(out.total(), K::zero());
  for (const auto& [c, e] : extent)
    if (e == 0) return out;  // empty sums / empty output

  const std::string all = out_labels + sum_labels;
  std::vector<std::size_t> ext(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) ext[i] = extent[all[i]];

  // Precompute, per input, the positions of its labels within `all`.
  std::vector<std::vector<std::size_t>> pos(inputs.size());
  for (std::size_t t = 0; t < inputs.size(); ++t)
    for (char c : in_labels[t]) pos[t].push_back(all.find(c));

  std::vector<std::size_t> ix(all.size(), 0);
  const std::size_t out_rank = out_labels.size();
  while (true) {
    K term = K::one();
    bool zero = false;
    for (std::size_t t = 0; t < inputs.size() && !zero; ++t) {
      std::size_t flat = 0;
      for (std::size_t a = 0; a < pos[t].size(); ++a) flat = flat * inputs[t]->dims[a] + ix[pos[t][a]];
      const K& v = inputs[t]->vals[flat];
      if (v.is_zero())
        zero = true;
      else
        term *= v;
    }
    if (!zero) {
      std::size_t flat = 0;
      for (std::size_t a = 0; a < out_rank; ++a) flat = flat * out.dims[a] + ix[a];
      out.vals[flat] += term;
    }
    // Odometer over all labels.
    std::size_t a = all.size();
    while (a > 0) {
      --a;
      if (++ix[a] < ext[a]) break;
      ix[a] = 0;
      if (a == 0) return out;
    }
    if (all.empty()) return out;
  }
}

template <FieldScalar K>
TensorData<K> einsum(const std::string& spec, const TensorData<K>& a) {
  return einsum(spec, std::vector<const TensorData<K>*>{&a});
}
template <FieldScalar K>
TensorData<K> einsum(const std::string& spec, const TensorData<K>& a, const TensorData<K>& b) {
  return einsum(spec, std::vector<const TensorData<K>*>{&a, &b});
}
template <FieldScalar K>
TensorData<K> einsum(const std::string& spec, const TensorData<K>& a, const TensorData<K>& b,
                     const TensorData<K>& c) {
  return einsum(spec, std::vector<const TensorData<K>*>{&a, &b, &c});
}
template <FieldScalar K>
TensorData<K> einsum(const std::string& spec, const TensorData<K>& a, const TensorData<K>& b,
                     const TensorData<K>& c, const TensorData<K>& d) {
  return einsum(spec, std::vector<const TensorData<K>*>{&a, &b, &c, &d});
}

}  // namespace hopfhom
