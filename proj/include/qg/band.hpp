#pragma once

#include <cstddef>
#include <vector>

namespace qg {

// Symmetric matrix in packed lower-band storage. Column j holds rows
// j..j+kd contiguously at col(j)[0..kd]; one extra always-zero pad slot per
// column lets the factorization's fused column updates run a uniform length
// without branching at the band edge.
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int kd)
      : n_(n), kd_(kd),
        a_(static_cast<size_t>(n) * static_cast<size_t>(kd + 2), 0.0) {}

  int n() const { return n_; }
  int kd() const { return kd_; }
  int stride() const { return kd_ + 2; }

  double* col(int j) { return &a_[static_cast<size_t>(j) * static_cast<size_t>(stride())]; }
  const double* col(int j) const {
    return &a_[static_cast<size_t>(j) * static_cast<size_t>(stride())];
  }

  // i >= j and i - j <= kd
  double& at(int i, int j) { return col(j)[i - j]; }
  double get(int i, int j) const {
    if (i < j) { const int t = i; i = j; j = t; }
    if (i - j > kd_) return 0.0;
    return col(j)[i - j];
  }

  double max_abs() const;

  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0, kd_ = 0;
  std::vector<double> a_;
};

}  // namespace qg
