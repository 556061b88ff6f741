#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qg/graph.hpp"

namespace qg {

using Complex = std::complex<double>;

// Tiny dense complex matrix; vertex-condition algebra only, so dimensions
// are vertex degrees.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols),
      a_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}
  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  double frobenius_norm() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

enum class ConditionTag { Dirichlet, Neumann, Kirchhoff, Delta, General };

std::string to_string(ConditionTag tag);

// Boundary condition at one vertex of degree d, stored as the kernel
// description A f(v) + B df(v) = 0 with df the inward derivatives. Valid
// conditions have rank [A|B] = d and A B* Hermitian.
struct VertexCondition {
  ConditionTag tag = ConditionTag::General;
  int degree = 0;
  double alpha = 0.0;  // delta coupling strength; alpha > 0 is repulsive
  CMatrix A, B;
};

VertexCondition dirichlet(int d);
VertexCondition neumann(int d);
VertexCondition kirchhoff(int d);
// Continuity rows plus sum of inward derivatives = alpha * value.
VertexCondition delta(int d, double alpha);
VertexCondition general_condition(CMatrix A, CMatrix B);

struct ConditionReport {
  bool rank_ok = false;
  bool hermitian_ok = false;
  int rank = 0;
  double hermitian_defect = 0.0;
  bool ok() const { return rank_ok && hermitian_ok; }
};

// Rank test: singular values of [A|B] above 1e-10 * sigma_max.
// Hermitian test: max|AB* - BA*| <= 1e-12 * (1 + |A|_F |B|_F).
ConditionReport validate(const VertexCondition& c);

// Map vertex -> condition covering every vertex of one (sub)graph, with
// degrees matching that (sub)graph.
class ConditionField {
 public:
  ConditionField() = default;

  static ConditionField uniform(const MetricGraph& g, ConditionTag tag,
                                double alpha = 0.0);

  void set(VertexId v, VertexCondition c);
  const VertexCondition& at(VertexId v) const;
  bool has(VertexId v) const;
  const std::map<VertexId, VertexCondition>& entries() const { return field_; }

  // Every vertex covered, each degree matching the graph's.
  void check_against(const MetricGraph& g) const;

 private:
  std::map<VertexId, VertexCondition> field_;
};

// Interior vertices keep the parent condition; boundary vertices get
// Dirichlet at their induced degree.
ConditionField induce_on_subgraph(const ConditionField& field, const Subgraph& sub);

VertexCondition make_condition(ConditionTag tag, int degree, double alpha);

}  // namespace qg
