#include "qg/conditions.hpp"

#include <cmath>
#include <stdexcept>

#include "qg/dense_eig.hpp"

namespace qg {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

std::string to_string(ConditionTag tag) {
  switch (tag) {
    case ConditionTag::Dirichlet: return "dirichlet";
    case ConditionTag::Neumann: return "neumann";
    case ConditionTag::Kirchhoff: return "kirchhoff";
    case ConditionTag::Delta: return "delta";
    case ConditionTag::General: return "general";
  }
  return "?";
}

VertexCondition dirichlet(int d) {
  if (d < 1) throw std::invalid_argument("condition degree must be >= 1");
  VertexCondition c;
  c.tag = ConditionTag::Dirichlet;
  c.degree = d;
  c.A = CMatrix::identity(d);
  c.B = CMatrix(d, d);
  return c;
}

VertexCondition neumann(int d) {
  if (d < 1) throw std::invalid_argument("condition degree must be >= 1");
  VertexCondition c;
  c.tag = ConditionTag::Neumann;
  c.degree = d;
  c.A = CMatrix(d, d);
  c.B = CMatrix::identity(d);
  return c;
}

namespace {

// Rows 0..d-2: value continuity s_i = s_{i+1}. Row d-1: sum of inward
// derivatives equals alpha times the common value.
VertexCondition continuity_family(ConditionTag tag, int d, double alpha) {
  if (d < 1) throw std::invalid_argument("condition degree must be >= 1");
  if (!std::isfinite(alpha)) throw std::invalid_argument("delta coupling must be finite");
  VertexCondition c;
  c.tag = tag;
  c.degree = d;
  c.alpha = alpha;
  c.A = CMatrix(d, d);
  c.B = CMatrix(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    c.A.at(i, i) = 1.0;
    c.A.at(i, i + 1) = -1.0;
  }
  c.A.at(d - 1, 0) = -alpha;
  for (int j = 0; j < d; ++j) c.B.at(d - 1, j) = 1.0;
  return c;
}

}  // namespace

VertexCondition kirchhoff(int d) {
  return continuity_family(ConditionTag::Kirchhoff, d, 0.0);
}

VertexCondition delta(int d, double alpha) {
  return continuity_family(ConditionTag::Delta, d, alpha);
}

VertexCondition general_condition(CMatrix A, CMatrix B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw std::invalid_argument("condition matrices must be square and of equal size");
  if (A.rows() < 1) throw std::invalid_argument("condition degree must be >= 1");
  VertexCondition c;
  c.tag = ConditionTag::General;
  c.degree = A.rows();
  c.A = std::move(A);
  c.B = std::move(B);
  return c;
}

VertexCondition make_condition(ConditionTag tag, int degree, double alpha) {
  switch (tag) {
    case ConditionTag::Dirichlet: return dirichlet(degree);
    case ConditionTag::Neumann: return neumann(degree);
    case ConditionTag::Kirchhoff: return kirchhoff(degree);
    case ConditionTag::Delta: return delta(degree, alpha);
    case ConditionTag::General:
      throw std::invalid_argument("general conditions need explicit matrices");
  }
  throw std::invalid_argument("bad condition tag");
}

namespace {

// Eigenvalues of a Hermitian matrix via the real 2d x 2d embedding
// [[Re, -Im], [Im, Re]]; each eigenvalue appears twice.
std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  const int d = h.rows();
  const int n = 2 * d;
  std::vector<double> a(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  auto put = [&](int i, int j, double v) { a[static_cast<size_t>(i) * n + j] = v; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      put(i, j, h.at(i, j).real());
      put(i + d, j + d, h.at(i, j).real());
      put(i + d, j, h.at(i, j).imag());
      put(i, j + d, -h.at(i, j).imag());
    }
  return symmetric_eigenvalues(std::move(a), n);
}

}  // namespace

ConditionReport validate(const VertexCondition& c) {
  ConditionReport rep;
  const int d = c.degree;
  if (d < 1 || c.A.rows() != d || c.A.cols() != d || c.B.rows() != d || c.B.cols() != d)
    return rep;  // malformed: both checks stay failed

  // Gram matrix of [A|B]: G = A A* + B B*; singular values are sqrt(eig).
  CMatrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < d; ++k)
        s += c.A.at(i, k) * std::conj(c.A.at(j, k)) +
             c.B.at(i, k) * std::conj(c.B.at(j, k));
      gram.at(i, j) = s;
    }
  std::vector<double> ev = hermitian_eigenvalues(gram);
  double smax = 0.0;
  for (double v : ev) smax = std::max(smax, std::sqrt(std::max(0.0, v)));
  int rank2 = 0;  // doubled by the real embedding
  for (double v : ev)
    if (std::sqrt(std::max(0.0, v)) > 1e-10 * smax) ++rank2;
  rep.rank = rank2 / 2;
  rep.rank_ok = (rep.rank == d) && smax > 0.0;

  // Hermitian test on AB* - BA*.
  double defect = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex ab = 0.0, ba = 0.0;
      for (int k = 0; k < d; ++k) {
        ab += c.A.at(i, k) * std::conj(c.B.at(j, k));
        ba += c.B.at(i, k) * std::conj(c.A.at(j, k));
      }
      defect = std::max(defect, std::abs(ab - ba));
    }
  rep.hermitian_defect = defect;
  rep.hermitian_ok =
      defect <= 1e-12 * (1.0 + c.A.frobenius_norm() * c.B.frobenius_norm());
  return rep;
}

ConditionField ConditionField::uniform(const MetricGraph& g, ConditionTag tag,
                                       double alpha) {
  ConditionField f;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    f.set(v, make_condition(tag, g.degree(v), alpha));
  return f;
}

void ConditionField::set(VertexId v, VertexCondition c) { field_[v] = std::move(c); }

const VertexCondition& ConditionField::at(VertexId v) const {
  auto it = field_.find(v);
  if (it == field_.end())
    throw std::out_of_range("no condition for vertex " + std::to_string(v));
  return it->second;
}

bool ConditionField::has(VertexId v) const { return field_.count(v) != 0; }

void ConditionField::check_against(const MetricGraph& g) const {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!has(v))
      throw std::invalid_argument("condition field misses vertex " + std::to_string(v));
    if (at(v).degree != g.degree(v))
      throw std::invalid_argument("condition degree mismatch at vertex " +
                                  std::to_string(v));
  }
}

ConditionField induce_on_subgraph(const ConditionField& field, const Subgraph& sub) {
  ConditionField out;
  for (VertexId v : sub.vertices) {
    const int dsub = sub.induced_degree(v);
    if (sub.is_boundary(v)) {
      out.set(v, dirichlet(dsub));
    } else {
      const VertexCondition& parent = field.at(v);
      if (parent.degree != dsub)
        throw std::logic_error("interior vertex " + std::to_string(v) +
                               " changed degree under restriction");
      out.set(v, parent);
    }
  }
  return out;
}

}  // namespace qg
