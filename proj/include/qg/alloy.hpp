#pragma once

#include <cstdint>
#include <vector>

#include "qg/graph.hpp"
#include "qg/mesh.hpp"

namespace qg {

// Piecewise-constant nonnegative profile on one edge. Piece i covers
// [breaks[i-1], breaks[i]) (right-continuous); the last piece is closed at
// the edge length.
struct EdgeProfile {
  EdgeId edge = -1;
  std::vector<double> breaks;  // strictly increasing, inside (0, length)
  std::vector<double> values;  // breaks.size() + 1 entries, each >= 0

  double value_at(double x) const;
  bool is_zero() const;
  double max_value() const;
};

// One perturbation site: the potential attached to edge `site`, possibly
// spilling onto other edges. `support` holds exactly the edges whose
// profile is not identically zero.
struct SingleSitePotential {
  EdgeId site = -1;
  std::vector<EdgeProfile> profiles;  // sorted by edge id
  std::vector<EdgeId> support;        // sorted, derived from the profiles
  double sup_norm = 0.0;

  const EdgeProfile* profile_on(EdgeId e) const;
};

// Coupling distribution families. TwoPoint puts mass p on b and 1-p on a.
// PowerLaw has density alpha * x^(alpha-1) on [0, 1].
struct DistributionSpec {
  enum class Family { Uniform, TwoPoint, PowerLaw };
  Family family = Family::Uniform;
  double a = 0.0, b = 1.0;
  double p = 0.5;
  double alpha = 1.0;

  static DistributionSpec uniform(double a, double b);
  static DistributionSpec two_point(double a, double b, double p);
  static DistributionSpec power_law(double alpha);

  double support_lo() const;
  double support_hi() const;
  // Inverse-CDF / threshold sampling from a u in [0, 1).
  double sample(double u01) const;
};

// Worst-case mass the distribution puts on a closed interval of half-width
// eps, in closed form per family.
double s_mu(const DistributionSpec& dist, double eps);

// Alloy-type random potential: one site per edge (possibly zero profile),
// couplings i.i.d. across edges.
struct AlloyModel {
  const MetricGraph* graph = nullptr;
  std::vector<SingleSitePotential> sites;  // indexed by edge id
  DistributionSpec dist;

  // u_e = amplitude * indicator of e, for every edge.
  static AlloyModel edge_indicators(const MetricGraph& g, double amplitude,
                                    DistributionSpec dist);
  static AlloyModel from_sites(const MetricGraph& g,
                               std::vector<SingleSitePotential> sites,
                               DistributionSpec dist);
};

// Couplings for the sites in an active set, sorted by site edge id.
struct OmegaVector {
  std::vector<EdgeId> sites;
  std::vector<double> value;

  double at(EdgeId e) const;  // throws when e is not an active site
};

// One i.i.d. draw per site; deterministic in (seed, sample index, edge id).
OmegaVector sample_omega(const AlloyModel& model, const EdgeSet& active_sites,
                         std::uint64_t seed, std::uint64_t sample_index);

struct CoveringResult {
  bool has_sites = false;
  EdgeSet active_sites;  // sites whose support meets the subgraph
  double kappa = 0.0;    // exact min over the subgraph of the site sum
};

// Active sites and the covering lower bound, computed exactly on the
// merged breakpoint partition. kappa <= 0 means the covering fails.
CoveringResult check_covering(const AlloyModel& model, const EdgeSet& lambda);

struct SummabilityConstants {
  double c1 = 0.0;  // boundary-degree sums of the site subgraphs, per edge
  double c2 = 0.0;  // sqrt(sup-norm) * site volume, per edge
  double c3 = 0.0;  // site support sizes, per edge
};

SummabilityConstants summability_constants(const AlloyModel& model,
                                           const EdgeSet& lambda,
                                           const EdgeSet& active_sites);

// Dof-indexed potential values: V(x_i) = sum_e omega_e u_e(x_i) at every
// mesh node, summed in ascending site order. Shared vertex dofs evaluate
// on their representative end (see DofRef); Neumann slot dofs on their own
// edge end.
std::vector<double> potential_on_mesh(const AlloyModel& model, const OmegaVector& omega,
                                      const Subgraph& sub, const Mesh& mesh);

}  // namespace qg
