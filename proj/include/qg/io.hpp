#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qg/experiments.hpp"

namespace qg {

// FNV-1a over raw bytes; stamps outputs with the config identity.
std::uint64_t fnv1a64(const std::string& bytes);
std::string to_hex(std::uint64_t v);

// Locale-independent "%.12g" with "nan" pinned, so reruns are byte-stable.
std::string format_double(double v);

struct OutputStamp {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

// wegner.csv: lambda,epsilon,n_edges,samples,mean_count,stderr,s_mu_4eps,bound,ratio
void write_wegner_csv(const std::string& path, const WegnerReport& rep,
                      const OutputStamp& stamp);
void write_wegner_summary(const std::string& path, const WegnerReport& rep,
                          const OutputStamp& stamp);

// ids.csv: step,n_edges,volume,lambda,mean_nids,stderr,mean_increment
void write_ids_csv(const std::string& path, const std::vector<IdsCurve>& curves,
                   const OutputStamp& stamp);

// lemma_graph.csv: lambda,xi,xi_inner,boundary_term
// lemma_edge.csv:  lambda,xi,bound
void write_lemma_graph_csv(const std::string& path, const LemmaReport& rep,
                           const OutputStamp& stamp);
void write_lemma_edge_csv(const std::string& path, const LemmaReport& rep,
                          const OutputStamp& stamp);

// Static SVG line plot over a shared x grid, one polyline per named series.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::vector<double>& x,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace qg
