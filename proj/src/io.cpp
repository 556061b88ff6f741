#include "qg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qg {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  return os;
}

void write_stamp(std::ofstream& os, const OutputStamp& stamp) {
  os << "# config_hash=" << stamp.config_hash << " seed=" << stamp.seed << "\n";
  for (const std::string& n : stamp.notes) os << "# " << n << "\n";
}

}  // namespace

void write_wegner_csv(const std::string& path, const WegnerReport& rep,
                      const OutputStamp& stamp) {
  std::ofstream os = open_out(path);
  write_stamp(os, stamp);
  os << "# bound = s(mu, 4*eps/kappa) * n_edges; kappa measured, model kept raw\n";
  os << "lambda,epsilon,n_edges,samples,mean_count,stderr,s_mu_4eps,bound,ratio\n";
  for (const WegnerCell& c : rep.cells)
    os << format_double(c.lambda) << ',' << format_double(c.eps) << ',' << c.n_edges
       << ',' << c.samples << ',' << format_double(c.mean) << ','
       << format_double(c.std_error) << ',' << format_double(c.s_mu4) << ','
       << format_double(c.bound) << ',' << format_double(c.ratio) << "\n";
}

void write_wegner_summary(const std::string& path, const WegnerReport& rep,
                          const OutputStamp& stamp) {
  std::ofstream os = open_out(path);
  write_stamp(os, stamp);
  for (const WegnerSetInfo& s : rep.sets)
    os << "edge_set n=" << s.n_edges << " dofs=" << s.dofs
       << " kappa=" << format_double(s.kappa) << " C1=" << format_double(s.consts.c1)
       << " C2=" << format_double(s.consts.c2) << " C3=" << format_double(s.consts.c3)
       << " proof_constant=" << format_double(s.proof_constant) << "\n";
  for (const WegnerSummary& s : rep.summaries)
    os << "max_over_lambda n=" << s.n_edges << " eps=" << format_double(s.eps)
       << " max_mean=" << format_double(s.max_mean)
       << " max_ratio=" << format_double(s.max_ratio) << "\n";
  for (const std::string& w : rep.warnings) os << "warning: " << w << "\n";
}

void write_ids_csv(const std::string& path, const std::vector<IdsCurve>& curves,
                   const OutputStamp& stamp) {
  std::ofstream os = open_out(path);
  write_stamp(os, stamp);
  os << "step,n_edges,volume,lambda,mean_nids,stderr,mean_increment\n";
  for (const IdsCurve& c : curves)
    for (size_t k = 0; k < c.lambda.size(); ++k)
      os << c.step << ',' << c.n_edges << ',' << format_double(c.vol) << ','
         << format_double(c.lambda[k]) << ',' << format_double(c.value[k]) << ','
         << format_double(c.std_error[k]) << ',' << format_double(c.increment[k])
         << "\n";
}

void write_lemma_graph_csv(const std::string& path, const LemmaReport& rep,
                           const OutputStamp& stamp) {
  std::ofstream os = open_out(path);
  write_stamp(os, stamp);
  os << "lambda,xi,xi_inner,boundary_term\n";
  for (size_t k = 0; k < rep.lambda.size(); ++k)
    os << format_double(rep.lambda[k]) << ',' << rep.xi[k] << ',' << rep.xi_inner[k]
       << ',' << rep.boundary_term << "\n";
}

void write_lemma_edge_csv(const std::string& path, const LemmaReport& rep,
                          const OutputStamp& stamp) {
  std::ofstream os = open_out(path);
  write_stamp(os, stamp);
  os << "lambda,xi,bound\n";
  for (size_t k = 0; k < rep.lambda.size(); ++k)
    os << format_double(rep.lambda[k]) << ',' << rep.xi[k] << ','
       << format_double(rep.bound) << "\n";
}

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::vector<double>& x,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const int W = 840, H = 560, ML = 70, MR = 180, MT = 40, MB = 50;
  double xmin = x.empty() ? 0.0 : x.front(), xmax = x.empty() ? 1.0 : x.back();
  double ymin = 0.0, ymax = 1e-12;
  for (const auto& s : series)
    for (double v : s.second) {
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  std::ofstream os = open_out(path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
     << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << ML << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
     << title << "</text>\n";
  os << "<line x1=\"" << ML << "\" y1=\"" << (H - MB) << "\" x2=\"" << (W - MR)
     << "\" y2=\"" << (H - MB) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\""
     << (H - MB) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << format_double(px(xv)) << "\" y=\"" << (H - MB + 18)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
       << format_double(xv) << "</text>\n";
    os << "<text x=\"" << (ML - 6) << "\" y=\"" << format_double(py(yv) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
       << format_double(yv) << "</text>\n";
  }
  int si = 0;
  for (const auto& s : series) {
    const char* color = colors[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < x.size() && k < s.second.size(); ++k) {
      if (!std::isfinite(s.second[k])) continue;
      os << format_double(px(x[k])) << ',' << format_double(py(s.second[k])) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << (W - MR + 10) << "\" y=\"" << (MT + 16 * si + 12)
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
       << s.first << "</text>\n";
    ++si;
  }
  os << "</svg>\n";
}

}  // namespace qg
