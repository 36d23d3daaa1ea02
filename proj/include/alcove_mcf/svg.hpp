#ifndef ALCOVE_MCF_SVG_HPP
#define ALCOVE_MCF_SVG_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dynamics.hpp"

namespace alcove_mcf {

/// Phase-portrait writer for rank-2 systems: alcove outline (one path per
/// facet wall), optional vector-field quiver, trajectories, point markers.
class SvgPlot {
 public:
  SvgPlot(const Alcove& alc, double width = 640, double height = 560, double margin = 40)
      : alc_(alc), w_(width), h_(height), m_(margin) {
    if (alc.frame.rank() != 2)
      throw std::invalid_argument("SVG plotting requires a rank-2 system");
    xmin_ = ymin_ = std::numeric_limits<double>::infinity();
    xmax_ = ymax_ = -std::numeric_limits<double>::infinity();
    for (const Vec& v : alc.vertices) {
      xmin_ = std::min(xmin_, v[0]);
      xmax_ = std::max(xmax_, v[0]);
      ymin_ = std::min(ymin_, v[1]);
      ymax_ = std::max(ymax_, v[1]);
    }
    const double pad_x = 0.05 * (xmax_ - xmin_), pad_y = 0.05 * (ymax_ - ymin_);
    xmin_ -= pad_x;
    xmax_ += pad_x;
    ymin_ -= pad_y;
    ymax_ += pad_y;
  }

  void add_walls() {
    for (int wi : alc_.facet_indices()) {
      const WallConstraint& w = alc_.walls[wi];
      std::vector<Vec> ends;
      for (const Vec& v : alc_.vertices)
        if (std::fabs(w.slack_reduced(v)) < 1e-8) ends.push_back(v);
      if (ends.size() < 2) continue;
      std::ostringstream d;
      d << "M " << px(ends[0]) << " L " << px(ends[1]);
      body_ << "<path d=\"" << d.str()
            << "\" stroke=\"#333333\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    }
  }

  void add_quiver(const ActionData& data, int grid = 14, double arrow = 10.0) {
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        Vec y = {xmin_ + (xmax_ - xmin_) * (i + 0.5) / grid,
                 ymin_ + (ymax_ - ymin_) * (j + 0.5) / grid};
        if (alc_.min_facet_slack(y) < 0.02) continue;
        Vec f = alc_.frame.reduce(field_X_raw(data, alc_.frame.lift(y)));
        const double n = norm(f);
        if (!(n > 0) || !all_finite(f)) continue;
        Vec tip(y);
        // fixed-length arrows; direction only
        axpy(tip, arrow / n * (xmax_ - xmin_) / w_, f);
        body_ << "<path d=\"M " << px(y) << " L " << px(tip)
              << "\" stroke=\"#8899bb\" stroke-width=\"0.8\" fill=\"none\"/>\n";
      }
  }

  void add_trajectory(const FlowResult& r, const std::string& color = "#bb2233") {
    if (r.samples.empty()) return;
    std::ostringstream d;
    d << "M " << px(alc_.frame.reduce(r.samples[0].second));
    for (std::size_t i = 1; i < r.samples.size(); ++i)
      d << " L " << px(alc_.frame.reduce(r.samples[i].second));
    d << " L " << px(alc_.frame.reduce(r.terminal));
    body_ << "<path d=\"" << d.str() << "\" stroke=\"" << color
          << "\" stroke-width=\"1.2\" fill=\"none\"/>\n";
  }

  void add_marker(const Vec& x_ambient, const std::string& color = "#117733") {
    const Vec y = alc_.frame.reduce(x_ambient);
    body_ << "<circle cx=\"" << sx(y[0]) << "\" cy=\"" << sy(y[1])
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
  }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w_
        << "\" height=\"" << h_ << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n"
        << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"#ffffff\"/>\n"
        << body_.str() << "</svg>\n";
  }

 private:
  double sx(double x) const { return m_ + (x - xmin_) / (xmax_ - xmin_) * (w_ - 2 * m_); }
  double sy(double y) const { return h_ - m_ - (y - ymin_) / (ymax_ - ymin_) * (h_ - 2 * m_); }
  std::string px(const Vec& y) const {
    std::ostringstream s;
    s << sx(y[0]) << " " << sy(y[1]);
    return s.str();
  }

  const Alcove& alc_;
  double w_, h_, m_;
  double xmin_, xmax_, ymin_, ymax_;
  std::ostringstream body_;
};

}  // namespace alcove_mcf

#endif
