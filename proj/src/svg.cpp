#include "gsee/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gsee {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Red (unsolvable) through pale yellow to green (solvable).
std::string color(double p) {
  p = std::clamp(p, 0.0, 1.0);
  const double lo[3] = {215, 48, 39}, mid[3] = {255, 255, 191}, hi[3] = {26, 152, 80};
  const double* a = p < 0.5 ? lo : mid;
  const double* b = p < 0.5 ? mid : hi;
  const double t = p < 0.5 ? p / 0.5 : (p - 0.5) / 0.5;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a[0] + t * (b[0] - a[0]))),
                static_cast<int>(std::lround(a[1] + t * (b[1] - a[1]))),
                static_cast<int>(std::lround(a[2] + t * (b[2] - a[2]))));
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string star_points(double cx, double cy, double r) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    const double rad = k % 2 == 0 ? r : 0.45 * r;
    const double ang = -M_PI / 2 + k * M_PI / 5;
    if (k) pts += ' ';
    pts += fmt(cx + rad * std::cos(ang)) + "," + fmt(cy + rad * std::sin(ang));
  }
  return pts;
}

}  // namespace

std::string latent_heatmap_svg(const HeatmapSpec& spec) {
  const double xspan = spec.x_max > spec.x_min ? spec.x_max - spec.x_min : 1.0;
  const double yspan = spec.y_max > spec.y_min ? spec.y_max - spec.y_min : 1.0;
  const double pw = kWidth - 2 * kMargin, ph = kHeight - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - spec.x_min) / xspan * pw; };
  auto py = [&](double y) { return kHeight - kMargin - (y - spec.y_min) / yspan * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n";
  if (!spec.header_comment.empty()) out << "<!-- " << escape(spec.header_comment) << " -->\n";
  out << "<title>" << escape(spec.title) << "</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
      << "\" fill=\"white\"/>\n<g id=\"heatmap\">\n";

  const Eigen::Index n = spec.coords.rows();
  const bool two_d = spec.coords.cols() >= 2;
  if (two_d && spec.grid_resolution > 1) {
    const double cw = pw / (spec.grid_resolution - 1), ch = ph / (spec.grid_resolution - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      out << "<rect x=\"" << fmt(px(spec.coords(i, 0)) - cw / 2) << "\" y=\""
          << fmt(py(spec.coords(i, 1)) - ch / 2) << "\" width=\"" << fmt(cw) << "\" height=\""
          << fmt(ch) << "\" fill=\"" << color(spec.probability(i)) << "\"/>\n";
    }
  } else if (two_d) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out << "<circle cx=\"" << fmt(px(spec.coords(i, 0))) << "\" cy=\"" << fmt(py(spec.coords(i, 1)))
          << "\" r=\"2\" fill=\"" << color(spec.probability(i)) << "\"/>\n";
    }
  }
  out << "</g>\n<g id=\"markers\">\n";
  for (const auto& m : spec.markers) {
    const double cx = px(m.x), cy = py(m.y);
    const std::string tip = "<title>" + escape(m.label) + "</title>";
    switch (m.kind) {
      case MarkerKind::Solved:
        out << "<circle class=\"solved\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
            << "\" r=\"5\" fill=\"#1a9850\" stroke=\"black\">" << tip << "</circle>\n";
        break;
      case MarkerKind::Unsolved:
        out << "<path class=\"unsolved\" d=\"M" << fmt(cx - 5) << ',' << fmt(cy - 5) << " L"
            << fmt(cx + 5) << ',' << fmt(cy + 5) << " M" << fmt(cx - 5) << ',' << fmt(cy + 5) << " L"
            << fmt(cx + 5) << ',' << fmt(cy - 5) << "\" stroke=\"black\" stroke-width=\"2\">" << tip
            << "</path>\n";
        break;
      case MarkerKind::Guidestar:
        out << "<polygon class=\"guidestar\" points=\"" << star_points(cx, cy, 8)
            << "\" fill=\"#fee08b\" stroke=\"black\">" << tip << "</polygon>\n";
        break;
    }
  }
  out << "</g>\n";
  out << "<rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kMargin / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << escape(spec.title)
      << "</text>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">latent 1</text>\n";
  out << "<text x=\"15\" y=\"" << fmt(kHeight / 2) << "\" transform=\"rotate(-90 15 " << fmt(kHeight / 2)
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">latent 2</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace gsee
