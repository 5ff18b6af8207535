#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gsee {

enum class MarkerKind { Solved, Unsolved, Guidestar };

struct PlotMarker {
  double x = 0.0;
  double y = 0.0;
  MarkerKind kind = MarkerKind::Solved;
  std::string label;  // shown as a tooltip
};

struct HeatmapSpec {
  std::string title;
  std::string header_comment;  // emitted verbatim inside <!-- -->
  Eigen::MatrixXd coords;      // first two columns are plotted
  Eigen::VectorXd probability;
  int grid_resolution = 0;     // >0: coords form an r x r grid drawn as cells
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  std::vector<PlotMarker> markers;
};

/// Probability map of the latent space with solved (circle), unsolved (cross)
/// and guidestar (star) markers.
std::string latent_heatmap_svg(const HeatmapSpec& spec);

}  // namespace gsee
