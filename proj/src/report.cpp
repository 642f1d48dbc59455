#include "gpbo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gpbo/errors.hpp"
#include "gpbo/pareto.hpp"

namespace gpbo {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  double screen0 = 0.0, screen1 = 1.0;  // pixel range

  double map(double v) const {
    const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return screen0 + t * (screen1 - screen0);
  }
};

Axis padded_axis(double lo, double hi, double screen0, double screen1) {
  if (!(hi > lo)) {
    const double pad = std::max(std::abs(lo), 1.0) * 0.1;
    lo -= pad;
    hi += pad;
  } else {
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, screen0, screen1};
}

void draw_axes(std::ostringstream& svg, const Axis& x, const Axis& y, const std::string& x_label,
               const std::string& y_label) {
  svg << "<line x1='" << fmt(kMarginLeft) << "' y1='" << fmt(kHeight - kMarginBottom) << "' x2='"
      << fmt(kWidth - kMarginRight) << "' y2='" << fmt(kHeight - kMarginBottom)
      << "' stroke='black'/>\n";
  svg << "<line x1='" << fmt(kMarginLeft) << "' y1='" << fmt(kMarginTop) << "' x2='"
      << fmt(kMarginLeft) << "' y2='" << fmt(kHeight - kMarginBottom) << "' stroke='black'/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double tx = x.lo + (x.hi - x.lo) * i / 5.0;
    const double px = x.map(tx);
    svg << "<line x1='" << fmt(px) << "' y1='" << fmt(kHeight - kMarginBottom) << "' x2='" << fmt(px)
        << "' y2='" << fmt(kHeight - kMarginBottom + 5) << "' stroke='black'/>\n";
    svg << "<text x='" << fmt(px) << "' y='" << fmt(kHeight - kMarginBottom + 20)
        << "' font-size='11' text-anchor='middle'>" << fmt(tx) << "</text>\n";
    const double ty = y.lo + (y.hi - y.lo) * i / 5.0;
    const double py = y.map(ty);
    svg << "<line x1='" << fmt(kMarginLeft - 5) << "' y1='" << fmt(py) << "' x2='" << fmt(kMarginLeft)
        << "' y2='" << fmt(py) << "' stroke='black'/>\n";
    svg << "<text x='" << fmt(kMarginLeft - 8) << "' y='" << fmt(py + 4)
        << "' font-size='11' text-anchor='end'>" << fmt(ty) << "</text>\n";
  }
  svg << "<text x='" << fmt((kMarginLeft + kWidth - kMarginRight) / 2) << "' y='"
      << fmt(kHeight - 15) << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n";
  svg << "<text x='18' y='" << fmt((kMarginTop + kHeight - kMarginBottom) / 2)
      << "' font-size='13' text-anchor='middle' transform='rotate(-90 18 "
      << fmt((kMarginTop + kHeight - kMarginBottom) / 2) << ")'>" << y_label << "</text>\n";
}

std::string svg_header(const std::string& title) {
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << fmt(kWidth) << "' height='"
      << fmt(kHeight) << "' viewBox='0 0 " << fmt(kWidth) << " " << fmt(kHeight) << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << fmt(kWidth / 2) << "' y='28' font-size='16' text-anchor='middle'>" << title
      << "</text>\n";
  return svg.str();
}

double feasibility_threshold(const RunData& data) {
  if (data.config_json.empty()) return 0.0;
  try {
    const auto config = nlohmann::json::parse(data.config_json);
    if (config.contains("acquisition") && config["acquisition"].contains("pof_threshold")) {
      return config["acquisition"]["pof_threshold"].get<double>();
    }
  } catch (const nlohmann::json::exception&) {
    // Comment header is advisory; fall back to the default threshold.
  }
  return 0.0;
}

std::string render_single_objective(const RunData& data) {
  const std::string title =
      data.problem.empty() ? "incumbent progress" : data.problem + ": incumbent progress";
  std::ostringstream svg;
  svg << svg_header(title);

  double metric_lo = std::numeric_limits<double>::infinity();
  double metric_hi = -std::numeric_limits<double>::infinity();
  for (double v : data.metric) {
    if (std::isfinite(v)) {
      metric_lo = std::min(metric_lo, v);
      metric_hi = std::max(metric_hi, v);
    }
  }
  if (!std::isfinite(metric_lo)) {
    metric_lo = 0.0;
    metric_hi = 1.0;
  }
  const Axis x = padded_axis(0, std::max<double>(data.rows() - 1, 1), kMarginLeft, kWidth - kMarginRight);
  const Axis y = padded_axis(metric_lo, metric_hi, kHeight - kMarginBottom, kMarginTop);
  draw_axes(svg, x, y, "evaluation", "best objective value");

  std::ostringstream polyline;
  for (int i = 0; i < data.rows(); ++i) {
    if (!std::isfinite(data.metric[static_cast<std::size_t>(i)])) continue;
    polyline << fmt(x.map(i)) << "," << fmt(y.map(data.metric[static_cast<std::size_t>(i)])) << " ";
  }
  svg << "<polyline fill='none' stroke='#1f77b4' stroke-width='1.5' points='" << polyline.str()
      << "'/>\n";
  for (int i = 0; i < data.rows(); ++i) {
    const double v = data.metric[static_cast<std::size_t>(i)];
    if (!std::isfinite(v)) continue;
    const bool init = data.phase[static_cast<std::size_t>(i)] == "init";
    svg << "<circle cx='" << fmt(x.map(i)) << "' cy='" << fmt(y.map(v)) << "' r='3' fill='"
        << (init ? "#999999" : "#1f77b4") << "'/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_multi_objective(const RunData& data) {
  const double threshold = feasibility_threshold(data);
  const std::string title =
      data.problem.empty() ? "feasible objective values" : data.problem + ": feasible objective values";
  std::ostringstream svg;
  svg << svg_header(title);

  std::vector<int> feasible_rows;
  for (int i = 0; i < data.rows(); ++i) {
    if (data.q == 0 || (data.C.row(i).array() <= threshold).all()) feasible_rows.push_back(i);
  }

  if (feasible_rows.empty()) {
    svg << "<text x='" << fmt(kWidth / 2) << "' y='" << fmt(kHeight / 2)
        << "' font-size='15' text-anchor='middle'>no feasible samples</text>\n";
    svg << "</svg>\n";
    return svg.str();
  }

  Eigen::MatrixXd feasible_Y(static_cast<Eigen::Index>(feasible_rows.size()), 2);
  for (std::size_t i = 0; i < feasible_rows.size(); ++i) {
    feasible_Y(static_cast<Eigen::Index>(i), 0) = data.Y(feasible_rows[i], 0);
    feasible_Y(static_cast<Eigen::Index>(i), 1) = data.Y(feasible_rows[i], 1);
  }
  const ParetoFront front = pareto_front(feasible_Y);

  const Axis x = padded_axis(feasible_Y.col(0).minCoeff(), feasible_Y.col(0).maxCoeff(), kMarginLeft,
                             kWidth - kMarginRight);
  const Axis y = padded_axis(feasible_Y.col(1).minCoeff(), feasible_Y.col(1).maxCoeff(),
                             kHeight - kMarginBottom, kMarginTop);
  draw_axes(svg, x, y, "objective 1", "objective 2");

  for (Eigen::Index i = 0; i < feasible_Y.rows(); ++i) {
    svg << "<circle cx='" << fmt(x.map(feasible_Y(i, 0))) << "' cy='" << fmt(y.map(feasible_Y(i, 1)))
        << "' r='3' fill='#bbbbbb'/>\n";
  }
  std::ostringstream polyline;
  for (Eigen::Index i = 0; i < front.points.rows(); ++i) {
    polyline << fmt(x.map(front.points(i, 0))) << "," << fmt(y.map(front.points(i, 1))) << " ";
  }
  svg << "<polyline fill='none' stroke='#d62728' stroke-width='1.5' points='" << polyline.str()
      << "'/>\n";
  for (Eigen::Index i = 0; i < front.points.rows(); ++i) {
    svg << "<circle cx='" << fmt(x.map(front.points(i, 0))) << "' cy='"
        << fmt(y.map(front.points(i, 1))) << "' r='4' fill='#d62728'/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string render_run_svg(const RunData& data) {
  if (data.rows() < 1) throw ParseError("run CSV contains no evaluations");
  if (data.m == 1) return render_single_objective(data);
  return render_multi_objective(data);
}

}  // namespace gpbo
