#include "qrefine/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 60;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void open_svg(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
    << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
    << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
    << "</text>\n";
}

void frame(std::ostringstream& s, const std::string& x_label, const std::string& y_label) {
  s << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(kWidth - kLeft - kRight)
    << "\" height=\"" << fmt(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fmt(kHeight - 15)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label << "</text>\n"
    << "<text x=\"18\" y=\"" << fmt((kTop + kHeight - kBottom) / 2) << "\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " << fmt((kTop + kHeight - kBottom) / 2)
    << ")\">" << y_label << "</text>\n";
}

struct Axis {
  double lo, hi, px_lo, px_hi;
  double map(double v) const { return hi == lo ? (px_lo + px_hi) / 2 : px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

}  // namespace

std::string render_error_decay_svg(const RefinementTrace& trace) {
  if (trace.records.empty()) throw Error(ErrorCode::kInvalidArgument, "empty trace");
  std::vector<double> logs;
  double min_log = INFINITY, max_log = -INFINITY;
  for (const auto& r : trace.records) {
    if (!r.error_vs_truth) throw Error(ErrorCode::kInvalidArgument, "trace has no error column");
    if (*r.error_vs_truth > 0) {
      const double v = std::log10(*r.error_vs_truth);
      min_log = std::min(min_log, v);
      max_log = std::max(max_log, v);
    }
  }
  if (!std::isfinite(min_log)) min_log = max_log = 0.0;
  int decade_lo = static_cast<int>(std::floor(min_log));
  int decade_hi = static_cast<int>(std::ceil(max_log));
  if (decade_hi == decade_lo) ++decade_hi;
  for (const auto& r : trace.records) {
    logs.push_back(*r.error_vs_truth > 0 ? std::log10(*r.error_vs_truth) : decade_lo);
  }

  const Axis x{0, static_cast<double>(std::max<std::size_t>(trace.records.size() - 1, 1)), kLeft, kWidth - kRight};
  const Axis y{static_cast<double>(decade_lo), static_cast<double>(decade_hi), kHeight - kBottom, kTop};
  std::ostringstream s;
  open_svg(s, "Error vs. QUBO solve");
  const int label_every = std::max(1, (decade_hi - decade_lo) / 12 + 1);
  for (int d = decade_lo; d <= decade_hi; ++d) {
    const double py = y.map(d);
    s << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(kWidth - kRight) << "\" y2=\""
      << fmt(py) << "\" stroke=\"#dddddd\"/>\n";
    if ((d - decade_lo) % label_every == 0) {
      s << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << d << "</text>\n";
    }
  }
  frame(s, "solve ordinal", "error (log scale)");
  s << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (i) s << ' ';
    s << fmt(x.map(static_cast<double>(i))) << ',' << fmt(y.map(logs[i]));
  }
  s << "\"/>\n";
  s << "<circle cx=\"" << fmt(x.map(static_cast<double>(logs.size() - 1))) << "\" cy=\"" << fmt(y.map(logs.back()))
    << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string render_trajectory_svg(const RefinementTrace& trace, const std::optional<Vector>& truth) {
  if (trace.final_center.size() != 2) throw Error(ErrorCode::kDimensionMismatch, "trajectory needs two variables");
  std::vector<std::array<double, 2>> path;
  auto push = [&](const DyadicVector& c) {
    const auto v = c.to_doubles();
    if (path.empty() || path.back() != std::array<double, 2>{v[0], v[1]}) path.push_back({v[0], v[1]});
  };
  push(trace.initial_center);
  for (const auto& r : trace.records) push(r.center_after);

  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  auto extend = [&](double px, double py) {
    x_lo = std::min(x_lo, px), x_hi = std::max(x_hi, px);
    y_lo = std::min(y_lo, py), y_hi = std::max(y_hi, py);
  };
  for (const auto& p : path) extend(p[0], p[1]);
  if (truth) extend((*truth)[0], (*truth)[1]);
  const double pad_x = std::max((x_hi - x_lo) * 0.05, 1e-300), pad_y = std::max((y_hi - y_lo) * 0.05, 1e-300);
  const Axis x{x_lo - pad_x, x_hi + pad_x, kLeft, kWidth - kRight};
  const Axis y{y_lo - pad_y, y_hi + pad_y, kHeight - kBottom, kTop};

  std::ostringstream s;
  open_svg(s, "Center trajectory");
  frame(s, "x0", "x1");
  s << "<polyline fill=\"none\" stroke=\"#555555\" stroke-dasharray=\"4 3\" points=\"";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s << ' ';
    s << fmt(x.map(path[i][0])) << ',' << fmt(y.map(path[i][1]));
  }
  s << "\"/>\n";
  for (std::size_t idx : level_end_indices(trace)) {
    const auto v = trace.records[idx].center_after.to_doubles();
    s << "<circle cx=\"" << fmt(x.map(v[0])) << "\" cy=\"" << fmt(y.map(v[1]))
      << "\" r=\"4\" fill=\"none\" stroke=\"#1f77b4\"/>\n";
  }
  if (truth) {
    const double cx = x.map((*truth)[0]), cy = y.map((*truth)[1]);
    s << "<polygon fill=\"red\" points=\"";
    for (int i = 0; i < 10; ++i) {
      const double radius = i % 2 == 0 ? 9.0 : 4.0;
      const double angle = -std::numbers::pi / 2 + i * std::numbers::pi / 5;
      if (i) s << ' ';
      s << fmt(cx + radius * std::cos(angle)) << ',' << fmt(cy + radius * std::sin(angle));
    }
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_plots(const RefinementTrace& trace, const std::optional<Vector>& truth,
                                              const std::filesystem::path& out, std::ostream& notices) {
  std::vector<std::filesystem::path> written;
  if (trace.records.empty()) {
    notices << "plot: trace is empty, nothing to draw\n";
    return written;
  }
  auto save = [&](const std::filesystem::path& path, const std::string& svg) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kInvalidArgument, path.string() + ": cannot write");
    f << svg;
    written.push_back(path);
  };
  if (trace.records.front().error_vs_truth) {
    save(out, render_error_decay_svg(trace));
  } else {
    notices << "plot: no x_true supplied, error-decay plot skipped\n";
  }
  if (trace.final_center.size() == 2) {
    std::filesystem::path traj = out;
    traj.replace_filename(out.stem().string() + "_trajectory.svg");
    save(traj, render_trajectory_svg(trace, truth));
  } else {
    notices << "plot: trajectory plot needs exactly 2 variables, skipped\n";
  }
  return written;
}

}  // namespace qrefine
