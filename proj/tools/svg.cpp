#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "moat/errors.hpp"
#include "moat/textio.hpp"

namespace moat::tools {

namespace {

constexpr double kWidth = 760, kHeight = 480;
constexpr double kLeft = 64, kRight = 20, kTop = 34, kBottom = 46;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string short_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct SvgFile {
  std::ostringstream body;

  void save(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
        << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" "
        << "font-size=\"12\">\n"
        << body.str() << "</svg>\n";
    if (!out) throw IoError("failed writing " + path.string());
  }
};

struct Frame {
  double x_min, x_max, y_min, y_max;  // data domain (x already log10 if log)

  [[nodiscard]] double px(double x) const {
    return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  }
  [[nodiscard]] double py(double y) const {
    return kTop + (1.0 - (y - y_min) / (y_max - y_min)) *
                      (kHeight - kTop - kBottom);
  }
};

void draw_title(SvgFile& svg, const std::string& title) {
  svg.body << "<text x=\"" << coord(kWidth / 2) << "\" y=\"18\" "
           << "text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
           << "</text>\n";
}

void draw_frame_box(SvgFile& svg) {
  svg.body << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop)
           << "\" width=\"" << coord(kWidth - kLeft - kRight)
           << "\" height=\"" << coord(kHeight - kTop - kBottom)
           << "\" fill=\"none\" stroke=\"#333333\"/>\n";
}

void draw_y_ticks(SvgFile& svg, const Frame& frame, const std::string& label) {
  for (int i = 0; i <= 4; ++i) {
    const double v = frame.y_min + (frame.y_max - frame.y_min) * i / 4.0;
    const double y = frame.py(v);
    svg.body << "<line x1=\"" << coord(kLeft - 4) << "\" y1=\"" << coord(y)
             << "\" x2=\"" << coord(kLeft) << "\" y2=\"" << coord(y)
             << "\" stroke=\"#333333\"/>\n";
    svg.body << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(y + 4)
             << "\" text-anchor=\"end\">" << short_label(v) << "</text>\n";
  }
  svg.body << "<text x=\"14\" y=\"" << coord((kTop + kHeight - kBottom) / 2)
           << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
           << coord((kTop + kHeight - kBottom) / 2) << ")\">"
           << escape_xml(label) << "</text>\n";
}

template <typename T>
std::string join_values(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

void write_curves_svg(const std::filesystem::path& path,
                      const std::string& title, const std::string& y_label,
                      const std::vector<LabeledCurve>& curves) {
  if (curves.empty()) throw CoverageError("svg: no curves to draw");
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& c : curves) {
    for (std::int64_t b : c.budgets) {
      x_lo = std::min(x_lo, static_cast<double>(b));
      x_hi = std::max(x_hi, static_cast<double>(b));
    }
    auto scan = [&](const std::vector<double>& vs) {
      for (double v : vs) {
        if (!std::isfinite(v)) continue;
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
      }
    };
    scan(c.mean);
    scan(c.lo);
    scan(c.hi);
  }
  if (!(y_lo <= y_hi)) {
    y_lo = 0;
    y_hi = 1;
  }
  if (y_lo == y_hi) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  Frame frame{std::log10(std::max(1.0, x_lo)), std::log10(std::max(2.0, x_hi)),
              y_lo - pad, y_hi + pad};
  if (frame.x_min == frame.x_max) frame.x_max = frame.x_min + 1;

  SvgFile svg;
  draw_title(svg, title);
  draw_frame_box(svg);
  draw_y_ticks(svg, frame, y_label);
  // Decade ticks on the log axis.
  for (int p = static_cast<int>(std::ceil(frame.x_min));
       p <= static_cast<int>(std::floor(frame.x_max)); ++p) {
    const double x = frame.px(static_cast<double>(p));
    svg.body << "<line x1=\"" << coord(x) << "\" y1=\""
             << coord(kHeight - kBottom) << "\" x2=\"" << coord(x)
             << "\" y2=\"" << coord(kHeight - kBottom + 4)
             << "\" stroke=\"#333333\"/>\n";
    svg.body << "<text x=\"" << coord(x) << "\" y=\""
             << coord(kHeight - kBottom + 18) << "\" text-anchor=\"middle\">1e"
             << p << "</text>\n";
  }
  svg.body << "<text x=\"" << coord((kLeft + kWidth - kRight) / 2) << "\" y=\""
           << coord(kHeight - 10)
           << "\" text-anchor=\"middle\">evaluations</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (!c.lo.empty() && c.lo.size() == c.budgets.size() &&
        c.hi.size() == c.budgets.size()) {
      std::string pts;
      for (std::size_t j = 0; j < c.budgets.size(); ++j) {
        if (!std::isfinite(c.lo[j])) continue;
        pts += coord(frame.px(std::log10(static_cast<double>(c.budgets[j])))) +
               "," + coord(frame.py(c.lo[j])) + " ";
      }
      for (std::size_t j = c.budgets.size(); j-- > 0;) {
        if (!std::isfinite(c.hi[j])) continue;
        pts += coord(frame.px(std::log10(static_cast<double>(c.budgets[j])))) +
               "," + coord(frame.py(c.hi[j])) + " ";
      }
      if (!pts.empty()) {
        svg.body << "<polygon points=\"" << pts << "\" fill=\"" << color
                 << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
      }
    }
    std::string pts;
    for (std::size_t j = 0; j < c.budgets.size(); ++j) {
      if (!std::isfinite(c.mean[j])) continue;
      pts += coord(frame.px(std::log10(static_cast<double>(c.budgets[j])))) +
             "," + coord(frame.py(c.mean[j])) + " ";
    }
    svg.body << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\""
             << color << "\" stroke-width=\"1.5\" data-label=\""
             << escape_xml(c.label) << "\" data-budgets=\""
             << join_values(c.budgets) << "\" data-values=\""
             << join_values(c.mean) << "\"/>\n";
    // Legend row.
    const double ly = kTop + 16 + 16 * static_cast<double>(i);
    svg.body << "<line x1=\"" << coord(kLeft + 10) << "\" y1=\"" << coord(ly)
             << "\" x2=\"" << coord(kLeft + 34) << "\" y2=\"" << coord(ly)
             << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg.body << "<text x=\"" << coord(kLeft + 40) << "\" y=\"" << coord(ly + 4)
             << "\">" << escape_xml(c.label) << "</text>\n";
  }
  svg.save(path);
}

namespace {

std::string ramp(double t, int r0, int g0, int b0, int r1, int g1, int b1) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(r0 + t * (r1 - r0)));
  const int g = static_cast<int>(std::lround(g0 + t * (g1 - g0)));
  const int b = static_cast<int>(std::lround(b0 + t * (b1 - b0)));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

template <typename CellT, typename ColorFn, typename ValueFn>
void draw_cells(SvgFile& svg, const Frame& frame,
                const std::vector<CellT>& cells, ColorFn color_of,
                ValueFn value_of) {
  for (const auto& c : cells) {
    const double x = frame.px(c.x_lo);
    const double y = frame.py(c.y_hi);
    const double w = frame.px(c.x_hi) - x;
    const double h = frame.py(c.y_lo) - y;
    svg.body << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y)
             << "\" width=\"" << coord(w) << "\" height=\"" << coord(h)
             << "\" fill=\"" << color_of(c) << "\" stroke=\"none\" "
             << "data-fraction=\"" << format_double(value_of(c)) << "\"/>\n";
  }
}

void draw_xy_ticks(SvgFile& svg, const Frame& frame) {
  for (int i = 0; i <= 4; ++i) {
    const double v = frame.x_min + (frame.x_max - frame.x_min) * i / 4.0;
    const double x = frame.px(v);
    svg.body << "<line x1=\"" << coord(x) << "\" y1=\""
             << coord(kHeight - kBottom) << "\" x2=\"" << coord(x)
             << "\" y2=\"" << coord(kHeight - kBottom + 4)
             << "\" stroke=\"#333333\"/>\n";
    svg.body << "<text x=\"" << coord(x) << "\" y=\""
             << coord(kHeight - kBottom + 18) << "\" text-anchor=\"middle\">"
             << short_label(v) << "</text>\n";
  }
  svg.body << "<text x=\"" << coord((kLeft + kWidth - kRight) / 2) << "\" y=\""
           << coord(kHeight - 10) << "\" text-anchor=\"middle\">f1</text>\n";
}

}  // namespace

void write_eaf_svg(const std::filesystem::path& path, const std::string& title,
                   const moat::EafGrid& grid) {
  Frame frame{grid.x_lo, grid.x_hi, grid.y_lo, grid.y_hi};
  SvgFile svg;
  draw_title(svg, title);
  draw_cells(
      svg, frame, grid.cells,
      [&](const moat::EafCell& c) {
        const double f = static_cast<double>(c.count) / grid.n_runs;
        return ramp(f, 239, 243, 255, 8, 48, 107);
      },
      [&](const moat::EafCell& c) {
        return static_cast<double>(c.count) / grid.n_runs;
      });
  draw_frame_box(svg);
  draw_y_ticks(svg, frame, "f2");
  draw_xy_ticks(svg, frame);
  svg.save(path);
}

void write_eaf_diff_svg(const std::filesystem::path& path,
                        const std::string& title,
                        const moat::EafDiffGrid& grid) {
  Frame frame{grid.x_lo, grid.x_hi, grid.y_lo, grid.y_hi};
  SvgFile svg;
  draw_title(svg, title);
  draw_cells(
      svg, frame, grid.cells,
      [&](const moat::EafDiffCell& c) {
        if (c.value >= 0.0) return ramp(c.value, 255, 255, 255, 178, 24, 43);
        return ramp(-c.value, 255, 255, 255, 33, 102, 172);
      },
      [&](const moat::EafDiffCell& c) { return c.value; });
  draw_frame_box(svg);
  draw_y_ticks(svg, frame, "f2");
  draw_xy_ticks(svg, frame);
  svg.save(path);
}

}  // namespace moat::tools
