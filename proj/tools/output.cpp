#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qstancu::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);  // folds -0 into 0
  return buf;
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& meta,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
  for (const auto& [k, v] : meta) out_ << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw std::logic_error("csv row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << format_cell(cells[i]);
  out_ << '\n';
}

namespace {

constexpr double kWidth = 720, kHeight = 450;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series) {
  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  auto drawable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) && (!spec.log_y || y > 0);
  };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!drawable(s.x[i], s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (spec.log_x) x0 = std::floor(x0), x1 = std::ceil(x1);
  if (spec.log_y) y0 = std::floor(y0), y1 = std::ceil(y1);
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return kTop + ph - (v - y0) / (y1 - y0) * ph; };

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Linear axes get six evenly spaced ticks, log axes one tick per decade (or a
  // multiple of decades when the range is wide).
  auto tick_values = [](double lo, double hi, bool log) {
    std::vector<double> t;
    if (log) {
      const double stride = std::max(1.0, std::ceil((hi - lo) / 6.0));
      for (double v = lo; v <= hi + 1e-9; v += stride) t.push_back(v);
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(lo + (hi - lo) * i / 5.0);
    }
    return t;
  };
  for (double vx : tick_values(x0, x1, spec.log_x)) {
    out << "<line x1=\"" << num(px(vx)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(vx))
        << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(vx)) << "\" y=\"" << num(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << (spec.log_x ? "1e" + tick_label(vx) : tick_label(vx))
        << "</text>\n";
  }
  for (double vy : tick_values(y0, y1, spec.log_y)) {
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(vy)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(py(vy)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(vy) + 4)
        << "\" text-anchor=\"end\">" << (spec.log_y ? "1e" + tick_label(vy) : tick_label(vy))
        << "</text>\n";
  }
  const std::string& xl = spec.x_label;
  const std::string& yl = spec.y_label;
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  out << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + ph / 2) << ")\">" << escape(yl) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!drawable(s.x[i], s.y[i])) continue;
        out << "<circle cx=\"" << num(px(tx(s.x[i]))) << "\" cy=\"" << num(py(ty(s.y[i])))
            << "\" r=\"2.5\" fill=\"none\" stroke=\"" << s.color << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!drawable(s.x[i], s.y[i])) continue;
        out << (first ? "" : " ") << num(px(tx(s.x[i]))) << ',' << num(py(ty(s.y[i])));
        first = false;
      }
      out << "\"/>\n";
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    const double lx = kLeft + pw + 12;
    if (s.markers) {
      out << "<circle cx=\"" << num(lx + 10) << "\" cy=\"" << num(ly - 4)
          << "\" r=\"2.5\" fill=\"none\" stroke=\"" << s.color << "\"/>\n";
    } else {
      out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 20)
          << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color << "\"/>\n";
    }
    out << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly) << "\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace qstancu::cli
