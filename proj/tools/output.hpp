#pragma once

// CSV tables and SVG line plots. Both formats are written byte-for-byte
// reproducibly: numbers go through fixed printf formats only.

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qstancu::cli {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Reals in scientific notation with 17 significant digits.
std::string format_real(double v);
std::string format_cell(const Cell& c);

/// Comment lines "# key=value" first, then the header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::pair<std::string, std::string>>& meta,
            const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // circles instead of a polyline
  std::string color = "#1f77b4";
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Standalone SVG with one polyline (or marker set) per series. Points that
/// cannot be drawn on a log axis are dropped.
void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series);

}  // namespace qstancu::cli
