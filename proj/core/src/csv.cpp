#include "morphosim/csv.hpp"

#include <ostream>

namespace morphosim {

void write_series_csv(std::span<const SeriesRow> rows, int K, std::ostream& out) {
  out << "t,L,closure_defect";
  for (int k = 1; k <= K; ++k) out << ",a_" << k;
  out << ",min_dphi,max_dphi\n";
  out.precision(17);
  for (const auto& r : rows) {
    out << r.t << ',' << r.length << ',' << r.closure_defect;
    for (double a : r.modes) out << ',' << a;
    out << ',' << r.min_dphi << ',' << r.max_dphi << '\n';
  }
}

void write_mode_series_csv(const ModeSeries& series, std::ostream& out) {
  out << 't';
  for (int k = 1; k <= series.modes(); ++k) out << ",a_" << k;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.times()[i];
    for (double a : series.row(i)) out << ',' << a;
    out << '\n';
  }
}

void write_region_csv(const RegionScan& scan, std::ostream& out) {
  out << "d,sigma,stable,smallest_unstable_k\n";
  out.precision(17);
  for (const auto& c : scan.cells) {
    out << c.d << ',' << c.sigma << ',' << (c.stable ? 1 : 0) << ',' << c.smallest_unstable_k
        << '\n';
  }
}

void write_polyline_csv(std::span<const std::array<double, 2>> points, const char* header,
                        std::ostream& out) {
  out << header << '\n';
  out.precision(17);
  for (const auto& p : points) out << p[0] << ',' << p[1] << '\n';
}

}  // namespace morphosim
