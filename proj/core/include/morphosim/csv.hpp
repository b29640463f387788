#pragma once

#include <iosfwd>
#include <span>

#include "morphosim/dynamics.hpp"
#include "morphosim/spectral.hpp"
#include "morphosim/stability.hpp"

namespace morphosim {

/// "t,L,closure_defect,a_1..a_K,min_dphi,max_dphi".
void write_series_csv(std::span<const SeriesRow> rows, int K, std::ostream& out);

/// "t,a_1,...,a_K".
void write_mode_series_csv(const ModeSeries& series, std::ostream& out);

/// "d,sigma,stable,smallest_unstable_k".
void write_region_csv(const RegionScan& scan, std::ostream& out);

/// Two-column polyline with the given header.
void write_polyline_csv(std::span<const std::array<double, 2>> points, const char* header,
                        std::ostream& out);

}  // namespace morphosim
