#pragma once

// CSV and JSON emitters. CSV: header row, '.' decimal separator, '\n' line
// endings, shortest round-trip number formatting. JSON documents are
// returned as pretty-printed strings with a trailing newline; non-finite
// numbers are written as null.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wlab/covering.hpp"
#include "wlab/dimension.hpp"
#include "wlab/occupation.hpp"
#include "wlab/series.hpp"

namespace wlab {

/// Shortest representation that reads back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

void write_graph_csv(std::ostream& os, const GraphSample& sample);
/// Columns eps, count; count is the mean over replicates (all share the scales).
void write_box_counts_csv(std::ostream& os, std::span<const DimensionEstimate> replicates);
void write_energy_scan_csv(std::ostream& os, std::span<const EnergyScanRow> rows);
void write_density_csv(std::ostream& os, const OccupationDensity& density);
void write_fourier_csv(std::ostream& os, const FourierProfile& profile);
/// Columns n, measure.
void write_measures_csv(std::ostream& os, std::span<const double> measures);
/// Rows n0, columns n1 = 0..n_max; entry L(B_{n0,n1}).
void write_pair_matrix_csv(std::ostream& os, const BSetsResult& result);
void write_partial_sums_csv(std::ostream& os, const BSetsResult& result);
void write_cover_profile_csv(std::ostream& os, std::span<const CoverPoint> profile);

std::string spec_json(const FunctionSpec& spec);
/// Spec, seed, truncation metadata and the samples.
std::string graph_json(const FunctionSpec& spec, const GraphSample& sample, std::uint64_t seed);
/// Mean slope over replicates plus each replicate's fit and counts.
std::string dimension_json(std::span<const DimensionEstimate> replicates, std::span<const std::uint64_t> seeds);
std::string energy_scan_json(std::span<const EnergyScanRow> rows);
std::string density_json(const OccupationDensity& density);
std::string parseval_json(const ParsevalReport& report);
std::string fact31_json(const Fact31Report& report);
std::string b_sets_json(const BSetsResult& result);
std::string measures_json(std::span<const double> measures, const DecayFit& fit);

}  // namespace wlab
