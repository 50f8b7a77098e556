#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "volfield/fields.hpp"
#include "volfield/first_order.hpp"
#include "volfield/minimize.hpp"
#include "volfield/topology.hpp"
#include "volfield/volume.hpp"

namespace volfield {

// Field specs travel as the versioned "volfield-spec/1" JSON document:
//   {"schema": "volfield-spec/1", "family": "...", "k": int, "phi0": real,
//    "fourier": [[c, s], ...], "T": [a, b]}
// Grid fields use the VFGRID01 binary instead.
inline constexpr const char* kFieldSchema = "volfield-spec/1";

nlohmann::json field_to_json(const AngleField& field);
AngleField field_from_json(const nlohmann::json& doc);

// Rounds to the given significant digits through a shortest text round-trip,
// so serialized numbers are reproducible bit for bit.
double round_sig(double value, int digits);

nlohmann::json volume_to_json(const VolumeResult& result, int digits = 12);
nlohmann::json residuals_to_json(const ResidualReport& report, int digits = 12);
nlohmann::json index_to_json(const IndexReport& report);
nlohmann::json omega_to_json(const OmegaComparison& cmp, int digits = 12);

// One row per grid point: theta, phi, cr_re, cr_im, el, realpart.
void residuals_to_csv(const ResidualReport& report, std::ostream& out);

// One row per accepted step: iteration, objective.
void trace_to_csv(const OptimizationTrace& trace, std::ostream& out);

// Flat binary with a 16-byte header: magic "VFGRID01", then n_theta and
// n_phi_cols as little-endian uint32.  Payload is n_theta * n_phi_cols
// float64 little-endian angles, theta-major; the last column repeats the
// first plus 2 pi k, encoding the winding.  A 16-byte trailer stores
// theta_min and theta_max as float64.
void grid_to_binary(const GridField& field, std::ostream& out);
GridField grid_from_binary(std::istream& in);

void grid_to_binary_file(const GridField& field, const std::string& path);
GridField grid_from_binary_file(const std::string& path);

}  // namespace volfield
