#include "volfield/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

namespace volfield {

using nlohmann::json;

double round_sig(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

namespace {

json zeta_json(const ZetaSpec& z) {
  json fourier = json::array();
  for (const auto& [c, s] : z.fourier) fourier.push_back({c, s});
  return {{"k", z.winding}, {"phi0", z.phi0}, {"fourier", fourier}};
}

ZetaSpec zeta_from(const json& doc) {
  ZetaSpec z;
  z.winding = doc.value("k", 0);
  z.phi0 = doc.value("phi0", 0.0);
  if (doc.contains("fourier")) {
    for (const auto& pair : doc.at("fourier")) {
      if (!pair.is_array() || pair.size() != 2)
        throw DomainError("fourier entries must be [c, s] pairs");
      z.fourier.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return z;
}

}  // namespace

json field_to_json(const AngleField& field) {
  json doc;
  doc["schema"] = kFieldSchema;
  switch (field.family()) {
    case FieldFamily::meridian: {
      doc["family"] = "meridian";
      doc.update(zeta_json(*field.as_meridian()));
      break;
    }
    case FieldFamily::latitude: {
      doc["family"] = "latitude";
      doc["phi0"] = field.as_latitude()->phi0;
      break;
    }
    case FieldFamily::ttype: {
      const TTypeSpec& t = *field.as_ttype();
      doc["family"] = "ttype";
      doc["T"] = {t.t_theta, t.t_phi};
      doc.update(zeta_json(t.initial));
      break;
    }
    default:
      throw DomainError("grid fields serialize through the VFGRID01 binary");
  }
  return doc;
}

AngleField field_from_json(const json& doc) {
  if (doc.value("schema", "") != kFieldSchema)
    throw DomainError("unsupported field schema; expected volfield-spec/1");
  const std::string family = doc.value("family", "");
  if (family == "meridian") return AngleField::meridian(zeta_from(doc));
  if (family == "latitude") {
    LatitudeSpec spec;
    spec.phi0 = doc.value("phi0", 0.0);
    return AngleField::latitude(spec);
  }
  if (family == "ttype") {
    TTypeSpec spec;
    const auto& t = doc.at("T");
    if (!t.is_array() || t.size() != 2) throw DomainError("T must be [a, b]");
    spec.t_theta = t[0].get<double>();
    spec.t_phi = t[1].get<double>();
    spec.initial = zeta_from(doc);
    return AngleField::ttype(spec);
  }
  throw DomainError("unknown field family: " + family);
}

namespace {

json region_json(const DomainRegion& region, int digits) {
  json doc;
  switch (region.kind()) {
    case DomainRegion::Kind::full:
      doc["kind"] = "full";
      break;
    case DomainRegion::Kind::rectangle:
      doc["kind"] = "rectangle";
      doc["theta"] = {round_sig(region.theta_lo(), digits),
                      round_sig(region.theta_hi(), digits)};
      doc["phi"] = {round_sig(region.phi_lo(), digits),
                    round_sig(region.phi_hi(), digits)};
      break;
    case DomainRegion::Kind::predicate:
      doc["kind"] = "predicate";
      doc["name"] = region.name();
      break;
  }
  return doc;
}

}  // namespace

json volume_to_json(const VolumeResult& result, int digits) {
  json doc;
  doc["region"] = region_json(result.region, digits);
  doc["value"] = round_sig(result.value, digits);
  doc["error"] = round_sig(result.error_estimate, 3);
  doc["radius"] = round_sig(result.radius, digits);
  return doc;
}

json residuals_to_json(const ResidualReport& report, int digits) {
  json doc;
  doc["grid"] = {{"n_theta", report.grid.n_theta},
                 {"n_phi", report.grid.n_phi},
                 {"theta_margin", round_sig(report.grid.theta_margin, digits)},
                 {"slit", report.slit}};
  doc["radius"] = round_sig(report.radius, digits);
  doc["fd_step"] = round_sig(report.fd_step, digits);
  doc["sup"] = {{"cr", round_sig(report.sup_cr, digits)},
                {"el", round_sig(report.sup_el, digits)},
                {"realpart", round_sig(report.sup_realpart, digits)}};
  doc["argmax"] = {
      {"cr", {round_sig(report.argmax_cr.theta, digits), round_sig(report.argmax_cr.phi, digits)}},
      {"el", {round_sig(report.argmax_el.theta, digits), round_sig(report.argmax_el.phi, digits)}},
      {"realpart",
       {round_sig(report.argmax_realpart.theta, digits),
        round_sig(report.argmax_realpart.phi, digits)}}};
  return doc;
}

json index_to_json(const IndexReport& report) {
  json windings = json::array();
  for (const auto& [theta, w] : report.winding_samples)
    windings.push_back({round_sig(theta, 12), round_sig(w, 12)});
  return {{"index_N", report.index_north},
          {"index_S", report.index_south},
          {"sum", report.euler_sum},
          {"convention",
           report.convention == IndexConvention::standard ? "standard" : "flipped"},
          {"windings", windings}};
}

json omega_to_json(const OmegaComparison& cmp, int digits) {
  return {{"vol_latitude", round_sig(cmp.vol_latitude, digits)},
          {"vol_latitude_error", round_sig(cmp.vol_latitude_error, 3)},
          {"euclidean_area", round_sig(cmp.euclidean_area, digits)},
          {"area_error", round_sig(cmp.area_error, 3)},
          {"margin", round_sig(cmp.margin, digits)},
          {"strict", cmp.strict}};
}

void residuals_to_csv(const ResidualReport& report, std::ostream& out) {
  out << "theta,phi,cr_re,cr_im,el,realpart\n";
  char line[256];
  for (const ResidualSample& s : report.samples) {
    std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  s.theta, s.phi, s.cr.real(), s.cr.imag(), s.el, s.realpart);
    out << line;
  }
}

void trace_to_csv(const OptimizationTrace& trace, std::ostream& out) {
  out << "iteration,objective\n";
  char line[80];
  for (std::size_t i = 0; i < trace.objectives.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.12g\n", i, trace.objectives[i]);
    out << line;
  }
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char bytes[4] = {static_cast<unsigned char>(v & 0xff),
                            static_cast<unsigned char>((v >> 8) & 0xff),
                            static_cast<unsigned char>((v >> 16) & 0xff),
                            static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_f64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void grid_to_binary(const GridField& field, std::ostream& out) {
  out.write("VFGRID01", 8);
  put_u32(out, static_cast<std::uint32_t>(field.n_theta));
  put_u32(out, static_cast<std::uint32_t>(field.n_phi + 1));
  for (int i = 0; i < field.n_theta; ++i) {
    for (int j = 0; j < field.n_phi; ++j) put_f64(out, field.at(i, j));
    put_f64(out, field.at(i, 0) + kTwoPi * field.winding);
  }
  put_f64(out, field.theta_min);
  put_f64(out, field.theta_max);
}

GridField grid_from_binary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "VFGRID01", 8) != 0)
    throw DomainError("not a VFGRID01 stream");
  const std::uint32_t n_theta = get_u32(in);
  const std::uint32_t n_cols = get_u32(in);
  if (!in || n_theta < 2 || n_cols < 5)
    throw DomainError("VFGRID01 header has degenerate dimensions");

  std::vector<double> raw(static_cast<std::size_t>(n_theta) * n_cols);
  for (double& v : raw) v = get_f64(in);
  const double theta_min = get_f64(in);
  const double theta_max = get_f64(in);
  if (!in) throw DomainError("truncated VFGRID01 stream");

  const double closure = raw[n_cols - 1] - raw[0];
  const int k = static_cast<int>(std::lround(closure / kTwoPi));
  if (std::fabs(closure - kTwoPi * k) > 1e-9)
    throw DomainError("VFGRID01 wrap column is not a 2 pi multiple of the first");

  GridField field(static_cast<int>(n_theta), static_cast<int>(n_cols) - 1, k,
                  theta_min, theta_max);
  for (std::uint32_t i = 0; i < n_theta; ++i) {
    const double row_closure =
        raw[static_cast<std::size_t>(i) * n_cols + n_cols - 1] -
        raw[static_cast<std::size_t>(i) * n_cols];
    if (std::fabs(row_closure - kTwoPi * k) > 1e-9)
      throw DomainError("VFGRID01 winding closure differs between rows");
    for (std::uint32_t j = 0; j + 1 < n_cols; ++j)
      field.at(static_cast<int>(i), static_cast<int>(j)) =
          raw[static_cast<std::size_t>(i) * n_cols + j];
  }
  return field;
}

void grid_to_binary_file(const GridField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConvergenceError("cannot open " + path + " for writing");
  grid_to_binary(field, out);
}

GridField grid_from_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConvergenceError("cannot open " + path);
  return grid_from_binary(in);
}

}  // namespace volfield
