#include "veo/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "veo/constants.hpp"
#include "veo/errors.hpp"

namespace veo {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& what) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double out = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw numeric_error(what + ": not a number: '" + s + "'");
  return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw numeric_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw numeric_error("cannot open '" + path + "' for reading");
  return in;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r')
    cells.back().pop_back();
  return cells;
}

// Reads a CSV body after validating the exact header line.
std::vector<std::vector<std::string>> read_rows(const std::string& path,
                                                const std::string& header,
                                                std::size_t n_cols) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw numeric_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header)
    throw numeric_error(path + ": unexpected header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_row(line);
    if (cells.size() != n_cols)
      throw numeric_error(path + ": row with " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(n_cols));
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

void write_optics_csv(const std::string& path, const OpticsTable& t) {
  auto out = open_out(path);
  out << "omega_hz,n_real,n_imag,alpha_per_m,t_field,l_coh_m,r_abs,r_arg\n";
  for (std::size_t i = 0; i < t.omega_hz.size(); ++i) {
    out << format_double(t.omega_hz[i]) << ',' << format_double(t.n_real[i])
        << ',' << format_double(t.n_imag[i]) << ','
        << format_double(t.alpha_per_m[i]) << ','
        << format_double(t.t_field[i]) << ',' << format_double(t.l_coh_m[i])
        << ',' << format_double(t.r_abs[i]) << ','
        << format_double(t.r_arg[i]) << '\n';
  }
}

OpticsTable read_optics_csv(const std::string& path) {
  const auto rows = read_rows(
      path, "omega_hz,n_real,n_imag,alpha_per_m,t_field,l_coh_m,r_abs,r_arg",
      8);
  OpticsTable t;
  for (const auto& r : rows) {
    t.omega_hz.push_back(parse_double(r[0], path));
    t.n_real.push_back(parse_double(r[1], path));
    t.n_imag.push_back(parse_double(r[2], path));
    t.alpha_per_m.push_back(parse_double(r[3], path));
    t.t_field.push_back(parse_double(r[4], path));
    t.l_coh_m.push_back(parse_double(r[5], path));
    t.r_abs.push_back(parse_double(r[6], path));
    t.r_arg.push_back(parse_double(r[7], path));
  }
  return t;
}

void write_trace_csv(const std::string& path, const CorrelationTrace& trace) {
  auto out = open_out(path);
  out << "tau_s,delta_x_m,g1_v2_per_m2\n";
  for (std::size_t i = 0; i < trace.tau.size(); ++i)
    out << format_double(trace.tau[i]) << ','
        << format_double(trace.delta_x) << ','
        << format_double(trace.value[i]) << '\n';
}

CorrelationTrace read_trace_csv(const std::string& path) {
  const auto rows = read_rows(path, "tau_s,delta_x_m,g1_v2_per_m2", 3);
  CorrelationTrace trace;
  for (const auto& r : rows) {
    trace.tau.push_back(parse_double(r[0], path));
    trace.delta_x = parse_double(r[1], path);
    trace.value.push_back(parse_double(r[2], path));
  }
  return trace;
}

// Spectrum/PhotonExtraction carry omega in rad/s; the files use Hz, so the
// 2*pi conversion happens here (round trips agree to one ulp, not bitwise).
void write_spectrum_csv(const std::string& path, const Spectrum& spec) {
  auto out = open_out(path);
  out << "omega_hz,psd\n";
  for (std::size_t i = 0; i < spec.omega.size(); ++i)
    out << format_double(spec.omega[i] / (2.0 * k_pi)) << ','
        << format_double(spec.psd[i]) << '\n';
}

Spectrum read_spectrum_csv(const std::string& path) {
  const auto rows = read_rows(path, "omega_hz,psd", 2);
  Spectrum spec;
  for (const auto& r : rows) {
    spec.omega.push_back(parse_double(r[0], path) * 2.0 * k_pi);
    spec.psd.push_back(parse_double(r[1], path));
  }
  return spec;
}

void write_photons_csv(const std::string& path, const PhotonExtraction& ext) {
  auto out = open_out(path);
  out << "omega_hz,n_mean,valid\n";
  for (std::size_t i = 0; i < ext.omega.size(); ++i) {
    out << format_double(ext.omega[i] / (2.0 * k_pi)) << ',';
    if (ext.valid[i]) out << format_double(ext.n_mean[i]);
    out << ',' << (ext.valid[i] ? '1' : '0') << '\n';
  }
}

PhotonExtraction read_photons_csv(const std::string& path) {
  const auto rows = read_rows(path, "omega_hz,n_mean,valid", 3);
  PhotonExtraction ext;
  for (const auto& r : rows) {
    ext.omega.push_back(parse_double(r[0], path) * 2.0 * k_pi);
    const bool valid = r[2] == "1";
    if (!valid && r[2] != "0")
      throw numeric_error(path + ": valid cell must be 0 or 1");
    ext.valid.push_back(valid ? 1 : 0);
    ext.n_mean.push_back(valid ? parse_double(r[1], path)
                               : std::numeric_limits<double>::quiet_NaN());
    if (!valid && !r[1].empty())
      throw numeric_error(path + ": invalid bin must leave n_mean empty");
  }
  return ext;
}

void write_record_csv(const std::string& path, const PulseTrainRecord& rec) {
  auto out = open_out(path);
  out << "pulse_index,ch1,ch2\n";
  for (std::size_t i = 0; i < rec.ch1.size(); ++i)
    out << i << ',' << format_double(rec.ch1[i]) << ','
        << format_double(rec.ch2[i]) << '\n';
}

PulseTrainRecord read_record_csv(const std::string& path, double f_rep) {
  const auto rows = read_rows(path, "pulse_index,ch1,ch2", 3);
  PulseTrainRecord rec;
  rec.f_rep = f_rep;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::uint64_t idx = 0;
    const char* begin = r[0].data();
    const char* end = begin + r[0].size();
    const auto res = std::from_chars(begin, end, idx);
    if (res.ec != std::errc{} || res.ptr != end || idx != i)
      throw numeric_error(path + ": pulse_index must count 0,1,2,...");
    rec.ch1.push_back(parse_double(r[1], path));
    rec.ch2.push_back(parse_double(r[2], path));
  }
  return rec;
}

void write_allan_csv(const std::string& path, const AllanCurve& curve) {
  auto out = open_out(path);
  out << "gate_s,adev\n";
  for (std::size_t i = 0; i < curve.gate_times.size(); ++i)
    out << format_double(curve.gate_times[i]) << ','
        << format_double(curve.deviations[i]) << '\n';
}

AllanCurve read_allan_csv(const std::string& path) {
  const auto rows = read_rows(path, "gate_s,adev", 2);
  AllanCurve curve;
  for (const auto& r : rows) {
    curve.gate_times.push_back(parse_double(r[0], path));
    curve.deviations.push_back(parse_double(r[1], path));
  }
  return curve;
}

void write_spatial_csv(const std::string& path, const SpatialTable& table) {
  auto out = open_out(path);
  out << "delta_x_m,g1_pp\n";
  for (std::size_t i = 0; i < table.delta_x_m.size(); ++i)
    out << format_double(table.delta_x_m[i]) << ','
        << format_double(table.g1_pp[i]) << '\n';
}

SpatialTable read_spatial_csv(const std::string& path) {
  const auto rows = read_rows(path, "delta_x_m,g1_pp", 2);
  SpatialTable table;
  for (const auto& r : rows) {
    table.delta_x_m.push_back(parse_double(r[0], path));
    table.g1_pp.push_back(parse_double(r[1], path));
  }
  return table;
}

}  // namespace veo
