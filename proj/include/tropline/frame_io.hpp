#pragma once

// Frame files (CSV point clouds with region tags) and verification reports
// (JSON). Floats are written with 17 significant digits through
// std::to_chars, so files are locale independent and round-trip bit exactly.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "tropline/sampling.hpp"
#include "tropline/verify.hpp"

namespace tropline {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrameRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  std::string major;
  std::string sub;
  std::string side;
};

inline constexpr const char* kFrameHeader = "t,x,y,phi,psi,major,sub,side";

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw io_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw io_error("parse_double: bad float field '" + s + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

/// Writes through a temp file and renames, so readers never see a torn file.
inline void write_atomically(const std::filesystem::path& path,
                             const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream) throw io_error("cannot open for writing: " + tmp.string());
    stream << contents;
    if (!stream) throw io_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("rename failed: " + path.string());
}

}  // namespace detail

inline std::string major_string(const MajorSet& m) {
  std::string out;
  const auto add = [&](bool flag, const char* tag) {
    if (!flag) return;
    if (!out.empty()) out += '|';
    out += tag;
  };
  add(m.h1, "h1");
  add(m.h2, "h2");
  add(m.h3, "h3");
  return out;
}

inline std::string sub_string(const SubSet& s) {
  std::string out;
  if (s.triangle) out += "tri";
  if (s.leg) {
    if (!out.empty()) out += '|';
    out += "leg";
  }
  return out;
}

inline std::string side_string(const SideSet& s) {
  std::string out;
  if (s.lower) out += "lo";
  if (s.upper) {
    if (!out.empty()) out += '|';
    out += "up";
  }
  return out;
}

inline std::vector<FrameRow> frame_rows(const SampleSet& samples, double t) {
  std::vector<FrameRow> rows;
  rows.reserve(samples.points.size());
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    const AmbientPoint& p = samples.points[i];
    const RegionTags& tags = samples.tags[i];
    rows.push_back(FrameRow{t, p.x, p.y, p.phi.radians(), p.psi.radians(),
                            major_string(tags.major), sub_string(tags.sub),
                            side_string(tags.side)});
  }
  return rows;
}

inline void write_frame_file(const std::filesystem::path& path,
                             const std::vector<FrameRow>& rows) {
  std::string contents(kFrameHeader);
  contents += '\n';
  for (const FrameRow& r : rows) {
    contents += detail::format_double(r.t);
    contents += ',';
    contents += detail::format_double(r.x);
    contents += ',';
    contents += detail::format_double(r.y);
    contents += ',';
    contents += detail::format_double(r.phi);
    contents += ',';
    contents += detail::format_double(r.psi);
    contents += ',';
    contents += r.major;
    contents += ',';
    contents += r.sub;
    contents += ',';
    contents += r.side;
    contents += '\n';
  }
  detail::write_atomically(path, contents);
}

inline std::vector<FrameRow> read_frame_file(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) throw io_error("cannot open frame file: " + path.string());
  std::string line;
  if (!std::getline(stream, line) || line != kFrameHeader) {
    throw io_error("bad frame file header in " + path.string());
  }
  std::vector<FrameRow> rows;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 8) {
      throw io_error("bad frame row in " + path.string() + ": " + line);
    }
    FrameRow r;
    r.t = detail::parse_double(fields[0]);
    r.x = detail::parse_double(fields[1]);
    r.y = detail::parse_double(fields[2]);
    r.phi = detail::parse_double(fields[3]);
    r.psi = detail::parse_double(fields[4]);
    r.major = fields[5];
    r.sub = fields[6];
    r.side = fields[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"sample_count", c.sample_count}});
  }
  return nlohmann::json{{"checks", checks}, {"overall", report.overall}};
}

inline void write_report_file(const std::filesystem::path& path,
                              const VerificationReport& report) {
  detail::write_atomically(path, report_to_json(report).dump(2) + "\n");
}

}  // namespace tropline
