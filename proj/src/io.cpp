#include "radargait/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace radargait {

namespace {

using nlohmann::json;

// Converts one parsed record to a target; polar records carry the sensor
// pose and are transformed on the spot.
std::optional<RadarTarget> record_to_target(const json& j, std::string* error) {
  RadarTarget rt;
  if (!j.contains("t") || !j.contains("track") || !j.contains("v")) {
    *error = "missing t/track/v";
    return std::nullopt;
  }
  if (!j["t"].is_number() || !j["v"].is_number()) {
    *error = "t/v not numeric";
    return std::nullopt;
  }
  rt.t = j["t"].get<double>();
  rt.v = j["v"].get<double>();
  rt.track_id = j["track"].is_string() ? j["track"].get<std::string>()
                                       : j["track"].dump();

  if (j.contains("x") && j.contains("y")) {
    rt.x = j["x"].get<double>();
    rt.y = j["y"].get<double>();
  } else if (j.contains("r") && j.contains("phi") && j.contains("sx") &&
             j.contains("sy") && j.contains("syaw")) {
    const double r = j["r"].get<double>();
    const double phi = j["phi"].get<double>();
    const double yaw = j["syaw"].get<double>();
    rt.x = j["sx"].get<double>() + r * std::cos(yaw + phi);
    rt.y = j["sy"].get<double>() + r * std::sin(yaw + phi);
  } else {
    *error = "record is neither cartesian nor polar";
    return std::nullopt;
  }

  if (!target_fields_valid(rt)) {
    *error = "non-finite or out-of-bound field";
    return std::nullopt;
  }
  return rt;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

json csv_record(const std::vector<std::string>& header,
                const std::vector<std::string>& cells) {
  json j;
  for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) {
    if (header[i] == "track") {
      j["track"] = cells[i];
    } else {
      try {
        j[header[i]] = std::stod(cells[i]);
      } catch (...) {
        j[header[i]] = cells[i];
      }
    }
  }
  return j;
}

}  // namespace

IngestResult ingest_targets(const std::string& path, LogFormat format,
                            bool strict) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open target log: " + path);

  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> csv_header;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;

    json record;
    std::string error;
    if (format == LogFormat::kJsonl) {
      try {
        record = json::parse(line);
      } catch (const json::exception&) {
        error = "invalid JSON";
      }
    } else {
      const auto cells = split_csv_line(line);
      if (csv_header.empty()) {
        csv_header = cells;
        continue;
      }
      record = csv_record(csv_header, cells);
    }

    std::optional<RadarTarget> rt;
    if (error.empty()) rt = record_to_target(record, &error);
    if (!rt) {
      if (strict) {
        throw DataError("line " + std::to_string(line_no) + ": " + error);
      }
      ++result.rejected_records;
      if (result.diagnostics.size() < 20) {
        result.diagnostics.push_back("line " + std::to_string(line_no) + ": " +
                                     error);
      }
      continue;
    }
    result.targets.push_back(std::move(*rt));
  }
  return result;
}

void write_targets(const std::string& path, LogFormat format,
                   const std::vector<RadarTarget>& targets) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write target log: " + path);
  if (format == LogFormat::kCsv) {
    out << "t,track,x,y,v\n";
    for (const auto& rt : targets) {
      json jt = rt.t, jx = rt.x, jy = rt.y, jv = rt.v;
      out << jt.dump() << "," << rt.track_id << "," << jx.dump() << ","
          << jy.dump() << "," << jv.dump() << "\n";
    }
    return;
  }
  for (const auto& rt : targets) {
    json j;
    j["t"] = rt.t;
    j["track"] = rt.track_id;
    j["x"] = rt.x;
    j["y"] = rt.y;
    j["v"] = rt.v;
    out << j.dump() << "\n";
  }
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("manifest is not valid JSON: " + std::string(e.what()));
  }
  Manifest manifest;
  if (!j.contains("tracks") || !j["tracks"].is_object()) {
    throw DataError("manifest has no tracks object");
  }
  for (const auto& [track_id, meta] : j["tracks"].items()) {
    TrackMeta tm;
    tm.subject_id = meta.value("subject_id", std::string());
    tm.recording_id = meta.value("recording_id", std::string());
    if (meta.contains("height")) tm.height_m = meta["height"].get<double>();
    if (meta.contains("motion")) {
      const auto cls = motion_class_from_name(meta["motion"].get<std::string>());
      if (!cls) {
        throw DataError("manifest has unknown motion class for track " + track_id);
      }
      tm.motion = cls;
    }
    manifest[track_id] = std::move(tm);
  }
  return manifest;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  json tracks = json::object();
  for (const auto& [track_id, tm] : manifest) {
    json meta;
    meta["subject_id"] = tm.subject_id;
    meta["recording_id"] = tm.recording_id;
    if (tm.height_m) meta["height"] = *tm.height_m;
    if (tm.motion) meta["motion"] = motion_class_name(*tm.motion);
    tracks[track_id] = meta;
  }
  json j;
  j["tracks"] = tracks;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

std::vector<std::pair<std::string, std::vector<RadarTarget>>> group_by_track(
    const std::vector<RadarTarget>& targets) {
  std::vector<std::pair<std::string, std::vector<RadarTarget>>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& rt : targets) {
    auto it = index.find(rt.track_id);
    if (it == index.end()) {
      index[rt.track_id] = groups.size();
      groups.emplace_back(rt.track_id, std::vector<RadarTarget>{rt});
    } else {
      groups[it->second].second.push_back(rt);
    }
  }
  return groups;
}

}  // namespace radargait
