#ifndef RADARGAIT_IO_HPP
#define RADARGAIT_IO_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radargait/types.hpp"

namespace radargait {

enum class LogFormat { kJsonl, kCsv };

// Per-track ground truth and grouping metadata from the sidecar manifest.
struct TrackMeta {
  std::string subject_id;
  std::string recording_id;
  std::optional<double> height_m;
  std::optional<MotionClass> motion;
};

using Manifest = std::map<std::string, TrackMeta>;  // keyed by track id

struct IngestResult {
  std::vector<RadarTarget> targets;
  std::size_t rejected_records = 0;
  std::vector<std::string> diagnostics;  // one line per rejected record kind
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Reads a target log. Records are either Cartesian {t, track, x, y, v} or
// polar {t, track, r, phi, sx, sy, syaw, v}; polar records are converted
// to the earth-fixed frame immediately. Lenient mode skips and counts
// malformed records, strict mode throws DataError on the first one.
IngestResult ingest_targets(const std::string& path, LogFormat format,
                            bool strict = false);

void write_targets(const std::string& path, LogFormat format,
                   const std::vector<RadarTarget>& targets);

Manifest read_manifest(const std::string& path);
void write_manifest(const std::string& path, const Manifest& manifest);

// Groups a mixed stream by track id, preserving encounter order of tracks.
std::vector<std::pair<std::string, std::vector<RadarTarget>>> group_by_track(
    const std::vector<RadarTarget>& targets);

}  // namespace radargait

#endif  // RADARGAIT_IO_HPP
