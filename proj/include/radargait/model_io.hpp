#ifndef RADARGAIT_MODEL_IO_HPP
#define RADARGAIT_MODEL_IO_HPP

#include <stdexcept>
#include <string>

#include "radargait/pipeline.hpp"

namespace radargait {

inline constexpr int kModelFormatVersion = 1;

// Raised on magic/version mismatch or a structurally broken model file;
// the CLI maps it to its own exit code. A wrong version is never
// silently reinterpreted.
class ModelFormatError : public std::runtime_error {
 public:
  explicit ModelFormatError(const std::string& what)
      : std::runtime_error(what) {}
};

// Self-describing model file: magic "GRDM", version, a canonical JSON
// header (config snapshot, feature schema, section table) and raw
// little-endian f64 sections for atoms and tree nodes. Numerics stay
// exact; loading requires no external configuration.
void save_height_model(const HeightModel& model, const std::string& path);
HeightModel load_height_model(const std::string& path);

void save_motion_model(const MotionModel& model, const std::string& path);
MotionModel load_motion_model(const std::string& path);

// Peeks at the bundle kind ("height" or "motion") without loading it.
std::string model_kind(const std::string& path);

// Config snapshot serialization, shared with the CLI --config flag.
std::string pipeline_config_to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const std::string& text);

}  // namespace radargait

#endif  // RADARGAIT_MODEL_IO_HPP
