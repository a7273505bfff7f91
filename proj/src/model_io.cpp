#include "radargait/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace radargait {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'G', 'R', 'D', 'M'};

void put_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64_le(std::string& out, double d) {
  put_u64_le(out, std::bit_cast<std::uint64_t>(d));
}

std::uint32_t get_u32_le(const std::string& in, std::size_t& pos) {
  if (pos + 4 > in.size()) throw ModelFormatError("model file truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(i)]))
         << (8 * i);
  }
  pos += 4;
  return v;
}

std::uint64_t get_u64_le(const std::string& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw ModelFormatError("model file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(i)]))
         << (8 * i);
  }
  pos += 8;
  return v;
}

double get_f64_le(const std::string& in, std::size_t& pos) {
  return std::bit_cast<double>(get_u64_le(in, pos));
}

// Sections are named runs of f64 values appended after the JSON header.
class SectionWriter {
 public:
  void add(const std::string& name, const std::vector<double>& values) {
    table_[name] = {offset_, values.size()};
    for (double v : values) put_f64_le(payload_, v);
    offset_ += values.size();
  }

  json table_json() const {
    json j = json::object();
    for (const auto& [name, entry] : table_) {
      j[name] = {{"offset", entry.first}, {"count", entry.second}};
    }
    return j;
  }

  const std::string& payload() const { return payload_; }

 private:
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> table_;
  std::string payload_;
  std::uint64_t offset_ = 0;  // in doubles
};

class SectionReader {
 public:
  SectionReader(const std::string& blob, std::size_t payload_start, const json& table)
      : blob_(blob), payload_start_(payload_start), table_(table) {}

  std::vector<double> read(const std::string& name) const {
    if (!table_.contains(name)) {
      throw ModelFormatError("missing model section: " + name);
    }
    const std::uint64_t offset = table_[name]["offset"].get<std::uint64_t>();
    const std::uint64_t count = table_[name]["count"].get<std::uint64_t>();
    std::size_t pos = payload_start_ + offset * 8;
    std::vector<double> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(get_f64_le(blob_, pos));
    return out;
  }

 private:
  const std::string& blob_;
  std::size_t payload_start_;
  json table_;
};

json forest_config_to_json(const ForestConfig& cfg) {
  return {{"tree_count", cfg.tree_count},
          {"max_depth", cfg.max_depth},
          {"min_samples_split", cfg.min_samples_split},
          {"max_features", cfg.max_features}};
}

ForestConfig forest_config_from_json(const json& j) {
  ForestConfig cfg;
  cfg.tree_count = j.at("tree_count").get<std::size_t>();
  cfg.max_depth = j.at("max_depth").get<std::size_t>();
  cfg.min_samples_split = j.at("min_samples_split").get<std::size_t>();
  cfg.max_features = j.at("max_features").get<std::size_t>();
  return cfg;
}

// Flat node encoding: [feature, threshold, left, right, value, dist...].
std::vector<double> tree_to_values(const DecisionTree& tree, std::size_t n_classes) {
  const std::size_t stride = 5 + n_classes;
  std::vector<double> out;
  out.reserve(tree.nodes.size() * stride);
  for (const auto& node : tree.nodes) {
    out.push_back(static_cast<double>(node.feature));
    out.push_back(node.threshold);
    out.push_back(static_cast<double>(node.left));
    out.push_back(static_cast<double>(node.right));
    out.push_back(node.value);
    for (std::size_t c = 0; c < n_classes; ++c) {
      out.push_back(node.is_leaf() && c < node.class_dist.size()
                        ? node.class_dist[c]
                        : 0.0);
    }
  }
  return out;
}

DecisionTree tree_from_values(const std::vector<double>& values,
                              std::size_t n_classes) {
  const std::size_t stride = 5 + n_classes;
  if (stride == 0 || values.size() % stride != 0) {
    throw ModelFormatError("tree section has unexpected length");
  }
  DecisionTree tree;
  tree.nodes.resize(values.size() / stride);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const double* p = values.data() + i * stride;
    TreeNode& node = tree.nodes[i];
    node.feature = static_cast<int>(p[0]);
    node.threshold = p[1];
    node.left = static_cast<int>(p[2]);
    node.right = static_cast<int>(p[3]);
    node.value = p[4];
    if (node.is_leaf() && n_classes > 0) {
      node.class_dist.assign(p + 5, p + 5 + n_classes);
    }
  }
  return tree;
}

json forest_to_json(const RandomForest& forest, SectionWriter& sections,
                    const std::string& prefix) {
  json j;
  j["task"] = forest.task == ForestTask::kRegression ? "regression"
                                                     : "classification";
  j["n_features"] = forest.n_features;
  j["n_classes"] = forest.n_classes;
  j["seed"] = forest.seed;
  j["tree_count"] = forest.trees.size();
  sections.add(prefix + "/importances", forest.feature_importances);
  const std::size_t n_classes =
      forest.task == ForestTask::kClassification ? forest.n_classes : 0;
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    sections.add(prefix + "/tree/" + std::to_string(t),
                 tree_to_values(forest.trees[t], n_classes));
  }
  return j;
}

RandomForest forest_from_json(const json& j, const SectionReader& sections,
                              const std::string& prefix) {
  RandomForest forest;
  forest.task = j.at("task").get<std::string>() == "regression"
                    ? ForestTask::kRegression
                    : ForestTask::kClassification;
  forest.n_features = j.at("n_features").get<std::size_t>();
  forest.n_classes = j.at("n_classes").get<std::size_t>();
  forest.seed = j.at("seed").get<std::uint64_t>();
  forest.feature_importances = sections.read(prefix + "/importances");
  const std::size_t tree_count = j.at("tree_count").get<std::size_t>();
  const std::size_t n_classes =
      forest.task == ForestTask::kClassification ? forest.n_classes : 0;
  forest.trees.reserve(tree_count);
  for (std::size_t t = 0; t < tree_count; ++t) {
    forest.trees.push_back(tree_from_values(
        sections.read(prefix + "/tree/" + std::to_string(t)), n_classes));
  }
  return forest;
}

std::string assemble_bundle(const json& header, const SectionWriter& sections) {
  json full = header;
  full["sections"] = sections.table_json();
  const std::string header_text = full.dump();

  std::string out;
  out.append(kMagic, 4);
  put_u32_le(out, kModelFormatVersion);
  put_u64_le(out, header_text.size());
  out += header_text;
  out += sections.payload();
  return out;
}

struct ParsedBundle {
  json header;
  std::string blob;
  std::size_t payload_start = 0;
};

ParsedBundle read_bundle(const std::string& path, const std::string& expect_kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ParsedBundle bundle;
  bundle.blob = buf.str();

  if (bundle.blob.size() < 16 || std::memcmp(bundle.blob.data(), kMagic, 4) != 0) {
    throw ModelFormatError("not a model bundle (bad magic)");
  }
  std::size_t pos = 4;
  const std::uint32_t version = get_u32_le(bundle.blob, pos);
  if (version != kModelFormatVersion) {
    throw ModelFormatError("unsupported model format version " +
                           std::to_string(version));
  }
  const std::uint64_t header_len = get_u64_le(bundle.blob, pos);
  if (pos + header_len > bundle.blob.size()) {
    throw ModelFormatError("model file truncated");
  }
  try {
    bundle.header = json::parse(bundle.blob.substr(pos, header_len));
  } catch (const json::exception&) {
    throw ModelFormatError("model header is not valid JSON");
  }
  bundle.payload_start = pos + header_len;
  if (!expect_kind.empty() &&
      bundle.header.value("kind", std::string()) != expect_kind) {
    throw ModelFormatError("model bundle is not a " + expect_kind + " model");
  }
  return bundle;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

json config_to_json_obj(const PipelineConfig& cfg) {
  json j;
  j["window_s"] = cfg.window_s;
  j["hop_s"] = cfg.hop_s;
  j["min_targets"] = cfg.min_targets;
  j["ransac"] = {{"iterations", cfg.ransac.iterations},
                 {"inlier_band_m", cfg.ransac.inlier_band_m},
                 {"min_inliers_floor", cfg.ransac.min_inliers_floor},
                 {"min_inliers_ratio", cfg.ransac.min_inliers_ratio},
                 {"min_speed_mps", cfg.ransac.min_speed_mps}};
  j["resample"] = {{"delta_d", cfg.resample.delta_d},
                   {"sigma", cfg.resample.sigma}};
  j["pad_to"] = cfg.pad_to;
  j["stride"] = {{"f_min", cfg.stride.band.f_min},
                 {"f_max", cfg.stride.band.f_max},
                 {"parabolic_refinement", cfg.stride.parabolic_refinement}};
  j["grid"] = {{"rows", cfg.grid.rows},
               {"cols", cfg.grid.cols},
               {"cell_d", cfg.grid.cell_d},
               {"cell_n", cfg.grid.cell_n},
               {"smooth_sigma", cfg.grid.smooth_sigma},
               {"w_min", cfg.grid.w_min}};
  j["hog_bins"] = cfg.hog_bins;
  j["dictionary"] = {{"atom_count", cfg.dictionary.atom_count},
                     {"lambda", cfg.dictionary.lambda},
                     {"epochs", cfg.dictionary.epochs}};
  j["include_dict_errors"] = cfg.include_dict_errors;
  return j;
}

PipelineConfig config_from_json_obj(const json& j) {
  PipelineConfig cfg;
  cfg.window_s = j.value("window_s", cfg.window_s);
  cfg.hop_s = j.value("hop_s", cfg.hop_s);
  cfg.min_targets = j.value("min_targets", cfg.min_targets);
  if (j.contains("ransac")) {
    const auto& r = j["ransac"];
    cfg.ransac.iterations = r.value("iterations", cfg.ransac.iterations);
    cfg.ransac.inlier_band_m = r.value("inlier_band_m", cfg.ransac.inlier_band_m);
    cfg.ransac.min_inliers_floor =
        r.value("min_inliers_floor", cfg.ransac.min_inliers_floor);
    cfg.ransac.min_inliers_ratio =
        r.value("min_inliers_ratio", cfg.ransac.min_inliers_ratio);
    cfg.ransac.min_speed_mps = r.value("min_speed_mps", cfg.ransac.min_speed_mps);
  }
  if (j.contains("resample")) {
    cfg.resample.delta_d = j["resample"].value("delta_d", cfg.resample.delta_d);
    cfg.resample.sigma = j["resample"].value("sigma", cfg.resample.sigma);
  }
  cfg.pad_to = j.value("pad_to", cfg.pad_to);
  if (j.contains("stride")) {
    cfg.stride.band.f_min = j["stride"].value("f_min", cfg.stride.band.f_min);
    cfg.stride.band.f_max = j["stride"].value("f_max", cfg.stride.band.f_max);
    cfg.stride.parabolic_refinement =
        j["stride"].value("parabolic_refinement", cfg.stride.parabolic_refinement);
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    cfg.grid.rows = g.value("rows", cfg.grid.rows);
    cfg.grid.cols = g.value("cols", cfg.grid.cols);
    cfg.grid.cell_d = g.value("cell_d", cfg.grid.cell_d);
    cfg.grid.cell_n = g.value("cell_n", cfg.grid.cell_n);
    cfg.grid.smooth_sigma = g.value("smooth_sigma", cfg.grid.smooth_sigma);
    cfg.grid.w_min = g.value("w_min", cfg.grid.w_min);
  }
  cfg.hog_bins = j.value("hog_bins", cfg.hog_bins);
  if (j.contains("dictionary")) {
    const auto& d = j["dictionary"];
    cfg.dictionary.atom_count = d.value("atom_count", cfg.dictionary.atom_count);
    cfg.dictionary.lambda = d.value("lambda", cfg.dictionary.lambda);
    cfg.dictionary.epochs = d.value("epochs", cfg.dictionary.epochs);
  }
  cfg.include_dict_errors = j.value("include_dict_errors", cfg.include_dict_errors);
  return cfg;
}

}  // namespace

std::string pipeline_config_to_json(const PipelineConfig& cfg) {
  return config_to_json_obj(cfg).dump(2) + "\n";
}

PipelineConfig pipeline_config_from_json(const std::string& text) {
  return config_from_json_obj(json::parse(text));
}

void save_height_model(const HeightModel& model, const std::string& path) {
  SectionWriter sections;
  json header;
  header["kind"] = "height";
  header["format_version"] = kModelFormatVersion;
  header["config"] = config_to_json_obj(model.config);
  header["forest_config"] = forest_config_to_json(model.forest_config);
  header["forest"] = forest_to_json(model.forest, sections, "forest");
  header["feature_schema"] = HeightFeatures::names();
  write_file(path, assemble_bundle(header, sections));
}

HeightModel load_height_model(const std::string& path) {
  const ParsedBundle bundle = read_bundle(path, "height");
  SectionReader sections(bundle.blob, bundle.payload_start,
                         bundle.header.at("sections"));
  HeightModel model;
  model.config = config_from_json_obj(bundle.header.at("config"));
  model.forest_config = forest_config_from_json(bundle.header.at("forest_config"));
  model.forest = forest_from_json(bundle.header.at("forest"), sections, "forest");
  return model;
}

void save_motion_model(const MotionModel& model, const std::string& path) {
  SectionWriter sections;
  json header;
  header["kind"] = "motion";
  header["format_version"] = kModelFormatVersion;
  header["config"] = config_to_json_obj(model.config);
  header["forest_config"] = forest_config_to_json(model.forest_config);
  header["forest"] = forest_to_json(model.forest, sections, "forest");
  header["feature_schema"] =
      motion_feature_names(model.config.hog_bins, model.config.include_dict_errors);
  header["skipped_classes"] = model.skipped_classes;

  json dicts = json::array();
  for (const auto& d : model.dictionaries) {
    const std::string section =
        "dict/" + std::to_string(static_cast<int>(d.motion_class));
    dicts.push_back({{"class", static_cast<int>(d.motion_class)},
                     {"dim", d.dim},
                     {"atom_count", d.atom_count},
                     {"lambda", d.lambda},
                     {"section", section}});
    sections.add(section, d.atoms);
  }
  header["dictionaries"] = dicts;
  write_file(path, assemble_bundle(header, sections));
}

MotionModel load_motion_model(const std::string& path) {
  const ParsedBundle bundle = read_bundle(path, "motion");
  SectionReader sections(bundle.blob, bundle.payload_start,
                         bundle.header.at("sections"));
  MotionModel model;
  model.config = config_from_json_obj(bundle.header.at("config"));
  model.forest_config = forest_config_from_json(bundle.header.at("forest_config"));
  model.forest = forest_from_json(bundle.header.at("forest"), sections, "forest");
  if (bundle.header.contains("skipped_classes")) {
    model.skipped_classes =
        bundle.header["skipped_classes"].get<std::vector<std::string>>();
  }
  for (const auto& dj : bundle.header.at("dictionaries")) {
    ClassDictionary dict;
    dict.motion_class = static_cast<MotionClass>(dj.at("class").get<int>());
    dict.dim = dj.at("dim").get<std::size_t>();
    dict.atom_count = dj.at("atom_count").get<std::size_t>();
    dict.lambda = dj.at("lambda").get<double>();
    dict.atoms = sections.read(dj.at("section").get<std::string>());
    if (dict.atoms.size() != dict.dim * dict.atom_count) {
      throw ModelFormatError("dictionary section has unexpected length");
    }
    model.dictionaries.push_back(std::move(dict));
  }
  return model;
}

std::string model_kind(const std::string& path) {
  return read_bundle(path, "").header.value("kind", std::string());
}

}  // namespace radargait
