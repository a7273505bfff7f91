// Command-line front end: simulation, feature extraction, training,
// prediction, evaluation and report rendering. Every subcommand takes
// --seed and is fully deterministic given it.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "radargait/eval.hpp"
#include "radargait/gait_sim.hpp"
#include "radargait/io.hpp"
#include "radargait/model_io.hpp"
#include "radargait/pipeline.hpp"

namespace rg = radargait;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitModel = 3;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string config_path;
  bool strict = false;
};

rg::PipelineConfig load_config(const CommonOptions& opts) {
  if (opts.config_path.empty()) return rg::PipelineConfig{};
  std::ifstream in(opts.config_path);
  if (!in) throw rg::DataError("cannot open config: " + opts.config_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return rg::pipeline_config_from_json(buf.str());
}

rg::LogFormat parse_format(const std::string& name) {
  if (name == "jsonl") return rg::LogFormat::kJsonl;
  if (name == "csv") return rg::LogFormat::kCsv;
  throw CLI::ValidationError("--format", "unknown format: " + name);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw rg::DataError("cannot write: " + path);
  out << content;
}

// One labeled window plus its extraction bookkeeping.
struct WindowRecord {
  rg::TargetWindow window;
  std::string track_id;
  std::size_t ordinal = 0;  // global deterministic index for seeding
};

std::vector<WindowRecord> load_windows(const std::string& log_path,
                                       rg::LogFormat format,
                                       const rg::Manifest* manifest,
                                       const rg::PipelineConfig& cfg,
                                       bool strict, std::ostream& diag) {
  const rg::IngestResult ingest = rg::ingest_targets(log_path, format, strict);
  if (ingest.rejected_records > 0) {
    diag << "ingest: rejected " << ingest.rejected_records << " record(s)\n";
  }
  auto tracks = rg::group_by_track(ingest.targets);
  std::sort(tracks.begin(), tracks.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<WindowRecord> records;
  std::size_t ordinal = 0;
  std::size_t dropped = 0;
  for (auto& [track_id, targets] : tracks) {
    rg::WindowingResult wr =
        rg::assemble_windows(targets, cfg.window_s, cfg.hop_s, cfg.min_targets);
    dropped += wr.dropped_windows;
    for (auto& w : wr.windows) {
      if (manifest) {
        auto it = manifest->find(track_id);
        if (it != manifest->end()) {
          w.label.subject_id = it->second.subject_id;
          w.label.recording_id = it->second.recording_id;
          w.label.height_m = it->second.height_m;
          w.label.motion = it->second.motion;
        }
      }
      records.push_back({std::move(w), track_id, ordinal++});
    }
  }
  if (dropped > 0) {
    diag << "windowing: dropped " << dropped << " sparse window(s)\n";
  }
  return records;
}

std::vector<std::string> class_names() {
  std::vector<std::string> names;
  for (int c = 0; c < rg::kNumMotionClasses; ++c) {
    names.push_back(rg::motion_class_name(static_cast<rg::MotionClass>(c)));
  }
  return names;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const CommonOptions& opts, const std::string& scenario_path,
                 const std::string& out_log, const std::string& out_manifest,
                 const std::string& format_name) {
  std::ifstream in(scenario_path);
  if (!in) throw rg::DataError("cannot open scenario: " + scenario_path);
  json scenario;
  try {
    in >> scenario;
  } catch (const json::exception& e) {
    throw rg::DataError("scenario is not valid JSON: " + std::string(e.what()));
  }

  rg::SimConfig sim;
  sim.duration_s = scenario.value("duration_s", sim.duration_s);
  sim.mean_dt_s = scenario.value("mean_dt_s", sim.mean_dt_s);
  sim.dt_jitter = scenario.value("dt_jitter", sim.dt_jitter);
  sim.position_noise_sigma =
      scenario.value("position_noise_sigma", sim.position_noise_sigma);
  sim.doppler_noise_sigma =
      scenario.value("doppler_noise_sigma", sim.doppler_noise_sigma);

  std::vector<rg::RadarTarget> all_targets;
  rg::Manifest manifest;
  std::size_t index = 0;
  for (const auto& sj : scenario.at("subjects")) {
    rg::SubjectSpec spec;
    spec.height_m = sj.value("height", spec.height_m);
    if (sj.contains("motion")) {
      const auto cls = rg::motion_class_from_name(sj["motion"].get<std::string>());
      if (!cls) throw rg::DataError("unknown motion class in scenario");
      spec.motion = *cls;
    }
    spec.speed_mps = sj.value("speed", spec.speed_mps);
    spec.heading_rad = sj.value("heading", spec.heading_rad);
    if (sj.contains("start")) {
      spec.start_x = sj["start"][0].get<double>();
      spec.start_y = sj["start"][1].get<double>();
    }
    spec.track_id = sj.value("track", "track-" + std::to_string(index));
    spec.subject_id = sj.value("subject_id", "subject-" + std::to_string(index));
    spec.recording_id = sj.value("recording_id", "rec-" + std::to_string(index));
    spec.seed = rg::derive_seed(opts.seed, 0x51300000ULL + index);

    const auto targets = rg::simulate(spec, sim);
    all_targets.insert(all_targets.end(), targets.begin(), targets.end());

    rg::TrackMeta meta;
    meta.subject_id = spec.subject_id;
    meta.recording_id = spec.recording_id;
    meta.height_m = spec.height_m;
    meta.motion = spec.motion;
    manifest[spec.track_id] = meta;
    ++index;
  }

  rg::write_targets(out_log, parse_format(format_name), all_targets);
  if (!out_manifest.empty()) rg::write_manifest(out_manifest, manifest);
  std::cout << "simulated " << index << " subject(s), " << all_targets.size()
            << " targets -> " << out_log << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- extract

int cmd_extract(const CommonOptions& opts, const std::string& log_path,
                const std::string& manifest_path, const std::string& task,
                const std::string& out_path, const std::string& format_name,
                const std::string& grid_dir) {
  const rg::PipelineConfig cfg = load_config(opts);
  std::optional<rg::Manifest> manifest;
  if (!manifest_path.empty()) manifest = rg::read_manifest(manifest_path);
  const auto records =
      load_windows(log_path, parse_format(format_name),
                   manifest ? &*manifest : nullptr, cfg, opts.strict, std::cerr);
  if (!grid_dir.empty()) std::filesystem::create_directories(grid_dir);

  std::ostringstream csv;
  if (task == "height") {
    csv << "track,window_start,subject_id,recording_id";
    for (const auto& name : rg::HeightFeatures::names()) csv << "," << name;
    csv << ",v_ped,l_s,low_confidence,height_label\n";
    for (const auto& r : records) {
      const auto ext =
          rg::extract_height(r.window, cfg, rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      csv << r.track_id << "," << r.window.start << ","
          << r.window.label.subject_id << "," << r.window.label.recording_id;
      for (double v : ext->features.values) csv << "," << v;
      csv << "," << ext->v_ped << "," << ext->l_s << ","
          << (ext->low_confidence ? 1 : 0) << ",";
      if (r.window.label.height_m) csv << *r.window.label.height_m;
      csv << "\n";
    }
  } else if (task == "motion") {
    csv << "track,window_start,subject_id,recording_id";
    // Dictionary features are model-dependent and appear only in trained
    // bundles; the table carries the model-free blocks.
    csv << ",mu2,mu3,mu4,abs_mu1";
    for (std::size_t b = 0; b < cfg.hog_bins; ++b) csv << ",hog_" << b;
    csv << ",motion_label\n";
    for (const auto& r : records) {
      const auto ext =
          rg::extract_motion(r.window, cfg, rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      csv << r.track_id << "," << r.window.start << ","
          << r.window.label.subject_id << "," << r.window.label.recording_id;
      csv << "," << ext->moments.mu2 << "," << ext->moments.mu3 << ","
          << ext->moments.mu4 << "," << ext->moments.abs_mu1;
      for (double b : ext->hog.bins) csv << "," << b;
      csv << ",";
      if (r.window.label.motion) csv << rg::motion_class_name(*r.window.label.motion);
      csv << "\n";
      if (!grid_dir.empty()) {
        // Visual debugging aid: the normalized deviation grid as PGM.
        const rg::LinearTrajectory traj =
            rg::fit_trajectory(r.window, cfg.ransac,
                               rg::window_seed(opts.seed, r.ordinal));
        const rg::DopplerGrid grid = rg::grid_transform(
            rg::frenet_transform(r.window, traj), traj.v_ped, cfg.grid);
        std::ostringstream name;
        name << r.track_id << "_" << std::fixed << std::setprecision(1)
             << r.window.start << ".pgm";
        write_text_file(
            (std::filesystem::path(grid_dir) / name.str()).string(),
            rg::grid_to_pgm(grid));
      }
    }
  } else {
    throw CLI::ValidationError("--task", "must be height or motion");
  }
  write_text_file(out_path, csv.str());
  std::cout << "features -> " << out_path << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- train

int cmd_train(const CommonOptions& opts, const std::string& log_path,
              const std::string& manifest_path, const std::string& task,
              const std::string& out_path, const std::string& format_name) {
  const rg::PipelineConfig cfg = load_config(opts);
  const rg::Manifest manifest = rg::read_manifest(manifest_path);
  const auto records = load_windows(log_path, parse_format(format_name),
                                    &manifest, cfg, opts.strict, std::cerr);

  if (task == "height") {
    std::vector<rg::HeightExtraction> samples;
    std::vector<double> heights;
    for (const auto& r : records) {
      if (!r.window.label.height_m) continue;
      const auto ext =
          rg::extract_height(r.window, cfg, rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      samples.push_back(*ext);
      heights.push_back(*r.window.label.height_m);
    }
    if (samples.size() < 2) throw rg::DataError("too few usable height windows");
    const rg::HeightModel model = rg::train_height_model(
        samples, heights, cfg, rg::regression_forest_defaults(),
        rg::derive_seed(opts.seed, 0x7e16e7ULL));
    rg::save_height_model(model, out_path);
    std::cout << "trained height model on " << samples.size() << " windows -> "
              << out_path << "\n";
    return kExitOk;
  }
  if (task == "motion") {
    std::vector<rg::MotionExtraction> samples;
    std::vector<rg::MotionClass> labels;
    for (const auto& r : records) {
      if (!r.window.label.motion) continue;
      const auto ext =
          rg::extract_motion(r.window, cfg, rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      samples.push_back(*ext);
      labels.push_back(*r.window.label.motion);
    }
    if (samples.size() < 2) throw rg::DataError("too few usable motion windows");
    const rg::MotionModel model = rg::train_motion_model(
        samples, labels, cfg, rg::classification_forest_defaults(),
        rg::derive_seed(opts.seed, 0x307107ULL));
    rg::save_motion_model(model, out_path);
    std::cout << "trained motion model on " << samples.size() << " windows -> "
              << out_path << "\n";
    return kExitOk;
  }
  throw CLI::ValidationError("--task", "must be height or motion");
}

// ----------------------------------------------------------------- predict

int cmd_predict(const CommonOptions& opts, const std::string& log_path,
                const std::string& model_path, const std::string& out_path,
                const std::string& format_name) {
  const std::string kind = rg::model_kind(model_path);
  std::ostringstream out;

  if (kind == "height") {
    const rg::HeightModel model = rg::load_height_model(model_path);
    const auto records = load_windows(log_path, parse_format(format_name),
                                      nullptr, model.config, opts.strict,
                                      std::cerr);
    for (const auto& r : records) {
      const auto ext = rg::extract_height(r.window, model.config,
                                          rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      json j;
      j["track"] = r.track_id;
      j["window_start"] = r.window.start;
      j["height_m"] = rg::predict_height(model, *ext);
      j["low_confidence"] = ext->low_confidence;
      out << j.dump() << "\n";
    }
  } else if (kind == "motion") {
    const rg::MotionModel model = rg::load_motion_model(model_path);
    const auto records = load_windows(log_path, parse_format(format_name),
                                      nullptr, model.config, opts.strict,
                                      std::cerr);
    for (const auto& r : records) {
      const auto ext = rg::extract_motion(r.window, model.config,
                                          rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      json j;
      j["track"] = r.track_id;
      j["window_start"] = r.window.start;
      j["motion"] = rg::motion_class_name(rg::predict_motion(model, *ext));
      out << j.dump() << "\n";
    }
  } else {
    throw rg::ModelFormatError("unknown model kind: " + kind);
  }
  write_text_file(out_path, out.str());
  std::cout << "predictions -> " << out_path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const CommonOptions& opts, const std::string& log_path,
                 const std::string& manifest_path, const std::string& task,
                 std::size_t folds, const std::string& out_path,
                 const std::string& format_name) {
  const rg::PipelineConfig cfg = load_config(opts);
  const rg::Manifest manifest = rg::read_manifest(manifest_path);
  const auto records = load_windows(log_path, parse_format(format_name),
                                    &manifest, cfg, opts.strict, std::cerr);

  json report;
  report["task"] = task;
  report["folds"] = folds;
  report["seed"] = opts.seed;

  if (task == "height") {
    std::vector<rg::HeightExtraction> samples;
    std::vector<double> truth;
    std::vector<std::string> groups;
    for (const auto& r : records) {
      if (!r.window.label.height_m) continue;
      const auto ext =
          rg::extract_height(r.window, cfg, rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      samples.push_back(*ext);
      truth.push_back(*r.window.label.height_m);
      groups.push_back(r.window.label.subject_id);
    }
    if (samples.empty()) throw rg::DataError("no usable height windows");
    const rg::FoldPlan plan = rg::grouped_kfold(groups, folds, opts.seed);

    const auto forest_fn = [&](const std::vector<std::size_t>& train_idx,
                               const std::vector<std::size_t>& test_idx,
                               std::size_t fold) {
      std::vector<rg::HeightExtraction> train;
      std::vector<double> train_truth;
      for (std::size_t i : train_idx) {
        train.push_back(samples[i]);
        train_truth.push_back(truth[i]);
      }
      const rg::HeightModel model = rg::train_height_model(
          train, train_truth, cfg, rg::regression_forest_defaults(),
          rg::derive_seed(opts.seed, 0xf01d0000ULL + fold));
      std::vector<double> preds;
      for (std::size_t i : test_idx) {
        preds.push_back(rg::predict_height(model, samples[i]));
      }
      return preds;
    };
    const auto boulic_fn = [&](const std::vector<std::size_t>&,
                               const std::vector<std::size_t>& test_idx,
                               std::size_t) {
      std::vector<double> preds;
      for (std::size_t i : test_idx) {
        preds.push_back(rg::boulic_height(samples[i].v_ped, samples[i].l_s).h);
      }
      return preds;
    };

    const rg::RegressionReport forest_rep =
        rg::evaluate_regression(groups, truth, plan, forest_fn);
    const rg::RegressionReport boulic_rep =
        rg::evaluate_regression(groups, truth, plan, boulic_fn);
    report["forest"] = json::parse(rg::regression_report_json(forest_rep));
    report["boulic_baseline"] = json::parse(rg::regression_report_json(boulic_rep));
    std::cout << rg::regression_report_text(forest_rep)
              << "\nclosed-form baseline MAE " << boulic_rep.mae << " m\n";
  } else if (task == "motion") {
    std::vector<rg::MotionExtraction> samples;
    std::vector<int> labels;
    std::vector<std::string> subjects, recordings;
    for (const auto& r : records) {
      if (!r.window.label.motion) continue;
      const auto ext =
          rg::extract_motion(r.window, cfg, rg::window_seed(opts.seed, r.ordinal));
      if (!ext) continue;
      samples.push_back(*ext);
      labels.push_back(static_cast<int>(*r.window.label.motion));
      subjects.push_back(r.window.label.subject_id);
      recordings.push_back(r.window.label.recording_id);
    }
    if (samples.empty()) throw rg::DataError("no usable motion windows");
    const std::vector<std::string> groups =
        rg::fold_group_keys(labels, subjects, recordings);
    const rg::FoldPlan plan = rg::grouped_kfold(groups, folds, opts.seed);

    const auto fold_fn = [&](const std::vector<std::size_t>& train_idx,
                             const std::vector<std::size_t>& test_idx,
                             std::size_t fold) {
      std::vector<rg::MotionExtraction> train;
      std::vector<rg::MotionClass> train_labels;
      for (std::size_t i : train_idx) {
        train.push_back(samples[i]);
        train_labels.push_back(static_cast<rg::MotionClass>(labels[i]));
      }
      const rg::MotionModel model = rg::train_motion_model(
          train, train_labels, cfg, rg::classification_forest_defaults(),
          rg::derive_seed(opts.seed, 0xf01d0000ULL + fold));
      std::vector<double> preds;
      for (std::size_t i : test_idx) {
        preds.push_back(
            static_cast<double>(rg::predict_motion(model, samples[i])));
      }
      return preds;
    };

    const rg::ClassificationReport rep = rg::evaluate_classification(
        groups, labels, rg::kNumMotionClasses, plan, fold_fn);
    report["classification"] =
        json::parse(rg::classification_report_json(rep, class_names()));
    std::cout << rg::classification_report_text(rep, class_names());
  } else {
    throw CLI::ValidationError("--task", "must be height or motion");
  }

  write_text_file(out_path, report.dump(2) + "\n");
  std::cout << "report -> " << out_path << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

// Runs evaluate once per supplied config and tabulates the headline metric.
// The grid itself is user-supplied; this is a driver, not a search.
int cmd_sweep(const CommonOptions& opts, const std::string& log_path,
              const std::string& manifest_path, const std::string& task,
              std::size_t folds, const std::vector<std::string>& config_paths,
              const std::string& out_path, const std::string& format_name) {
  if (config_paths.empty()) {
    throw CLI::ValidationError("--configs", "need at least one config file");
  }
  json summary = json::array();
  for (const auto& config_path : config_paths) {
    CommonOptions point = opts;
    point.config_path = config_path;
    const std::string report_path = out_path + "." + std::to_string(summary.size()) + ".json";
    const int status = cmd_evaluate(point, log_path, manifest_path, task, folds,
                                    report_path, format_name);
    if (status != kExitOk) return status;
    std::ifstream in(report_path);
    json report;
    in >> report;
    json entry;
    entry["config"] = config_path;
    entry["report"] = report_path;
    if (task == "height") {
      entry["mae_m"] = report["forest"]["mae_m"];
    } else {
      entry["macro_f1"] = report["classification"]["macro_f1"];
    }
    summary.push_back(entry);
  }
  write_text_file(out_path, summary.dump(2) + "\n");
  std::cout << "sweep summary (" << summary.size() << " configs):\n";
  for (const auto& entry : summary) {
    std::cout << "  " << entry["config"].get<std::string>() << "  ";
    if (task == "height") {
      std::cout << "MAE " << entry["mae_m"].get<double>() << " m\n";
    } else {
      std::cout << "macro F1 " << entry["macro_f1"].get<double>() << "\n";
    }
  }
  std::cout << "summary -> " << out_path << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string& report_path, const std::string& out_dir) {
  std::ifstream in(report_path);
  if (!in) throw rg::DataError("cannot open report: " + report_path);
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw rg::DataError("report is not valid JSON: " + std::string(e.what()));
  }
  std::filesystem::create_directories(out_dir);
  const auto out = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  const std::string task = report.value("task", "");
  if (task == "motion") {
    const json& cj = report.at("classification");
    const auto counts = cj.at("confusion").at("counts");
    const std::size_t n = counts.size();
    std::vector<std::size_t> confusion(n * n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        confusion[r * n + c] = counts[r][c].get<std::size_t>();
      }
    }
    const rg::ClassificationReport rep =
        rg::classification_report_from_confusion(confusion, n);
    const auto names =
        cj.at("confusion").at("labels").get<std::vector<std::string>>();
    write_text_file(out("confusion.csv"), rg::confusion_csv(rep, names));
    write_text_file(out("confusion.svg"), rg::confusion_svg(rep, names));
    write_text_file(out("report.txt"), rg::classification_report_text(rep, names));
  } else if (task == "height") {
    rg::RegressionReport rep;
    const json& fj = report.at("forest");
    rep.mae = fj.at("mae_m").get<double>();
    rep.std_abs_err = fj.at("std_abs_err_m").get<double>();
    rep.sample_count = fj.at("sample_count").get<std::size_t>();
    for (const auto& bj : fj.at("binned_mae")) {
      rg::RegressionBin bin;
      bin.center = bj.at("center_m").get<double>();
      bin.mae = bj.at("mae_m").get<double>();
      bin.std_dev = bj.at("std_m").get<double>();
      bin.count = bj.at("count").get<std::size_t>();
      rep.binned.push_back(bin);
    }
    write_text_file(out("binned_mae.csv"), rg::binned_mae_csv(rep));
    write_text_file(out("binned_mae.svg"), rg::binned_mae_svg(rep));
    write_text_file(out("report.txt"), rg::regression_report_text(rep));
  } else {
    throw rg::DataError("report has unknown task: " + task);
  }
  std::cout << "artifacts -> " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian gait analysis from sparse 2D radar targets"};
  app.require_subcommand(1);

  CommonOptions opts;
  app.add_option("--seed", opts.seed, "Base RNG seed (all randomness derives from it)");
  app.add_option("--config", opts.config_path, "Pipeline config JSON");
  app.add_flag("--strict", opts.strict, "Abort on the first malformed record");

  std::string scenario, log_path, manifest_path, model_path, out_path, out_dir;
  std::string task = "height";
  std::string format_name = "jsonl";
  std::size_t folds = 5;

  auto* sim = app.add_subcommand("simulate", "Generate labeled target logs");
  sim->add_option("--scenario", scenario, "Scenario JSON")->required();
  sim->add_option("--out-log", log_path, "Output target log")->required();
  sim->add_option("--out-manifest", manifest_path, "Output manifest JSON");
  sim->add_option("--format", format_name, "jsonl or csv");

  auto* ext = app.add_subcommand("extract", "Windows to feature tables (CSV)");
  ext->add_option("--log", log_path, "Target log")->required();
  ext->add_option("--manifest", manifest_path, "Manifest JSON");
  ext->add_option("--task", task, "height or motion")->required();
  ext->add_option("--out", out_path, "Output CSV")->required();
  ext->add_option("--format", format_name, "jsonl or csv");
  std::string grid_dir;
  ext->add_option("--dump-grids", grid_dir,
                  "Directory for per-window deviation grids (PGM, motion task)");

  auto* train = app.add_subcommand("train", "Train a model bundle");
  train->add_option("--log", log_path, "Target log")->required();
  train->add_option("--manifest", manifest_path, "Manifest JSON")->required();
  train->add_option("--task", task, "height or motion")->required();
  train->add_option("--out", out_path, "Output model bundle")->required();
  train->add_option("--format", format_name, "jsonl or csv");

  auto* pred = app.add_subcommand("predict", "Per-window predictions (JSONL)");
  pred->add_option("--log", log_path, "Target log")->required();
  pred->add_option("--model", model_path, "Model bundle")->required();
  pred->add_option("--out", out_path, "Output JSONL")->required();
  pred->add_option("--format", format_name, "jsonl or csv");

  auto* eval = app.add_subcommand("evaluate", "Grouped cross-validation report");
  eval->add_option("--log", log_path, "Target log")->required();
  eval->add_option("--manifest", manifest_path, "Manifest JSON")->required();
  eval->add_option("--task", task, "height or motion")->required();
  eval->add_option("--folds", folds, "Fold count");
  eval->add_option("--out", out_path, "Output report JSON")->required();
  eval->add_option("--format", format_name, "jsonl or csv");

  auto* rep = app.add_subcommand("report", "Render a report to CSV/SVG/text");
  rep->add_option("--report", out_path, "Report JSON from evaluate")->required();
  rep->add_option("--out-dir", out_dir, "Artifact directory")->required();

  std::vector<std::string> sweep_configs;
  auto* sweep = app.add_subcommand("sweep", "Evaluate once per config file");
  sweep->add_option("--log", log_path, "Target log")->required();
  sweep->add_option("--manifest", manifest_path, "Manifest JSON")->required();
  sweep->add_option("--task", task, "height or motion")->required();
  sweep->add_option("--folds", folds, "Fold count");
  sweep->add_option("--configs", sweep_configs, "Config JSON files")->required();
  sweep->add_option("--out", out_path, "Summary JSON")->required();
  sweep->add_option("--format", format_name, "jsonl or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(opts, scenario, log_path, manifest_path, format_name);
    }
    if (ext->parsed()) {
      return cmd_extract(opts, log_path, manifest_path, task, out_path,
                         format_name, grid_dir);
    }
    if (train->parsed()) {
      return cmd_train(opts, log_path, manifest_path, task, out_path,
                       format_name);
    }
    if (pred->parsed()) {
      return cmd_predict(opts, log_path, model_path, out_path, format_name);
    }
    if (eval->parsed()) {
      return cmd_evaluate(opts, log_path, manifest_path, task, folds, out_path,
                          format_name);
    }
    if (rep->parsed()) {
      return cmd_report(out_path, out_dir);
    }
    if (sweep->parsed()) {
      return cmd_sweep(opts, log_path, manifest_path, task, folds,
                       sweep_configs, out_path, format_name);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rg::ModelFormatError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const rg::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
