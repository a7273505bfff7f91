#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "radargait/eval.hpp"

namespace radargait {

namespace {

using nlohmann::json;

json confusion_to_json(const ClassificationReport& rep,
                       const std::vector<std::string>& names) {
  json rows = json::array();
  for (std::size_t r = 0; r < rep.n_classes; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < rep.n_classes; ++c) {
      row.push_back(rep.count(r, c));
    }
    rows.push_back(row);
  }
  json j;
  j["labels"] = names;
  j["counts"] = rows;
  return j;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// Shared SVG scaffolding.
std::string svg_open(int width, int height) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  return os.str();
}

}  // namespace

std::string classification_report_json(const ClassificationReport& rep,
                                       const std::vector<std::string>& names) {
  json j;
  j["task"] = "classification";
  j["confusion"] = confusion_to_json(rep, names);
  json rn = json::array();
  for (std::size_t r = 0; r < rep.n_classes; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < rep.n_classes; ++c) {
      row.push_back(rep.row_normalized[r * rep.n_classes + c]);
    }
    rn.push_back(row);
  }
  j["row_normalized"] = rn;
  json per_class = json::array();
  for (std::size_t c = 0; c < rep.n_classes; ++c) {
    per_class.push_back({{"class", names[c]},
                         {"precision", rep.per_class_precision[c]},
                         {"recall", rep.per_class_recall[c]},
                         {"f1", rep.per_class_f1[c]},
                         {"present", static_cast<bool>(rep.class_present[c])}});
  }
  j["per_class"] = per_class;
  j["macro_f1"] = rep.macro_f1;
  j["macro_precision"] = rep.macro_precision;
  j["macro_recall"] = rep.macro_recall;
  return j.dump(2) + "\n";
}

std::string classification_report_text(const ClassificationReport& rep,
                                       const std::vector<std::string>& names) {
  std::ostringstream os;
  std::size_t w = 10;
  for (const auto& n : names) w = std::max(w, n.size() + 2);

  os << std::left << std::setw(static_cast<int>(w)) << "class"
     << std::right << std::setw(11) << "precision" << std::setw(9) << "recall"
     << std::setw(9) << "f1" << "\n";
  for (std::size_t c = 0; c < rep.n_classes; ++c) {
    os << std::left << std::setw(static_cast<int>(w)) << names[c] << std::right
       << std::setw(11) << fixed(rep.per_class_precision[c], 3)
       << std::setw(9) << fixed(rep.per_class_recall[c], 3)
       << std::setw(9) << fixed(rep.per_class_f1[c], 3)
       << (rep.class_present[c] ? "" : "  (absent)") << "\n";
  }
  os << "\nmacro precision " << fixed(rep.macro_precision, 3)
     << "  macro recall " << fixed(rep.macro_recall, 3) << "  macro F1 "
     << fixed(rep.macro_f1, 3) << "\n\nconfusion (rows = true):\n";
  os << std::left << std::setw(static_cast<int>(w)) << "";
  for (const auto& n : names) os << std::right << std::setw(12) << n;
  os << "\n";
  for (std::size_t r = 0; r < rep.n_classes; ++r) {
    os << std::left << std::setw(static_cast<int>(w)) << names[r];
    for (std::size_t c = 0; c < rep.n_classes; ++c) {
      os << std::right << std::setw(12) << rep.count(r, c);
    }
    os << "\n";
  }
  return os.str();
}

std::string confusion_csv(const ClassificationReport& rep,
                          const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "true_class";
  for (const auto& n : names) os << "," << n;
  os << "\n";
  for (std::size_t r = 0; r < rep.n_classes; ++r) {
    os << names[r];
    for (std::size_t c = 0; c < rep.n_classes; ++c) os << "," << rep.count(r, c);
    os << "\n";
  }
  return os.str();
}

std::string confusion_svg(const ClassificationReport& rep,
                          const std::vector<std::string>& names) {
  const int cell = 56;
  const int margin = 110;
  const int n = static_cast<int>(rep.n_classes);
  const int size = margin + n * cell + 20;
  std::ostringstream os;
  os << svg_open(size, size);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double value =
          rep.row_normalized[static_cast<std::size_t>(r) * rep.n_classes +
                             static_cast<std::size_t>(c)];
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - value)));
      os << "<rect x=\"" << margin + c * cell << "\" y=\"" << margin + r * cell
         << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb("
         << shade << "," << shade << ",255)\" stroke=\"#888\"/>\n";
      os << "<text x=\"" << margin + c * cell + cell / 2 << "\" y=\""
         << margin + r * cell + cell / 2 + 4
         << "\" font-size=\"12\" text-anchor=\"middle\">" << fixed(value, 2)
         << "</text>\n";
    }
  }
  for (int i = 0; i < n; ++i) {
    os << "<text x=\"" << margin - 8 << "\" y=\"" << margin + i * cell + cell / 2 + 4
       << "\" font-size=\"12\" text-anchor=\"end\">" << names[static_cast<std::size_t>(i)]
       << "</text>\n";
    os << "<text x=\"" << margin + i * cell + cell / 2 << "\" y=\"" << margin - 10
       << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-45 "
       << margin + i * cell + cell / 2 << " " << margin - 10 << ")\">"
       << names[static_cast<std::size_t>(i)] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string regression_report_json(const RegressionReport& rep) {
  json j;
  j["task"] = "regression";
  j["mae_m"] = rep.mae;
  j["std_abs_err_m"] = rep.std_abs_err;
  j["sample_count"] = rep.sample_count;
  json bins = json::array();
  for (const auto& b : rep.binned) {
    bins.push_back({{"center_m", b.center},
                    {"mae_m", b.mae},
                    {"std_m", b.std_dev},
                    {"count", b.count}});
  }
  j["binned_mae"] = bins;
  return j.dump(2) + "\n";
}

std::string regression_report_text(const RegressionReport& rep) {
  std::ostringstream os;
  os << "samples " << rep.sample_count << "  MAE " << fixed(rep.mae, 4)
     << " m  std(|err|) " << fixed(rep.std_abs_err, 4) << " m\n\n"
     << "bin_center_m      mae_m      std_m  count\n";
  for (const auto& b : rep.binned) {
    os << std::right << std::setw(12) << fixed(b.center, 3) << std::setw(11)
       << fixed(b.mae, 4) << std::setw(11) << fixed(b.std_dev, 4)
       << std::setw(7) << b.count << "\n";
  }
  return os.str();
}

std::string binned_mae_csv(const RegressionReport& rep) {
  std::ostringstream os;
  os << "bin_center_m,mae_m,std_m,count\n";
  for (const auto& b : rep.binned) {
    os << fixed(b.center, 3) << "," << fixed(b.mae, 6) << ","
       << fixed(b.std_dev, 6) << "," << b.count << "\n";
  }
  return os.str();
}

std::string binned_mae_svg(const RegressionReport& rep) {
  const int width = 640, height = 360, margin = 50;
  double max_mae = 1e-6;
  for (const auto& b : rep.binned) max_mae = std::max(max_mae, b.mae + b.std_dev);
  std::ostringstream os;
  os << svg_open(width, height);
  const int plot_w = width - 2 * margin;
  const int plot_h = height - 2 * margin;
  const std::size_t n = rep.binned.size();
  const double bar_w = n > 0 ? static_cast<double>(plot_w) / static_cast<double>(n) : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = rep.binned[i];
    const double h = b.mae / max_mae * plot_h;
    const double x = margin + static_cast<double>(i) * bar_w;
    const double y = height - margin - h;
    os << "<rect x=\"" << x + 2 << "\" y=\"" << y << "\" width=\"" << bar_w - 4
       << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
    // Std-dev whisker.
    const double wx = x + bar_w / 2;
    const double y1 = height - margin - (b.mae + b.std_dev) / max_mae * plot_h;
    os << "<line x1=\"" << wx << "\" y1=\"" << y1 << "\" x2=\"" << wx
       << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << wx << "\" y=\"" << height - margin + 16
       << "\" font-size=\"10\" text-anchor=\"middle\">" << fixed(b.center, 2)
       << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
     << "\" font-size=\"12\" text-anchor=\"middle\">true height bin (m)</text>\n";
  os << "<text x=\"14\" y=\"" << height / 2
     << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << height / 2 << ")\">MAE (m)</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace radargait
