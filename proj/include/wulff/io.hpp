#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "wulff/blowup.hpp"
#include "wulff/bubble.hpp"
#include "wulff/grid.hpp"
#include "wulff/norm.hpp"
#include "wulff/radial.hpp"

namespace wulff {

/// Report tree with deterministic serialization: insertion-ordered keys,
/// floats printed with 17 significant digits so re-reading reproduces the
/// value bit-exactly and repeated runs produce byte-identical files.
class Report {
 public:
  using Ptr = std::shared_ptr<Report>;

  static Ptr object();
  static Ptr array();
  static Ptr number(double v);
  static Ptr integer(long long v);
  static Ptr boolean(bool v);
  static Ptr text(const std::string& s);

  Report& set(const std::string& key, Ptr value);
  Report& set(const std::string& key, double v);
  Report& set(const std::string& key, long long v);
  Report& set(const std::string& key, int v) {
    return set(key, static_cast<long long>(v));
  }
  Report& set(const std::string& key, bool v);
  Report& set(const std::string& key, const std::string& s);
  Report& set(const std::string& key, const char* s) {
    return set(key, std::string(s));
  }
  Report& push(Ptr value);
  Report& push(double v);

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Object, Array, Number, Integer, Boolean, Text };
  Kind kind_ = Kind::Object;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string text_;
  std::vector<std::pair<std::string, Ptr>> members_;
  std::vector<Ptr> items_;
  void emit(std::string& out, int indent, int depth) const;
};

/// %.17g with NaN/inf mapped to JSON null-compatible strings.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Two-column (or wider) CSV with header; floats via format_double.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// --- JSON configuration parsing (strict: unknown fields rejected) ---

NormSpec parse_norm_spec(const std::string& json_text);
std::string norm_spec_to_json(const NormSpec& spec);

BubbleParams parse_bubble_params(const std::string& json_text);
std::string bubble_params_to_json(const BubbleParams& params);

FamilyConfig parse_family_config(const std::string& json_text);
std::string family_config_to_json(const FamilyConfig& config);

// --- GridField persistence: CSV of (index, value) + JSON side header ---

void save_grid(const GridField& grid, const std::string& csv_path);
GridField load_grid(const std::string& csv_path);

// --- RadialProfile persistence: two-column CSV (r, value) ---

void save_profile(const RadialProfile& profile, const std::string& path);
RadialProfile load_profile(const std::string& path);

// --- Report builders shared by the CLI and tests ---

Report::Ptr mass_report_json(const MassReport& report);
Report::Ptr quantize_series_json(const FamilyConfig& config,
                                 const QuantizeSeries& series);

}  // namespace wulff
