#include "wulff/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wulff {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Report::Ptr Report::object() {
  auto r = std::make_shared<Report>();
  r->kind_ = Kind::Object;
  return r;
}
Report::Ptr Report::array() {
  auto r = std::make_shared<Report>();
  r->kind_ = Kind::Array;
  return r;
}
Report::Ptr Report::number(double v) {
  auto r = std::make_shared<Report>();
  r->kind_ = Kind::Number;
  r->num_ = v;
  return r;
}
Report::Ptr Report::integer(long long v) {
  auto r = std::make_shared<Report>();
  r->kind_ = Kind::Integer;
  r->int_ = v;
  return r;
}
Report::Ptr Report::boolean(bool v) {
  auto r = std::make_shared<Report>();
  r->kind_ = Kind::Boolean;
  r->bool_ = v;
  return r;
}
Report::Ptr Report::text(const std::string& s) {
  auto r = std::make_shared<Report>();
  r->kind_ = Kind::Text;
  r->text_ = s;
  return r;
}

Report& Report::set(const std::string& key, Ptr value) {
  members_.emplace_back(key, std::move(value));
  return *this;
}
Report& Report::set(const std::string& key, double v) {
  return set(key, number(v));
}
Report& Report::set(const std::string& key, long long v) {
  return set(key, integer(v));
}
Report& Report::set(const std::string& key, bool v) {
  return set(key, boolean(v));
}
Report& Report::set(const std::string& key, const std::string& s) {
  return set(key, text(s));
}
Report& Report::push(Ptr value) {
  items_.push_back(std::move(value));
  return *this;
}
Report& Report::push(double v) { return push(number(v)); }

namespace {

std::string escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

void Report::emit(std::string& out, int indent, int depth) const {
  const std::string pad(indent * (depth + 1), ' ');
  const std::string close_pad(indent * depth, ' ');
  switch (kind_) {
    case Kind::Number: out += format_double(num_); break;
    case Kind::Integer: out += std::to_string(int_); break;
    case Kind::Boolean: out += bool_ ? "true" : "false"; break;
    case Kind::Text: out += escape(text_); break;
    case Kind::Object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (size_t i = 0; i < members_.size(); ++i) {
        out += pad + escape(members_[i].first) + ": ";
        members_[i].second->emit(out, indent, depth + 1);
        out += i + 1 < members_.size() ? ",\n" : "\n";
      }
      out += close_pad + "}";
      break;
    }
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (size_t i = 0; i < items_.size(); ++i) {
        out += pad;
        items_[i]->emit(out, indent, depth + 1);
        out += i + 1 < items_.size() ? ",\n" : "\n";
      }
      out += close_pad + "]";
      break;
    }
  }
}

std::string Report::dump(int indent) const {
  std::string out;
  emit(out, indent, 0);
  out += "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i)
    out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  write_text_file(path, out);
}

namespace {

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& what) {
  if (!j.is_object())
    throw std::invalid_argument(what + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw std::invalid_argument(what + ": unknown field '" + it.key() + "'");
  }
}

json parse_or_throw(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument(what + ": malformed JSON");
  return j;
}

double require_number(const json& j, const std::string& key,
                      const std::string& what) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(what + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

Vector vector_field(const json& j, const std::string& key,
                    const std::string& what) {
  if (!j.contains(key) || !j[key].is_array())
    throw std::invalid_argument(what + ": missing array field '" + key + "'");
  Vector v(j[key].size());
  Eigen::Index i = 0;
  for (const auto& e : j[key]) {
    if (!e.is_number())
      throw std::invalid_argument(what + ": non-numeric entry in '" + key + "'");
    v[i++] = e.get<double>();
  }
  return v;
}

NormSpec norm_from_json(const json& j) {
  const std::string what = "NormSpec";
  reject_unknown(j, {"family", "q", "weights", "dim"}, what);
  if (!j.contains("family") || !j["family"].is_string())
    throw std::invalid_argument(what + ": missing 'family'");
  const std::string fam = j["family"].get<std::string>();
  const int dim = static_cast<int>(require_number(j, "dim", what));
  NormSpec spec;
  if (fam == "q_norm") {
    if (j.contains("weights"))
      throw std::invalid_argument(what + ": q_norm takes no weights");
    spec = NormSpec::q_norm(require_number(j, "q", what), dim);
  } else if (fam == "weighted_euclidean") {
    if (j.contains("q"))
      throw std::invalid_argument(what + ": weighted_euclidean takes no q");
    spec = NormSpec::weighted(vector_field(j, "weights", what));
    if (spec.dim != dim)
      throw std::invalid_argument(what + ": dim disagrees with weights");
  } else {
    throw std::invalid_argument(what + ": unknown family '" + fam + "'");
  }
  return spec;
}

json norm_to_json(const NormSpec& spec) {
  json j;
  if (spec.family == NormFamily::QNorm) {
    j["family"] = "q_norm";
    j["q"] = spec.q;
  } else {
    j["family"] = "weighted_euclidean";
    j["weights"] = std::vector<double>(spec.weights.data(),
                                       spec.weights.data() + spec.weights.size());
  }
  j["dim"] = spec.dim;
  return j;
}

}  // namespace

NormSpec parse_norm_spec(const std::string& text) {
  return norm_from_json(parse_or_throw(text, "NormSpec"));
}

std::string norm_spec_to_json(const NormSpec& spec) {
  return norm_to_json(spec).dump(2) + "\n";
}

BubbleParams parse_bubble_params(const std::string& text) {
  const std::string what = "BubbleParams";
  json j = parse_or_throw(text, what);
  reject_unknown(j, {"norm", "lambda", "p", "V0"}, what);
  if (!j.contains("norm"))
    throw std::invalid_argument(what + ": missing 'norm'");
  NormSpec spec = norm_from_json(j["norm"]);
  const double lambda = require_number(j, "lambda", what);
  const Vector p = vector_field(j, "p", what);
  const double V0 = j.contains("V0") ? require_number(j, "V0", what) : 1.0;
  return BubbleParams::make(spec, lambda, p, V0);
}

std::string bubble_params_to_json(const BubbleParams& params) {
  json j;
  j["norm"] = norm_to_json(params.norm);
  j["lambda"] = params.lambda;
  j["p"] = std::vector<double>(params.p.data(), params.p.data() + params.p.size());
  j["V0"] = params.V0;
  return j.dump(2) + "\n";
}

FamilyConfig parse_family_config(const std::string& text) {
  const std::string what = "FamilyConfig";
  json j = parse_or_throw(text, what);
  reject_unknown(j,
                 {"N", "norm", "centers", "lambda_schedule", "V0", "box_lo",
                  "box_hi", "k_cluster", "grid_nodes"},
                 what);
  FamilyConfig c;
  c.N = static_cast<int>(require_number(j, "N", what));
  if (!j.contains("norm")) throw std::invalid_argument(what + ": missing norm");
  c.norm = norm_from_json(j["norm"]);
  if (!j.contains("centers") || !j["centers"].is_array())
    throw std::invalid_argument(what + ": missing centers");
  for (const auto& e : j["centers"]) {
    Vector v(e.size());
    Eigen::Index i = 0;
    for (const auto& x : e) v[i++] = x.get<double>();
    c.centers.push_back(std::move(v));
  }
  if (!j.contains("lambda_schedule") || !j["lambda_schedule"].is_array())
    throw std::invalid_argument(what + ": missing lambda_schedule");
  for (const auto& e : j["lambda_schedule"])
    c.lambda_schedule.push_back(e.get<double>());
  if (j.contains("V0")) c.V0 = require_number(j, "V0", what);
  c.box_lo = vector_field(j, "box_lo", what);
  c.box_hi = vector_field(j, "box_hi", what);
  if (j.contains("k_cluster")) c.k_cluster = require_number(j, "k_cluster", what);
  if (j.contains("grid_nodes"))
    c.grid_nodes = static_cast<int>(require_number(j, "grid_nodes", what));
  c.validate();
  return c;
}

std::string family_config_to_json(const FamilyConfig& c) {
  json j;
  j["N"] = c.N;
  j["norm"] = norm_to_json(c.norm);
  j["centers"] = json::array();
  for (const auto& p : c.centers)
    j["centers"].push_back(
        std::vector<double>(p.data(), p.data() + p.size()));
  j["lambda_schedule"] = c.lambda_schedule;
  j["V0"] = c.V0;
  j["box_lo"] = std::vector<double>(c.box_lo.data(), c.box_lo.data() + c.box_lo.size());
  j["box_hi"] = std::vector<double>(c.box_hi.data(), c.box_hi.data() + c.box_hi.size());
  j["k_cluster"] = c.k_cluster;
  j["grid_nodes"] = c.grid_nodes;
  return j.dump(2) + "\n";
}

void save_grid(const GridField& grid, const std::string& csv_path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    rows.push_back({static_cast<double>(k), grid.values()[k]});
  write_csv(csv_path, {"index", "value"}, rows);
  json hdr;
  hdr["origin"] = std::vector<double>(grid.origin().data(),
                                      grid.origin().data() + grid.origin().size());
  hdr["h"] = grid.spacing();
  hdr["shape"] = grid.shape();
  write_text_file(csv_path + ".meta.json", hdr.dump(2) + "\n");
}

GridField load_grid(const std::string& csv_path) {
  json hdr = parse_or_throw(read_text_file(csv_path + ".meta.json"),
                            "grid header");
  reject_unknown(hdr, {"origin", "h", "shape"}, "grid header");
  Vector origin = vector_field(hdr, "origin", "grid header");
  const double h = require_number(hdr, "h", "grid header");
  std::vector<int> shape;
  for (const auto& e : hdr["shape"]) shape.push_back(e.get<int>());
  GridField grid(origin, h, shape);

  std::istringstream in(read_text_file(csv_path));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("grid csv: bad row '" + line + "'");
    const Eigen::Index idx = std::stoll(line.substr(0, comma));
    if (idx < 0 || idx >= grid.size())
      throw std::invalid_argument("grid csv: index out of range");
    grid.values()[idx] = std::stod(line.substr(comma + 1));
  }
  return grid;
}

void save_profile(const RadialProfile& profile, const std::string& path) {
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < profile.r.size(); ++i)
    rows.push_back({profile.r[i], profile.values[i]});
  write_csv(path, {"r", "value"}, rows);
}

RadialProfile load_profile(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  std::vector<double> r, v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("profile csv: bad row '" + line + "'");
    r.push_back(std::stod(line.substr(0, comma)));
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  RadialProfile p;
  p.r = Eigen::Map<Eigen::VectorXd>(r.data(), r.size());
  p.values = Eigen::Map<Eigen::VectorXd>(v.data(), v.size());
  p.validate();
  return p;
}

Report::Ptr mass_report_json(const MassReport& report) {
  auto r = Report::object();
  r->set("lambda", report.lambda);
  auto entries = Report::array();
  // deterministic ordering: centers sorted lexicographically
  std::vector<const MassEntry*> sorted;
  for (const auto& e : report.entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const MassEntry* a, const MassEntry* b) {
              return std::lexicographical_compare(
                  a->center.data(), a->center.data() + a->center.size(),
                  b->center.data(), b->center.data() + b->center.size());
            });
  for (const MassEntry* e : sorted) {
    auto ej = Report::object();
    auto cj = Report::array();
    for (Eigen::Index i = 0; i < e->center.size(); ++i) cj->push(e->center[i]);
    ej->set("center", cj);
    ej->set("radius", e->radius);
    ej->set("mass", e->mass);
    ej->set("tail", e->tail);
    entries->push(ej);
  }
  r->set("entries", entries);
  r->set("total_mass", report.total_mass);
  r->set("neck_mass", report.neck_mass);
  r->set("quantization_estimate", report.quantization_estimate);
  r->set("verdict", report.verdict);
  return r;
}

Report::Ptr quantize_series_json(const FamilyConfig& config,
                                 const QuantizeSeries& series) {
  auto root = Report::object();
  root->set("norm", describe(config.norm));
  root->set("N", config.N);
  auto radii = Report::array();
  for (double r : series.radii) radii->push(r);
  root->set("radii", radii);
  auto reports = Report::array();
  for (size_t n = 0; n < config.lambda_schedule.size(); ++n)
    for (size_t ri = 0; ri < series.radii.size(); ++ri)
      reports->push(mass_report_json(
          series.report(static_cast<int>(n), static_cast<int>(ri))));
  root->set("reports", reports);
  auto slopes = Report::array();
  for (double s : series.tail_slope) slopes->push(s);
  root->set("tail_slope", slopes);
  auto ses = Report::array();
  for (double s : series.tail_slope_se) ses->push(s);
  root->set("tail_slope_se", ses);
  root->set("fit_members", series.fit_members);
  return root;
}

}  // namespace wulff
