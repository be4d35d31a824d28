#include "tansec/harness.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tansec {

using nlohmann::json;

ConfigError::ConfigError(const std::string& msg, std::string field, int line)
    : Error(msg), field_(std::move(field)), line_(line) {}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::VerifySections: return "verify-theorem1";
    case Command::VerifyCaps: return "verify-theorem4";
    case Command::Recover: return "recover";
    case Command::Symmetry: return "symmetry";
    case Command::SandwichCheck: return "sandwich-check";
    case Command::FunctionalCheck: return "functional-check";
    case Command::SantaloDemo: return "santalo-demo";
    case Command::Properties: return "properties";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::VerifySections, Command::VerifyCaps, Command::Recover, Command::Symmetry,
                    Command::SandwichCheck, Command::FunctionalCheck, Command::SantaloDemo, Command::Properties}) {
    if (to_string(c) == name) return c;
  }
  throw Error("unknown command '" + std::string(name) + "'");
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

class Reader {
 public:
  Reader(const json& doc, const std::string& text, std::string source)
      : doc_(doc), text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    int line = 0;
    const auto slash = pointer.find_last_of('/');
    if (slash != std::string::npos) {
      const std::string key = "\"" + pointer.substr(slash + 1) + "\"";
      const auto pos = text_.find(key);
      if (pos != std::string::npos) line = line_of_offset(text_, pos);
    }
    std::ostringstream msg;
    msg << source_ << ":" << line << ": " << pointer << ": " << what;
    throw ConfigError(msg.str(), pointer, line);
  }

  const json* find(const std::string& pointer) const {
    const json::json_pointer p(pointer);
    return doc_.contains(p) ? &doc_.at(p) : nullptr;
  }

  bool has(const std::string& pointer) const { return find(pointer) != nullptr; }

  template <class T>
  T get(const std::string& pointer, const T& fallback) const {
    const json* v = find(pointer);
    if (v == nullptr) return fallback;
    return as<T>(*v, pointer);
  }

  template <class T>
  T require(const std::string& pointer) const {
    const json* v = find(pointer);
    if (v == nullptr) fail(pointer, "missing required field");
    return as<T>(*v, pointer);
  }

  template <class T>
  T as(const json& v, const std::string& pointer) const {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(pointer, "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(pointer, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
          fail(pointer, "expected a non-negative integer");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(pointer, "expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(pointer, "expected a string");
    }
    return v.get<T>();
  }

  Vec vector(const std::string& pointer) const {
    const json* v = find(pointer);
    if (v == nullptr || !v->is_array()) fail(pointer, "expected an array of numbers");
    Vec out(static_cast<Eigen::Index>(v->size()));
    for (std::size_t i = 0; i < v->size(); ++i) out(static_cast<Eigen::Index>(i)) = as<double>((*v)[i], pointer + "/" + std::to_string(i));
    return out;
  }

  /// Array of rows.
  Mat matrix(const std::string& pointer) const {
    const json* v = find(pointer);
    if (v == nullptr || !v->is_array() || v->empty()) fail(pointer, "expected a non-empty array of rows");
    const std::size_t rows = v->size();
    const Vec first = vector(pointer + "/0");
    Mat out(static_cast<Eigen::Index>(rows), first.size());
    for (std::size_t i = 0; i < rows; ++i) {
      const Vec row = vector(pointer + "/" + std::to_string(i));
      if (row.size() != first.size()) fail(pointer + "/" + std::to_string(i), "ragged matrix row");
      out.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return out;
  }

  Polynomial polynomial(const std::string& pointer) const {
    const json* v = find(pointer);
    if (v == nullptr) return {};
    if (v->is_number()) return Polynomial::constant(v->get<double>());
    if (!v->is_array()) fail(pointer, "expected a number or an array of {coeff, powers} terms");
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string p = pointer + "/" + std::to_string(i);
      Monomial m;
      m.coeff = require<double>(p + "/coeff");
      if (has(p + "/powers")) {
        const Vec powers = vector(p + "/powers");
        for (Eigen::Index j = 0; j < powers.size(); ++j) {
          if (powers(j) < 0 || powers(j) != std::floor(powers(j))) fail(p + "/powers", "powers must be non-negative integers");
          m.powers.push_back(static_cast<int>(powers(j)));
        }
      }
      terms.push_back(m);
    }
    return Polynomial(std::move(terms));
  }

 private:
  const json& doc_;
  const std::string& text_;
  std::string source_;
};

FunctionalDescriptor read_functional(const Reader& r, const std::string& pointer, int default_degree) {
  FunctionalDescriptor f;
  f.degree = default_degree;
  if (!r.has(pointer)) return f;
  const std::string kind = r.get<std::string>(pointer + "/kind", "intrinsic_volume");
  try {
    f.kind = parse_functional_kind(kind);
  } catch (const Error& e) {
    r.fail(pointer + "/kind", e.what());
  }
  f.degree = r.get<int>(pointer + "/degree", default_degree);
  return f;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << source << ":" << line << ": malformed JSON (" << e.what() << ")";
    throw ConfigError(msg.str(), "", line);
  }
  if (!doc.is_object()) throw ConfigError(source + ":1: top level must be an object", "", 1);
  const Reader r(doc, text, source);
  ExperimentConfig cfg;

  try {
    cfg.command = parse_command(r.require<std::string>("/command"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.fail("/command", e.what());
  }

  const std::string kind = r.require<std::string>("/body/kind");
  BodySpec& b = cfg.body;
  if (kind == "ball") {
    b.kind = BodyKind::Ball;
    b.dimension = r.require<int>("/body/dimension");
    b.radius = r.get<double>("/body/radius", 1.0);
    if (!(b.radius > 0)) r.fail("/body/radius", "radius must be positive");
  } else if (kind == "ellipsoid") {
    b.kind = BodyKind::Ellipsoid;
    b.semiaxes = r.vector("/body/semiaxes");
    b.dimension = static_cast<int>(b.semiaxes.size());
    if ((b.semiaxes.array() <= 0).any()) r.fail("/body/semiaxes", "semiaxes must be positive");
    if (r.has("/body/dimension") && r.require<int>("/body/dimension") != b.dimension) {
      r.fail("/body/dimension", "dimension differs from the number of semiaxes");
    }
  } else if (kind == "smooth_star") {
    b.kind = BodyKind::SmoothStar;
    b.dimension = r.require<int>("/body/dimension");
    b.r0 = r.require<double>("/body/r0");
    b.terms = r.polynomial("/body/terms");
  } else {
    r.fail("/body/kind", "unknown body kind '" + kind + "' (ball | ellipsoid | smooth_star)");
  }
  if (b.dimension < 2) r.fail("/body/dimension", "dimension must be at least 2");
  const int d = b.dimension;
  if (r.has("/body/rotation")) {
    b.rotation = r.matrix("/body/rotation");
    if (b.rotation.rows() != d || b.rotation.cols() != d || orthonormality_defect(b.rotation) > 1e-10) {
      r.fail("/body/rotation", "rotation must be an orthogonal d x d matrix");
    }
  }

  if (!r.has("/family/rate")) r.fail("/family/rate", "missing required field");
  cfg.family.rate = r.polynomial("/family/rate");
  cfg.family.proportional = r.get<double>("/family/proportional", 0.0);
  cfg.family.second_order = r.polynomial("/family/second_order");

  const std::string mode = r.get<std::string>("/mode", "sections");
  if (mode == "sections") {
    cfg.mode = RecoveryMode::Sections;
  } else if (mode == "cap_volume") {
    cfg.mode = RecoveryMode::CapVolume;
  } else if (mode == "cap_intrinsic") {
    cfg.mode = RecoveryMode::CapIntrinsic;
  } else {
    r.fail("/mode", "unknown mode '" + mode + "' (sections | cap_volume | cap_intrinsic)");
  }

  cfg.k = r.get<int>("/k", 1);
  cfg.l = r.get<int>("/l", d - 1);
  switch (cfg.command) {
    case Command::VerifySections:
    case Command::SantaloDemo: cfg.mode = RecoveryMode::Sections; break;
    case Command::VerifyCaps: cfg.mode = cfg.k == d ? RecoveryMode::CapVolume : RecoveryMode::CapIntrinsic; break;
    default: break;
  }
  if (cfg.mode == RecoveryMode::Sections) {
    if (cfg.l < 1 || cfg.l > d - 1) r.fail("/l", "sections need 1 <= l <= d-1");
    if (cfg.k < 1 || cfg.k > cfg.l) r.fail("/k", "sections need 1 <= k <= l");
  } else {
    if (cfg.l != d - 1) r.fail("/l", "caps need l = d-1");
    if (cfg.k < 1 || cfg.k > d) r.fail("/k", "caps need 1 <= k <= d");
    if (cfg.mode == RecoveryMode::CapVolume && cfg.k != d && !r.has("/functional")) {
      r.fail("/k", "cap_volume mode needs k = d");
    }
  }
  if (cfg.command == Command::SantaloDemo && (d != 2 || cfg.k != 1)) r.fail("/k", "santalo-demo needs d = 2 and k = 1");

  if (cfg.l < d - 1) {
    if (r.has("/pencil/fixed")) {
      cfg.pencil_fixed = r.matrix("/pencil/fixed").transpose();
      if (cfg.pencil_fixed.rows() != d || cfg.pencil_fixed.cols() != cfg.l) {
        r.fail("/pencil/fixed", "fixed subspace needs l vectors of length d");
      }
      if (orthonormality_defect(cfg.pencil_fixed) > 1e-10) r.fail("/pencil/fixed", "fixed basis is not orthonormal");
    } else {
      cfg.pencil_fixed = Mat::Identity(d, d).rightCols(cfg.l);
    }
  }
  cfg.pencil_rotations = r.get<int>("/pencil/rotations", 64);
  if (cfg.pencil_rotations < 1) r.fail("/pencil/rotations", "must be positive");
  cfg.directions = r.get<int>("/directions", 0);
  if (cfg.directions < 0) r.fail("/directions", "must be non-negative");

  cfg.functional = read_functional(r, "/functional", cfg.k);
  const int sample_dim = cfg.mode == RecoveryMode::Sections ? cfg.l : d;
  try {
    cfg.functional.validate(sample_dim);
    if (cfg.mode == RecoveryMode::CapVolume && !cfg.functional.volume_type(d)) {
      throw UnsupportedCombination("cap_volume mode needs a volume-type functional");
    }
    if (cfg.mode == RecoveryMode::CapIntrinsic && cfg.functional.volume_type(d)) {
      throw UnsupportedCombination("cap_intrinsic mode needs a functional of degree below d");
    }
  } catch (const Error& e) {
    r.fail("/functional", e.what());
  }
  if (const json* list = r.find("/compare"); list != nullptr) {
    if (!list->is_array()) r.fail("/compare", "expected an array of functionals");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string p = "/compare/" + std::to_string(i);
      FunctionalDescriptor f = read_functional(r, p, cfg.k);
      try {
        f.validate(sample_dim);
      } catch (const Error& e) {
        r.fail(p, e.what());
      }
      cfg.compare_functionals.push_back(f);
    }
  }
  if (cfg.command == Command::FunctionalCheck && cfg.compare_functionals.empty()) {
    r.fail("/compare", "functional-check needs at least one functional to compare");
  }

  const double eps0 = r.get<double>("/grid/eps0", 0.015625);
  const double ratio = r.get<double>("/grid/ratio", 0.5);
  const int count = r.get<int>("/grid/count", 9);
  if (!(eps0 > 0 && eps0 < 1)) r.fail("/grid/eps0", "eps0 must lie in (0, 1)");
  if (!(ratio > 0 && ratio < 1)) r.fail("/grid/ratio", "ratio must lie in (0, 1)");
  if (count < 5) r.fail("/grid/count", "at least 5 grid points are required");
  cfg.grid = EpsilonGrid::geometric(eps0, ratio, count);

  cfg.rays = r.get<int>("/rays", 0);
  cfg.seed = r.get<std::uint64_t>("/seed", 0);
  cfg.jobs = r.get<int>("/jobs", 1);
  if (cfg.jobs < 1) r.fail("/jobs", "must be positive");

  cfg.tolerance.rms = r.get<double>("/tolerance/rms", cfg.tolerance.rms);
  cfg.tolerance.symmetry = r.get<double>("/tolerance/symmetry", cfg.tolerance.symmetry);
  cfg.tolerance.functional = r.get<double>("/tolerance/functional", cfg.tolerance.functional);
  cfg.tolerance.santalo = r.get<double>("/tolerance/santalo", cfg.tolerance.santalo);

  if (cfg.command == Command::Symmetry) {
    cfg.symmetry = r.matrix("/symmetry/transform");
    if (cfg.symmetry.rows() != d || cfg.symmetry.cols() != d || orthonormality_defect(cfg.symmetry) > 1e-10) {
      r.fail("/symmetry/transform", "transform must be an orthogonal d x d matrix");
    }
  }
  cfg.sandwich.lower_factor = r.get<double>("/sandwich/lower_factor", cfg.sandwich.lower_factor);
  cfg.sandwich.upper_factor = r.get<double>("/sandwich/upper_factor", cfg.sandwich.upper_factor);
  if (r.has("/sandwich/epsilons")) {
    const Vec e = r.vector("/sandwich/epsilons");
    cfg.sandwich.epsilons.assign(e.data(), e.data() + e.size());
  }
  cfg.output = r.get<std::string>("/output", cfg.output);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file", "", 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace tansec
