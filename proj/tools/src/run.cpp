#include "tansec/harness.hpp"

#include "tansec/csv.hpp"
#include "tansec/errors.hpp"
#include "tansec/properties.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tansec {

using ojson = nlohmann::ordered_json;

RadialBody build_body(const BodySpec& spec) {
  RadialBody body = [&] {
    switch (spec.kind) {
      case BodyKind::Ball: return RadialBody::ball(spec.dimension, spec.radius);
      case BodyKind::Ellipsoid: return RadialBody::ellipsoid(spec.semiaxes);
      case BodyKind::SmoothStar: return RadialBody::smooth_star(spec.dimension, spec.r0, spec.terms);
    }
    throw Error("unknown body kind");
  }();
  if (spec.rotation.size() > 0) body = body.rotated(spec.rotation);
  return body;
}

PerturbationFamily build_family(const ExperimentConfig& cfg) {
  // The rate polynomials are written in the body's own coordinates.
  BodySpec local = cfg.body;
  local.rotation = Mat();
  PerturbationFamily family(build_body(local), cfg.family.rate, cfg.family.proportional, cfg.family.second_order);
  if (cfg.body.rotation.size() > 0) family = family.rotated(cfg.body.rotation);
  family.validate(direction_grid(cfg.dimension(), 256).directions);
  return family;
}

std::vector<AffineFlat> build_flats(const ExperimentConfig& cfg, const RadialBody& body) {
  const int d = cfg.dimension();
  if (cfg.command == Command::Symmetry) {
    const int n = cfg.directions > 0 ? cfg.directions : (d == 2 ? 256 : 1024);
    return tangent_hyperplanes(body, close_under(direction_grid(d, n).directions, cfg.symmetry));
  }
  const SubspacePencil pencil =
      cfg.l == d - 1 ? SubspacePencil::whole_space(d) : SubspacePencil::about(cfg.pencil_fixed, cfg.pencil_rotations);
  return tangent_flats(body, cfg.l, pencil, cfg.directions);
}

RecoveryOptions build_recovery_options(const ExperimentConfig& cfg) {
  RecoveryOptions opt;
  opt.mode = cfg.mode;
  opt.functional = cfg.functional;
  opt.grid = cfg.grid;
  opt.sweep.seed = cfg.seed;
  opt.sweep.sampling.rays = cfg.rays;
  opt.jobs = cfg.jobs;
  return opt;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

void write_tables(const std::filesystem::path& dir, const RecoveryReport& report,
                  const std::vector<AffineFlat>& flats) {
  write_file(dir / "measurements.csv", render([&](std::ostream& o) { write_measurement_csv(o, report); }));
  write_file(dir / "limits.csv", render([&](std::ostream& o) { write_limit_csv(o, report); }));
  write_file(dir / "plot_data.csv", render([&](std::ostream& o) { write_plot_csv(o, report); }));
  write_file(dir / "field.csv", render([&](std::ostream& o) { write_field_csv(o, report); }));
  write_file(dir / "flats.csv", render([&](std::ostream& o) { write_flats_csv(o, flats); }));
}

ojson functional_json(const FunctionalDescriptor& f) {
  return ojson{{"kind", std::string(to_string(f.kind))}, {"degree", f.degree}};
}

ojson report_json(const RecoveryReport& r, const ExperimentConfig& cfg) {
  ojson j;
  j["mode"] = std::string(to_string(r.mode));
  j["functional"] = functional_json(r.functional);
  j["alpha"] = scaling_exponent(sweep_mode(r.mode), r.functional, r.ambient_dim);
  j["d"] = r.ambient_dim;
  j["l"] = r.flat_dim;
  j["k"] = cfg.k;
  j["flats"] = r.samples.size();
  j["unreliable"] = r.unreliable;
  j["reliability_ok"] = r.reliability_ok;
  j["rms_error"] = r.rms_error;
  j["max_error"] = r.max_error;
  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (const auto& s : r.samples) {
    if (!s.reliable) continue;
    cmin = std::min(cmin, s.c_hat);
    cmax = std::max(cmax, s.c_hat);
  }
  j["c_hat_min"] = std::isfinite(cmin) ? cmin : 0.0;
  j["c_hat_max"] = cmax;
  ojson failures = ojson::array();
  for (const auto& s : r.samples) {
    if (!s.reliable) failures.push_back({{"flat_id", s.flat_id}, {"reason", s.failure}});
  }
  j["failures"] = failures;
  return j;
}

struct Outcome {
  bool pass = false;
  ojson details;
};

Outcome recovery_command(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const PerturbationFamily family = build_family(cfg);
  const auto flats = build_flats(cfg, family.base());
  const RecoveryReport r = recover_field(family, flats, build_recovery_options(cfg));
  write_tables(dir, r, flats);
  Outcome o;
  o.details = report_json(r, cfg);
  o.details["tolerance_rms"] = cfg.tolerance.rms;
  o.pass = r.reliability_ok && r.rms_error <= cfg.tolerance.rms;
  return o;
}

Outcome symmetry_command(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const PerturbationFamily family = build_family(cfg);
  const auto flats = build_flats(cfg, family.base());
  const RecoveryReport r = recover_field(family, flats, build_recovery_options(cfg));
  write_tables(dir, r, flats);
  const SymmetryCertificate c = symmetry_check(r, family.base(), cfg.symmetry, cfg.tolerance.symmetry);
  write_file(dir / "symmetry.csv", render([&](std::ostream& o) {
               o << "flat_id,partner,defect,tolerance\n";
               for (std::size_t i = 0; i < c.defects.size(); ++i) {
                 o << r.samples[i].flat_id << ',' << c.pair_index[i] << ',' << format_double(c.defects[i]) << ','
                   << format_double(c.tolerances[i]) << '\n';
               }
             }));
  Outcome o;
  o.details = report_json(r, cfg);
  o.details["symmetry"] = {{"body_residual", c.body_residual}, {"max_defect", c.max_defect},
                           {"unmatched", c.unmatched},        {"even", c.even},
                           {"pass", c.pass}};
  o.pass = c.pass;
  return o;
}

Outcome sandwich_command(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const PerturbationFamily family = build_family(cfg);
  const auto flats = build_flats(cfg, family.base());
  std::ostringstream csv;
  csv << "flat_id,epsilon,c,lower_margin,upper_margin,holds\n";
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  SamplingOptions so;
  so.rays = cfg.rays;
  for (double eps : cfg.sandwich.epsilons) {
    for (const auto& f : flats) {
      const double c = ground_truth_c(family, f.frame);
      const ConvexSample s = section_body(family, f, eps, so);
      const SandwichResult res =
          sandwich_check(s, dupin_hull(f.frame), cfg.sandwich.lower_factor * c, cfg.sandwich.upper_factor * c, eps);
      if (!res.holds) ++failures;
      worst = std::min({worst, res.upper_margin, res.lower_margin});
      csv << f.id << ',' << format_double(eps) << ',' << format_double(c) << ',' << format_double(res.lower_margin)
          << ',' << format_double(res.upper_margin) << ',' << (res.holds ? 1 : 0) << '\n';
    }
  }
  write_file(dir / "sandwich.csv", csv.str());
  Outcome o;
  o.details = {{"flats", flats.size()},
               {"epsilons", cfg.sandwich.epsilons},
               {"lower_factor", cfg.sandwich.lower_factor},
               {"upper_factor", cfg.sandwich.upper_factor},
               {"failures", failures},
               {"worst_margin", worst}};
  o.pass = failures == 0;
  return o;
}

Outcome functional_command(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const PerturbationFamily family = build_family(cfg);
  const auto flats = build_flats(cfg, family.base());
  RecoveryOptions opt = build_recovery_options(cfg);
  const RecoveryReport base = recover_field(family, flats, opt);
  write_tables(dir, base, flats);
  Outcome o;
  o.details["base"] = report_json(base, cfg);
  o.details["comparisons"] = ojson::array();
  o.pass = base.reliability_ok;
  std::ostringstream csv;
  csv << "flat_id,functional,c_hat\n";
  for (const auto& s : base.samples) csv << s.flat_id << ',' << base.functional.label() << ',' << format_double(s.c_hat) << '\n';
  for (const auto& f : cfg.compare_functionals) {
    opt.functional = f;
    opt.mode = cfg.mode;
    if (cfg.mode != RecoveryMode::Sections) {
      opt.mode = f.volume_type(cfg.dimension()) ? RecoveryMode::CapVolume : RecoveryMode::CapIntrinsic;
    }
    const RecoveryReport r = recover_field(family, flats, opt);
    double sq = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      const auto& a = base.samples[i];
      const auto& b = r.samples[i];
      csv << b.flat_id << ',' << f.label() << ',' << format_double(b.c_hat) << '\n';
      if (!a.reliable || !b.reliable) continue;
      const double rel = a.c_hat > cfg.tolerance.functional ? (b.c_hat - a.c_hat) / a.c_hat : b.c_hat - a.c_hat;
      sq += rel * rel;
      ++n;
    }
    const double rms = n > 0 ? std::sqrt(sq / n) : 0.0;
    const bool ok = r.reliability_ok && rms <= cfg.tolerance.functional;
    o.pass = o.pass && ok;
    o.details["comparisons"].push_back(
        {{"functional", functional_json(f)}, {"rms_vs_base", rms}, {"pass", ok}, {"report", report_json(r, cfg)}});
  }
  write_file(dir / "functional_check.csv", csv.str());
  return o;
}

Outcome santalo_command(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const PerturbationFamily family = build_family(cfg);
  const auto flats = build_flats(cfg, family.base());
  const RecoveryReport r = recover_field(family, flats, build_recovery_options(cfg));
  write_tables(dir, r, flats);
  const SantaloResult s = santalo_first_order(r, cfg.tolerance.santalo);
  Outcome o;
  o.details = report_json(r, cfg);
  o.details["santalo"] = {{"applicable", s.applicable},
                          {"holds", s.holds},
                          {"limit_spread", s.limit_spread},
                          {"field_spread", s.field_spread}};
  o.pass = s.holds;
  return o;
}

Outcome properties_command(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const auto results = all_properties(cfg.seed);
  Outcome o;
  o.pass = true;
  o.details["properties"] = ojson::array();
  std::ostringstream csv;
  csv << "name,pass,worst,tolerance\n";
  for (const auto& p : results) {
    o.pass = o.pass && p.pass;
    o.details["properties"].push_back(
        {{"name", p.name}, {"pass", p.pass}, {"worst", p.worst}, {"tolerance", p.tolerance}, {"detail", p.detail}});
    csv << p.name << ',' << (p.pass ? 1 : 0) << ',' << format_double(p.worst) << ',' << format_double(p.tolerance)
        << '\n';
  }
  write_file(dir / "properties.csv", csv.str());
  return o;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.output);
  std::filesystem::create_directories(dir);
  Outcome o;
  switch (cfg.command) {
    case Command::VerifySections:
    case Command::VerifyCaps:
    case Command::Recover: o = recovery_command(cfg, dir); break;
    case Command::Symmetry: o = symmetry_command(cfg, dir); break;
    case Command::SandwichCheck: o = sandwich_command(cfg, dir); break;
    case Command::FunctionalCheck: o = functional_command(cfg, dir); break;
    case Command::SantaloDemo: o = santalo_command(cfg, dir); break;
    case Command::Properties: o = properties_command(cfg, dir); break;
  }
  ojson report;
  report["command"] = std::string(to_string(cfg.command));
  report["seed"] = cfg.seed;
  report["passed"] = o.pass;
  report["result"] = o.details;
  write_file(dir / "report.json", report.dump(2) + "\n");

  RunResult r;
  r.passed = o.pass;
  r.exit_code = o.pass ? 0 : 1;
  r.summary = std::string(to_string(cfg.command)) + (o.pass ? ": pass" : ": FAIL");
  return r;
}

}  // namespace tansec
