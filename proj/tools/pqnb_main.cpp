#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pqnb/structfile.hpp"

using namespace pqnb;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;

struct CommonOpts {
  std::string file;
  std::string report_path;
  std::optional<uint64_t> seed;
  bool trust = false;
};

StructureFile load(const CommonOpts& o) {
  StructureFile f = load_structure_file(o.file);
  if (o.seed) f.policy.seed = *o.seed;
  return f;
}

void write_report(const CommonOpts& o, const VerificationReport& rep) {
  std::cout << rep.to_text();
  if (!o.report_path.empty()) {
    std::ofstream out(o.report_path);
    out << rep.to_json_string();
  }
}

void write_output(const std::string& path, const StructureFile& f) {
  std::ofstream out(path);
  if (!out) throw StructFileError("cannot write " + path, 0);
  out << emit_structure_file(f);
}

StructureFile file_from_pqnb(const PqNbStructure& s, const SamplingPolicy& policy) {
  StructureFile f;
  f.man = s.man;
  f.P = s.P;
  f.A = s.A;
  f.phi = s.phi;
  f.H = s.H;
  f.policy = policy;
  return f;
}

int run_check(const CommonOpts& o, std::string kind) {
  StructureFile f = load(o);
  if (kind.empty()) kind = f.sigma ? "gc" : "pqnb";
  VerificationReport rep;
  if (kind == "poisson") {
    if (!f.P) throw StructFileError("poisson check needs a bivector P", 0);
    rep = check_poisson(*f.P, f.policy);
  } else if (kind == "pn") {
    rep = check_pn(f.bivector_or_zero(), f.endo_or_zero(), f.policy);
  } else if (kind == "pqn") {
    rep = check_pqn(f.bivector_or_zero(), f.endo_or_zero(), f.form_or_zero("phi", 3), f.policy);
  } else if (kind == "pqnb") {
    rep = check_pqnb(f.as_pqnb(), f.policy);
  } else if (kind == "gc") {
    rep = check_gc_background(f.as_gc(), f.policy);
  } else {
    throw StructFileError("unknown kind '" + kind + "'", 0);
  }
  write_report(o, rep);
  return rep.passed() ? kExitPass : kExitFail;
}

int run_gauge(const CommonOpts& o, const std::string& out_path, const std::string& gauge_name) {
  StructureFile f = load(o);
  const TensorField* B = f.gauge(gauge_name);
  if (!B && f.gauges.size() == 1) B = &f.gauges[0].second;
  if (!B) throw StructFileError("no gauge block named '" + gauge_name + "'", 0);
  PqNbStructure out = gauge_transform(*B, f.as_pqnb(), f.policy, o.trust);
  write_output(out_path, file_from_pqnb(out, f.policy));
  std::cout << "gauged structure written to " << out_path << "\n";
  return kExitPass;
}

int run_compose(const CommonOpts& o, const std::string& out_path) {
  StructureFile f = load(o);
  if (f.gauges.size() < 2) throw StructFileError("compose needs two gauge blocks", 0);
  const TensorField& B1 = f.gauges[0].second;
  const TensorField& B2 = f.gauges[1].second;
  PqNbStructure s = f.as_pqnb();
  PqNbStructure sequential = gauge_transform(B1, gauge_transform(B2, s, f.policy, true), f.policy, true);
  PqNbStructure combined = gauge_transform(compose_gauges(B1, B2), s, f.policy, o.trust);
  ZeroVerdict v = field_is_zero(sequential.P - combined.P, f.policy)
                      .merge(field_is_zero(sequential.A - combined.A, f.policy))
                      .merge(field_is_zero(sequential.phi - combined.phi, f.policy))
                      .merge(field_is_zero(sequential.H - combined.H, f.policy));
  std::cout << "composition law: " << v.to_string() << "\n";
  write_output(out_path, file_from_pqnb(combined, f.policy));
  return v.is_zero() ? kExitPass : kExitFail;
}

int run_conformal(const CommonOpts& o, const std::string& out_path, const std::string& casimir) {
  StructureFile f = load(o);
  if (!f.P) throw StructFileError("conformal change needs a bivector P", 0);
  Expr fc = parse_expr(casimir, f.man->chart);
  ConformalChange cc = conformal_change(*f.P, fc, f.policy);
  std::cout << cc.casimir.to_text() << cc.poisson.to_text();
  StructureFile out = f;
  out.P = cc.scaled;
  write_output(out_path, out);
  return cc.poisson.passed() ? kExitPass : kExitFail;
}

int run_reduce(const CommonOpts& o, const std::string& out_path) {
  StructureFile f = load(o);
  AdaptedReductionSetup setup = f.reduction_setup();
  ReduceOutcome out = reduce(setup, f.as_pqnb(), f.policy);
  write_report(o, out.hypotheses);
  if (!out.ok()) {
    std::cout << "reduction failed: " << out.failure << "\n";
    return kExitFail;
  }
  if (!out_path.empty()) write_output(out_path, file_from_pqnb(*out.reduced, f.policy));
  std::cout << "reduced structure on (";
  const auto& qc = setup.quotient()->chart->coords();
  for (size_t i = 0; i < qc.size(); ++i) std::cout << (i ? "," : "") << qc[i];
  std::cout << ")" << (out_path.empty() ? "" : " written to " + out_path) << "\n";
  return kExitPass;
}

int run_commute(const CommonOpts& o, const std::string& gauge_name) {
  StructureFile f = load(o);
  const TensorField* B = f.gauge(gauge_name);
  if (!B && f.gauges.size() == 1) B = &f.gauges[0].second;
  if (!B) throw StructFileError("no gauge block named '" + gauge_name + "'", 0);
  AdaptedReductionSetup setup = f.reduction_setup();
  CommuteOutcome out = gauge_reduce_commute(setup, f.as_pqnb(), *B, f.policy);
  write_report(o, out.preconditions);
  if (!out.failure.empty()) {
    std::cout << "commuting square not evaluated: " << out.failure << "\n";
    return kExitFail;
  }
  std::cout << "path equality: " << out.equality.to_string() << "\n";
  return out.ok() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic verifier for Poisson quasi-Nijenhuis structures with background"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string kind, out_path, gauge_name = "B", casimir;

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("file", opts.file, "structure file")->required();
    cmd->add_option("--report", opts.report_path, "write a JSON report");
    cmd->add_option("--seed", opts.seed, "override the policy seed");
    cmd->add_flag("--trust", opts.trust, "skip re-verification of transformed structures");
    if (with_out) cmd->add_option("--out", out_path, "output structure file");
  };

  CLI::App* c_check = app.add_subcommand("check", "verify the declared structure");
  add_common(c_check, false);
  c_check->add_option("--kind", kind, "poisson|pn|pqn|pqnb|gc (default: gc if sigma present, else pqnb)");

  CLI::App* c_gauge = app.add_subcommand("gauge", "apply the gauge transformation from the file's gauge block");
  add_common(c_gauge, true);
  c_gauge->get_option("--out")->required();
  c_gauge->add_option("--gauge-name", gauge_name, "which gauge block to use");

  CLI::App* c_compose = app.add_subcommand("compose", "check the composition law on two gauge blocks");
  add_common(c_compose, true);
  c_compose->get_option("--out")->required();

  CLI::App* c_conf = app.add_subcommand("conformal", "conformal change of P by exp(f) for a Casimir f");
  add_common(c_conf, true);
  c_conf->get_option("--out")->required();
  c_conf->add_option("--casimir", casimir, "the Casimir function f")->required();

  CLI::App* c_reduce = app.add_subcommand("reduce", "adapted-chart reduction");
  add_common(c_reduce, true);

  CLI::App* c_commute = app.add_subcommand("commute", "gauge/reduction commuting square");
  add_common(c_commute, false);
  c_commute->add_option("--gauge-name", gauge_name, "which gauge block to use");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_check)) return run_check(opts, kind);
    if (app.got_subcommand(c_gauge)) return run_gauge(opts, out_path, gauge_name);
    if (app.got_subcommand(c_compose)) return run_compose(opts, out_path);
    if (app.got_subcommand(c_conf)) return run_conformal(opts, out_path, casimir);
    if (app.got_subcommand(c_reduce)) return run_reduce(opts, out_path);
    if (app.got_subcommand(c_commute)) return run_commute(opts, gauge_name);
  } catch (const VerificationFailure& vf) {
    std::cout << vf.report.to_text();
    return kExitFail;
  } catch (const StructFileError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ParseError& e) {
    std::cerr << "expression error: " << e.what() << " (offset " << e.position << ")\n";
    return kExitBadInput;
  } catch (const ReductionError& e) {
    std::cerr << "reduction input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const GaugeError& e) {
    std::cerr << "gauge error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
