#include "nkv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "nkv/deformation.hpp"
#include "nkv/errors.hpp"
#include "nkv/lagrangian.hpp"
#include "nkv/lie_examples.hpp"
#include "nkv/model_io.hpp"
#include "nkv/random.hpp"
#include "nkv/registry.hpp"
#include "nkv/su2_classify.hpp"
#include "nkv/twistor.hpp"

namespace nkv {

namespace {

struct Run {
  Json summary = Json::object();
  std::vector<CheckSuite> suites;
  std::vector<std::string> models;
};

// errors that mean "the input was read fine but an identity failed"
bool is_check_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::ModelInvalid:
    case ErrorKind::NotLagrangian:
    case ErrorKind::NotNaturallyReductive:
    case ErrorKind::NotSubalgebra:
    case ErrorKind::Cyc2Violated:
    case ErrorKind::RNotReducing:
    case ErrorKind::SpectraOverlap:
    case ErrorKind::TorsionNotTangential:
      return true;
    default:
      return false;
  }
}

CheckReport failure_from(const std::string& name, const NkError& e) {
  CheckReport c = make_check(name, "operation completes without error",
                             std::numeric_limits<double>::infinity(), 0.0, e.what());
  c.status = Status::Fail;
  return c;
}

// Aggregates the same suite over many samples: worst residual per check.
class SuiteAggregate {
 public:
  explicit SuiteAggregate(std::string name) : name_(std::move(name)) {}
  void add(const CheckSuite& s) {
    for (const CheckReport& c : s.checks) {
      auto [it, fresh] = rows_.try_emplace(c.name, c);
      Row& r = counts_[c.name];
      r.total++;
      if (c.passed()) r.passed++;
      if (c.status == Status::Fail) r.failed++;
      if (!fresh) {
        CheckReport& agg = it->second;
        if (!(c.residual <= agg.residual)) agg.residual = c.residual;
        if (c.status == Status::Fail) {
          agg.status = Status::Fail;
          if (agg.detail.empty()) agg.detail = c.detail;
        } else if (agg.status == Status::Skipped && c.status == Status::Pass) {
          agg.status = Status::Pass;
        }
      }
    }
  }
  CheckSuite result() const {
    CheckSuite s{name_, {}};
    for (const auto& [name, c] : rows_) {
      CheckReport r = c;
      const Row& n = counts_.at(name);
      std::string tally = std::to_string(n.passed) + "/" + std::to_string(n.total) + " pass";
      r.detail = r.status == Status::Fail && !c.detail.empty() ? tally + "; " + c.detail : tally;
      s.add(r);
    }
    return s;
  }

 private:
  struct Row {
    std::size_t total = 0, passed = 0, failed = 0;
  };
  std::string name_;
  std::map<std::string, CheckReport> rows_;
  std::map<std::string, Row> counts_;
};

Json spectrum_json(const std::vector<EigenGroup>& groups) {
  Json out = Json::array();
  for (const EigenGroup& g : groups) out.push_back({{"eigenvalue", g.eigenvalue}, {"multiplicity", g.multiplicity}});
  return out;
}

Matrix model_columns(const NKModel& m, const Matrix& input) {
  Matrix out(input.rows(), input.cols());
  for (std::size_t j = 0; j < input.cols(); ++j) out.set_column(j, m.from_input_coordinates(input.column(j)));
  return out;
}

// ---- verify ----

void cmd_verify(const std::string& spec, double tol, const std::string& export_file, Run& run) {
  NKModel m = resolve_model(spec, tol);
  run.models.push_back(m.name());
  if (!export_file.empty()) write_json_file(export_file, model_to_json(m));
  CheckSuite base = verify_model(m);
  base.name = "model";
  run.suites.push_back(base);
  run.summary["dim"] = m.dim();
  if (!base.all_passed()) {
    run.suites.push_back(CheckSuite{"torsion", {make_skipped("torsion", "T = -J A", "model invalid")}});
    return;
  }
  TorsionData td = torsion(m);
  td.checks.name = "torsion";
  run.suites.push_back(td.checks);
  ROperatorReport r = r_operator(m);
  r.checks.name = "r-operator";
  run.suites.push_back(r.checks);
  TypeConstantReport tc = type_constant(m);
  run.summary["spectrum"] = spectrum_json(r.spectrum);
  run.summary["kernel_dim"] = r.kernel_dim;
  run.summary["is_strict"] = r.is_strict;
  run.summary["alpha_type"] = tc.alpha_type;
  run.summary["alpha_type_residual"] = tc.residual;
  run.summary["alpha_type_reliable"] = tc.reliable;
  run.summary["scalar_curvature"] = tc.scalar_curvature;
}

// ---- lagrangian ----

CheckSuite analyse_lagrangian(const LagrangianSubspace& l, Json& info) {
  const NKModel& m = l.model();
  CheckSuite s{"lagrangian", {}};
  s.append(lemma1_check(l));
  try {
    SplitResult split = split_by_r(l);
    s.append(split.checks);
    info["dim_l_k"] = split.l_k.cols();
    Json groups = Json::array();
    for (const SplitGroup& g : split.groups)
      groups.push_back({{"eigenvalue", g.eigenvalue}, {"multiplicity", g.multiplicity}, {"dim_in_l", g.dim_in_l}});
    info["groups"] = groups;
  } catch (const NkError& e) {
    if (!is_check_failure(e.kind())) throw;
    s.add(failure_from("r-reduces", e));
  }
  if (m.dim() == 6) {
    TypeConstantReport tc = type_constant(m);
    if (tc.is_strict && tc.reliable) s.append(theorem_a_check(m, l));
  }
  if (m.blocks().size() == 2) {
    try {
      s.append(split_by_spectrum(l).checks);
    } catch (const NkError& e) {
      if (e.kind() != ErrorKind::SpectraOverlap) throw;
      s.add(make_skipped("direct-sum", "TL = (TL cap TM1) + (TL cap TM2)", "factor spectra overlap"));
    }
  }
  return s;
}

void cmd_lagrangian(std::string spec, const std::string& basis_file, std::size_t random_count,
                    std::uint64_t seed, double tol, Run& run) {
  std::optional<LagrangianInput> input;
  if (!basis_file.empty()) {
    input = lagrangian_from_json(read_json_file(basis_file));
    if (spec.empty()) spec = input->model;
  }
  if (spec.empty()) throw NkError(ErrorKind::BadInput, "no model given");
  NKModel m = resolve_model(spec, tol);
  run.models.push_back(m.name());
  require_valid(m);
  if (input) {
    LagrangianSubspace l = make_lagrangian(m, model_columns(m, input->basis));
    Json info;
    CheckSuite s = analyse_lagrangian(l, info);
    run.suites.push_back(s);
    run.summary = info;
    return;
  }
  if (random_count == 0) throw NkError(ErrorKind::BadInput, "give --basis FILE or --random N");
  SuiteAggregate agg("lagrangian");
  std::size_t passed = 0;
  std::map<std::string, std::size_t> l_k_dims;
  std::map<std::string, std::size_t> group_dims;
  int iterations = 0;
  for (std::size_t i = 0; i < random_count; ++i) {
    SamplerStats stats;
    LagrangianSubspace l = random_lagrangian(m, seed + i, &stats);
    iterations += stats.iterations;
    Json info;
    CheckSuite s = analyse_lagrangian(l, info);
    if (s.all_passed()) ++passed;
    agg.add(s);
    if (info.contains("dim_l_k")) l_k_dims[std::to_string(info["dim_l_k"].get<std::size_t>())]++;
    if (info.contains("groups"))
      for (const Json& g : info["groups"]) {
        char key[96];
        std::snprintf(key, sizeof key, "%.9g:%zu", g["eigenvalue"].get<double>(), g["dim_in_l"].get<std::size_t>());
        group_dims[key]++;
      }
  }
  run.suites.push_back(agg.result());
  run.summary["samples"] = random_count;
  run.summary["passed"] = passed;
  run.summary["dim_l_k_histogram"] = l_k_dims;
  run.summary["eigen_group_dims"] = group_dims;
  run.summary["sampler_iterations"] = iterations;
}

// ---- twistor ----

void cmd_twistor(std::size_t n, double kappa, std::uint64_t seed, std::size_t random_count, double tol,
                 const std::string& export_file, Run& run) {
  TwistorModel t = build_twistor_model(n, kappa, tol);
  run.models.push_back(t.model.name());
  if (!export_file.empty()) write_json_file(export_file, model_to_json(t.model));
  CheckSuite base = verify_model(t.model);
  base.name = "model";
  run.suites.push_back(base);
  run.suites.push_back(check_torsion_axioms(t));

  ROperatorReport r = r_operator(t.model);
  r.checks.name = "r-operator";
  const double lh = 4.0 * kappa * kappa, lv = 4.0 * static_cast<double>(n) * kappa * kappa;
  std::vector<std::pair<double, std::size_t>> expected{{lh, 4 * n}, {lv, 2}};
  std::sort(expected.begin(), expected.end());
  if (n == 1) expected = {{lh, 6}};
  bool match = r.spectrum.size() == expected.size();
  double spec_res = 0.0;
  for (std::size_t i = 0; match && i < expected.size(); ++i) {
    match = r.spectrum[i].multiplicity == expected[i].second;
    spec_res = std::max(spec_res, std::abs(r.spectrum[i].eigenvalue - expected[i].first));
  }
  CheckReport sc = make_check("spectrum", "r has eigenvalues 4 kappa^2 on H and 4 n kappa^2 on V", spec_res,
                              spectrum_group_tol(t.model));
  if (!match) sc.status = Status::Fail;
  r.checks.add(sc);
  run.suites.push_back(r.checks);
  run.summary["spectrum"] = spectrum_json(r.spectrum);

  Rng rng(seed);
  double theta = 2.0 * M_PI * rng.uniform();
  Vector w(t.model.dim(), 0.0);
  w[t.u_index()] = std::cos(theta);
  w[t.v_index()] = std::sin(theta);
  PhiMap phi = phi_maps(t, w);
  phi.checks.name = "phi";
  run.suites.push_back(phi.checks);

  const std::string anchor_b = "minimal Lagrangians in twistor models: block structure and trace-free C";
  if (n < 2) {
    CheckSuite skipped{"theorem-b", {}};
    skipped.add(make_skipped("theorem-b", anchor_b, "requires n > 1: the two r-eigenvalues coincide"));
    skipped.add(vertical_geodesic_note(t, nullptr));
    run.suites.push_back(skipped);
    run.summary["theorem_b"] = "skipped: requires n > 1";
    return;
  }
  TheoremBReport explicit_rep = theorem_b_linear_check(t, twistor_explicit_lagrangian(t));
  explicit_rep.checks.name = "theorem-b-explicit";
  explicit_rep.checks.add(vertical_geodesic_note(t, &explicit_rep));
  run.suites.push_back(explicit_rep.checks);

  SuiteAggregate agg("theorem-b-random");
  std::set<std::size_t> dims, literal_dims;
  bool literal_trace = true, literal_vertical = true;
  for (std::size_t i = 0; i < random_count; ++i) {
    LagrangianSubspace l = random_lagrangian(t.model, seed + i);
    TheoremBReport rep = theorem_b_linear_check(t, l);
    agg.add(rep.checks);
    dims.insert(rep.constrained.dimension);
    literal_dims.insert(rep.literal.dimension);
    literal_trace = literal_trace && rep.literal.trace_contained;
    literal_vertical = literal_vertical && rep.literal.vertical_contained;
  }
  if (random_count > 0) run.suites.push_back(agg.result());
  Json b;
  b["explicit_constrained_dimension"] = explicit_rep.constrained.dimension;
  b["random_samples"] = random_count;
  b["constrained_dimensions"] = dims;
  // block + pluriminimal rows without the cyc2 rows
  b["literal_dimensions"] = literal_dims;
  b["literal_trace_contained"] = literal_trace && explicit_rep.literal.trace_contained;
  b["literal_vertical_contained"] = literal_vertical && explicit_rep.literal.vertical_contained;
  run.summary["theorem_b"] = b;
}

// ---- classify-su2 ----

void cmd_classify(std::size_t samples, std::uint64_t seed, double tol, Run& run) {
  ThreeSymmetricSpace t = s3s3_space(1.0, tol);
  run.models.push_back("s3s3");
  CheckSuite structure = t.checks;
  structure.name = "s3s3-structure";
  NaturalReductivityReport nr = check_naturally_reductive(t);
  structure.add(make_check("naturally-reductive", "B([X,Y]_m, Z) + B(Y, [X,Z]_m) = 0", nr.residual, tol));
  run.suites.push_back(structure);
  EfFrameReport ef = ef_frame(t);
  run.suites.push_back(ef.checks);

  ClassificationResult res = enumerate_solutions(samples, seed, tol);
  run.suites.push_back(verify_totally_geodesic(res, t, tol));

  auto entry_json = [](const GraphEntry& e) {
    return Json{{"candidate", e.label},
                {"A", matrix_to_json(e.a)},
                {"lagrangian", e.lagrangian},
                {"subalgebra", e.subalgebra},
                {"lagrangian_residual", e.lagrangian_residual},
                {"subalgebra_residual", e.subalgebra_residual},
                {"signature", e.signature},
                {"det", e.det}};
  };
  Json sols = Json::array(), classes = Json::array(), factors = Json::array();
  for (const GraphEntry& e : res.solutions) sols.push_back(entry_json(e));
  for (const ListedClassRow& row : res.listed_classes) {
    Json j = entry_json(row.entry);
    j["found_by_enumeration"] = row.found_by_enumeration;
    j["verdict"] = row.verdict;
    classes.push_back(j);
  }
  for (const FactorEntry& f : res.factors)
    factors.push_back({{"candidate", f.label}, {"lagrangian", f.lagrangian}, {"subalgebra", f.subalgebra}});
  run.summary["samples"] = res.samples;
  run.summary["converged"] = res.converged;
  run.summary["solutions"] = sols;
  run.summary["listed_classes"] = classes;
  run.summary["factors"] = factors;
  run.summary["discrepancies"] = res.discrepancies;
  run.summary["omega_ef_constant"] = ef.c;
}

// ---- deform ----

std::vector<std::pair<std::string, Matrix>> presentations(const std::string& which) {
  auto k = [](std::function<Vector(const Vector&)> f) {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < 3; ++i) cols.push_back(f(basis_vector(3, i)));
    return Matrix::from_columns(cols, 9);
  };
  auto put = [](std::initializer_list<int> signs, const Vector& x) {
    Vector v(9, 0.0);
    std::size_t f = 0;
    for (int s : signs) {
      for (std::size_t i = 0; i < 3; ++i) v[3 * f + i] = s * x[i];
      ++f;
    }
    return v;
  };
  if (which == "diagonal")
    return {{"{(x,x,0)}", k([&](const Vector& x) { return put({1, 1, 0}, x); })},
            {"{(0,0,x)}", k([&](const Vector& x) { return put({0, 0, 1}, x); })}};
  if (which == "first-factor")
    return {{"{(x,0,0)}", k([&](const Vector& x) { return put({1, 0, 0}, x); })},
            {"{(0,x,x)}", k([&](const Vector& x) { return put({0, 1, 1}, x); })}};
  if (which == "second-factor")
    return {{"{(0,x,0)}", k([&](const Vector& x) { return put({0, 1, 0}, x); })},
            {"{(x,0,x)}", k([&](const Vector& x) { return put({1, 0, 1}, x); })}};
  return {};
}

void deform_one(const LagrangianSubspace& l, const Tensor3* bracket, const std::string& label, double tol,
                Run& run, Json& rows) {
  StarOperator star = build_star(l);
  CheckSuite s = star.checks;
  s.name = "deform:" + label;
  s.append(eigenvalue_chain_check(star, tol));
  Json row;
  row["presentation"] = label;
  row["alpha"] = star.alpha;
  row["a"] = star.a;
  row["lambda"] = 9.0 * star.alpha;
  row["scalar_curvature"] = 30.0 * star.alpha;
  if (bracket) {
    InvariantComplex cx = build_invariant_complex(*bracket, star, tol);
    s.append(cx.checks);
    DeformationSpectrum sp = deformation_spectrum(star, cx, tol);
    s.append(sp.checks);
    row["solution_dimension"] = sp.dimension();
    row["lambda"] = sp.lambda;
    row["scalar_curvature"] = sp.scalar_curvature;
    row["lambda_over_s"] = sp.ratio;
    row["solutions"] = matrix_to_json(sp.solutions.transpose());
  } else {
    s.add(make_skipped("hodge-eigenvalue", "Laplacian theta = 9 alpha theta", "no homogeneous presentation of L"));
    row["lambda_over_s"] = (9.0 * star.alpha) / (30.0 * star.alpha);
  }
  run.suites.push_back(s);
  rows.push_back(row);
}

void cmd_deform(const std::string& spec, const std::string& lagrangian, std::uint64_t seed, double tol, Run& run) {
  NKModel m = resolve_model(spec, tol);
  run.models.push_back(m.name());
  require_valid(m);
  Json rows = Json::array();
  std::optional<ThreeSymmetricSpace> space = resolve_space(spec, tol);
  const std::string which = lagrangian.empty() ? "diagonal" : lagrangian;
  auto pres = presentations(which);
  if (space && space->lie_dim() == 9 && !pres.empty()) {
    for (const auto& [label, k] : pres) {
      InvariantLagrangian il = invariant_lagrangian_from_subalgebra(*space, m, k, label);
      deform_one(il.l, &il.bracket, which + " " + label, tol, run, rows);
    }
  } else if (!lagrangian.empty() && lagrangian.size() > 5 &&
             lagrangian.compare(lagrangian.size() - 5, 5, ".json") == 0) {
    LagrangianInput in = lagrangian_from_json(read_json_file(lagrangian));
    deform_one(make_lagrangian(m, model_columns(m, in.basis)), nullptr, lagrangian, tol, run, rows);
  } else if (lagrangian.empty()) {
    deform_one(random_lagrangian(m, seed), nullptr, "random seed " + std::to_string(seed), tol, run, rows);
  } else {
    throw NkError(ErrorKind::BadInput, "unknown Lagrangian \"" + lagrangian + "\" for model " + spec);
  }
  run.summary["lagrangians"] = rows;
}

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void print_table(const std::vector<CheckSuite>& suites, std::ostream& err) {
  for (const CheckSuite& s : suites) {
    err << "[" << s.name << "]\n";
    for (const CheckReport& c : s.checks) {
      char line[256];
      std::snprintf(line, sizeof line, "  %-34s %-7s %10s <= %-10s", c.name.c_str(), to_string(c.status),
                    fmt_g(c.residual).c_str(), fmt_g(c.tolerance).c_str());
      err << line;
      if (!c.detail.empty()) err << "  " << c.detail;
      err << "\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic verification of nearly Kaehler identities", "nkverify"};
  app.require_subcommand(1);
  app.fallthrough();
  double tol = kDefaultTol;
  std::string json_out;
  std::uint64_t seed = 1;
  app.add_option("--tol", tol, "absolute tolerance")->capture_default_str();
  app.add_option("--json-out", json_out, "also write the JSON report to FILE");

  std::string model_spec, basis_file, lagrangian, export_file;
  std::size_t random_count = 0, samples = 1000, n = 2, twistor_random = 5;
  double kappa = 1.0;

  auto* verify = app.add_subcommand("verify", "identity suite for a model");
  verify->add_option("model", model_spec, "model name or JSON file")->required();
  verify->add_option("--export", export_file, "write the model as JSON");

  auto* lag = app.add_subcommand("lagrangian", "Lagrangian subspace checks");
  lag->add_option("model", model_spec, "model name or JSON file");
  lag->add_option("--basis", basis_file, "Lagrangian JSON file");
  lag->add_option("--random", random_count, "number of random Lagrangians");
  lag->add_option("--seed", seed);

  auto* tw = app.add_subcommand("twistor", "twistor model checks");
  tw->add_option("-n", n)->capture_default_str();
  tw->add_option("-k,--kappa", kappa)->capture_default_str();
  tw->add_option("--seed", seed);
  tw->add_option("--random", twistor_random, "random Lagrangians for the block structure")->capture_default_str();
  tw->add_option("--export", export_file, "write the model as JSON");

  auto* cls = app.add_subcommand("classify-su2", "invariant Lagrangians of S3xS3");
  cls->add_option("--samples", samples)->capture_default_str();
  cls->add_option("--seed", seed);

  auto* def = app.add_subcommand("deform", "star operator and deformation spectrum");
  def->add_option("model", model_spec)->required();
  def->add_option("--lagrangian", lagrangian, "diagonal, first-factor, second-factor or a JSON file");
  def->add_option("--seed", seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Json manifest;
  manifest["command"] = command;
  manifest["arguments"] = args;
  manifest["seed"] = seed;
  manifest["tool_version"] = kToolVersion;
  manifest["tol"] = tol;

  Run run;
  int code = 0;
  try {
    if (!(tol > 0.0)) throw NkError(ErrorKind::BadInput, "--tol must be positive");
    if (command == "verify") cmd_verify(model_spec, tol, export_file, run);
    else if (command == "lagrangian") cmd_lagrangian(model_spec, basis_file, random_count, seed, tol, run);
    else if (command == "twistor") cmd_twistor(n, kappa, seed, twistor_random, tol, export_file, run);
    else if (command == "classify-su2") cmd_classify(samples, seed, tol, run);
    else if (command == "deform") cmd_deform(model_spec, lagrangian, seed, tol, run);
  } catch (const NkError& e) {
    code = is_check_failure(e.kind()) ? 1 : 2;
    manifest["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = 2;
    manifest["error"] = {{"kind", "BadInput"}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
  }

  // self-validation: every check must name the identity it certifies
  CheckSuite self{"self-validation", {}};
  std::size_t unanchored = 0;
  for (const CheckSuite& s : run.suites)
    for (const CheckReport& c : s.checks)
      if (c.anchor.empty()) ++unanchored;
  self.add(make_flag("anchors", "every emitted check carries an anchor", unanchored == 0,
                     std::to_string(unanchored) + " unanchored"));
  run.suites.push_back(self);

  bool ok = true;
  Json reports = Json::array();
  std::vector<CheckSuite> sorted = run.suites;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckSuite& a, const CheckSuite& b) { return a.name < b.name; });
  for (const CheckSuite& s : sorted) {
    reports.push_back(suite_to_json(s));
    ok = ok && s.all_passed();
  }
  if (code == 0 && !ok) code = 1;
  manifest["models"] = run.models;
  manifest["reports"] = reports;
  manifest["summary"] = run.summary;
  manifest["passed"] = code == 0;
  manifest["exit_code"] = code;

  print_table(run.suites, err);
  const std::string text = manifest.dump(2);
  out << text << "\n";
  if (!json_out.empty()) {
    try {
      write_json_file(json_out, manifest);
    } catch (const NkError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace nkv
