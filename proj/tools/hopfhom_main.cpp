#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hopfhom/io.hpp"

using namespace hopfhom;

namespace {

struct Options {
  std::string example;
  std::string p_file;
  std::string pi_file;
  std::string ideal_file;
  bool universal_ideal = false;
  std::string field = "";
  std::string json_out;
  std::size_t cap = 512;
  bool brute = false;
  std::string suite = "all";
  bool mock_non_galois = false;
};

int emit(json report, const Options& opt, int exit_code) {
  report["exit_code"] = exit_code;
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!opt.json_out.empty()) {
    std::ofstream out(opt.json_out);
    if (!out) {
      std::cerr << "cannot write " << opt.json_out << "\n";
      return 2;
    }
    out << text;
  }
  return exit_code;
}

json base_report(const std::string& command, const Options& opt, const FieldSpec& fs) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "report";
  j["command"] = command;
  j["field"] = fs.str();
  json inputs;
  if (!opt.example.empty()) inputs["example"] = opt.example;
  if (!opt.p_file.empty()) inputs["P"] = opt.p_file;
  if (!opt.pi_file.empty()) inputs["pi"] = opt.pi_file;
  if (!opt.ideal_file.empty()) inputs["ideal"] = opt.ideal_file;
  if (opt.universal_ideal) inputs["ideal"] = "universal (I = 0)";
  j["inputs"] = inputs;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

// Resolves the field: --field wins for examples, files must agree with it.
FieldSpec resolve_field(const Options& opt, const std::vector<json>& files) {
  std::optional<FieldSpec> fs;
  if (!opt.field.empty()) {
    fs = FieldSpec::parse(opt.field);
    if (!fs) throw ParseError("unknown field: " + opt.field);
  }
  for (const auto& f : files) {
    FieldSpec file_fs = field_of_file(f);
    if (fs && (fs->rational != file_fs.rational || fs->p != file_fs.p))
      throw ParseError("field mismatch between inputs (" + fs->str() + " vs " + file_fs.str() + ")");
    fs = file_fs;
  }
  return fs.value_or(FieldSpec{true, 0});
}

template <FieldScalar K>
FinHopfAlgebra<K> load_p(const Options& opt, const std::vector<json>& files) {
  if (!opt.example.empty()) {
    auto ex = example_surjection<K>(opt.example);
    if (!ex) throw ParseError("unknown example: " + opt.example);
    return ex->source;
  }
  return hopf_like_from_json<K>(files.at(0));
}

template <FieldScalar K>
HopfSurjection<K> load_surjection(const Options& opt, const std::vector<json>& files, Report& cert) {
  if (!opt.example.empty()) {
    auto ex = example_surjection<K>(opt.example);
    if (!ex) throw ParseError("unknown example: " + opt.example);
    cert = check_hopf_surjection(ex->source, ex->target, ex->matrix);
    return *ex;
  }
  FinHopfAlgebra<K> p = hopf_like_from_json<K>(files.at(0));
  auto sf = surjection_from_json<K>(files.at(1));
  if (!sf.source_name.empty() && sf.source_name != p.name)
    throw ParseError("surjection source '" + sf.source_name + "' does not match P '" + p.name + "'");
  if (sf.matrix.cols() != p.dim) throw ParseError("surjection matrix has wrong number of columns");
  cert = check_hopf_surjection(p, sf.target, sf.matrix);
  return HopfSurjection<K>{std::move(p), std::move(sf.target), std::move(sf.matrix)};
}

// ---------------------------------------------------------------------------

template <FieldScalar K>
int cmd_verify(const Options& opt, const std::vector<json>& files, const FieldSpec& fs) {
  json rep = base_report("verify", opt, fs);
  FinHopfAlgebra<K> h = load_p<K>(opt, files);
  Report axioms = verify_hopf_axioms(h);
  rep["data"] = {{"name", h.name}, {"dim", h.dim}};
  rep["checks"] = report_to_json(axioms);
  rep["status"] = axioms.all_pass() ? "pass" : "fail";
  return emit(rep, opt, axioms.all_pass() ? 0 : 1);
}

template <FieldScalar K>
int cmd_coinvariants(const Options& opt, const std::vector<json>& files, const FieldSpec& fs) {
  json rep = base_report("coinvariants", opt, fs);
  Report cert;
  auto surj = load_surjection<K>(opt, files, cert);
  if (!cert.all_pass()) {
    rep["checks"] = report_to_json(cert);
    rep["status"] = "fail";
    return emit(rep, opt, 1);
  }
  QhsBase<K> base = make_qhs_base(surj);
  Report qcert = check_qhs(base);
  cert.merge(qcert, "qhs.");
  rep["checks"] = report_to_json(cert);
  rep["data"] = {{"dim_P", base.dimP()},
                 {"dim_H", base.dimH()},
                 {"dim_B", base.dimB()},
                 {"dim_B_plus", base.dimBplus()},
                 {"B", subspace_to_json(base.B)}};
  rep["status"] = cert.all_pass() ? "pass" : "fail";
  return emit(rep, opt, cert.all_pass() ? 0 : 1);
}

template <FieldScalar K>
int cmd_galois(const Options& opt, const std::vector<json>& files, const FieldSpec& fs) {
  json rep = base_report("galois", opt, fs);
  Report cert;
  auto surj = load_surjection<K>(opt, files, cert);
  if (!cert.all_pass()) {
    rep["checks"] = report_to_json(cert);
    rep["status"] = "fail";
    return emit(rep, opt, 1);
  }
  auto q = make_qhs(surj);
  auto galois = hopf_galois_check(q);
  cert.merge(q.certificate, "qhs.");
  cert.add("chi_well_defined", galois.chi_well_defined);
  rep["checks"] = report_to_json(cert);
  rep["data"] = {{"galois", galois.galois},
                 {"chi_rank", galois.chi_rank},
                 {"dim_P_tensor_B_P", galois.dim_tensor},
                 {"dim_P_tensor_H", galois.dim_target},
                 {"chi_surjective", galois.chi_surjective},
                 {"chi_injective", galois.chi_injective},
                 {"antipode_invertible", galois.antipode_invertible}};
  rep["status"] = cert.all_pass() ? "pass" : "fail";
  return emit(rep, opt, cert.all_pass() ? 0 : 1);
}

template <FieldScalar K>
int cmd_classify(const Options& opt, const std::vector<json>& files, const FieldSpec& fs) {
  json rep = base_report("classify", opt, fs);
  Report cert;
  auto surj = load_surjection<K>(opt, files, cert);
  if (!cert.all_pass()) {
    rep["checks"] = report_to_json(cert);
    rep["status"] = "fail";
    return emit(rep, opt, 1);
  }
  auto q = make_qhs(surj);
  auto cls = classify_covariant_calculi(q, opt.cap);
  bool all_certified = true;
  json entries = json::array();
  for (const auto& e : cls.entries) {
    json je;
    je["ideal"] = subspace_to_json(e.ideal);
    je["ideal_dim"] = e.ideal.dim();
    je["omega_dim"] = e.omega_dim;
    je["certified"] = e.calculus.report.all_pass();
    all_certified = all_certified && e.calculus.report.all_pass();
    entries.push_back(je);
  }
  rep["data"] = {{"count", cls.entries.size()},
                 {"complete", cls.complete},
                 {"cap_exceeded", cls.cap_exceeded},
                 {"entries", entries}};
  json warnings = json::array();
  for (const auto& n : cls.notes) warnings.push_back(n);
  rep["warnings"] = warnings;

  bool brute_agrees = true;
  if (opt.brute) {
    auto bp = canonical_crossed_bplus(q.base);
    auto oracle = brute_force_stable_subspaces(crossed_operators(bp.mod), bp.mod.dim);
    json brute;
    if (!oracle) {
      brute["supported"] = false;
      brute["reason"] = "oracle covers ambient dimension <= 2 with a finite line set";
    } else {
      brute["supported"] = true;
      brute_agrees = oracle->size() == cls.entries.size();
      if (brute_agrees)
        for (std::size_t i = 0; i < oracle->size(); ++i)
          brute_agrees = brute_agrees && (*oracle)[i] == cls.entries[i].ideal;
      brute["agrees"] = brute_agrees;
      brute["count"] = oracle->size();
    }
    rep["data"]["brute"] = brute;
  }

  const bool ok = all_certified && !cls.cap_exceeded && brute_agrees;
  rep["status"] = ok ? "pass" : "fail";
  return emit(rep, opt, ok ? 0 : 1);
}

template <FieldScalar K>
int cmd_induce(const Options& opt, const std::vector<json>& files, const FieldSpec& fs) {
  json rep = base_report("induce", opt, fs);
  Report cert;
  auto surj = load_surjection<K>(opt, files, cert);
  if (!cert.all_pass()) {
    rep["checks"] = report_to_json(cert);
    rep["status"] = "fail";
    return emit(rep, opt, 1);
  }
  QhsBase<K> base = make_qhs_base(surj);
  Report qcert = check_qhs(base);
  cert.merge(qcert, "qhs.");

  auto adj = adjoint_crossed_structure(base.P);
  Subspace<K> ideal = Subspace<K>::zero(adj.mod.dim);
  if (!opt.universal_ideal) {
    // ideal given in P coordinates; must lie inside P+
    json jideal = load_json_file(opt.ideal_file);
    Subspace<K> in_p = subspace_from_json<K>(jideal, base.dimP(), "ideal");
    if (!adj.plus.contains(in_p)) throw ParseError("ideal: vectors must lie in ker(counit)");
    ideal = Subspace<K>::from_cols(adj.embed_pinv * in_p.embedding());
  }
  auto gamma = bicovariant_calculus_from_ideal(ideal, base.P);
  cert.merge(gamma.report, "gamma.");
  auto ind = induced_calculus(gamma, base);
  cert.merge(ind.report, "induced.");

  rep["checks"] = report_to_json(cert);
  rep["data"] = {{"ideal_dim", ideal.dim()},
                 {"gamma_G_dim", gamma.calc.omega_dim},
                 {"t_star_m_dim", ind.t_star_m.dim},
                 {"gamma_M_dim", ind.calc.omega_dim},
                 {"d_span_rank", ind.d_span_rank},
                 {"d_span_full", ind.d_span_full}};
  rep["status"] = cert.all_pass() ? "pass" : "fail";
  return emit(rep, opt, cert.all_pass() ? 0 : 1);
}

template <FieldScalar K>
int cmd_roundtrip(const Options& opt, const std::vector<json>& files, const FieldSpec& fs) {
  json rep = base_report("roundtrip", opt, fs);
  Report cert;
  auto surj = load_surjection<K>(opt, files, cert);
  if (!cert.all_pass()) {
    rep["checks"] = report_to_json(cert);
    rep["status"] = "fail";
    return emit(rep, opt, 1);
  }
  auto q = make_qhs(surj);
  const QhsBase<K>& base = q.base;
  Report all;
  bool fg_gated = false;

  const bool run_t1 = opt.suite == "t1" || opt.suite == "all";
  const bool run_t2 = opt.suite == "t2" || opt.suite == "all";
  const bool run_dchom = opt.suite == "dchom" || opt.suite == "all";

  auto bp = canonical_crossed_bplus(base);
  all.merge(bp.report, "bplus.");

  if (run_t1) {
    all.merge(t1_unit_iso(trivial_crossed_module(base), base).report, "t1.unit.trivial.");
    all.merge(t1_unit_iso(bp.mod, base).report, "t1.unit.bplus.");
    auto enumeration = enumerate_stable_subspaces(crossed_operators(bp.mod), bp.mod.dim, opt.cap);
    for (std::size_t i = 0; i < enumeration.subspaces.size(); ++i) {
      auto quotient = quotient_crossed(bp.mod, enumeration.subspaces[i]);
      all.merge(t1_unit_iso(quotient, base).report,
                "t1.unit.bplus_quotient" + std::to_string(i) + ".");
    }
    all.merge(t1_counit_iso(regular_module(base), base).report, "t1.counit.regular.");
    all.merge(t1_counit_iso(t1_forward(bp.mod, base).y, base).report, "t1.counit.p_bplus.");
  }
  if (run_t2) {
    all.merge(gf_identity(regular_base_bimodule(base), base).report, "t2.gf.B.");
    all.merge(gf_identity(base_tensor_square_bimodule(base), base).report, "t2.gf.BB.");
    auto galois = hopf_galois_check(q);
    if (opt.mock_non_galois) galois.galois = false;
    for (auto [name, y] :
         {std::pair<std::string, CovariantModule<K>>{"regular", regular_module(base)},
          std::pair<std::string, CovariantModule<K>>{"p_bplus", t1_forward(bp.mod, base).y}}) {
      auto r = fg_iso(y, q, galois);
      if (!r.applicable) {
        fg_gated = true;
        all.add("t2.fg." + name + ".not_applicable", true, r.reason);
      } else {
        all.merge(r.iso.report, "t2.fg." + name + ".");
      }
    }
  }
  if (run_dchom) {
    auto univ = universal_calculus(base.B_alg);
    all.merge(univ.report, "dchom.universal.");
    auto cls = classify_covariant_calculi(q, opt.cap);
    all.add("dchom.classification_complete", cls.complete);
    for (std::size_t i = 0; i < cls.entries.size(); ++i) {
      const auto& entry = cls.entries[i];
      const std::string prefix = "dchom.I" + std::to_string(i) + ".";
      all.merge(entry.calculus.report, prefix + "calculus.");
      Subspace<K> n_sub = universal_quotient_kernel(entry.calculus.calc, univ);
      auto extracted = crossed_submodule_from_calculus(n_sub, base);
      all.merge(extracted.report, prefix + "extraction.");
      all.add(prefix + "ideal_round_trip", extracted.ideal == entry.ideal);
    }
    auto gamma = bicovariant_calculus_from_ideal(
        Subspace<K>::zero(adjoint_crossed_structure(base.P).mod.dim), base.P);
    all.merge(gamma.report, "dchom.gamma.");
    auto ind = induced_calculus(gamma, base);
    all.merge(ind.report, "dchom.induced.");
    auto cc = calculus_from_crossed_submodule(Subspace<K>::zero(bp.mod.dim), base);
    all.merge(induced_matches_crossed(ind, cc, base), "dchom.induced_vs_crossed.");
    all.merge(prop_induced_closure_identity(base), "dchom.");
    all.merge(prop_induced_invariance_identity(base), "dchom.");
  }

  rep["checks"] = report_to_json(all);
  rep["data"] = {{"suite", opt.suite}, {"fg_not_applicable", fg_gated}};
  rep["status"] = all.all_pass() ? "pass" : "fail";
  return emit(rep, opt, all.all_pass() ? 0 : 1);
}

template <FieldScalar K>
int dispatch(const std::string& cmd, const Options& opt, const std::vector<json>& files,
             const FieldSpec& fs) {
  if (cmd == "verify") return cmd_verify<K>(opt, files, fs);
  if (cmd == "coinvariants") return cmd_coinvariants<K>(opt, files, fs);
  if (cmd == "galois") return cmd_galois<K>(opt, files, fs);
  if (cmd == "classify") return cmd_classify<K>(opt, files, fs);
  if (cmd == "induce") return cmd_induce<K>(opt, files, fs);
  if (cmd == "roundtrip") return cmd_roundtrip<K>(opt, files, fs);
  throw ParseError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with covariant bimodules over quantum homogeneous spaces"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::string> file_args;

  auto add_common = [&](CLI::App* sub, bool needs_pi) {
    sub->add_option("files", file_args,
                    needs_pi ? "P file and surjection file" : "Hopf algebra or group file");
    sub->add_option("--example", opt.example, "built-in instance: sweedler|kz2|fs3|fs3_k12");
    sub->add_option("--field", opt.field, "Q or GF<p> (for --example; files carry their own)");
    sub->add_option("--json", opt.json_out, "also write the report to this file");
  };

  auto* verify = app.add_subcommand("verify", "check the Hopf algebra axioms");
  add_common(verify, false);
  auto* coin = app.add_subcommand("coinvariants", "compute B = P^H with certificates");
  add_common(coin, true);
  auto* galois = app.add_subcommand("galois", "decide the Hopf-Galois property by rank");
  add_common(galois, true);
  auto* classify = app.add_subcommand("classify", "classify left covariant calculi on B");
  add_common(classify, true);
  classify->add_option("--cap", opt.cap, "submodule enumeration cap");
  classify->add_flag("--brute", opt.brute, "run the brute-force oracle and compare");
  auto* induce = app.add_subcommand("induce", "induce a calculus on B from one on P");
  add_common(induce, true);
  induce->add_option("--ideal", opt.ideal_file, "ideal file (vectors in P coordinates)");
  induce->add_flag("--universal", opt.universal_ideal, "use I = 0, the universal bicovariant calculus");
  auto* roundtrip = app.add_subcommand("roundtrip", "run the equivalence round-trip suites");
  add_common(roundtrip, true);
  roundtrip->add_option("--suite", opt.suite, "t1|t2|dchom|all")
      ->check(CLI::IsMember({"t1", "t2", "dchom", "all"}));
  roundtrip->add_option("--cap", opt.cap, "submodule enumeration cap");
  roundtrip->add_flag("--mock-non-galois", opt.mock_non_galois,
                      "pretend the instance is not Galois (exercises the gating path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (opt.example.empty() && file_args.empty())
      throw ParseError("give input files or --example NAME");
    if (cmd == "induce" && !opt.universal_ideal && opt.ideal_file.empty())
      throw ParseError("induce needs --universal or --ideal FILE");
    std::vector<json> files;
    for (const auto& f : file_args) files.push_back(load_json_file(f));
    if (opt.example.empty() && cmd != "verify" && files.size() < 2)
      throw ParseError(cmd + " needs a P file and a surjection file");
    FieldSpec fs = resolve_field(opt, files);
    if (fs.rational) return dispatch<Rational>(cmd, opt, files, fs);
    Gfp::set_modulus(fs.p);
    return dispatch<Gfp>(cmd, opt, files, fs);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
