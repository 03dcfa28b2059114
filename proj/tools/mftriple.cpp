// mftriple: command-line front end for the library.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mft/normal.hpp"
#include "mft/verify.hpp"

using namespace mft;
using json = nlohmann::ordered_json;

namespace {

const char* kConventions = R"(Conventions
  Fields. F_q for q = p^d, p an odd prime, d in {1,2,4}, built as a tower of
  quadratic extensions. An element is an integer in [0,q). In F_{Q^2} over F_Q
  the element A + B*i is stored as A + Q*B, where i^2 = eta is the generator
  of F_Q and A, B are elements of F_Q. A base element keeps the same integer in
  every extension. Prime-field elements are 0..p-1 with the usual arithmetic.
  Multiplicative characters. psi_k(gen^m) = exp(2 pi i k m / (q-1)), gen the
  field generator printed by `fields`; k is taken mod q-1.
  Additive characters. chi_a(x) = exp(2 pi i Tr(a x) / p), Tr the absolute
  trace. The default is a = 1.
  Groups. GL(2,F_q) is listed lexicographically by (a,b,c,d) over the integer
  encoding, for the matrix [[a,b],[c,d]]; g_index is the position in that list.
  Irreducible labels. onedim:K, parabolic1:K, parabolic:K1,K2 (K1 < K2),
  cuspidal:K (K indexes a character of F_{q^2}, the smaller of K and its
  conjugate qK mod q^2-1).

Output. JSON objects carry "schema":"mftriple/1". Function tables in CSV use
the columns g_index,a,b,c,d,re,im. Output depends only on flags and seed;
--timing adds wall-clock fields. MFT_TOLERANCE and MFT_THREADS override the
tolerance and thread count.

Exit codes. 0 success, 1 verification failure, 2 usage error.)";

struct Options {
  int q = 3;
  std::uint64_t seed = 1;
  double tolerance = 0;
  int threads = 0;
  std::string format = "json";
  std::string out;
  bool timing = false;
};

struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw UsageError("cannot open output file " + path);
    os = &file;
  }
};

json head(const std::string& command) { return json{{"schema", "mftriple/1"}, {"command", command}}; }

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

void emit(const Options& o, const json& j) {
  if (o.format != "json") throw UsageError("csv output applies to function tables only");
  Sink s(o.out);
  *s.os << j.dump(2) << "\n";
}

// A function on GL(2,F): JSON with the given header fields, or CSV rows.
void emit_table(const Options& o, const GL2& G, json j, const CVec& v) {
  Sink s(o.out);
  if (o.format == "csv") {
    std::ostringstream ss;
    ss.precision(17);
    ss << "g_index,a,b,c,d,re,im\n";
    for (int g = 0; g < G.order(); ++g) {
      const auto& m = G.mat(g);
      ss << g << ',' << m[0] << ',' << m[1] << ',' << m[2] << ',' << m[3] << ',' << v[g].real() << ',' << v[g].imag()
         << '\n';
    }
    *s.os << ss.str();
    return;
  }
  json vals = json::array();
  for (int g = 0; g < G.order(); ++g) vals.push_back(json::array({g, v[g].real(), v[g].imag()}));
  j["values"] = std::move(vals);
  *s.os << j.dump() << "\n";
}

json constituents_json(const std::vector<Constituent>& v) {
  json a = json::array();
  for (auto& c : v) a.push_back({{"label", c.label}, {"dim", c.dim}, {"mult", c.mult}});
  return a;
}

json decomposition_json(const DecompositionReport& r) {
  return {{"dim_ind", r.dim_ind}, {"dim_sum", r.dim_sum}, {"mf", r.mf},
          {"constituents", constituents_json(r.constituents)}, {"unexpected", r.unexpected}, {"ok", r.ok()}};
}

json report_json(const OracleReport& r, bool timing) {
  json j{{"check", r.check}, {"max_dev", r.max_dev}, {"tol", r.tol}, {"pass", r.pass}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

FieldPtr prime(int q) {
  auto F = field_of_order(q);
  if (F->d() != 1) throw UsageError("this command needs a prime q, got " + std::to_string(q));
  return F;
}

// ---------- subcommands ----------

void cmd_fields(const Options& o) {
  auto F = field_of_order(o.q);
  const Field& f = *F;
  json j = head("fields");
  j["q"] = f.q();
  j["p"] = f.p();
  j["d"] = f.d();
  j["generator"] = f.gen();
  j["sub_order"] = f.sub_order();
  json el = json::array();
  for (int x = 0; x < f.q(); ++x) {
    json e{{"x", x}, {"neg", f.neg(x)}, {"frobenius", f.frobenius(x)}, {"trace", f.abs_trace(x)}};
    if (x) {
      e["log"] = f.log(x);
      e["inv"] = f.inv(x);
      e["order"] = f.order_of(x);
    }
    el.push_back(e);
  }
  j["elements"] = el;
  emit(o, j);
}

void cmd_chars(const Options& o, int nu) {
  auto F = field_of_order(o.q);
  Extension e = quadratic_extension(F);
  const int n = e.ext->q() - 1;
  json j = head("chars");
  j["q"] = o.q;
  j["ext_order"] = e.ext->q();
  json a = json::array();
  for (int k = 0; k < n; ++k) {
    if (nu >= 0 && k != nu % n) continue;
    json c{{"k", k}, {"indecomposable", is_indecomposable(e, k)}, {"sharp", sharp_index(e, k)}, {"bar", bar_index(e, k)}};
    if (nu >= 0) {
      MultChar m(e.ext, k);
      json v = json::array();
      for (int z = 1; z < e.ext->q(); ++z) v.push_back(json::array({z, m.at(z).real(), m.at(z).imag()}));
      c["values"] = v;
    }
    a.push_back(c);
  }
  j["characters"] = a;
  emit(o, j);
}

int cmd_kloosterman(const Options& o, int nu, int chi) {
  auto F = field_of_order(o.q);
  Extension e = quadratic_extension(F);
  if (!is_indecomposable(e, nu)) throw UsageError("nu = " + std::to_string(nu) + " is decomposable");
  if (chi <= 0 || chi >= F->q()) throw UsageError("--chi must be a nonzero element of F_q");
  auto t = kloosterman_table(e, AddChar(F, chi), MultChar(e.ext, nu));
  auto r = verify_kloosterman_identities(t);
  const double tol = o.tolerance > 0 ? o.tolerance : 1e-8;
  json j = head("kloosterman");
  j["q"] = o.q;
  j["nu"] = nu;
  j["chi"] = chi;
  json v = json::array();
  for (int x = 1; x < F->q(); ++x) v.push_back(json::array({x, t.values[x].real(), t.values[x].imag()}));
  j["values"] = v;
  j["identities"] = {{"orthogonality", r.dev_orth}, {"twisted", r.dev_twisted}, {"trace", r.dev_trace},
                     {"trace_on_base", r.dev_trace_base}, {"literal_base_gap", r.literal_base_gap},
                     {"conjugate", r.dev_conj}};
  j["pass"] = r.max() <= tol;
  emit(o, j);
  return r.max() <= tol ? 0 : 1;
}

void cmd_group(const Options& o) {
  GL2 G(field_of_order(o.q));
  auto S = standard_subgroups(G);
  json j = head("group");
  j["q"] = o.q;
  j["order"] = G.order();
  j["subgroups"] = {{"B", S.B.size()}, {"U", S.U.size()}, {"D", S.D.size()}, {"Z", S.Z.size()}, {"C", S.C.size()}};
  if (G.order() <= 2016) j["classes"] = conjugacy_classes(G).classes.size();
  j["identity"] = G.identity();
  j["weyl"] = G.weyl();
  emit(o, j);
}

void cmd_reps(const Options& o, const std::string& label) {
  auto F = prime(o.q);
  GL2 G(F);
  Extension e = quadratic_extension(F);
  if (label.empty()) {
    json j = head("reps");
    j["q"] = o.q;
    json a = json::array();
    for (auto& l : gl2_irreps(e)) a.push_back({{"label", l.str()}, {"dim", l.dim(o.q)}});
    j["irreducibles"] = a;
    emit(o, j);
    return;
  }
  IrrepLabel l = parse_label(label);
  Rep r = irrep_rep(G, e, l);
  auto chk = check_rep(r, o.seed);
  CVec ch = character(r);
  json j = head("reps");
  j["q"] = o.q;
  j["label"] = l.str();
  j["dim"] = r.dim;
  j["unitarity"] = chk.unitarity;
  j["homomorphism"] = chk.homomorphism;
  emit_table(o, G, j, ch);
}

void cmd_triple(const Options& o, const std::string& kind, int param, int spherical) {
  auto F = prime(o.q);
  GL2 G(F);
  Extension e = quadratic_extension(F);
  auto S = standard_subgroups(G);
  Triple t;
  if (kind == "torus") {
    auto C = share(S.C);
    MultChar nu(e.ext, param);
    t = make_triple(G, C, character_rep(G, C, [&](int g) { return nu.at(e.make(G.mat(g)[0], G.mat(g)[2])); }, "nu"),
                    {}, "torus");
  } else if (kind == "unipotent") {
    auto U = share(S.U);
    AddChar chi(F, param);
    t = make_triple(G, U, character_rep(G, U, [&](int g) { return chi(G.mat(g)[1]); }, "chi"), {}, "unipotent");
  } else {
    throw UsageError("--kind must be torus or unipotent");
  }
  auto H = hecke_basis(t);
  json j = head("triple");
  j["q"] = o.q;
  j["kind"] = kind;
  j["param"] = param;
  j["hecke_dim"] = H.dim();
  j["mackey_dim"] = H.mackey_dim;
  j["double_cosets"] = H.dc.reps.size();
  j["commutative"] = H.commutative;
  j["max_commutator"] = H.max_commutator;
  if (!H.commutative) {
    if (spherical >= 0) throw UsageError("spherical functions need a commutative Hecke algebra");
    emit(o, j);
    return;
  }
  SphericalOptions so;
  so.seed = o.seed;
  auto sp = spherical_set(H, so);
  if (spherical >= 0) {
    if (spherical >= int(sp.size())) throw UsageError("--spherical out of range");
    j["spherical"] = spherical;
    j["d_sigma"] = sp[spherical].d_sigma;
    emit_table(o, G, j, sp[spherical].values);
    return;
  }
  json a = json::array();
  for (std::size_t i = 0; i < sp.size(); ++i) a.push_back({{"index", i}, {"d_sigma", sp[i].d_sigma}});
  j["sphericals"] = a;
  emit(o, j);
}

void cmd_triple1(const Options& o, int nu0, const std::string& constituent) {
  prime(o.q);
  auto T = make_triple1(o.q, nu0);
  auto r = triple1_analyze(T);
  if (constituent.empty()) {
    json j = head("triple1");
    j["q"] = o.q;
    j["nu0"] = nu0;
    j["decomposition"] = decomposition_json(r);
    emit(o, j);
    return;
  }
  IrrepLabel l = parse_label(constituent);
  bool listed = false;
  for (auto& c : r.constituents) listed = listed || c.label == l.str();
  if (!listed) throw UsageError(l.str() + " is not a constituent of Ind_C^G nu0 for nu0 = " + std::to_string(nu0));
  CVec phi = l.kind == IrrepLabel::Cuspidal ? triple1_cuspidal_phi(T, MultChar(T.e.ext, l.k1))
                                            : triple1_spherical_parabolic(T, l);
  json j = head("triple1");
  j["triple"] = "t1";
  j["q"] = o.q;
  j["nu0"] = nu0;
  j["constituent"] = l.str();
  emit_table(o, *T.G, j, phi);
}

void cmd_triple2(const Options& o, int nu, const std::string& constituent) {
  auto T = make_triple2(o.q, nu);
  auto r = triple2_analyze(T);
  if (constituent.empty()) {
    json j = head("triple2");
    j["q"] = o.q;
    j["nu"] = nu;
    j["decomposition"] = decomposition_json(r);
    emit(o, j);
    return;
  }
  IrrepLabel l = parse_label(constituent);
  bool listed = false;
  for (auto& c : r.constituents) listed = listed || c.label == l.str();
  if (!listed) throw UsageError(l.str() + " is not a constituent for nu = " + std::to_string(nu));
  const GL2& G = *T.G;
  CVec phi(G.order());
  json j = head("triple2");
  j["triple"] = "t2";
  j["q"] = o.q;
  j["nu"] = nu;
  j["constituent"] = l.str();
  if (l.kind == IrrepLabel::Parabolic) {
    auto P = triple2_parabolic(T, l.k1, l.k2);
    parallel_for(G.order(), [&](std::int64_t g) { phi[g] = P.at(int(g)); });
  } else {
    auto C = triple2_cuspidal(T, l.k1);
    parallel_for(G.order(), [&](std::int64_t g) { phi[g] = C.at(int(g)); });
    json f1 = json::array();
    for (int a = 0; a < C.F1.rows(); ++a) {
      json row = json::array();
      for (int b = 0; b < C.F1.cols(); ++b) row.push_back(cjson(C.F1(a, b)));
      f1.push_back(row);
    }
    j["F1"] = f1;
  }
  emit_table(o, G, j, phi);
}

void cmd_ggr(const Options& o, int chi) {
  prime(o.q);
  auto r = gelfand_graev_verify(o.q, chi);
  json j = head("ggr");
  j["q"] = o.q;
  j["chi"] = chi;
  j["mf"] = r.mf;
  j["hecke_dim"] = r.dim;
  j["expected_dim"] = r.expected_dim;
  j["max_commutator"] = r.max_commutator;
  j["symmetric"] = r.symmetric;
  if (!r.symmetry_failed.empty()) j["symmetry_failed"] = r.symmetry_failed;
  j["S0_is_Z_wD"] = r.S0_is_Z_wD;
  j["good_cosets"] = r.good_cosets;
  j["off_support"] = r.off_support;
  emit(o, j);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cmd_normal(const Options& o, const std::string& fixture, const std::string& gfile, const std::string& nfile,
                const std::string& rfile) {
  NormalTriple t;
  auto from_char = [](std::shared_ptr<TableGroup> G, std::vector<int> N, std::function<cd(int)> chi) {
    auto Np = share(make_subgroup(*G, std::move(N), "N"));
    return make_normal_triple(G, Np, character_rep(*G, Np, chi, "theta"));
  };
  if (!gfile.empty()) {
    if (nfile.empty() || rfile.empty()) throw UsageError("--group needs --subgroup and --rep");
    auto G = group_from_json(slurp(gfile));
    auto N = share(make_subgroup(*G, indices_from_json(slurp(nfile)), "N"));
    t = make_normal_triple(G, N, rep_from_json(*G, N, slurp(rfile)));
  } else if (fixture == "d8") {
    t = from_char(dihedral_group(4), {0, 1, 2, 3}, [](int g) { return unit_root(g % 4, 4); });
  } else if (fixture == "d8sign") {
    t = from_char(dihedral_group(4), {0, 1, 2, 3}, [](int g) { return g % 2 ? cd(-1) : cd(1); });
  } else if (fixture == "q8") {
    t = from_char(quaternion_group(), {0, 4}, [](int g) { return g == 0 ? cd(1) : cd(-1); });
  } else {
    throw UsageError("--fixture must be d8, d8sign or q8 (or give --group/--subgroup/--rep)");
  }
  auto c = inertia_and_cocycle(t);
  auto a = normal_mf_and_spherical(t, c, o.seed);
  json j = head("normal");
  j["group_order"] = t.G->order();
  j["normal_order"] = t.N->size();
  j["inertia_order"] = c.inertia.size();
  j["quotient_abelian"] = a.quotient_abelian;
  j["theta_extends"] = a.theta_extends;
  j["restriction_criterion"] = a.restriction_criterion;
  j["mf"] = a.mf;
  j["engine_mf"] = a.engine_mf;
  j["hecke_dim"] = a.hecke_dim;
  j["cocycle_residual"] = c.cocycle_residual;
  json sp = json::array();
  for (auto& s : a.sphericals) {
    json v = json::array();
    for (int g = 0; g < t.G->order(); ++g) v.push_back(json::array({g, s.values[g].real(), s.values[g].imag()}));
    sp.push_back({{"functional_dev", s.functional_dev}, {"engine_match", s.engine_match}, {"values", v}});
  }
  j["sphericals"] = sp;
  emit(o, j);
}

void cmd_special(const Options& o) {
  prime(o.q);
  auto s = special_cases(o.q, o.q == 3);
  json j = head("special");
  j["q"] = o.q;
  j["ricci"] = constituents_json(s.ricci);
  j["ricci_pattern"] = s.ricci_pattern;
  j["ricci_engine_noncommutative"] = s.ricci_engine_noncommutative;
  j["gow_checked"] = s.gow_checked;
  if (s.gow_checked) {
    j["gow_commutative"] = s.gow_commutative;
    j["gow_dim"] = s.gow_dim;
    j["gow_trivial_mf"] = s.gow_trivial_mf;
    j["ind_parabolic1"] = constituents_json(s.ind_parabolic1);
    j["ind_parabolic"] = constituents_json(s.ind_parabolic);
    j["max_mult_parabolic1"] = s.max_mult_parabolic1;
    j["max_mult_parabolic"] = s.max_mult_parabolic;
    j["ind_onedim_cuspidal_mf"] = s.ind_onedim_cuspidal_mf;
  }
  emit(o, j);
}

int cmd_verify(const Options& o, const std::string& topic) {
  if (o.format != "json") throw UsageError("verify reports are JSON lines");
  auto reps = verify_topic(topic, o.q, o.seed, o.tolerance);
  Sink s(o.out);
  int failed = 0;
  for (auto& r : reps) {
    *s.os << report_json(r, o.timing).dump() << "\n";
    if (!r.pass) ++failed;
  }
  json sum = head("verify");
  sum["topic"] = topic;
  sum["q"] = o.q;
  sum["checks"] = reps.size();
  sum["failed"] = failed;
  *s.os << sum.dump() << "\n";
  if (failed) {
    for (auto& r : reps)
      if (!r.pass) std::cerr << "FAILED " << r.check << ": deviation " << r.max_dev << " > " << r.tol << "\n";
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicity-free triples: Hecke algebras and spherical functions over GL(2,F_q)", "mftriple"};
  app.footer(kConventions);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "worker threads (results do not depend on it)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "seed for randomized steps");
  app.add_option("--tolerance", o.tolerance, "override the check tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_flag("--timing", o.timing, "add wall-clock times to verify reports");

  auto with_q = [&](CLI::App* c, bool required = true) {
    auto opt = c->add_option("--q", o.q, "field order");
    if (required) opt->required();
    return c;
  };
  int nu = -1, nu0 = 0, chi = 1, param = 1, spherical = -1;
  std::string label, constituent, kind = "torus", fixture = "d8", gfile, nfile, rfile, topic;

  auto* fields = with_q(app.add_subcommand("fields", "field tables in the integer encoding"));
  auto* chars = with_q(app.add_subcommand("chars", "characters of F_{q^2}^*: indecomposability, nu#, bar nu"));
  chars->add_option("--nu", nu, "one character, with its values");
  auto* klo = with_q(app.add_subcommand("kloosterman", "generalized Kloosterman sum j and its identities"));
  klo->add_option("--nu", nu, "indecomposable character of F_{q^2}^*")->required();
  klo->add_option("--chi", chi, "additive character parameter (nonzero)");
  auto* grp = with_q(app.add_subcommand("group", "GL(2,F_q) and its standard subgroups"));
  auto* reps = with_q(app.add_subcommand("reps", "irreducibles of GL(2,F_q); with --label, its character"));
  reps->add_option("--label", label, "irreducible label");
  auto* tri = with_q(app.add_subcommand("triple", "generic engine on (GL(2,F_q), C, nu) or (GL(2,F_q), U, chi)"));
  tri->add_option("--kind", kind, "torus or unipotent");
  tri->add_option("--param", param, "nu index (torus) or chi parameter (unipotent, 0 = trivial)");
  tri->add_option("--spherical", spherical, "emit this spherical function as a table");
  auto* t1 = with_q(app.add_subcommand("triple1", "(GL(2,F_q), C, nu0): decomposition and closed forms"));
  t1->add_option("--nu0", nu0, "indecomposable character of F_{q^2}^* = C")->required();
  t1->add_option("--constituent", constituent, "emit this constituent's spherical function");
  auto* t2 = with_q(app.add_subcommand("triple2", "(GL(2,F_{q^2}), GL(2,F_q), rho_nu) at q = 3"));
  t2->add_option("--nu", nu, "indecomposable character with nu# a non-square")->required();
  t2->add_option("--constituent", constituent, "emit this constituent's spherical function");
  auto* ggr = with_q(app.add_subcommand("ggr", "Gelfand-Graev triple (GL(2,F_q), U, chi)"));
  ggr->add_option("--chi", chi, "additive character parameter (nonzero)");
  auto* nrm = app.add_subcommand("normal", "triple with a normal subgroup: inertia, cocycle, spherical functions");
  nrm->add_option("--fixture", fixture, "d8, d8sign or q8");
  nrm->add_option("--group", gfile, "group JSON file");
  nrm->add_option("--subgroup", nfile, "normal subgroup JSON file");
  nrm->add_option("--rep", rfile, "representation JSON file");
  auto* spc = with_q(app.add_subcommand("special", "Ricci-Samanta and Gow cases"));
  auto* ver = with_q(app.add_subcommand("verify", "identity suite; exits 1 on any failure"));
  ver->add_option("topic", topic, "kloosterman, mf, mackey, triple1, projections, triple2, fourier, fs, special, "
                                  "normal, oracle or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (o.threads > 0) set_threads(o.threads);
    if (o.tolerance > 0) set_tolerance(o.tolerance);
    int rc = 0;
    if (*fields) cmd_fields(o);
    else if (*chars) cmd_chars(o, nu);
    else if (*klo) rc = cmd_kloosterman(o, nu, chi);
    else if (*grp) cmd_group(o);
    else if (*reps) cmd_reps(o, label);
    else if (*tri) cmd_triple(o, kind, param, spherical);
    else if (*t1) cmd_triple1(o, nu0, constituent);
    else if (*t2) cmd_triple2(o, nu, constituent);
    else if (*ggr) cmd_ggr(o, chi);
    else if (*nrm) cmd_normal(o, fixture, gfile, nfile, rfile);
    else if (*spc) cmd_special(o);
    else if (*ver) rc = cmd_verify(o, topic);
    return rc;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
