#include "pcfcert_cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcfcert/belyi.hpp"
#include "pcfcert/errors.hpp"
#include "pcfcert/idf.hpp"
#include "pcfcert/pcf.hpp"
#include "pcfcert/valdyn.hpp"

namespace pcfcert::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Outcome {
  Json witness;  // null when the command has none
  Json result = Json::object();
  std::string verdict = "OK";
  int exit_code = kExitOk;
  bool has_table = false;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// One leaf subcommand. Option values are kept as the strings the user typed
// (defaults filled in) so the inputs block can be replayed verbatim.
struct Leaf {
  std::string path;
  CLI::App* app = nullptr;
  std::vector<std::string> order;
  std::map<std::string, std::string> values;
  std::function<Outcome(const Leaf&)> fn;

  const std::string& get(const std::string& key) const { return values.at(key); }
};

// ---- value parsing -------------------------------------------------------

long to_long(const Leaf& leaf, const std::string& key) {
  const std::string& s = leaf.get(key);
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("--" + key + ": expected an integer, got '" + s + "'");
}

int to_int(const Leaf& leaf, const std::string& key) {
  const long v = to_long(leaf, key);
  if (v < INT32_MIN || v > INT32_MAX) throw DomainError("--" + key + ": out of range");
  return static_cast<int>(v);
}

std::uint64_t to_u64(const Leaf& leaf, const std::string& key) {
  const std::string& s = leaf.get(key);
  if (s.empty() || s[0] == '-') throw DomainError("--" + key + ": expected a non-negative integer");
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("--" + key + ": expected a non-negative integer, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

// ---- JSON encoders -------------------------------------------------------

std::string str(const Int& x) { return x.get_str(); }
std::string str(std::uint64_t x) { return std::to_string(x); }
std::string str(long x) { return std::to_string(x); }
std::string str(int x) { return std::to_string(x); }
std::string str(unsigned x) { return std::to_string(x); }

Json uni_json(const UniPoly<Rat>& f) {
  Json j = Json::object();
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (sgn(f.coeffs()[i]) != 0) j[std::to_string(i)] = rat_to_string(f.coeffs()[i]);
  }
  return j;
}

Json bi_json(const BiPoly& f) {
  Json j = Json::object();
  for (const auto& [e, c] : f.terms()) j[std::to_string(e[0]) + "," + std::to_string(e[1])] = rat_to_string(c);
  return j;
}

Json witness_json(const IdfWitness& w) { return {{"p", str(w.p)}, {"r", str(w.r)}, {"e", str(w.e)}}; }

Json polygon_json(const NewtonPolygon& np) {
  Json points = Json::array();
  for (const auto& pt : np.points) points.push_back({str(static_cast<std::uint64_t>(pt.exponent)), str(pt.valuation)});
  Json segments = Json::array();
  for (const auto& s : np.segments) {
    segments.push_back({{"slope", rat_to_string(s.slope)}, {"length", str(static_cast<std::uint64_t>(s.length))}});
  }
  Json roots = Json::array();
  for (const auto& rv : np.root_valuations()) {
    roots.push_back({{"valuation", rv.valuation.is_infinite() ? std::string("inf") : rat_to_string(rv.valuation.value())},
                     {"multiplicity", str(static_cast<std::uint64_t>(rv.multiplicity))}});
  }
  return {{"prime", str(np.prime)}, {"points", points}, {"segments", segments}, {"root_valuations", roots}};
}

Json stripped_json(const StrippedResultant& s) {
  return {{"raw", uni_json(s.raw)},
          {"content", rat_to_string(s.content)},
          {"stripped_power", str(s.power)},
          {"stripped", uni_json(s.stripped)},
          {"newton_polygon", polygon_json(s.polygon)}};
}

Json tropval_json(const TropVal& t) { return {{"value", t.value.to_string()}, {"exact", t.exact}}; }

Json field_json(const GaloisField& f) {
  Json modulus = Json::array();
  for (auto c : f.modulus()) modulus.push_back(str(c));
  return {{"p", str(f.characteristic())}, {"e", str(f.degree())}, {"modulus", modulus}};
}

// ---- CSV -----------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

// ---- commands ------------------------------------------------------------

Budget budget_of(const Leaf& leaf) {
  Budget b;
  b.max_monomials = to_u64(leaf, "budget");
  return b;
}

unsigned jobs_of(const Leaf& leaf) {
  const std::uint64_t j = to_u64(leaf, "jobs");
  if (j < 1 || j > 1024) throw DomainError("--jobs must be in [1, 1024]");
  return static_cast<unsigned>(j);
}

Outcome cmd_belyi_coeffs(const Leaf& leaf) {
  const int d = to_int(leaf, "d");
  const int k = to_int(leaf, "k");
  const BelyiPoly b = belyi_coeffs(d, k);
  Outcome o;
  Json coeffs = Json::array();
  for (const Rat& x : b.b) coeffs.push_back(rat_to_string(x));
  o.result = {{"d", str(d)}, {"k", str(k)}, {"b", coeffs}, {"poly", uni_json(b.poly())},
              {"canonical_k", str(canonical_k(d, k))}};
  return o;
}

Outcome cmd_belyi_ncrit(const Leaf& leaf) {
  const int d = to_int(leaf, "d");
  std::vector<int> profile;
  for (const auto& s : split(leaf.get("profile"), ',')) {
    try {
      profile.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw DomainError("--profile: expected comma-separated integers");
    }
  }
  const std::string& gamma_text = leaf.get("gamma");
  NCriticalForm form;
  if (gamma_text == "symbolic") {
    form = ncritical_form_symbolic(d, profile);
  } else {
    std::vector<Rat> gammas;
    if (!gamma_text.empty()) {
      for (const auto& s : split(gamma_text, ',')) gammas.push_back(parse_rat(s));
    }
    form = ncritical_form(d, profile, gammas);
  }
  Outcome o;
  Json prof = Json::array();
  for (int k : profile) prof.push_back(str(k));
  Json gammas = Json::array();
  for (const Rat& g : form.gammas) gammas.push_back(rat_to_string(g));
  o.result = {{"d", str(d)},
              {"profile", prof},
              {"symbolic", form.symbolic},
              {"gammas", gammas},
              {"variables", {"z", "gamma"}},
              {"form", bi_json(form.as_bipoly())}};
  return o;
}

Outcome cmd_idf_find(const Leaf& leaf) {
  const std::uint64_t d = to_u64(leaf, "d");
  const int k = to_int(leaf, "k");
  Outcome o;
  o.result = {{"d", str(d)}, {"k", str(k)}};
  if (auto w = find_idf_prime(d, k)) {
    o.witness = witness_json(*w);
    o.verdict = "FOUND";
  } else {
    o.verdict = "NONE";
  }
  return o;
}

Outcome cmd_idf_conjecture(const Leaf& leaf) {
  const std::uint64_t n = to_u64(leaf, "n");
  const int k = to_int(leaf, "k");
  Outcome o;
  o.result = {{"n", str(n)}, {"k", str(k)}};
  if (auto w = conjecture_check(n, k)) {
    o.witness = witness_json(*w);
    o.verdict = "FOUND";
  } else {
    o.verdict = "NONE";
  }
  return o;
}

Outcome cmd_idf_scan(const Leaf& leaf, std::ostream& err) {
  const int k = to_int(leaf, "k");
  const std::string& dmin_text = leaf.get("dmin");
  const std::uint64_t d_min = dmin_text == "auto" ? 2 * static_cast<std::uint64_t>(k) + 2 : to_u64(leaf, "dmin");
  const std::uint64_t d_max = to_u64(leaf, "dmax");
  const std::string& mode = leaf.get("rows");
  if (mode != "all" && mode != "exceptions") throw DomainError("--rows must be 'all' or 'exceptions'");
  const unsigned jobs = jobs_of(leaf);
  err << "idf scan: k=" << k << " d in [" << d_min << ", " << d_max << "] on " << jobs << " thread(s)\n";
  const auto rows = scan_rows(d_min, d_max, k, jobs);
  Outcome o;
  o.has_table = true;
  o.header = {"d", "k", "has_idf", "p", "r", "e"};
  Json exceptions = Json::array();
  Json jrows = Json::array();
  for (const auto& row : rows) {
    if (!row.witness) exceptions.push_back(str(row.d));
    if (mode == "exceptions" && row.witness) continue;
    std::vector<std::string> cells{str(row.d), str(row.k), row.witness ? "true" : "false"};
    if (row.witness) {
      cells.insert(cells.end(), {str(row.witness->p), str(row.witness->r), str(row.witness->e)});
    } else {
      cells.insert(cells.end(), {"", "", ""});
    }
    Json jr = Json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) jr[o.header[i]] = cells[i];
    jrows.push_back(jr);
    o.rows.push_back(std::move(cells));
  }
  o.result = {{"k", str(k)},
              {"d_min", str(d_min)},
              {"d_max", str(d_max)},
              {"exceptions", exceptions},
              {"rows", jrows},
              {"scope", "certified only for d in [d_min, d_max]; no claim is made beyond d_max"}};
  return o;
}

Outcome cmd_idf_mordell(const Leaf& leaf) {
  const long x_max = to_long(leaf, "xmax");
  Outcome o;
  o.has_table = true;
  o.header = {"X", "Y", "B", "C", "d"};
  Json cands = Json::array();
  for (const auto& m : mordell_candidates(x_max)) {
    std::vector<std::string> cells{str(m.x), str(m.y), str(m.b), str(m.c), str(m.d)};
    Json jr = Json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) jr[o.header[i]] = cells[i];
    cands.push_back(jr);
    o.rows.push_back(std::move(cells));
  }
  o.result = {{"x_max", str(x_max)},
              {"rows", cands},
              {"scope", "bounded search 2 <= X <= x_max; not a complete integral-point enumeration"}};
  return o;
}

ValParams val_params(const Leaf& leaf) {
  ValParams p;
  p.d = to_int(leaf, "d");
  p.k = to_int(leaf, "k");
  p.r = to_int(leaf, "r");
  const long e = to_long(leaf, "e");
  if (e < 1) throw DomainError("--e must be >= 1");
  p.e = static_cast<unsigned>(e);
  p.v_alpha = ExtVal::parse(leaf.get("valpha"));
  p.v_beta = ExtVal::parse(leaf.get("vbeta"));
  p.validate();
  return p;
}

Outcome cmd_valdyn_orbit(const Leaf& leaf) {
  const ValParams p = val_params(leaf);
  const int start = to_int(leaf, "start");
  const int steps = to_int(leaf, "steps");
  Outcome o;
  Json js = Json::array();
  for (const auto& t : orbit_val(start, p, steps)) js.push_back(tropval_json(t));
  o.result = {{"start", str(start)}, {"steps", js}};
  return o;
}

Outcome cmd_valdyn_classify(const Leaf& leaf) {
  Outcome o;
  o.result = {{"case", to_string(classify_case(val_params(leaf)))}};
  return o;
}

Outcome cmd_valdyn_certificate(const Leaf& leaf) {
  const auto cert = divergence_certificate(val_params(leaf), to_int(leaf, "steps"));
  Outcome o;
  Json js = Json::array();
  for (const auto& t : cert.steps) js.push_back(tropval_json(t));
  o.result = {{"case", to_string(cert.tag)},
              {"kind", to_string(cert.kind)},
              {"start", str(cert.start)},
              {"steps", js},
              {"margin", cert.kind == DivergenceCertificate::Kind::kInconclusive && cert.steps.empty()
                             ? std::string("")
                             : cert.margin.to_string()},
              {"reason", cert.reason}};
  if (cert.kind == DivergenceCertificate::Kind::kInconclusive) {
    o.verdict = "INCONCLUSIVE";
    o.exit_code = kExitFail;
  } else {
    o.verdict = "PASS";
  }
  return o;
}

Outcome cmd_pcf_locus(const Leaf& leaf) {
  const int d = to_int(leaf, "d");
  const int k = to_int(leaf, "k");
  const int n = to_int(leaf, "n");
  const int m = to_int(leaf, "m");
  const Budget budget = budget_of(leaf);
  const BiPoly f = critical_orbit_poly(d, k, 0, n, budget).poly;
  const BiPoly g = critical_orbit_poly(d, k, 1, m, budget).poly;
  Outcome o;
  o.result = {{"variables", {"a", "c"}}, {"F", bi_json(f)}, {"G", bi_json(g)}, {"J", bi_json(jacobian(f, g))}};
  return o;
}

int verdict_exit(Verdict v) { return v == Verdict::kPass ? kExitOk : kExitFail; }

Outcome cmd_pcf_integrality(const Leaf& leaf) {
  const auto cert = integrality_certificate(to_int(leaf, "d"), to_int(leaf, "k"), to_int(leaf, "n"),
                                            to_int(leaf, "m"), budget_of(leaf));
  Outcome o;
  o.witness = witness_json(cert.witness);
  o.verdict = to_string(cert.verdict);
  o.exit_code = verdict_exit(cert.verdict);
  o.result = {{"note", cert.note}};
  if (cert.verdict != Verdict::kDegenerate) {
    o.result["R_a"] = stripped_json(cert.r_a);
    o.result["R_c"] = stripped_json(cert.r_c);
    o.result["r_a_roots_all_units"] = cert.r_a_units;
    o.result["r_c_roots_all_integral"] = cert.r_c_integral;
  }
  return o;
}

Outcome cmd_pcf_transversality(const Leaf& leaf, std::ostream& err) {
  const long e_max = to_long(leaf, "emax");
  if (e_max < 1 || e_max > 64) throw DomainError("--emax must be in [1, 64]");
  const unsigned jobs = jobs_of(leaf);
  err << "pcf transversality: enumerating up to e = " << e_max << " on " << jobs << " thread(s)\n";
  const auto rep = transversality_check(to_int(leaf, "d"), to_int(leaf, "k"), to_int(leaf, "n"), to_int(leaf, "m"),
                                        static_cast<unsigned>(e_max), budget_of(leaf), jobs);
  Outcome o;
  o.witness = witness_json(rep.witness);
  o.verdict = to_string(rep.verdict);
  o.exit_code = verdict_exit(rep.verdict);
  Json levels = Json::array();
  for (const auto& level : rep.levels) {
    Json sols = Json::array();
    for (const auto& s : level.result.solutions) {
      sols.push_back({{"alpha", s.alpha.to_string()},
                      {"beta", s.beta.to_string()},
                      {"jacobian", s.jacobian_value.to_string()},
                      {"alpha_times_jacobian", (s.alpha * s.jacobian_value).to_string()}});
    }
    levels.push_back({{"e", str(level.e)},
                      {"field", field_json(*level.result.field)},
                      {"solutions", sols},
                      {"alpha_zero_excluded", str(level.result.alpha_zero_count)}});
  }
  Json signs = Json::array();
  for (int s : rep.observed_signs) signs.push_back(str(s));
  o.result = {{"reduced_map", {{"s", rep.reduced.s.to_string()}, {"t", str(rep.reduced.t)}, {"tp", str(rep.reduced.tp)}}},
              {"orientation", "J = F_a*G_c - G_a*F_c"},
              {"levels", levels},
              {"jacobian_nonzero", rep.jacobian_nonzero},
              {"alpha_times_jacobian_is_unit_sign", rep.unit_identity},
              {"observed_signs", signs},
              {"sign_ambiguous", rep.sign_ambiguous},
              {"note", rep.note}};
  if (rep.failure) {
    o.result["failure"] = {{"alpha", rep.failure->alpha.to_string()},
                           {"beta", rep.failure->beta.to_string()},
                           {"jacobian", rep.failure->jacobian_value.to_string()}};
  }
  return o;
}

Outcome cmd_pcf_counterexamples(const Leaf&) {
  const auto rep = ncrit_counterexamples();
  Outcome o;
  Json bins = Json::array();
  for (const auto& [j0, b] : rep.form10_binomials) bins.push_back({{"j0", str(j0)}, {"binomial", str(b)}});
  Json triples = Json::array();
  for (const auto& t : rep.triples) triples.push_back({str(t[0]), str(t[1]), str(t[2])});
  o.result = {{"degree10",
               {{"profile", {"7", "1"}},
                {"form", bi_json(rep.form10.as_bipoly())},
                {"reduces_to_constant_mod_7", rep.form10_reduces_to_constant},
                {"binomials", bins},
                {"binomials_divisible_by_7", rep.form10_binomials_divisible}}},
              {"degree4",
               {{"profile", {"1", "1"}},
                {"form", bi_json(rep.form4.as_bipoly())},
                {"matches_expected_form", rep.form4_matches},
                {"reduction_mod_3_is_a_1_plus_gamma_z3_plus_c", rep.form4_reduction_matches},
                {"period_triples", triples},
                {"jacobian_mod_3_identically_zero", rep.jacobian_zero},
                {"jacobian_with_gamma_target_identically_zero", rep.jacobian_with_gamma_shift_zero}}}};
  const bool ok = rep.form10_reduces_to_constant && rep.form10_binomials_divisible && rep.form4_matches &&
                  rep.form4_reduction_matches && rep.jacobian_zero;
  o.verdict = ok ? "PASS" : "FAIL";
  o.exit_code = ok ? kExitOk : kExitFail;
  return o;
}

// ---- driver --------------------------------------------------------------

struct Spec {
  std::string name;
  std::string help;
  bool required = false;
  std::string def;
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    app_.name("pcfcert");
    app_.description("Exact certificates for bicritical PCF polynomial computations");
    app_.require_subcommand(1);
    build();
  }

  int run(const std::vector<std::string>& argv) {
    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(args);
    } catch (const CLI::CallForHelp&) {
      out_ << help_for_parsed();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app_.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n" << help_for_parsed();
      return kExitUsage;
    }
    if (replay_ && replay_->parsed()) return run_replay();
    for (auto& leaf : leaves_) {
      if (leaf->app->parsed()) return execute(*leaf);
    }
    err_ << help_for_parsed();
    return kExitUsage;
  }

 private:
  std::string help_for_parsed() {
    for (auto& leaf : leaves_) {
      if (leaf->app->parsed()) return leaf->app->help();
    }
    for (auto* sub : app_.get_subcommands()) return sub->help();
    return app_.help();
  }

  Leaf& add_leaf(CLI::App* parent, const std::string& name, const std::string& help, std::vector<Spec> specs,
                 std::function<Outcome(const Leaf&)> fn) {
    auto leaf = std::make_unique<Leaf>();
    leaf->app = parent->add_subcommand(name, help);
    leaf->path = parent->get_name() + " " + name;
    leaf->fn = std::move(fn);
    specs.push_back({"format", "output format: json or csv", false, "json"});
    specs.push_back({"jobs", "worker threads", false, "1"});
    specs.push_back({"budget", "monomial budget for orbit polynomials", false, "10000"});
    for (const auto& s : specs) {
      leaf->order.push_back(s.name);
      leaf->values[s.name] = s.def;
      auto* opt = leaf->app->add_option("--" + s.name, leaf->values[s.name], s.help);
      if (s.required) {
        opt->required();
      } else if (!s.def.empty()) {
        opt->capture_default_str();
      }
    }
    leaves_.push_back(std::move(leaf));
    return *leaves_.back();
  }

  void build() {
    auto* belyi = app_.add_subcommand("belyi", "Belyi normal forms")->require_subcommand(1);
    add_leaf(belyi, "coeffs", "coefficients of B_{d,k}", {{"d", "degree", true, ""}, {"k", "index k", true, ""}},
             cmd_belyi_coeffs);
    add_leaf(belyi, "ncrit", "n-critical normal form",
             {{"d", "degree", true, ""},
              {"profile", "comma-separated k_0,...,k_{n-2}", true, ""},
              {"gamma", "comma-separated gamma_1,... or 'symbolic' (three critical points)", false, "symbolic"}},
             cmd_belyi_ncrit);

    auto* idf = app_.add_subcommand("idf", "index-divisor-free primes")->require_subcommand(1);
    add_leaf(idf, "find", "smallest (r,p) IDF witness", {{"d", "degree", true, ""}, {"k", "index k", true, ""}},
             cmd_idf_find);
    add_leaf(idf, "scan", "d without an IDF prime",
             {{"k", "index k", true, ""},
              {"dmin", "smallest d (auto = 2k+2)", false, "auto"},
              {"dmax", "largest d", false, "100000"},
              {"rows", "rows to emit: exceptions or all", false, "exceptions"}},
             [this](const Leaf& l) { return cmd_idf_scan(l, err_); });
    add_leaf(idf, "mordell", "bounded search on B*Y^2 = C*X^3 + 1", {{"xmax", "largest X", false, "1000"}},
             cmd_idf_mordell);
    add_leaf(idf, "conjecture", "IDF-style prime for n(n-1)...(n-k)",
             {{"n", "n > 2k+2", true, ""}, {"k", "k >= 0", true, ""}}, cmd_idf_conjecture);

    const std::vector<Spec> val_specs{{"d", "degree", true, ""},         {"k", "index k", true, ""},
                                      {"r", "witness index r", true, ""}, {"e", "v_p(d-r)", true, ""},
                                      {"valpha", "v_p(alpha)", true, ""}, {"vbeta", "v_p(beta)", true, ""}};
    auto* valdyn = app_.add_subcommand("valdyn", "valuation dynamics")->require_subcommand(1);
    auto orbit_specs = val_specs;
    orbit_specs.push_back({"start", "critical point 0 or 1", false, "0"});
    orbit_specs.push_back({"steps", "number of iterates", false, "8"});
    add_leaf(valdyn, "orbit", "tropical orbit valuations", orbit_specs, cmd_valdyn_orbit);
    add_leaf(valdyn, "classify", "case split for (v(alpha), v(beta))", val_specs, cmd_valdyn_classify);
    auto cert_specs = val_specs;
    cert_specs.push_back({"steps", "orbit steps before the closed-form bound", false, "3"});
    add_leaf(valdyn, "certificate", "divergence certificate", cert_specs, cmd_valdyn_certificate);

    const std::vector<Spec> nm_specs{{"d", "degree", true, ""},
                                     {"k", "index k", true, ""},
                                     {"n", "period of 0", true, ""},
                                     {"m", "period of 1", true, ""}};
    auto* pcf = app_.add_subcommand("pcf", "PCF loci and certificates")->require_subcommand(1);
    add_leaf(pcf, "locus", "F_n, G_m and their Jacobian", nm_specs, cmd_pcf_locus);
    add_leaf(pcf, "integrality", "p-adic integrality via resultants", nm_specs, cmd_pcf_integrality);
    auto tr_specs = nm_specs;
    tr_specs.push_back({"emax", "largest extension degree", false, "1"});
    add_leaf(pcf, "transversality", "Jacobian modulo the IDF prime", tr_specs,
             [this](const Leaf& l) { return cmd_pcf_transversality(l, err_); });
    add_leaf(pcf, "counterexamples", "n-critical counterexamples", {}, cmd_pcf_counterexamples);

    replay_ = app_.add_subcommand("replay", "re-run the command recorded in a JSON report");
    replay_->add_option("--report", replay_path_, "report file")->required();
  }

  int execute(const Leaf& leaf) {
    const std::string& format = leaf.get("format");
    if (format != "json" && format != "csv") {
      err_ << "error: --format must be json or csv\n";
      return kExitUsage;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      jobs_of(leaf);
      budget_of(leaf);
      o = leaf.fn(leaf);
    } catch (const ResourceError& e) {
      err_ << "resource error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const DomainError& e) {
      err_ << "error: " << e.what() << "\n\n" << leaf.app->help();
      return kExitUsage;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["command"] = leaf.path;
    Json inputs = Json::object();
    for (const auto& key : leaf.order) inputs[key] = leaf.get(key);
    doc["inputs"] = inputs;
    if (!o.witness.is_null()) doc["witness"] = o.witness;
    doc["result"] = o.result;
    doc["verdict"] = o.verdict;
    doc["timings"] = {{"wall_ms", std::to_string(ms.count())}};

    if (format == "json") {
      out_ << doc.dump(2) << "\n";
    } else if (o.has_table) {
      write_row(o.header);
      for (const auto& row : o.rows) write_row(row);
    } else {
      doc.erase("timings");
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(doc, "", flat);
      write_row({"key", "value"});
      for (const auto& [k, v] : flat) write_row({k, v});
    }
    err_ << leaf.path << ": " << o.verdict << " in " << ms.count() << " ms\n";
    return o.exit_code;
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << "\n";
  }

  int run_replay() {
    std::ifstream in(replay_path_);
    if (!in) {
      err_ << "error: cannot open " << replay_path_ << "\n";
      return kExitUsage;
    }
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::exception& e) {
      err_ << "error: " << replay_path_ << " is not valid JSON: " << e.what() << "\n";
      return kExitUsage;
    }
    if (!doc.contains("command") || !doc.contains("inputs") || !doc["command"].is_string() ||
        !doc["inputs"].is_object()) {
      err_ << "error: report lacks a command or inputs block\n";
      return kExitUsage;
    }
    if (doc.value("schema_version", 0) != kSchemaVersion) {
      err_ << "error: unsupported report schema version\n";
      return kExitUsage;
    }
    std::vector<std::string> argv{"pcfcert"};
    for (const auto& word : split(doc["command"].get<std::string>(), ' ')) {
      if (word == "replay") {
        err_ << "error: cannot replay a replay\n";
        return kExitUsage;
      }
      argv.push_back(word);
    }
    for (const auto& [k, v] : doc["inputs"].items()) {
      if (!v.is_string()) {
        err_ << "error: input '" << k << "' is not a string\n";
        return kExitUsage;
      }
      argv.push_back("--" + k);
      argv.push_back(v.get<std::string>());
    }
    Cli fresh(out_, err_);
    return fresh.run(argv);
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_;
  std::vector<std::unique_ptr<Leaf>> leaves_;
  CLI::App* replay_ = nullptr;
  std::string replay_path_;
};

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  try {
    Cli cli(out, err);
    return cli.run(argv);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace pcfcert::cli
