#include "fernlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <random>
#include <regex>

#include "fernlab/fernlab.hpp"

namespace fernlab {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

struct Globals {
  bool json = false;
  bool oracle = false;
  std::string backend = "auto";
  long max_area = 2000;
  unsigned seed = 1;
};

// Raised for failures the user caused that are not library exceptions.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OracleConfig oracle_config(const Globals& g) {
  OracleConfig cfg;
  cfg.max_area = g.max_area;
  cfg.backend = g.backend == "det"       ? Backend::SignedDeterminant
                : g.backend == "profile" ? Backend::ProfileDP
                                         : Backend::Auto;
  return cfg;
}

Json doc(const std::string& command, Json inputs) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["results"] = Json::object();
  return j;
}

Json seq_json(const FernSeq& f) {
  Json a = Json::array();
  for (long v : f) a.push_back(std::to_string(v));
  return a;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["instances_checked"] = std::to_string(r.instances_checked);
  j["skipped"] = std::to_string(r.skipped);
  j["failures"] = Json::array();
  for (auto& f : r.failures) j["failures"].push_back({{"spec", f.spec}, {"lhs", f.lhs}, {"rhs", f.rhs}, {"note", f.note}});
  j["elapsed_seconds"] = std::to_string(r.elapsed);
  j["pass"] = r.pass();
  return j;
}

void print_report(std::ostream& out, const std::string& name, const VerificationReport& r) {
  out << name << ": " << r.instances_checked << " checked, " << r.skipped << " skipped, "
      << r.failures.size() << " failures (" << r.elapsed << " s)\n";
  for (auto& f : r.failures) {
    out << "  FAIL " << f.spec << ": " << f.note;
    if (!f.lhs.empty() || !f.rhs.empty()) out << " [" << f.lhs << " vs " << f.rhs << "]";
    out << '\n';
  }
}

RegionSpec checked_spec(const std::string& text) {
  RegionSpec s = parse_spec(text);
  require_valid(s);
  return s;
}

// ---- count ----

int cmd_count(const Globals& g, const std::string& text, bool audit, std::ostream& out) {
  RegionSpec s = checked_spec(text);
  FormulaResult fr = formula(s);
  Json j = doc("count", {{"spec", format_spec(s)}});
  auto& res = j["results"];
  res["formula"] = to_decimal(fr.value);
  int code = 0;
  std::optional<BigInt> oracle;
  if (g.oracle) {
    oracle = count_tilings(build_region(s), oracle_config(g));
    res["oracle"] = to_decimal(*oracle);
    res["agree"] = *oracle == fr.value;
    if (*oracle != fr.value) code = 1;
  }
  if (audit) {
    res["factors"] = Json::array();
    for (auto& t : fr.terms) {
      Json f = {{"name", t.name}};
      if (t.is_gamma) f["gamma"] = t.gamma.str();
      else f["count"] = to_decimal(t.count);
      res["factors"].push_back(f);
    }
    res["sqrt_pi_exponent"] = std::to_string(fr.gamma.sqrt_pi_exponent());
  }
  if (g.json) {
    out << j.dump(2) << '\n';
    return code;
  }
  out << format_spec(s) << '\n' << "formula: " << fr.value << '\n';
  if (oracle) out << "oracle:  " << *oracle << '\n' << "agree:   " << (*oracle == fr.value ? "true" : "false") << '\n';
  if (audit) {
    for (auto& t : fr.terms) {
      out << "  " << t.name << " = ";
      if (t.is_gamma) out << t.gamma.str();
      else out << t.count;
      out << '\n';
    }
  }
  return code;
}

// ---- verify ----

struct GridOpts {
  long max_x = 2, max_y = 1, max_z = 2;
  std::string ferns;
  long sample = 0;
};

SweepBudget budget_of(const Globals& g, const GridOpts& o, bool area_given) {
  SweepBudget b;
  b.max_x = o.max_x;
  b.max_y = o.max_y;
  b.max_z = o.max_z;
  if (area_given) b.max_area = g.max_area;
  if (!o.ferns.empty()) {
    b.fern_alphabet.clear();
    static const std::regex item(R"(\[[^\]]*\])");
    for (std::sregex_iterator it(o.ferns.begin(), o.ferns.end(), item), end; it != end; ++it)
      b.fern_alphabet.push_back(parse_seq(it->str()));
    if (b.fern_alphabet.empty()) throw UsageError("--ferns lists no sequence");
  }
  return b;
}

Json budget_json(const SweepBudget& b) {
  Json j = {{"max_x", std::to_string(b.max_x)}, {"max_y", std::to_string(b.max_y)},
            {"max_z", std::to_string(b.max_z)}, {"max_area", std::to_string(b.max_area)}};
  j["ferns"] = Json::array();
  for (auto& f : b.fern_alphabet) j["ferns"].push_back(format_seq(f));
  return j;
}

int cmd_verify_grid(const Globals& g, const GridOpts& o, bool area_given, std::ostream& out) {
  SweepBudget b = budget_of(g, o, area_given);
  OracleConfig cfg = oracle_config(g);
  cfg.max_area = std::max(cfg.max_area, b.max_area);
  std::vector<Family> fams = rq_families();
  fams.push_back(Family::H);
  fams.push_back(Family::B);
  std::mt19937 rng(g.seed);
  Json j = doc("verify grid", {{"budget", budget_json(b)}, {"sample", std::to_string(o.sample)},
                               {"seed", std::to_string(g.seed)}});
  VerificationReport total;
  Json per = Json::object();
  for (Family f : fams) {
    auto specs = grid_specs(f, b);
    if (o.sample > 0 && static_cast<long>(specs.size()) > o.sample) {
      std::shuffle(specs.begin(), specs.end(), rng);
      specs.resize(o.sample);
    }
    VerificationReport r = check_specs(specs, b.max_area, cfg);
    per[family_name(f)] = report_json(r);
    if (!g.json) print_report(out, family_name(f), r);
    total.merge(r);
  }
  j["results"]["families"] = per;
  j["results"]["total"] = report_json(total);
  if (g.json) out << j.dump(2) << '\n';
  else print_report(out, "total", total);
  return total.pass() ? 0 : 1;
}

int cmd_verify_kuo(const Globals& g, const std::string& id, const std::string& spec_text,
                   const std::string& mode_text, long per_id, bool area_given, std::ostream& out) {
  KuoMode mode = mode_text == "formula" ? KuoMode::Formula : KuoMode::Oracle;
  OracleConfig cfg = oracle_config(g);
  std::vector<const KuoTemplate*> ks;
  if (id.empty()) {
    for (auto& k : kuo_templates()) ks.push_back(&k);
  } else {
    ks.push_back(&kuo_template(id));
  }
  std::vector<std::pair<const KuoTemplate*, RegionSpec>> work;
  if (!spec_text.empty()) {
    if (ks.size() != 1) throw UsageError("--spec needs --id");
    work.push_back({ks[0], checked_spec(spec_text)});
  } else {
    SweepBudget b;
    b.max_x = b.max_z = 3;
    b.max_y = 2;
    b.fern_alphabet = {{}, {1}, {2}, {1, 1}, {2, 1}};
    b.max_area = area_given ? g.max_area : 110;
    for (auto* k : ks) {
      for (auto& [fid, ftext] : kuo_figure_instances())
        if (fid == k->id) work.push_back({k, parse_spec(ftext)});
      for (auto& s : kuo_grid_instances(*k, b, per_id)) work.push_back({k, s});
    }
  }
  Json j = doc("verify kuo", {{"id", id.empty() ? "all" : id}, {"mode", mode_text}});
  if (!spec_text.empty()) j["inputs"]["spec"] = format_spec(work[0].second);
  Json rows = Json::array();
  VerificationReport total;
  for (auto& [k, s] : work) {
    detail::Stopwatch sw;
    KuoCheck kc = evaluate_kuo(*k, s, mode, cfg);
    VerificationReport r;
    r.instances_checked = 1;
    if (!kc.holds) r.failures.push_back({format_spec(s), to_decimal(kc.lhs), to_decimal(kc.rhs), k->id + " identity fails"});
    if (!kc.h_decreases) r.failures.push_back({format_spec(s), "", "", k->id + ": companion h not smaller"});
    r.elapsed = sw.seconds();
    total.merge(r);
    Json row = {{"id", k->id}, {"spec", format_spec(s)}, {"lhs", to_decimal(kc.lhs)}, {"rhs", to_decimal(kc.rhs)},
                {"holds", kc.holds}, {"h_decreases", kc.h_decreases}};
    row["regions"] = Json::array();
    for (size_t i = 0; i < kc.regions.size(); ++i)
      row["regions"].push_back({{"spec", format_spec(kc.regions[i])}, {"count", to_decimal(kc.values[i])},
                                {"h", std::to_string(h_param(kc.regions[i]))}});
    rows.push_back(row);
    if (!g.json)
      out << (kc.holds && kc.h_decreases ? "pass " : "FAIL ") << k->id << "  " << format_spec(s) << "  "
          << kc.lhs << (kc.holds ? " = " : " != ") << kc.rhs << '\n';
  }
  j["results"]["instances"] = rows;
  j["results"]["total"] = report_json(total);
  if (g.json) out << j.dump(2) << '\n';
  else print_report(out, "kuo", total);
  return total.pass() ? 0 : 1;
}

int cmd_verify_extremal(const Globals& g, const GridOpts& o, bool area_given, std::ostream& out) {
  SweepBudget b = budget_of(g, o, area_given);
  OracleConfig cfg = oracle_config(g);
  cfg.max_area = std::max(cfg.max_area, 4 * b.max_area);
  LemmaReport lr = check_extremal_lemmas(b, cfg);
  VerificationReport t = lr.total();
  Json j = doc("verify extremal", {{"budget", budget_json(b)}});
  auto& res = j["results"];
  std::pair<const char*, const VerificationReport*> parts[] = {{"forced", &lr.forced},
                                                               {"split", &lr.split},
                                                               {"base_case", &lr.base_case},
                                                               {"zero_elimination", &lr.zero_elim},
                                                               {"reductions", &lr.reductions}};
  for (auto& [name, r] : parts) {
    res[name] = report_json(*r);
    if (!g.json) print_report(out, name, *r);
  }
  res["total"] = report_json(t);
  if (g.json) out << j.dump(2) << '\n';
  else print_report(out, "total", t);
  return t.pass() ? 0 : 1;
}

int cmd_verify_dual(const Globals& g, const std::string& a, const std::string& c, const std::string& b, double x,
                    double z, const std::vector<long>& Ns, double tol, long exact_up_to, std::ostream& out) {
  if (Ns.empty()) throw UsageError("--N needs at least one value");
  FernSeq fa = parse_seq(a), fc = parse_seq(c), fb = parse_seq(b);
  auto rows = check_dual_convergence(fa, fc, fb, x, z, Ns, exact_up_to);
  bool ok = rows.back().rel_error <= tol;
  for (auto& r : rows)
    if (r.exact_checked && !r.exact_agrees) ok = false;
  Json j = doc("verify dual", {{"a", seq_json(fa)}, {"c", seq_json(fc)}, {"b", seq_json(fb)},
                               {"x", std::to_string(x)}, {"z", std::to_string(z)}, {"tolerance", std::to_string(tol)}});
  j["inputs"]["N"] = Json::array();
  for (long n : Ns) j["inputs"]["N"].push_back(std::to_string(n));
  Json table = Json::array();
  for (auto& r : rows)
    table.push_back({{"N", std::to_string(r.N)},
                     {"ratio", std::to_string(r.ratio)},
                     {"exact_ratio", to_decimal(r.exact_ratio)},
                     {"limit", std::to_string(r.limit)},
                     {"relative_error", std::to_string(r.rel_error)},
                     {"exact_checked", r.exact_checked},
                     {"exact_agrees", r.exact_agrees}});
  j["results"]["rows"] = table;
  j["results"]["pass"] = ok;
  if (g.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "N\tratio\tlimit\trel_error\texact\n";
    for (auto& r : rows)
      out << r.N << '\t' << r.ratio << '\t' << r.limit << '\t' << r.rel_error << '\t'
          << (r.exact_checked ? (r.exact_agrees ? "agrees" : "DISAGREES") : "-") << '\n';
    out << (ok ? "pass" : "FAIL") << ": error at N=" << rows.back().N << " is " << rows.back().rel_error
        << " (tolerance " << tol << ")\n";
  }
  return ok ? 0 : 1;
}

// ---- render ----

int cmd_render(const Globals& g, const std::string& text, const std::string& format, const std::string& tiling,
               const std::string& path, std::ostream& out, std::ostream& err) {
  RegionSpec s = checked_spec(text);
  Layout L = layout_of(s);
  Region r = build_region(L);
  Region removed = removed_cells(L, r);
  std::optional<std::vector<Lozenge>> t;
  if (tiling == "first") {
    t = find_tiling(r);
    if (!t) {
      err << "region has no tiling\n";
      return 1;
    }
  }
  std::string drawing = format == "svg" ? render_svg(r, removed, t ? &*t : nullptr)
                                        : render_ascii(r, removed, t ? &*t : nullptr);
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << drawing;
  }
  if (g.json) {
    Json j = doc("render", {{"spec", format_spec(s)}, {"format", format}});
    j["results"]["area"] = std::to_string(r.size());
    j["results"]["lozenges"] = std::to_string(t ? t->size() : 0);
    if (path.empty()) j["results"]["drawing"] = drawing;
    else j["results"]["file"] = path;
    out << j.dump(2) << '\n';
  } else if (path.empty()) {
    out << drawing;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lozenge tilings of hexagons with three ferns removed"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--oracle", g.oracle, "also count by brute force");
  app.add_option("--backend", g.backend, "oracle backend")->check(CLI::IsMember({"profile", "det", "auto"}));
  auto* area_opt = app.add_option("--max-area", g.max_area, "oracle area ceiling")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for sweep subsampling");

  std::string spec_text;
  bool audit = false;
  auto* count = app.add_subcommand("count", "exact count of a region")->fallthrough();
  count->add_option("spec", spec_text, "region spec")->required();
  count->add_flag("--audit", audit, "list formula factors");

  auto* verify = app.add_subcommand("verify", "verification suites")->fallthrough()->require_subcommand(1);
  GridOpts grid_opts;
  auto add_grid = [&](CLI::App* sc) {
    sc->add_option("--max-x", grid_opts.max_x);
    sc->add_option("--max-y", grid_opts.max_y);
    sc->add_option("--max-z", grid_opts.max_z);
    sc->add_option("--ferns", grid_opts.ferns, "fern alphabet, e.g. \"[] [1] [2,1]\"");
  };
  auto* grid = verify->add_subcommand("grid", "formula against oracle over a parameter grid")->fallthrough();
  add_grid(grid);
  grid->add_option("--sample", grid_opts.sample, "check a random subset of this size per family");

  std::string kuo_id, kuo_spec, kuo_mode = "oracle";
  long kuo_count = 3;
  auto* kuo = verify->add_subcommand("kuo", "recurrence identities")->fallthrough();
  kuo->add_option("--id", kuo_id, "recurrence id, e.g. Rc-lt (all when omitted)");
  kuo->add_option("--spec", kuo_spec, "head region");
  kuo->add_option("--mode", kuo_mode)->check(CLI::IsMember({"oracle", "formula"}));
  kuo->add_option("--count", kuo_count, "grid instances per recurrence");

  auto* extremal = verify->add_subcommand("extremal", "forced lozenges, splitting, zero elimination, reductions")
                       ->fallthrough();
  add_grid(extremal);

  std::string da = "[1,1]", dc = "[2]", db = "[1,1]";
  double dx = 1, dz = 1, dtol = 0.05;
  std::vector<long> dN = {4, 8, 16, 24};
  long dexact = 12;
  auto* dual = verify->add_subcommand("dual", "finite-N ratio against the limit")->fallthrough();
  dual->add_option("--a", da);
  dual->add_option("--c", dc);
  dual->add_option("--b", db);
  dual->add_option("--x", dx);
  dual->add_option("--z", dz);
  dual->add_option("--N", dN)->delimiter(',');
  dual->add_option("--tol", dtol);
  dual->add_option("--exact-up-to", dexact);

  std::string rformat = "ascii", rtiling, rpath;
  auto* render = app.add_subcommand("render", "draw a region")->fallthrough();
  render->add_option("spec", spec_text, "region spec")->required();
  render->add_option("--format", rformat)->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--tiling", rtiling)->check(CLI::IsMember({"first"}));
  render->add_option("-o,--output", rpath);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  // help for a subcommand
  for (auto* sc : app.get_subcommands())
    if (sc->get_help_ptr() && sc->get_help_ptr()->count()) return out << sc->help(), 0;

  try {
    if (*count) return cmd_count(g, spec_text, audit, out);
    if (*render) return cmd_render(g, spec_text, rformat, rtiling, rpath, out, err);
    bool area_given = area_opt->count() > 0;
    if (*grid) return cmd_verify_grid(g, grid_opts, area_given, out);
    if (*kuo) return cmd_verify_kuo(g, kuo_id, kuo_spec, kuo_mode, kuo_count, area_given, out);
    if (*extremal) return cmd_verify_extremal(g, grid_opts, area_given, out);
    if (*dual) return cmd_verify_dual(g, da, dc, db, dx, dz, dN, dtol, dexact, out);
  } catch (const InvalidSpec& e) {
    err << "invalid spec:\n";
    for (auto& v : e.violations) err << "  " << v << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const AreaCeilingExceeded& e) {
    err << "resource ceiling: " << e.what() << '\n';
    return 3;
  } catch (const LimitExceeded& e) {
    err << "resource ceiling: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    // parity, totals, side conditions, unknown ids
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const GeometryConflict& e) {
    err << "geometry conflict: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fernlab
