#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "hk/cache.hpp"
#include "hk/diagonalize.hpp"
#include "hk/hk.hpp"
#include "hk/reduce.hpp"
#include "hk/report.hpp"
#include "hk/ringfile.hpp"

namespace hk::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  double tol = 0.01;
  std::string cache_dir;
  bool no_cache = false;
  std::string out;  // empty: the command's default format
  bool timings = false;
  bool serial = false;
};

// Where the ring comes from: a ring file, or --p/--ext/--vars.
struct RingSource {
  std::string file;
  std::uint32_t p = 0;
  std::uint32_t ext = 1;
  std::string vars;
  std::string ideal;  // label for J
  std::string gens;   // inline J
  std::string I;      // label for I; empty means m

  void add_to(CLI::App* app) {
    app->add_option("ringfile", file, "Ring description file");
    app->add_option("--p", p, "Characteristic, when no ring file is given");
    app->add_option("--ext", ext, "Extension degree over F_p")->check(CLI::Range(1, 20));
    app->add_option("--vars", vars, "Variables, separated by spaces or commas");
  }
  void add_ideal_options(CLI::App* app) {
    app->add_option("--ideal", ideal, "Label of the defining ideal J in the ring file");
    app->add_option("--gens", gens, "Inline generators of J");
  }

  RingFile load() const {
    if (!file.empty()) return load_ring_file(file);
    if (!p) throw ParseError("no ring given: pass a ring file or --p and --vars", 0);
    RingFile rf;
    std::vector<std::string> names;
    std::string v = vars;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream is(v);
    for (std::string w; is >> w;) names.push_back(w);
    if (names.empty()) throw ParseError("no variables given", 0);
    rf.field = ext > 1 ? FiniteField::extension(p, ext) : FiniteField::prime(p);
    rf.ring = Ring::create(rf.field, names);
    return rf;
  }

  std::vector<Polynomial> J(const RingFile& rf) const {
    if (!gens.empty()) return parse_poly_list(gens, rf.ring);
    if (!ideal.empty()) return rf.ideal(ideal);
    if (!rf.ideals.empty()) return rf.ideals.front().second;
    return {};
  }
  std::vector<Polynomial> bracket_ideal(const RingFile& rf) const {
    return I.empty() ? maximal_ideal(rf.ring) : rf.ideal(I);
  }
};

struct Context {
  Globals g;
  std::unique_ptr<DiskCache> cache;
  std::ostream* out = nullptr;

  HKOptions hk_options() {
    HKOptions o;
    o.parallel = !g.serial;
    if (!g.no_cache) {
      if (!cache) cache = std::make_unique<DiskCache>(DiskCache::default_dir(g.cache_dir));
      o.cache = cache.get();
    }
    return o;
  }
  std::string format(const std::string& fallback) const {
    const std::string f = g.out.empty() ? fallback : g.out;
    if (f != "csv" && f != "json") throw ParseError("--out must be csv or json", 0);
    return f;
  }
  void emit(const Json& j) { *out << j.dump(2) << "\n"; }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot write " + path);
  f << text;
  if (!f) throw ResourceError("cannot write " + path);
}

Polynomial monsky_quartic(const RingPtr& R, FiniteField::Raw alpha) {
  auto f = parse_poly("z^4 + x*y*z^2 + (x^3 + y^3)*z", R);
  return f + parse_poly("x^2*y^2", R).scaled(alpha);
}

std::vector<FiniteField::Raw> parse_alphas(const std::string& spec, const FiniteField& field,
                                           std::uint64_t seed, const RingPtr& R) {
  if (spec.empty()) return default_alphas(field, seed);
  if (spec == "all") {
    std::vector<FiniteField::Raw> out;
    for (FiniteField::Raw a = 1; a < field.order(); ++a) out.push_back(a);
    return out;
  }
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t k = 0;
    try {
      k = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw ParseError("bad --alphas count", 7);
    }
    std::vector<FiniteField::Raw> pool;
    for (FiniteField::Raw a = 1; a < field.order(); ++a) pool.push_back(a);
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (k < pool.size()) pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }
  // Comma-separated field elements.
  std::vector<FiniteField::Raw> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto end = spec.find(',', pos);
    if (end == std::string::npos) end = spec.size();
    out.push_back(parse_field_element(spec.substr(pos, end - pos), R->field()));
    pos = end + 1;
  }
  return out;
}

std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  auto& g = ctx.g;

  CLI::App app{"Hilbert-Kunz functions and multiplicities over finite fields", "hk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Seed for every random choice");
  auto* tol_opt = app.add_option("--tol", g.tol, "Tolerance for estimate comparisons");
  app.add_option("--cache-dir", g.cache_dir, "Colength cache directory (else $HK_CACHE_DIR)");
  app.add_flag("--no-cache", g.no_cache, "Disable the colength cache");
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--timings", g.timings, "Add per-row timings to JSON output");
  app.add_flag("--serial", g.serial, "Use the serial kernel");

  RingSource rs;
  std::uint64_t q = 0;
  std::uint32_t emax = 3;

  auto* compute = app.add_subcommand("compute", "Colength of J + I^[q]");
  rs.add_to(compute);
  rs.add_ideal_options(compute);
  compute->add_option("--I", rs.I, "Label of the ideal I (default: the maximal ideal)");
  compute->add_option("--q", q, "Power of the characteristic")->required();

  auto* function = app.add_subcommand("function", "Rows e, q, colength, f_e");
  auto* estimate = app.add_subcommand("estimate", "Extrapolated multiplicity");
  for (auto* c : {function, estimate}) {
    rs.add_to(c);
    rs.add_ideal_options(c);
    c->add_option("--I", rs.I, "Label of the ideal I (default: the maximal ideal)");
    c->add_option("--emax", emax, "Largest exponent e")->check(CLI::Range(1, 32));
  }

  std::string f_text, g_text, alphas_text;
  auto* family = app.add_subcommand("family", "Fiberwise comparison for f + alpha g");
  rs.add_to(family);
  family->add_option("--f", f_text, "Base polynomial")->required();
  family->add_option("--g", g_text, "Perturbation")->required();
  family->add_option("--alphas", alphas_text, "all, random:k, or a comma-separated list");
  family->add_option("--emax", emax, "Largest exponent e")->check(CLI::Range(1, 32));

  std::string alpha_text = "1";
  std::uint32_t monsky_ext = 2;
  auto* monsky = app.add_subcommand("monsky", "Measured versus reference value for the quartic family");
  monsky->add_option("--alpha", alpha_text, "Field element alpha");
  monsky->add_option("--ext", monsky_ext, "Work over F_{2^ext}")->check(CLI::Range(1, 20));
  monsky->add_option("--emax", emax, "Largest exponent e")->check(CLI::Range(1, 32));

  std::string target = "squares";
  auto* diag = app.add_subcommand("diagonalize", "Normal form of a series with a certificate");
  rs.add_to(diag);
  diag->add_option("--f", f_text, "Series, as expr@N")->required();
  diag->add_option("--target", target, "squares or cube")->check(CLI::IsMember({"squares", "cube"}));

  std::uint32_t precision = 0;
  bool audit = false;
  std::string trace_path, audit_path;
  auto* reduce = app.add_subcommand("reduce", "Complete intersection to hypersurface");
  rs.add_to(reduce);
  rs.add_ideal_options(reduce);
  reduce->add_option("--precision", precision, "Series precision N")->check(CLI::Range(3, 1000));
  reduce->add_flag("--audit", audit, "Record f_e before and after each elimination");
  reduce->add_option("--emax", emax, "Largest exponent e for the audit")->check(CLI::Range(1, 8));
  reduce->add_option("--trace", trace_path, "Write the trace JSON here");
  reduce->add_option("--audit-csv", audit_path, "Write the audit CSV here");

  auto* replay_cmd = app.add_subcommand("replay", "Re-run a recorded trace and compare snapshots");
  rs.add_to(replay_cmd);
  replay_cmd->add_option("--trace", trace_path, "Trace JSON")->required();

  int dim = 2;
  std::size_t count = 10;
  auto* scan = app.add_subcommand("scan", "Singular hypersurfaces against the quadric");
  scan->add_option("--dim", dim, "Dimension d")->check(CLI::Range(1, 4));
  scan->add_option("--p", rs.p, "Characteristic (odd)")->required();
  scan->add_option("--count", count, "Number of samples")->check(CLI::Range(1, 1000));
  scan->add_option("--emax", emax, "Largest exponent e")->check(CLI::Range(1, 8));

  std::vector<std::string> argv_words;
  for (std::size_t i = 1; i < args_in.size(); ++i) argv_words.push_back(args_in[i]);
  std::reverse(argv_words.begin(), argv_words.end());
  try {
    app.parse(argv_words);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hk: " << e.what() << "\n";
    return exit_code(ErrorKind::parse);
  }

  try {
    if (compute->parsed()) {
      const auto rf = rs.load();
      const auto P = LocalRingPresentation::create(rf.ring, rs.J(rf));
      const auto c = hk_colength(P, rs.bracket_ideal(rf), q, ctx.hk_options());
      if (g.out == "json") {
        Json j;
        j["field"] = rf.field->spec().to_string();
        j["vars"] = rf.ring->vars();
        Json ideal = Json::array();
        for (const auto& p : P.J) ideal.push_back(p.to_string());
        j["ideal"] = ideal;
        j["q"] = q;
        j["colength"] = c;
        ctx.emit(j);
      } else {
        out << c << "\n";
      }
    } else if (function->parsed() || estimate->parsed()) {
      const auto rf = rs.load();
      const auto P = LocalRingPresentation::create(rf.ring, rs.J(rf));
      auto opts = ctx.hk_options();
      opts.truncation = rf.precision;
      auto rep = hk_function(P, rs.bracket_ideal(rf), emax, opts);
      const bool est = estimate->parsed();
      if (est) {
        const auto fit = hk_estimate(rep);  // throws on fewer than three rows
        rep.estimate = fit.estimate;
        rep.uncertainty = fit.uncertainty;
      }
      if (ctx.format("csv") == "json") {
        ctx.emit(to_json(rep, g.timings));
      } else if (est) {
        out << "estimate,uncertainty\n" << format_fe(*rep.estimate) << "," << format_fe(*rep.uncertainty) << "\n";
      } else {
        out << report_csv(rep);
      }
    } else if (family->parsed()) {
      const auto rf = rs.load();
      const auto f = parse_poly(f_text, rf.ring);
      const auto gp = parse_poly(g_text, rf.ring);
      const auto alphas = parse_alphas(alphas_text, *rf.field, g.seed, rf.ring);
      const auto res = family_scan(f, gp, alphas, emax, ctx.hk_options());
      if (ctx.format("csv") == "json") {
        ctx.emit(to_json(res, g.timings));
      } else {
        out << family_csv(res);
      }
    } else if (monsky->parsed()) {
      const auto field = monsky_ext > 1 ? FiniteField::extension(2, monsky_ext) : FiniteField::prime(2);
      const auto R = Ring::create(field, {"x", "y", "z"});
      const FieldElement alpha(field, parse_field_element(alpha_text, field));
      const auto P = LocalRingPresentation::create(R, {monsky_quartic(R, alpha.raw())});
      auto rep = hk_function(P, maximal_ideal(R), emax, ctx.hk_options());
      const auto fit = hk_estimate(rep);
      rep.estimate = fit.estimate;
      rep.uncertainty = fit.uncertainty;
      const auto ref = monsky_reference(alpha);
      const bool within = ref && std::abs(*rep.estimate - boost::rational_cast<double>(*ref)) <= g.tol;
      if (ctx.format("csv") == "json") {
        Json j;
        j["alpha"] = alpha.to_string();
        j["field"] = field->spec().to_string();
        j["m_alpha"] = ref ? Json(monsky_degree(alpha)) : Json(nullptr);
        j["reference"] = ref ? Json(rational_text(*ref)) : Json(nullptr);
        j["reference_value"] = ref ? Json(boost::rational_cast<double>(*ref)) : Json(nullptr);
        j["estimate"] = *rep.estimate;
        j["uncertainty"] = *rep.uncertainty;
        j["tolerance"] = g.tol;
        j["within_tolerance"] = ref ? Json(within) : Json(nullptr);
        j["report"] = to_json(rep, g.timings);
        ctx.emit(j);
      } else {
        out << "alpha,m_alpha,reference,estimate,uncertainty,within_tolerance\n";
        out << alpha.to_string() << "," << (ref ? std::to_string(monsky_degree(alpha)) : "") << ","
            << (ref ? rational_text(*ref) : "undefined") << "," << format_fe(*rep.estimate) << ","
            << format_fe(*rep.uncertainty) << "," << (ref ? (within ? "true" : "false") : "") << "\n";
      }
    } else if (diag->parsed()) {
      const auto rf = rs.load();
      const auto F = parse_series(f_text, rf.ring, rf.precision.value_or(12));
      const auto cert = diagonalize_hypersurface(
          F, target == "cube" ? NormalForm::squares_plus_cube : NormalForm::sum_of_squares);
      if (ctx.format("json") == "json") {
        ctx.emit(to_json(cert));
      } else {
        out << "tag,rank,verified,normal_form\n"
            << to_string(cert.tag) << "," << cert.rank << "," << (cert.verified ? "true" : "false") << ",\""
            << cert.normal_form.to_string() << "\"\n";
      }
    } else if (reduce->parsed()) {
      const auto rf = rs.load();
      const auto gens = rs.J(rf);
      if (gens.empty()) throw PreconditionError("no generators to reduce");
      const auto P = CIPresentation::from_polynomials(gens, precision ? precision : rf.precision.value_or(12));
      AuditOptions ao;
      ao.enabled = audit;
      ao.e_max = emax;
      ao.hk = ctx.hk_options();
      const auto res = ci_to_hypersurface(P, g.seed, ao);
      if (!trace_path.empty()) write_file(trace_path, to_json(res.trace).dump(2) + "\n");
      if (!audit_path.empty()) write_file(audit_path, audit_csv(res.trace));
      if (ctx.format("json") == "json") {
        Json j;
        j["field"] = rf.field->spec().to_string();
        j["input"] = P.snapshot();
        j["regular"] = res.regular;
        j["hypersurface"] = res.hypersurface ? Json(res.hypersurface->to_string()) : Json(nullptr);
        j["vars"] = res.presentation.ring->vars();
        j["trace"] = to_json(res.trace);
        ctx.emit(j);
      } else {
        out << audit_csv(res.trace);
      }
    } else if (replay_cmd->parsed()) {
      const auto rf = rs.load();
      std::ifstream in(trace_path, std::ios::binary);
      if (!in) throw ParseError("cannot open trace " + trace_path, 0);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed trace: ") + e.what(), e.byte);
      }
      const auto trace = trace_from_json(j);
      if (trace.field != rf.field->spec().to_string())
        throw PreconditionError("trace field " + trace.field + " differs from the ring file");
      const auto R = Ring::create(rf.field, trace.initial_vars);
      std::vector<TruncatedSeries> init;
      for (const auto& s : trace.initial) init.push_back(parse_series(s, R));
      const auto rp = replay(trace, CIPresentation::create(R, init));
      out << "matches," << (rp.matches ? "true" : "false") << "\n";
      if (!rp.matches) {
        err << "hk: replay diverges at step " << rp.first_mismatch << "\n";
        return exit_code(ErrorKind::internal);
      }
    } else if (scan->parsed()) {
      ScanOptions so;
      so.e_max = emax;
      so.tolerance = tol_opt->count() ? g.tol : 0.02;
      so.hk = ctx.hk_options();
      const auto rep = conjecture_scan(dim, FiniteField::prime(rs.p), count, g.seed, so);
      if (ctx.format("csv") == "json") {
        ctx.emit(to_json(rep));
      } else {
        out << scan_csv(rep);
      }
    }
    return 0;
  } catch (const Error& e) {
    err << "hk: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    err << "hk: " << e.what() << "\n";
    return exit_code(ErrorKind::parse);
  } catch (const std::bad_alloc&) {
    err << "hk: out of memory\n";
    return exit_code(ErrorKind::resource);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "hk: " << e.what() << "\n";
    return exit_code(ErrorKind::resource);
  } catch (const std::exception& e) {
    err << "hk: internal error: " << e.what() << "\n";
    return exit_code(ErrorKind::internal);
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, out, err);
}

}  // namespace hk::cli
