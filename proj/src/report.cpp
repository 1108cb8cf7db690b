#include "hk/report.hpp"

#include <cstdio>
#include <sstream>

namespace hk {

std::string format_fe(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string report_csv(const HKReport& r) {
  std::ostringstream os;
  os << "e,q,colength,f_e,exact\n";
  for (const auto& row : r.rows)
    os << row.e << "," << row.q << "," << row.colength << "," << format_fe(row.f_e) << ","
       << (row.exact ? "true" : "false") << "\n";
  return os.str();
}

Json to_json(const HKReport& r, bool timings) {
  Json j;
  j["field"] = r.field;
  j["vars"] = r.vars;
  j["ideal"] = r.ideal;
  j["dimension"] = r.d;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"e", row.e},
                    {"q", row.q},
                    {"colength", row.colength},
                    {"f_e", row.f_e},
                    {"exact", row.exact},
                    {"basis_size", row.basis_size}});
  j["rows"] = rows;
  j["estimate"] = r.estimate ? Json(*r.estimate) : Json(nullptr);
  j["uncertainty"] = r.uncertainty ? Json(*r.uncertainty) : Json(nullptr);
  if (timings) {
    Json t = Json::array();
    for (const auto& row : r.rows) t.push_back({{"q", row.q}, {"seconds", row.seconds}});
    j["timings"] = t;
  }
  return j;
}

Json to_json(const FamilyScanResult& r, bool timings) {
  Json j;
  j["f"] = r.f;
  j["g"] = r.g;
  Json fibers = Json::array();
  for (const auto& fb : r.fibers) {
    Json x;
    x["alpha"] = fb.alpha_text;
    x["report"] = to_json(fb.report, timings);
    x["le_base"] = fb.le_base;
    fibers.push_back(x);
  }
  j["fibers"] = fibers;
  Json holds = Json::array();
  for (const auto& fb : r.fibers)
    if (!fb.le_base.empty() && fb.le_base.back()) holds.push_back(fb.alpha_text);
  j["holds_at_emax"] = holds;
  return j;
}

std::string family_csv(const FamilyScanResult& r) {
  std::ostringstream os;
  os << "alpha,e,q,colength,le_base\n";
  for (const auto& fb : r.fibers)
    for (std::size_t k = 0; k < fb.report.rows.size(); ++k) {
      const auto& row = fb.report.rows[k];
      os << fb.alpha_text << "," << row.e << "," << row.q << "," << row.colength << ","
         << (fb.le_base[k] ? "true" : "false") << "\n";
    }
  return os.str();
}

Json series_json(const TruncatedSeries& s) {
  Json j;
  j["series"] = s.poly().to_string();
  j["precision"] = s.precision();
  j["lossy"] = s.lossy();
  Json terms = Json::array();
  if (s.ring()) {
    const auto& f = *s.field();
    for (const auto& t : s.poly().terms()) {
      std::vector<std::uint32_t> e(t.m.e.begin(), t.m.e.begin() + s.ring()->nvars());
      terms.push_back({{"coefficient", f.format(t.c)}, {"exponents", e}});
    }
  }
  j["terms"] = terms;
  return j;
}

Json to_json(const DiagonalizationCertificate& c) {
  Json j;
  j["field"] = c.input.field()->spec().to_string();
  j["vars"] = c.input.ring()->vars();
  j["input"] = series_json(c.input);
  j["tag"] = to_string(c.tag);
  j["rank"] = c.rank;
  Json coeffs = Json::array();
  for (auto x : c.coefficients) coeffs.push_back(c.input.field()->format(x));
  j["coefficients"] = coeffs;
  Json sub = Json::array();
  for (const auto& s : c.substitution) sub.push_back(series_json(s));
  j["substitution"] = sub;
  j["normal_form"] = series_json(c.normal_form);
  j["residual"] = series_json(c.residual);
  j["extensions"] = c.extensions;
  j["steps"] = c.steps;
  j["verified"] = c.verified;
  return j;
}

Json to_json(const ReductionTrace& t) {
  Json j;
  j["field"] = t.field;
  j["initial_vars"] = t.initial_vars;
  j["initial"] = t.initial;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json x;
    x["kind"] = to_string(s.kind);
    x["target"] = s.target;
    x["pivot"] = s.pivot;
    x["var"] = s.var;
    x["a"] = s.a;
    if (s.kind == StepKind::linear_change) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < s.M.n; ++i) {
        std::vector<std::uint32_t> row;
        for (std::size_t k = 0; k < s.M.n; ++k) row.push_back(s.M.at(i, k));
        rows.push_back(row);
      }
      x["matrix"] = rows;
    }
    x["vars_before"] = s.vars_before;
    x["before"] = s.before;
    x["vars_after"] = s.vars_after;
    x["after"] = s.after;
    if (!s.audit.empty()) {
      Json audit = Json::array();
      for (const auto& r : s.audit)
        audit.push_back({{"e", r.e},
                         {"q", r.q},
                         {"before", r.before},
                         {"after", r.after},
                         {"exact", r.exact},
                         {"holds", r.holds}});
      x["audit"] = audit;
    }
    x["note"] = s.note;
    steps.push_back(x);
  }
  j["steps"] = steps;
  j["flags"] = t.flags;
  return j;
}

ReductionTrace trace_from_json(const Json& j) {
  try {
    ReductionTrace t;
    t.field = j.at("field").get<std::string>();
    t.initial_vars = j.at("initial_vars").get<std::vector<std::string>>();
    t.initial = j.at("initial").get<std::vector<std::string>>();
    for (const auto& x : j.at("steps")) {
      ReductionStep s;
      s.kind = step_kind_from_string(x.at("kind").get<std::string>());
      s.target = x.at("target").get<std::size_t>();
      s.pivot = x.at("pivot").get<std::size_t>();
      s.var = x.at("var").get<std::size_t>();
      s.a = x.at("a").get<FiniteField::Raw>();
      if (x.contains("matrix")) {
        const auto rows = x.at("matrix").get<std::vector<std::vector<std::uint32_t>>>();
        s.M = FieldMatrix::identity(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows.size()) throw ParseError("matrix is not square", 0);
          for (std::size_t k = 0; k < rows.size(); ++k) s.M.at(i, k) = rows[i][k];
        }
      }
      s.vars_before = x.at("vars_before").get<std::vector<std::string>>();
      s.before = x.at("before").get<std::vector<std::string>>();
      s.vars_after = x.at("vars_after").get<std::vector<std::string>>();
      s.after = x.at("after").get<std::vector<std::string>>();
      if (x.contains("audit"))
        for (const auto& r : x.at("audit")) {
          AuditRow a;
          a.e = r.at("e").get<std::uint32_t>();
          a.q = r.at("q").get<std::uint64_t>();
          a.before = r.at("before").get<double>();
          a.after = r.at("after").get<double>();
          a.exact = r.at("exact").get<bool>();
          a.holds = r.at("holds").get<bool>();
          s.audit.push_back(a);
        }
      s.note = x.value("note", std::string());
      t.steps.push_back(std::move(s));
    }
    t.flags = j.value("flags", std::vector<std::string>());
    return t;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed trace: ") + e.what(), 0);
  }
}

std::string audit_csv(const ReductionTrace& t) {
  std::ostringstream os;
  os << "step,e,q,before,after,exact,holds\n";
  for (std::size_t k = 0; k < t.steps.size(); ++k)
    for (const auto& r : t.steps[k].audit)
      os << k << "," << r.e << "," << r.q << "," << format_fe(r.before) << "," << format_fe(r.after) << ","
         << (r.exact ? "true" : "false") << "," << (r.holds ? "true" : "false") << "\n";
  return os.str();
}

Json to_json(const ScanReport& r) {
  Json j;
  j["dimension"] = r.d;
  j["field"] = r.field;
  j["e_max"] = r.e_max;
  j["tolerance"] = r.tolerance;
  j["quadric_estimate"] = r.quadric_estimate;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"index", row.index},
                    {"f", row.f},
                    {"estimate", row.estimate},
                    {"uncertainty", row.uncertainty},
                    {"passes", row.passes}});
  j["rows"] = rows;
  j["all_pass"] = r.all_pass;
  return j;
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "index,estimate,uncertainty,quadric,passes,f\n";
  for (const auto& row : r.rows)
    os << row.index << "," << format_fe(row.estimate) << "," << format_fe(row.uncertainty) << ","
       << format_fe(r.quadric_estimate) << "," << (row.passes ? "true" : "false") << ",\"" << row.f << "\"\n";
  return os.str();
}

}  // namespace hk
