#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rm2/analytic.hpp"
#include "rm2/error.hpp"
#include "rm2/model.hpp"
#include "rm2/oracle.hpp"
#include "rm2/scattering.hpp"
#include "rm2/spectrum.hpp"
#include "rm2/susy.hpp"
#include "rm2/verify.hpp"

namespace rm2::cli {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::Oracle: return "oracle";
    case Provenance::Comparison: return "comparison";
    case Provenance::Label: return "label";
  }
  return "label";
}

std::size_t Table::rows() const {
  std::size_t n = 0;
  for (const Column& c : columns) n = std::max(n, c.cells.size());
  return n;
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw Error(ErrorCode::InvalidArgument, "format must be csv or json, got '" + text + "'");
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Non-finite numbers become null so the JSON stays valid.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json tagged(const Json& value, Provenance p) { return Json{{"value", value}, {"provenance", to_string(p)}}; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Json& j) {
  if (j.is_null()) return "nan";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return format_double(j.get<double>());
  if (j.is_string()) return csv_escape(j.get<std::string>());
  return csv_escape(j.dump());
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) return csv_cell(j);
  std::string out;
  for (const Json& e : j) out += (out.empty() ? "" : " ") + scalar_text(e);
  return out;
}

// Nested objects print as dotted keys, one line each.
void header_lines(std::ostream& os, const std::string& label, const std::string& prefix, const Json& j) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) header_lines(os, label, name, value);
    else os << "# " << label << ' ' << name << " = " << scalar_text(value) << "\n";
  }
}

Json table_json(const Table& t) {
  Json cols = Json::array();
  for (const Column& c : t.columns) cols.push_back({{"name", c.name}, {"provenance", to_string(c.provenance)}});
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Json row = Json::array();
    for (const Column& c : t.columns) row.push_back(i < c.cells.size() ? c.cells[i] : Json(nullptr));
    rows.push_back(std::move(row));
  }
  return {{"name", t.name}, {"columns", cols}, {"rows", rows}};
}

Json model_params(const Options& o) { return {{"lambda", o.lambda}, {"beta", o.beta}}; }

Json grid_json(const Grid& g) { return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"points", g.points}}; }

Grid grid_or(const Options& o, Grid fallback) {
  const Grid g = o.grid.value_or(fallback);
  if (g.points < 2 || !(g.x_max > g.x_min))
    throw Error(ErrorCode::InvalidArgument, "grid needs x_max > x_min and at least 2 points");
  return g;
}

ModelParams checked(const Options& o) {
  const ModelParams p{o.lambda, o.beta};
  validate(p);
  return p;
}

Condition condition_of(int c) {
  if (c == 1) return Condition::First;
  if (c == 2) return Condition::Second;
  throw Error(ErrorCode::InvalidArgument, "condition must be 1 or 2");
}

Family family_of(const std::string& s) {
  if (s == "phi") return Family::Phi;
  if (s == "psi") return Family::Psi;
  throw Error(ErrorCode::InvalidArgument, "family must be phi or psi, got '" + s + "'");
}

SeedKind seed_kind_of(const std::string& s) {
  if (s == "ground") return SeedKind::GroundState;
  if (s == "bound") return SeedKind::Bound;
  if (s == "redundant") return SeedKind::Redundant;
  if (s == "antibound" || s == "anti-bound") return SeedKind::AntiBound;
  throw Error(ErrorCode::InvalidArgument, "seed kind must be ground, bound, redundant or antibound, got '" + s + "'");
}

// Samples rescaled to unit maximum modulus over the grid, computed in log
// space so that growing solutions stay finite.
std::vector<Json> normalised(const std::vector<ScaledReal>& samples) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const ScaledReal& s : samples)
    if (s.value != 0.0 && std::isfinite(s.value)) peak = std::max(peak, s.log_scale + std::log(std::abs(s.value)));
  std::vector<Json> out;
  out.reserve(samples.size());
  for (const ScaledReal& s : samples) out.push_back(number(std::isfinite(peak) ? std::exp(s.log_scale - peak) * s.value : s.value));
  return out;
}

Column numeric(std::string name, Provenance p, const std::vector<double>& values) {
  Column c{std::move(name), p, {}};
  c.cells.reserve(values.size());
  for (double v : values) c.cells.push_back(number(v));
  return c;
}

}  // namespace

std::string render_json(const OutputRecord& r, bool with_metadata) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = r.command;
  doc["params"] = r.params;
  Json payload;
  payload["summary"] = r.summary;
  Json tables = Json::array();
  for (const Table& t : r.tables) tables.push_back(table_json(t));
  payload["tables"] = tables;
  payload["notes"] = r.notes;
  doc["payload"] = payload;
  if (with_metadata && !r.metadata.empty()) doc["metadata"] = r.metadata;
  return doc.dump(2) + "\n";
}

std::string render_csv(const OutputRecord& r, bool with_metadata) {
  std::ostringstream os;
  os << "# schema_version: " << kSchemaVersion << "\n# command: " << r.command << "\n";
  header_lines(os, "param", "", r.params);
  for (const auto& [key, entry] : r.summary.items())
    os << "# summary " << key << " = " << scalar_text(entry["value"]) << " [" << entry["provenance"].get<std::string>()
       << "]\n";
  for (const std::string& note : r.notes) os << "# note: " << note << "\n";
  if (with_metadata)
    header_lines(os, "metadata", "", r.metadata);
  for (const Table& t : r.tables) {
    os << "# table: " << t.name << "\n# provenance:";
    for (const Column& c : t.columns) os << ' ' << c.name << '=' << to_string(c.provenance);
    os << '\n';
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << csv_escape(t.columns[j].name);
    os << '\n';
    for (std::size_t i = 0; i < t.rows(); ++i) {
      for (std::size_t j = 0; j < t.columns.size(); ++j) {
        const Column& c = t.columns[j];
        os << (j ? "," : "") << (i < c.cells.size() ? csv_cell(c.cells[i]) : std::string("nan"));
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string render(const OutputRecord& r, Format format, bool with_metadata) {
  return format == Format::Json ? render_json(r, with_metadata) : render_csv(r, with_metadata);
}

OutputRecord cmd_potential(const Options& o) {
  const ModelParams p = checked(o);
  const Grid g = grid_or(o, {-10.0, 10.0, 401});
  OutputRecord r;
  r.command = "potential";
  r.params = model_params(o);
  r.params["grid"] = grid_json(g);
  try {
    r.summary["shape"] = tagged(std::string(to_string(model::classify_shape(p.well_coefficient(), p.beta))),
                                Provenance::Analytic);
  } catch (const Error& e) {
    r.notes.push_back(std::string("shape unclassified: ") + e.what());
  }
  r.summary["asymptote_left"] = tagged(-2.0 * p.beta, Provenance::Analytic);
  r.summary["asymptote_right"] = tagged(2.0 * p.beta, Provenance::Analytic);
  std::vector<double> xs = g.nodes();
  std::vector<double> vs;
  for (double x : xs) vs.push_back(model::potential(p, x));
  r.tables.push_back({"potential", {numeric("x", Provenance::Label, xs), numeric("V", Provenance::Analytic, vs)}});
  return r;
}

OutputRecord cmd_poles(const Options& o) {
  const ModelParams p = checked(o);
  if (o.n_cap < 0) throw Error(ErrorCode::InvalidArgument, "n-cap must be non-negative");
  const PoleTable table = spectrum::classify_poles(p, o.n_cap, o.tol);
  OutputRecord r;
  r.command = "poles";
  r.params = model_params(o);
  r.params["n_cap"] = o.n_cap;
  r.summary["bound_state_count"] = tagged(spectrum::bound_state_count(p), Provenance::Analytic);
  r.summary["n_max"] = tagged(spectrum::n_max(p), Provenance::Analytic);
  r.summary["n_r"] = tagged(spectrum::n_r(p), Provenance::Analytic);
  try {
    r.summary["shape"] = tagged(std::string(to_string(model::classify_shape(p.well_coefficient(), p.beta))),
                                Provenance::Analytic);
  } catch (const Error&) {
  }

  Table poles{"poles",
              {{"condition", Provenance::Label, {}},
               {"n", Provenance::Label, {}},
               {"exponent", Provenance::Analytic, {}},
               {"energy", Provenance::Analytic, {}},
               {"mu", Provenance::Analytic, {}},
               {"nu", Provenance::Analytic, {}},
               {"class", Provenance::Analytic, {}},
               {"boundary", Provenance::Analytic, {}},
               {"pole_residual", Provenance::Comparison, {}}}};
  for (const PoleRecord& rec : table.records) {
    double residual = kNan;
    try {
      residual = scattering::pole_residual(p, rec, Complex(rec.energy, 0.0), o.tol);
    } catch (const Error&) {
    }
    const Json row[] = {static_cast<int>(rec.condition), rec.n, number(rec.exponent), number(rec.energy),
                        number(rec.mu), number(rec.nu), std::string(to_string(rec.pole_class)), rec.boundary_case,
                        number(residual)};
    for (std::size_t j = 0; j < std::size(row); ++j) poles.columns[j].cells.push_back(row[j]);
  }
  r.tables.push_back(std::move(poles));
  if (!table.singular.empty()) {
    Table singular{"singular_indices", {{"condition", Provenance::Label, {}}, {"n", Provenance::Label, {}}}};
    for (const SingularIndex& s : table.singular) {
      singular.columns[0].cells.push_back(static_cast<int>(s.condition));
      singular.columns[1].cells.push_back(s.n);
    }
    r.tables.push_back(std::move(singular));
  }
  r.notes = table.notes;
  return r;
}

OutputRecord cmd_wavefunction(const Options& o) {
  const ModelParams p = checked(o);
  const Grid g = grid_or(o, {-8.0, 8.0, 321});
  OutputRecord r;
  r.command = "wavefunction";
  r.params = model_params(o);
  r.params["family"] = o.family;
  r.params["grid"] = grid_json(g);
  const std::vector<double> xs = g.nodes();
  if (o.energy) {
    const analytic::GeneralFamily fam =
        family_of(o.family) == Family::Psi ? analytic::GeneralFamily::Psi : analytic::GeneralFamily::Phi;
    r.params["energy"] = *o.energy;
    std::vector<double> ls, re, im, dre, dim;
    for (double x : xs) {
      const ScaledComplex s = analytic::eval_general(p, Complex(*o.energy, 0.0), fam, x, o.tol);
      ls.push_back(s.log_scale);
      re.push_back(s.value.real());
      im.push_back(s.value.imag());
      dre.push_back(s.derivative.real());
      dim.push_back(s.derivative.imag());
    }
    r.tables.push_back({"wavefunction",
                        {numeric("x", Provenance::Label, xs), numeric("log_scale", Provenance::Analytic, ls),
                         numeric("re", Provenance::Analytic, re), numeric("im", Provenance::Analytic, im),
                         numeric("re_derivative", Provenance::Analytic, dre),
                         numeric("im_derivative", Provenance::Analytic, dim)}});
    r.notes.push_back("f = exp(log_scale) * (re + i im)");
    return r;
  }
  const Condition cond = condition_of(o.condition.value_or(1));
  const int n = o.n.empty() ? 0 : o.n.front();
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be non-negative");
  r.params["condition"] = static_cast<int>(cond);
  r.params["n"] = n;
  const analytic::PoleEigenfunction f(p, cond, family_of(o.family), n, o.tol);
  const PoleRecord rec = spectrum::make_record(p, cond, n, o.tol);
  r.summary["energy"] = tagged(number(f.energy()), Provenance::Analytic);
  r.summary["class"] = tagged(std::string(to_string(rec.pole_class)), Provenance::Analytic);
  std::vector<ScaledReal> samples;
  std::vector<double> ls, value, deriv;
  for (double x : xs) {
    samples.push_back(f(x));
    ls.push_back(samples.back().log_scale);
    value.push_back(samples.back().value);
    deriv.push_back(samples.back().derivative);
  }
  Column unit{"normalised", Provenance::Analytic, normalised(samples)};
  r.tables.push_back({"wavefunction",
                      {numeric("x", Provenance::Label, xs), numeric("log_scale", Provenance::Analytic, ls),
                       numeric("value", Provenance::Analytic, value),
                       numeric("derivative", Provenance::Analytic, deriv), std::move(unit)}});
  r.notes.push_back("f = exp(log_scale) * value; 'normalised' has unit maximum modulus on the grid");
  return r;
}

OutputRecord cmd_smatrix(const Options& o) {
  const ModelParams p = checked(o);
  const Grid g = grid_or(o, {-30.0, 30.0, 601});
  OutputRecord r;
  r.command = "smatrix";
  r.params = model_params(o);
  r.params["energy_grid"] = grid_json(g);
  const std::vector<double> es = g.nodes();
  std::vector<std::vector<double>> cols(10);
  for (double e : es) {
    double row[10];
    std::fill(std::begin(row), std::end(row), kNan);
    try {
      const TransferMatrix t = scattering::transfer_matrix(p, Complex(e, 0.0), o.tol);
      row[8] = std::abs(t.t22());
      const ScatteringMatrix s = scattering::s_matrix(p, Complex(e, 0.0), o.tol);
      for (int k = 0; k < 4; ++k) {
        row[2 * k] = s.s(k / 2, k % 2).real();
        row[2 * k + 1] = s.s(k / 2, k % 2).imag();
      }
      if (e > 2.0 * p.beta) row[9] = scattering::flux_residual(p, e, o.tol);
    } catch (const Error& err) {
      r.notes.push_back("E = " + format_double(e) + ": " + err.what());
    }
    for (int k = 0; k < 10; ++k) cols[static_cast<std::size_t>(k)].push_back(row[k]);
  }
  const char* names[] = {"re_s11", "im_s11", "re_s12", "im_s12", "re_s21", "im_s21", "re_s22", "im_s22"};
  Table t{"smatrix", {numeric("E", Provenance::Label, es)}};
  for (int k = 0; k < 8; ++k) t.columns.push_back(numeric(names[k], Provenance::Analytic, cols[static_cast<std::size_t>(k)]));
  t.columns.push_back(numeric("abs_t22", Provenance::Analytic, cols[8]));
  t.columns.push_back(numeric("flux_residual", Provenance::Comparison, cols[9]));
  r.tables.push_back(std::move(t));
  return r;
}

OutputRecord cmd_susy(const Options& o) {
  const ModelParams p = checked(o);
  const Grid g = grid_or(o, {-10.0, 10.0, 401});
  const SeedKind kind = seed_kind_of(o.seed_kind);
  const Condition cond = condition_of(o.condition.value_or(kind == SeedKind::AntiBound ? 2 : 1));
  std::vector<int> indices = o.n;
  if (indices.empty()) indices.push_back(kind == SeedKind::GroundState || kind == SeedKind::Bound ? 0 : -1);
  if (std::any_of(indices.begin(), indices.end(), [](int n) { return n < 0; }))
    throw Error(ErrorCode::InvalidArgument, "seed indices must be given with --n for redundant and anti-bound seeds");

  SusyChain chain{p, {}};
  for (int n : indices) {
    SeedKind k = kind;
    if (kind == SeedKind::GroundState || kind == SeedKind::Bound) k = n == 0 ? SeedKind::GroundState : SeedKind::Bound;
    chain.seeds.push_back({k, cond, n});
  }
  const susy::PartnerPotential partner = chain.order() == 1
                                             ? susy::partner_potential_first_order(p, chain.seeds.front(), o.tol)
                                             : susy::partner_potential_wronskian(chain, {-20.0, 20.0, 4001}, o.tol);

  OutputRecord r;
  r.command = "susy";
  r.params = model_params(o);
  r.params["seed_kind"] = o.seed_kind;
  r.params["condition"] = static_cast<int>(cond);
  r.params["n"] = indices;
  r.params["grid"] = grid_json(g);

  const std::vector<double> xs = g.nodes();
  std::vector<double> base, moved;
  for (double x : xs) {
    base.push_back(model::potential(p, x));
    moved.push_back(partner(x));
  }
  r.tables.push_back({"potentials", {numeric("x", Provenance::Label, xs), numeric("V", Provenance::Analytic, base),
                                     numeric("V_partner", Provenance::Analytic, moved)}});

  // Surviving bound states of the base map to partner states; a lone seed
  // also yields the candidate 1/s, which is normalisable for anti-bound seeds.
  Table states{"states", {numeric("x", Provenance::Label, xs)}};
  for (int n = 0; n < spectrum::bound_state_count(p); ++n) {
    const bool deleted = std::any_of(chain.seeds.begin(), chain.seeds.end(), [&](const SeedSpec& s) {
      return s.condition == Condition::First && s.n == n && s.kind != SeedKind::Redundant &&
             s.kind != SeedKind::AntiBound;
    });
    if (deleted) continue;
    const analytic::PoleEigenfunction w(p, Condition::First, Family::Phi, n, o.tol);
    std::vector<ScaledReal> samples;
    for (double x : xs) samples.push_back(susy::transform_state_wronskian(partner, w, x));
    states.columns.push_back({"state_from_n" + std::to_string(n), Provenance::Analytic, normalised(samples)});
  }
  if (chain.order() == 1) {
    const analytic::PoleEigenfunction& s = partner.seeds().front();
    std::vector<ScaledReal> samples;
    for (double x : xs) {
      const ScaledReal v = s(x);
      samples.push_back({-v.log_scale, 1.0 / v.value, 0.0});
    }
    states.columns.push_back({"inverse_seed", Provenance::Analytic, normalised(samples)});
  }
  r.tables.push_back(std::move(states));

  const oracle::OracleSpectrum sb = oracle::bound_states([p](double x) { return model::potential(p, x); }, p.beta);
  const oracle::OracleSpectrum sp = oracle::bound_states(partner.evaluator(), p.beta);
  Table spectra{"spectra", {{"level", Provenance::Label, {}}, {"base", Provenance::Oracle, {}},
                            {"partner", Provenance::Oracle, {}}}};
  for (std::size_t i = 0; i < std::max(sb.size(), sp.size()); ++i) {
    spectra.columns[0].cells.push_back(static_cast<int>(i));
    spectra.columns[1].cells.push_back(i < sb.size() ? number(sb.energies[i]) : Json(nullptr));
    spectra.columns[2].cells.push_back(i < sp.size() ? number(sp.energies[i]) : Json(nullptr));
  }
  r.tables.push_back(std::move(spectra));
  r.summary["base_bound_states"] = tagged(static_cast<int>(sb.size()), Provenance::Oracle);
  r.summary["partner_bound_states"] = tagged(static_cast<int>(sp.size()), Provenance::Oracle);
  r.summary["seed_energy"] = tagged(number(partner.seeds().front().energy()), Provenance::Analytic);
  r.notes.push_back("state columns are normalised to unit maximum modulus on the grid");
  return r;
}

VerifyResult cmd_verify(const Options& o) {
  verify::SuiteOptions so;
  so.lambda = o.lambda;
  so.beta = o.beta;
  so.alpha = o.alpha;
  so.big_n = o.big_n;
  if (o.grid) so.grid = *o.grid;
  so.tol = o.tol;
  const verify::SuiteReport rep = verify::run_suite(o.suite, so);

  VerifyResult out;
  out.passed = rep.passed();
  OutputRecord& r = out.record;
  r.command = "verify";
  r.params = model_params(o);
  r.params["suite"] = o.suite;
  r.params["alpha"] = o.alpha;
  r.params["N"] = o.big_n;
  r.summary["passed"] = tagged(out.passed, Provenance::Comparison);
  r.summary["checks"] = tagged(static_cast<int>(rep.checks.size()), Provenance::Comparison);
  r.summary["failed"] = tagged(static_cast<int>(std::count_if(rep.checks.begin(), rep.checks.end(),
                                                              [](const verify::Check& c) { return !c.passed; })),
                               Provenance::Comparison);
  Table checks{"checks",
               {{"name", Provenance::Label, {}},
                {"passed", Provenance::Comparison, {}},
                {"value", Provenance::Comparison, {}},
                {"threshold", Provenance::Comparison, {}},
                {"detail", Provenance::Label, {}}}};
  for (const verify::Check& c : rep.checks) {
    checks.columns[0].cells.push_back(c.name);
    checks.columns[1].cells.push_back(c.passed);
    checks.columns[2].cells.push_back(number(c.value));
    checks.columns[3].cells.push_back(number(c.threshold));
    checks.columns[4].cells.push_back(c.detail);
  }
  r.tables.push_back(std::move(checks));
  r.notes = rep.notes;
  r.metadata["seconds"] = rep.seconds;
  return out;
}

}  // namespace rm2::cli
