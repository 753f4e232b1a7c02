#include "cli/commands.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "cli/verify.hpp"
#include "wbalg/wbalg.hpp"

namespace wbalg::cli {

namespace {

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

void require_format(const RunConfig& cfg, bool mm_ok, const char* command) {
  if (cfg.format == Format::mm && !mm_ok)
    throw std::invalid_argument(std::string("--format mm is not available for ") + command);
}

Json spectrum_json(const SpectrumTable& t) {
  Json j;
  j["arcs"] = t.arcs;
  j["method"] = t.method;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json rj;
    if (t.method == "analytic") {
      rj["ideal"] = ideal_name(r.ideal);
      rj["mu"] = partition_json(r.mu);
      if (r.ideal == Ideal::sub) {
        rj["nu"] = partition_json(r.nu);
        rj["interior"] = r.interior;
      }
      rj["overlap"] = json_number(r.overlap);
      rj["unit_trace"] = json_number(r.unit_trace);
    }
    rj["eigenvalue"] = json_number(r.eigenvalue);
    rj["multiplicity"] = r.multiplicity;
    rows.push_back(rj);
  }
  j["rows"] = rows;
  Json bins = Json::array();
  for (const auto& [e, m] : t.binned()) bins.push_back(Json{{"eigenvalue", json_number(e)}, {"multiplicity", m}});
  j["binned"] = bins;
  if (!t.zero_rows.empty()) {
    Json zeros = Json::array();
    for (const auto& r : t.zero_rows)
      zeros.push_back(Json{{"ideal", ideal_name(r.ideal)},
                           {"mu", partition_json(r.mu)},
                           {"nu", partition_json(r.nu)},
                           {"interior", r.interior},
                           {"overlap", json_number(r.overlap)}});
    j["annihilated"] = zeros;
  }
  j["kernel_dimension"] = t.kernel_dimension;
  return j;
}

void spectrum_csv(const SpectrumTable& t, std::ostream& os) {
  for (const auto& r : t.rows) {
    os << t.arcs << "," << t.method << ",";
    if (t.method == "analytic") {
      os << ideal_name(r.ideal) << ",\"" << r.mu.str() << "\",\"" << (r.ideal == Ideal::sub ? r.nu.str() : "")
         << "\"," << r.interior << "," << csv_number(r.overlap);
    } else {
      os << ",,,,";
    }
    os << "," << csv_number(r.eigenvalue) << "," << r.multiplicity << "\n";
  }
  os << t.arcs << "," << t.method << ",kernel,,,,,0," << t.kernel_dimension << "\n";
}

}  // namespace

void require_operator_scale(const RunConfig& cfg) {
  if (cfg.p < 1) throw std::invalid_argument("--p must be at least 1");
  if (cfg.d < 2) throw std::invalid_argument("--d must be at least 2");
  checked_dimension(cfg.d, 2 * cfg.p);
}

int cmd_dims(const RunConfig& cfg, std::ostream& os) {
  require_format(cfg, false, "dims");
  if (cfg.p < 1 || cfg.d < 1) throw std::invalid_argument("--p and --d must be positive");
  std::int64_t sum = 0, total = 1;
  for (int k = 0; k < cfg.p; ++k) total *= cfg.d;
  Json rows = Json::array();
  if (cfg.format == Format::csv) os << "mu,height,d_mu,m_mu,d_mu*m_mu\n";
  for (const auto& mu : enumerate_partitions(cfg.p)) {
    const auto dm = dim_irrep(mu), mm = multiplicity(mu, cfg.d);
    sum += dm * mm;
    if (cfg.format == Format::csv) {
      os << "\"" << mu.str() << "\"," << mu.height() << "," << dm << "," << mm << "," << dm * mm << "\n";
    } else {
      rows.push_back(Json{{"mu", partition_json(mu)}, {"height", mu.height()}, {"d_mu", dm}, {"m_mu", mm}});
    }
  }
  if (cfg.format == Format::json) {
    Json j = header("dims", cfg.p, cfg.d);
    j["irreps"] = rows;
    j["schur_weyl"] = Json{{"sum", sum}, {"d_to_p", total}, {"holds", sum == total}};
    os << j.dump(2) << "\n";
  }
  return sum == total ? kOk : kVerifyFailed;
}

int cmd_bmatrix(const RunConfig& cfg, const std::string& mu_s, const std::string& nu_s, std::ostream& os) {
  const Partition mu = parse_partition(mu_s);
  const Partition nu = parse_partition(nu_s.empty() ? mu_s : nu_s);
  if (mu.total() != cfg.p || nu.total() != cfg.p)
    throw std::invalid_argument("mu and nu must be partitions of p = " + std::to_string(cfg.p));
  const auto b = b_matrix(mu, nu, cfg.d);
  if (cfg.format == Format::mm) {
    write_mm_array(os, b->entries, "B" + mu.str() + nu.str() + " d=" + std::to_string(cfg.d));
    return kOk;
  }
  if (cfg.format == Format::csv) {
    os << "alpha";
    for (const auto& a : b->alphas) os << ",\"" << a.str() << "\"";
    os << "\n";
    for (int r = 0; r < b->size(); ++r) {
      os << "\"" << b->alphas[r].str() << "\"";
      for (int c = 0; c < b->size(); ++c) os << "," << csv_number(b->entries(r, c));
      os << "\n";
    }
    os << "eigenvalues";
    for (int k = 0; k < b->size(); ++k) os << "," << csv_number(b->eig(k));
    os << "\nsingular," << (b->singular ? "true" : "false") << "\n";
    return kOk;
  }
  Json j = header("bmatrix", cfg.p, cfg.d);
  j["mu"] = partition_json(mu);
  j["nu"] = partition_json(nu);
  Json alphas = Json::array();
  for (const auto& a : b->alphas) alphas.push_back(partition_json(a));
  j["alphas"] = alphas;
  j["entries"] = matrix_json(b->entries);
  Json exact = Json::array();
  for (const auto& row : b->exact) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_str(v));
    exact.push_back(r);
  }
  j["entries_exact"] = exact;
  j["eigenvalues"] = matrix_json(b->eig.transpose())[0];
  j["diagonalizer"] = matrix_json(b->U);
  j["determinant"] = rational_str(b->determinant);
  j["determinant_value"] = json_number(b->determinant.convert_to<double>());
  j["singular"] = b->singular;
  if (mu == nu) j["exact_condition"] = singularity_condition(mu, cfg.d);
  Json live = Json::array();
  for (int beta : b->live) live.push_back(beta + 1);
  j["live"] = live;
  os << j.dump(2) << "\n";
  return kOk;
}

int cmd_units(const RunConfig& cfg, const UnitsOptions& opt, std::ostream& os) {
  require_operator_scale(cfg);
  if (opt.ideal != "all" && opt.ideal != "top" && opt.ideal != "sub")
    throw std::invalid_argument("--ideal must be top, sub or all");
  const UnitFamily fam(cfg.p, cfg.d, opt.ideal != "sub", opt.ideal != "top");
  if (opt.row.has_value() != opt.col.has_value()) throw std::invalid_argument("--row and --col go together");
  if (opt.row) {
    const int x = *opt.row - 1, y = *opt.col - 1;
    if (x < 0 || y < 0 || x >= fam.size() || y >= fam.size()) throw std::invalid_argument("unit label out of range");
    if (fam.label(x).ideal != fam.label(y).ideal) throw std::invalid_argument("row and column lie in different ideals");
    const auto op = fam.dense_unit(x, y);
    if (cfg.format == Format::mm) {
      write_mm_coordinate(os, op.matrix(), "G[" + fam.label(x).str() + " | " + fam.label(y).str() + "]");
      return kOk;
    }
    if (cfg.format == Format::csv) {
      os << "row,col,value\n";
      for (int c = 0; c < op.dim(); ++c)
        for (int r = 0; r < op.dim(); ++r)
          if (std::abs(op.matrix()(r, c)) > 1e-14) os << r + 1 << "," << c + 1 << "," << csv_number(op.matrix()(r, c)) << "\n";
      return kOk;
    }
    Json j = header("units", cfg.p, cfg.d);
    j["row"] = label_json(fam.label(x));
    j["col"] = label_json(fam.label(y));
    Json trips = Json::array();
    for (int c = 0; c < op.dim(); ++c)
      for (int r = 0; r < op.dim(); ++r)
        if (std::abs(op.matrix()(r, c)) > 1e-14) trips.push_back(Json{r + 1, c + 1, json_number(op.matrix()(r, c))});
    j["operator"] = trips;
    os << j.dump(2) << "\n";
    return kOk;
  }
  require_format(cfg, false, "units without --row/--col");
  if (cfg.format == Format::csv) {
    os << "index,ideal,mu,nu,i,j,beta,trace\n";
    for (int x = 0; x < fam.size(); ++x) {
      const auto& l = fam.label(x);
      os << x + 1 << "," << ideal_name(l.ideal) << ",\"" << l.mu.str() << "\",\""
         << (l.ideal == Ideal::sub ? l.nu.str() : "") << "\"," << l.i + 1 << "," << l.j + 1 << ","
         << (l.ideal == Ideal::sub ? std::to_string(l.beta + 1) : "") << "," << csv_number(fam.unit_trace(x)) << "\n";
    }
    return kOk;
  }
  Json j = header("units", cfg.p, cfg.d);
  Json units = Json::array();
  for (int x = 0; x < fam.size(); ++x) {
    Json u = label_json(fam.label(x));
    u["index"] = x + 1;
    u["trace"] = json_number(fam.unit_trace(x));
    units.push_back(u);
  }
  j["units"] = units;
  os << j.dump(2) << "\n";
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, const SpectrumOptions& opt, std::ostream& os) {
  require_operator_scale(cfg);
  require_format(cfg, false, "spectrum");
  if (opt.method != "brute" && opt.method != "analytic" && opt.method != "both")
    throw std::invalid_argument("--method must be brute, analytic or both");
  std::vector<int> levels;
  if (opt.arcs) {
    if (*opt.arcs < 0 || *opt.arcs > cfg.p) throw std::invalid_argument("--arcs must lie in 0..p");
    levels.push_back(*opt.arcs);
  } else {
    levels = {cfg.p, cfg.p - 1};
  }
  for (int k : levels)
    if (opt.method != "brute" && k != cfg.p && k != cfg.p - 1)
      throw std::invalid_argument("analytic spectra exist for arcs = p and p-1 only; use --method brute");
  if (opt.method != "brute" && cfg.p < 2) throw std::invalid_argument("analytic spectra need p >= 2");

  Json tables = Json::array();
  int status = kOk;
  if (cfg.format == Format::csv) os << "arcs,method,ideal,mu,nu,interior,overlap,eigenvalue,multiplicity\n";
  for (int k : levels) {
    std::vector<SpectrumTable> ts;
    if (opt.method != "brute") ts.push_back(spectrum_table(cfg.p, cfg.d, SpectrumMethod::analytic, k));
    if (opt.method != "analytic") ts.push_back(spectrum_table(cfg.p, cfg.d, SpectrumMethod::brute, k));
    for (const auto& t : ts) {
      if (cfg.format == Format::csv) {
        spectrum_csv(t, os);
      } else {
        tables.push_back(spectrum_json(t));
      }
    }
    if (ts.size() == 2) {
      const double diff = compare_spectra(ts[0], ts[1]);
      const bool ok = diff <= 1e-6;
      if (!ok) status = kVerifyFailed;
      if (cfg.format == Format::json)
        tables.push_back(Json{{"arcs", k},
                              {"agreement", std::isfinite(diff) ? Json(json_number(diff)) : Json("mismatch")},
                              {"passed", ok}});
    }
  }
  Fig7Layout layout;
  if (opt.fig7) {
    if (cfg.p < 2) throw std::invalid_argument("--fig7 needs p >= 2");
    layout = fig7_layout(cfg.p, cfg.d);
  }
  if (cfg.format == Format::csv) {
    if (opt.fig7) os << "\n" << layout.text;
    return status;
  }
  Json j = header("spectrum", cfg.p, cfg.d);
  j["total_dimension"] = static_cast<std::int64_t>(checked_dimension(cfg.d, 2 * cfg.p));
  j["tables"] = tables;
  if (opt.fig7) {
    Json labels = Json::array();
    for (const auto& l : layout.labels) labels.push_back(l.str());
    std::vector<std::string> lines;
    std::istringstream in(layout.text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    j["fig7"] = Json{{"labels", labels},
                     {"elements", matrix_json(layout.elements)},
                     {"max_off_diagonal", json_number(layout.off_diagonal)},
                     {"layout", lines}};
  }
  os << j.dump(2) << "\n";
  return status;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& os) {
  require_format(cfg, false, "verify");
  const bool operator_suite = suite != "combinatorics" && suite != "representation" && suite != "bmatrix";
  if (operator_suite) require_operator_scale(cfg);
  if (suite == "table1" && (cfg.p != 3 || cfg.d != 3))
    throw std::invalid_argument("the table1 suite is defined for --p 3 --d 3 only");
  const auto results = run_verify(suite, cfg.p, cfg.d, cfg.tol);
  bool ok = true;
  for (const auto& r : results) ok &= r.passed();
  if (cfg.format == Format::csv) {
    os << "suite,check,passed,residual,tolerance\n";
    for (const auto& r : results)
      for (const auto& c : r.checks)
        os << r.suite << "," << c.name << "," << (c.passed ? "true" : "false") << "," << csv_number(c.residual) << ","
           << csv_number(c.tolerance) << "\n";
  } else {
    Json j = header("verify", cfg.p, cfg.d);
    j["suite"] = suite;
    j["tolerance"] = json_number(cfg.tol);
    j["passed"] = ok;
    Json suites = Json::array();
    for (const auto& r : results) suites.push_back(suite_json(r));
    j["suites"] = suites;
    os << j.dump(2) << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace wbalg::cli
