#include "mafol/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mafol/format.hpp"

namespace mafol {

namespace fs = std::filesystem;

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view csv_columns_help() {
  return "CSV columns:\n"
         "  analyze  -> <name>.analyze.csv: index,re_z1,im_z1,...,rho,re_detH,im_detH,stratum,\n"
         "              ma_residual,ma_scaled,euler_residual,method\n"
         "  trace    -> trace.csv: t,s,re_z1,im_z1,...,rho,abs_detH,stratum\n"
         "  burns    -> burns_grid.csv (--csv): index,re_z1,im_z1,...,rho,ma_scaled,\n"
         "              min_eig_scaled,radial,identity,stratum\n"
         "  suite    -> suite.csv: potential,check,status,measured,threshold\n"
         "Strata: P (rank n), P_n-1 (rank n-1), W (rank <= n-2), outside (rho <= 0).\n";
}

CPoint parse_point(std::string_view text, int n) {
  std::vector<Complex> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    coords.push_back(parse_complex(text.substr(start, comma == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(coords.size()) != n) {
    throw Error("point has " + std::to_string(coords.size()) + " coordinates, potential has n = " +
                std::to_string(n));
  }
  CPoint z(n);
  for (int j = 0; j < n; ++j) z[j] = coords[j];
  return z;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string pass_fail(bool ok) { return ok ? "pass" : "FAIL"; }

class IoError : public Error {
 public:
  using Error::Error;
};

std::ofstream open_csv(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream f(dir / name);
  if (!f) throw IoError("cannot write " + (dir / name).string());
  return f;
}

void write_coords_header(std::ostream& os, int n) {
  for (int k = 1; k <= n; ++k) os << ",re_z" << k << ",im_z" << k;
}

void write_coords(std::ostream& os, const CPoint& z) {
  for (Eigen::Index k = 0; k < z.size(); ++k) os << ',' << num(z[k].real()) << ',' << num(z[k].imag());
}

std::vector<CPoint> scan_points(const PolyPotential& p, const ScanConfig& cfg, double rho_min) {
  if (cfg.samples_per_axis > 0) {
    std::vector<CPoint> grid = cube_grid(p.dim(), cfg.samples_per_axis, cfg.box_radius);
    std::erase_if(grid, [&](const CPoint& z) { return !(evaluate(p, z) > rho_min); });
    return grid;
  }
  SampleDomain dom;
  dom.box_radius = cfg.box_radius;
  dom.rho_min = rho_min;
  return random_samples(p, cfg.samples, cfg.seed, dom);
}

struct AnalyzeSummary {
  std::size_t count = 0;
  std::map<Stratum, std::size_t> census;
  double max_ma_raw = 0.0;
  double max_ma_scaled = 0.0;
  double max_euler = 0.0;  // relative to max(1, rho)
  double max_lemma_gap = 0.0;
  double max_det_imag = 0.0;
  std::size_t equivalence_mismatch = 0;
};

constexpr double kLemmaTol = 1e-9;
constexpr double kDetImagTol = 1e-10;
constexpr double kEulerTol = 1e-9;

AnalyzeSummary summarize(const std::vector<PointAnalysis>& rows, double tol_ma) {
  AnalyzeSummary s;
  s.count = rows.size();
  for (const auto& r : rows) {
    ++s.census[r.stratum];
    if (r.stratum == Stratum::OutsideDomain) continue;
    s.max_ma_raw = std::max(s.max_ma_raw, r.ma_raw);
    s.max_ma_scaled = std::max(s.max_ma_scaled, r.ma_scaled);
    const double euler = r.euler_residual / std::max(1.0, r.rho);
    s.max_euler = std::max(s.max_euler, euler);
    s.max_lemma_gap = std::max(s.max_lemma_gap, r.lemma_gap);
    s.max_det_imag =
        std::max(s.max_det_imag, std::abs(r.det_h.imag()) / std::max(1.0, std::abs(r.det_h)));
    if (r.stratum == Stratum::StrictlyPsh && ((euler < kEulerTol) != (r.ma_raw < tol_ma))) {
      ++s.equivalence_mismatch;
    }
  }
  return s;
}

void write_analyze_csv(std::ostream& os, int n, const std::vector<PointAnalysis>& rows) {
  os << "index";
  write_coords_header(os, n);
  os << ",rho,re_detH,im_detH,stratum,ma_residual,ma_scaled,euler_residual,method\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << i;
    write_coords(os, r.point);
    os << ',' << num(r.rho) << ',' << num(r.det_h.real()) << ',' << num(r.det_h.imag()) << ','
       << to_string(r.stratum) << ',' << num(r.ma_raw) << ',' << num(r.ma_scaled) << ','
       << num(r.euler_residual) << ',' << to_string(r.method) << '\n';
  }
}

// Central differences of the real Hessian, recombined into
// d^2/dz^mu dzbar^nu = (f_xx + f_yy + i (f_x_mu y_nu - f_y_mu x_nu)) / 4.
CMatrix fd_levi(const PolyPotential& p, const CPoint& z, double h) {
  const int n = p.dim();
  auto f = [&](int a, double sa, int b, double sb) {
    CPoint w = z;
    auto shift = [&](int axis, double s) {
      const Complex dir = (axis % 2 == 0) ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
      w[axis / 2] += s * h * dir;
    };
    if (sa != 0.0) shift(a, sa);
    if (sb != 0.0) shift(b, sb);
    return evaluate(p, w);
  };
  auto second = [&](int a, int b) {
    if (a == b) return (f(a, 1, a, 0) - 2.0 * f(a, 0, a, 0) + f(a, -1, a, 0)) / (h * h);
    return (f(a, 1, b, 1) - f(a, 1, b, -1) - f(a, -1, b, 1) + f(a, -1, b, -1)) / (4.0 * h * h);
  };
  CMatrix out(n, n);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      const int xm = 2 * mu, ym = 2 * mu + 1, xn = 2 * nu, yn = 2 * nu + 1;
      out(mu, nu) = 0.25 * Complex(second(xm, xn) + second(ym, yn), second(xm, yn) - second(ym, xn));
    }
  }
  return out;
}

struct Expectation {
  bool ma = true;
  bool weights = true;
  std::optional<Verdict> burns;  // nullopt: pass if homogeneous, else skip
  bool burns_skip = false;
};

std::map<std::string, Expectation> read_expectations(const fs::path& dir) {
  std::map<std::string, Expectation> out;
  std::ifstream in(dir / "expectations.txt");
  if (!in) return out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string file;
    if (!(ls >> file)) continue;
    if (file.back() != ':') throw ParseError(line_no, "expectations: expected '<file>:'");
    file.pop_back();
    Expectation e;
    std::string tag;
    while (ls >> tag) {
      if (tag == "expect-MA") e.ma = true;
      else if (tag == "expect-nonMA") e.ma = false;
      else if (tag == "expect-weights") e.weights = true;
      else if (tag == "expect-no-weights") e.weights = false;
      else if (tag == "expect-burns-pass") e.burns = Verdict::Pass;
      else if (tag == "expect-burns-fail") e.burns = Verdict::Fail;
      else if (tag == "expect-burns-skip") e.burns_skip = true;
      else throw ParseError(line_no, "expectations: unknown tag '" + tag + "'");
    }
    out[file] = e;
  }
  return out;
}

// Largest per-axis count not above `per_axis` with per_axis^{2n} <= 2e5.
int capped_grid(int n, int per_axis) {
  int m = per_axis;
  while (m > 2 && std::pow(static_cast<double>(m), 2 * n) > 2e5) --m;
  return m;
}

}  // namespace

int cmd_analyze(const fs::path& file, const ScanConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const PolyPotential p = load_potential(file);
    const double tol_ma = cfg.tol_ma;
    const std::vector<CPoint> pts = scan_points(p, cfg, 1e-12);
    const auto rows = analyze_points(p, pts, cfg.tol_rank, cfg.exec);
    const AnalyzeSummary s = summarize(rows, tol_ma);

    const std::string csv_name = file.stem().string() + ".analyze.csv";
    {
      auto csv = open_csv(cfg.out_dir, csv_name);
      write_analyze_csv(csv, p.dim(), rows);
    }

    out << "# mafol analyze " << file.string() << "\n";
    out << "seed: " << cfg.seed << "  points: " << s.count << "  box: " << short_num(cfg.box_radius)
        << "  tol_rank: " << short_num(cfg.tol_rank) << "\n";
    out << "stratum census:";
    for (Stratum st : {Stratum::StrictlyPsh, Stratum::LowDegeneracy, Stratum::Weak}) {
      const std::size_t c = s.census.count(st) ? s.census.at(st) : 0;
      out << "  " << to_string(st) << " " << short_num(100.0 * c / std::max<std::size_t>(1, s.count))
          << "% (" << c << ")";
    }
    out << "\n";
    const bool ma_holds = s.max_ma_raw < tol_ma;
    out << "max ma_residual: " << short_num(s.max_ma_raw) << " (threshold " << short_num(tol_ma)
        << ") -> " << (ma_holds ? "Monge-Ampere holds on samples" : "Monge-Ampere fails (finding)")
        << "\n";
    out << "max scaled ma_residual: " << short_num(s.max_ma_scaled) << " (threshold "
        << short_num(tol_ma) << ")\n";
    out << "max euler_residual/max(1,rho): " << short_num(s.max_euler) << " (threshold "
        << short_num(kEulerTol) << ")\n";
    out << "euler/MA disagreements on P: " << s.equivalence_mismatch << " (threshold 0, informational)\n";
    const bool lemma_ok = s.max_lemma_gap < kLemmaTol;
    const bool det_ok = s.max_det_imag < kDetImagTol;
    out << "max determinant-lemma gap: " << short_num(s.max_lemma_gap) << " (threshold "
        << short_num(kLemmaTol) << ") " << pass_fail(lemma_ok) << "\n";
    out << "max |Im detH|/max(1,|detH|): " << short_num(s.max_det_imag) << " (threshold "
        << short_num(kDetImagTol) << ") " << pass_fail(det_ok) << "\n";
    out << "csv: " << (cfg.out_dir / csv_name).string() << "\n";
    return lemma_ok && det_ok ? exit_code::kOk : exit_code::kCheckFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
}

int cmd_trace(const fs::path& file, const TraceOptions& opts, const ScanConfig& cfg,
              std::ostream& out, std::ostream& err) {
  PolyPotential p(1, {});
  CPoint base;
  try {
    p = load_potential(file);
    base = parse_point(opts.point, p.dim());
    if (!(evaluate(p, base) > 0.0)) {
      throw DomainError("base point " + point_string(base) + " has rho = " +
                        short_num(evaluate(p, base)) + " <= 0");
    }
    if (opts.t_count < 1 || opts.s_count < 1) throw Error("grid counts must be >= 1");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }

  auto linspace = [](double hi, int count) {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k) v[k] = count == 1 ? 0.0 : hi * k / (count - 1);
    return v;
  };
  const auto t_grid = linspace(opts.t_max, opts.t_count);
  const auto s_grid = linspace(opts.s_max, opts.s_count);

  LeafTraceConfig tc;
  tc.integrator.step = cfg.step;
  tc.tol_rank = cfg.tol_rank;
  try {
    const LeafTrace trace = trace_leaf(p, base, t_grid, s_grid, tc, cfg.exec);
    {
      auto csv = open_csv(cfg.out_dir, "trace.csv");
      write_trace_csv(csv, trace);
    }
    constexpr double kLogTol = 1e-6;
    constexpr double kLevelTol = 1e-6;
    const double loglin = leaf_log_linearity(trace);
    const double level = level_set_invariance(trace);
    const auto strata = leaf_stratum_invariance(trace, cfg.tol_rank);
    const std::size_t reached = std::count_if(trace.nodes.begin(), trace.nodes.end(),
                                              [](const auto& n) { return n.has_value(); });

    out << "# mafol trace " << file.string() << " from " << point_string(base) << "\n";
    out << "grid: t in [0, " << short_num(opts.t_max) << "] (" << opts.t_count << "), s in [0, "
        << short_num(opts.s_max) << "] (" << opts.s_count << "), RK4 step " << short_num(cfg.step)
        << "\n";
    out << "nodes reached: " << reached << "/" << trace.nodes.size()
        << (trace.truncated ? " (truncated)" : "") << "\n";
    out << "leaf_log_linearity: " << short_num(loglin) << " (threshold " << short_num(kLogTol)
        << ") " << pass_fail(loglin < kLogTol) << "\n";
    out << "level_set_invariance: " << short_num(level) << " (threshold " << short_num(kLevelTol)
        << ") " << pass_fail(level < kLevelTol) << "\n";
    out << "leaf_stratum_invariance: base " << to_string(strata.base_stratum) << ", violations "
        << strata.violations.size() << " (threshold 0) " << pass_fail(strata.pass) << "\n";
    if (const auto& last = trace.node(t_grid.size() - 1, 0)) {
      out << "final rho at t=" << short_num(t_grid.back()) << ", s=0: " << num(last->rho)
          << " (exp(t) * rho(base) = " << num(std::exp(kKappa * t_grid.back()) * trace.base_rho)
          << ")\n";
    }
    out << "csv: " << (cfg.out_dir / "trace.csv").string() << "\n";
    const bool ok = loglin < kLogTol && level < kLevelTol && strata.pass && !trace.truncated;
    return ok ? exit_code::kOk : exit_code::kCheckFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kCheckFailure;
  }
}

int cmd_weights(const fs::path& file, const ScanConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const PolyPotential p = load_potential(file);
    const WeightSolution ws = find_weights(p);
    out << "# mafol weights " << file.string() << "\n";
    out << "seed: " << cfg.seed << "\n";
    out << "equations:";
    for (const auto& eq : ws.equations) out << " " << eq.to_string();
    out << "\n";

    auto vec = [](const RVector& v) {
      std::string s = "(";
      for (Eigen::Index j = 0; j < v.size(); ++j) s += (j ? ", " : "") + short_num(v[j]);
      return s + ")";
    };

    if (ws.status == WeightStatus::Infeasible) {
      out << "infeasible: equations {";
      for (std::size_t k = 0; k < ws.inconsistent.size(); ++k) {
        out << (k ? ", " : "") << ws.inconsistent[k].to_string();
      }
      out << "}\n";
      out << "least-squares residual: " << short_num(ws.residual) << " (threshold 1e-09)\n";
      return exit_code::kOk;
    }
    if (ws.status == WeightStatus::NotPositive) {
      out << "weights exist but not positive: c = " << vec(ws.raw) << ", "
          << (ws.unique ? "unique" : "not unique") << "\n";
      return exit_code::kOk;
    }

    const WeightVector& c = *ws.weights;
    constexpr double kVerifyTol = 1e-9;
    constexpr double kLinearTol = 1e-8;
    SampleDomain dom;
    dom.box_radius = cfg.box_radius;
    dom.rho_min = 1e-6;
    const auto samples = random_samples(p, std::min<std::size_t>(cfg.samples, 100), cfg.seed, dom);
    const auto lambdas = default_lambdas();
    const double verify = verify_weights(p, c, samples, lambdas);
    const double linear = linear_field_agreement(p, c, samples, cfg.exec);

    out << "c = " << vec(c.values()) << ", " << (ws.unique ? "unique" : "not unique (minimum norm)")
        << ", residual " << short_num(ws.residual) << " (threshold 1e-09)\n";
    out << "verify_weights: " << short_num(verify) << " over " << samples.size() << " points x "
        << lambdas.size() << " lambdas (threshold " << short_num(kVerifyTol) << ") "
        << pass_fail(verify < kVerifyTol) << "\n";
    out << "linear_field_agreement: " << short_num(linear) << " (threshold " << short_num(kLinearTol)
        << ") " << pass_fail(linear < kLinearTol) << "\n";
    return verify < kVerifyTol ? exit_code::kOk : exit_code::kCheckFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
}

namespace {

void render_burns(std::ostream& out, const BurnsReport& rep, const BurnsOptions& bo) {
  out << "degree2k: " << rep.degree2k;
  if (rep.degree2k > 0) out << " (k = " << rep.degree2k / 2 << ")";
  out << "\n";
  out << "is_homogeneous: " << (rep.is_homogeneous ? "yes" : "no") << "\n";
  out << "bidegree_mass:";
  for (const auto& [bd, mass] : rep.bidegree_mass) {
    out << " (" << bd.first << "," << bd.second << ")=" << short_num(mass);
  }
  out << "\n";
  if (rep.is_homogeneous && rep.degree2k > 0) {
    out << "grid_points: " << rep.grid_points << " (" << bo.grid_per_axis << " per axis, box "
        << short_num(bo.box) << ")\n";
    out << "ma_max_residual: " << short_num(rep.ma_max_residual) << " (threshold "
        << short_num(bo.tol_ma) << ") at " << point_string(rep.ma_argmax) << "\n";
    out << "min_log_levi_eigen: " << short_num(rep.min_log_levi_eigen) << " (threshold -"
        << short_num(bo.tol_psh) << ")\n";
    out << "radial_field_residual: " << short_num(rep.radial_field_residual) << " (threshold "
        << short_num(bo.tol_radial) << ")\n";
    out << "component_identity_residual: " << short_num(rep.component_identity_residual)
        << " (threshold " << short_num(bo.tol_identity) << ")\n";
    out << "min_rho_on_sphere: " << short_num(rep.min_rho_on_sphere) << " (threshold 0)\n";
  }
  out << "cross_check: " << (rep.cross_check_ok ? "ok" : "MISMATCH") << "\n";
  out << "verdict: " << to_string(rep.verdict) << "\n";
  for (const auto& r : rep.reasons) out << "reason: " << r << "\n";
}

BurnsOptions burns_options(const ScanConfig& cfg, std::optional<double> tol_ma, int grid) {
  BurnsOptions bo;
  bo.grid_per_axis = grid;
  bo.box = cfg.box_radius;
  bo.tol_rank = cfg.tol_rank;
  if (tol_ma) bo.tol_ma = *tol_ma;
  bo.exec = cfg.exec;
  return bo;
}

}  // namespace

int cmd_burns(const fs::path& file, const ScanConfig& cfg, bool write_csv, std::ostream& out,
              std::ostream& err) {
  try {
    const PolyPotential p = load_potential(file);
    BurnsOptions bo = burns_options(cfg, cfg.tol_ma_set ? std::optional(cfg.tol_ma) : std::nullopt, cfg.burns_grid);
    bo.keep_grid = write_csv;
    const BurnsReport rep = burns_check(p, bo);
    out << "# mafol burns " << file.string() << "\n";
    render_burns(out, rep, bo);
    if (write_csv && !rep.grid.empty()) {
      auto csv = open_csv(cfg.out_dir, "burns_grid.csv");
      csv << "index";
      write_coords_header(csv, p.dim());
      csv << ",rho,ma_scaled,min_eig_scaled,radial,identity,stratum\n";
      for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        const auto& g = rep.grid[i];
        csv << i;
        write_coords(csv, g.point);
        csv << ',' << num(g.rho) << ',' << num(g.ma_scaled) << ',' << num(g.min_eig_scaled) << ','
            << num(g.radial) << ',' << num(g.identity) << ',' << to_string(g.stratum) << '\n';
      }
      out << "csv: " << (cfg.out_dir / "burns_grid.csv").string() << "\n";
    }
    return rep.cross_check_ok ? exit_code::kOk : exit_code::kCheckFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
}

int cmd_suite(const fs::path& dir, const ScanConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  std::map<std::string, Expectation> expect;
  try {
    if (!fs::is_directory(dir)) throw Error("not a readable directory: " + dir.string());
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".pot") files.push_back(entry.path());
    }
    if (files.empty()) throw Error("no *.pot files in " + dir.string());
    std::sort(files.begin(), files.end());
    expect = read_expectations(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }

  struct Row {
    std::string potential;
    CheckOutcome outcome;
  };
  std::vector<Row> rows;
  bool any_failed = false;

  try {
    for (const fs::path& file : files) {
      const std::string name = file.filename().string();
      const PolyPotential p = load_potential(file);
      const Expectation ex = expect.count(name) ? expect.at(name) : Expectation{};

      auto record = [&](const std::string& check, auto&& body) {
        const auto t0 = Clock::now();
        CheckOutcome o = body();
        o.name = check;
        o.wall_seconds = seconds_since(t0);
        if (o.status == CheckStatus::Fail || o.status == CheckStatus::Inconclusive) any_failed = true;
        rows.push_back({name, o});
      };
      auto outcome = [](bool ok, double measured, double threshold) {
        return CheckOutcome{"", ok ? CheckStatus::Pass : CheckStatus::Fail, measured, threshold, 0.0};
      };

      SampleDomain dom;
      dom.box_radius = cfg.box_radius;
      dom.rho_min = 1e-3;
      const auto samples = random_samples(p, cfg.samples, cfg.seed, dom);
      const auto analysis = analyze_points(p, samples, cfg.tol_rank, cfg.exec);
      const AnalyzeSummary s = summarize(analysis, cfg.tol_ma);
      {
        auto csv = open_csv(cfg.out_dir, file.stem().string() + ".analyze.csv");
        write_analyze_csv(csv, p.dim(), analysis);
      }

      record("hessian_fd", [&] {
        const LeviKernel levi(p);
        double worst = 0.0;
        const std::size_t m = std::min<std::size_t>(100, samples.size());
        for (std::size_t k = 0; k < m; ++k) {
          const CMatrix h = levi.hessian(samples[k]);
          const CMatrix fd = fd_levi(p, samples[k], 1e-4);
          worst = std::max(worst, (h - fd).cwiseAbs().maxCoeff() / std::max(1.0, h.cwiseAbs().maxCoeff()));
        }
        return outcome(worst < 1e-5, worst, 1e-5);
      });
      record("determinant_lemma", [&] { return outcome(s.max_lemma_gap < kLemmaTol, s.max_lemma_gap, kLemmaTol); });
      record("monge_ampere", [&] {
        const bool holds = s.max_ma_raw < cfg.tol_ma;
        return outcome(holds == ex.ma, s.max_ma_raw, cfg.tol_ma);
      });
      record("euler_identity", [&] {
        const bool holds = s.max_euler < kEulerTol;
        return outcome(holds == ex.ma, s.max_euler, kEulerTol);
      });
      record("cr_holomorphy", [&] {
        const std::size_t m = std::min<std::size_t>(200, samples.size());
        const CrReport cr = cr_residual(p, std::span(samples).first(m), 1e-4, cfg.exec);
        if (ex.ma) return outcome(cr.max_residual < 1e-6, cr.max_residual, 1e-6);
        return outcome(cr.max_residual > 1e-2, cr.max_residual, 1e-2);
      });

      const WeightSolution ws = find_weights(p);
      record("weights", [&] {
        if (ws.status != WeightStatus::Found) return outcome(!ex.weights, ws.residual, 1e-9);
        const std::size_t m = std::min<std::size_t>(100, samples.size());
        const auto lambdas = default_lambdas();
        const double v = verify_weights(p, *ws.weights, std::span(samples).first(m), lambdas);
        return outcome(ex.weights && v < 1e-9, v, 1e-9);
      });
      record("linear_field", [&] {
        if (ws.status != WeightStatus::Found) return CheckOutcome{"", CheckStatus::Skip, 0.0, 1e-8, 0.0};
        const double v = linear_field_agreement(p, *ws.weights, samples, cfg.exec);
        return outcome(v < 1e-8, v, 1e-8);
      });
      record("burns", [&] {
        const bool homogeneous = homogeneous_degree(p).has_value();
        if (ex.burns_skip || (!ex.burns && !homogeneous)) {
          return CheckOutcome{"", CheckStatus::Skip, 0.0, 1e-8, 0.0};
        }
        const BurnsOptions bo = burns_options(cfg, cfg.tol_ma_set ? std::optional(cfg.tol_ma) : std::nullopt,
                                              capped_grid(p.dim(), cfg.burns_grid));
        const BurnsReport rep = burns_check(p, bo);
        const Verdict want = ex.burns.value_or(Verdict::Pass);
        CheckOutcome o = outcome(rep.verdict == want && rep.cross_check_ok, rep.ma_max_residual, bo.tol_ma);
        if (rep.verdict == Verdict::Inconclusive) o.status = CheckStatus::Inconclusive;
        return o;
      });
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }

  try {
    auto csv = open_csv(cfg.out_dir, "suite.csv");
    csv << "potential,check,status,measured,threshold\n";
    for (const auto& r : rows) {
      csv << r.potential << ',' << r.outcome.name << ',' << to_string(r.outcome.status) << ','
          << num(r.outcome.measured) << ',' << num(r.outcome.threshold) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }

  out << "# mafol suite " << dir.string() << "\n";
  out << "seed: " << cfg.seed << "  samples: " << cfg.samples << "  box: " << short_num(cfg.box_radius)
      << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-18s %-12s %-13s %-13s %s\n", "potential", "check",
                "status", "measured", "threshold", "wall_s");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-22s %-18s %-12s %-13s %-13s %.3f\n", r.potential.c_str(),
                  r.outcome.name.c_str(), std::string(to_string(r.outcome.status)).c_str(),
                  short_num(r.outcome.measured).c_str(), short_num(r.outcome.threshold).c_str(),
                  r.outcome.wall_seconds);
    out << line;
  }
  out << "csv: " << (cfg.out_dir / "suite.csv").string() << "\n";
  out << (any_failed ? "suite: FAIL" : "suite: pass") << "\n";
  return any_failed ? exit_code::kCheckFailure : exit_code::kOk;
}

}  // namespace mafol
