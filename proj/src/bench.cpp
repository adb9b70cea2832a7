// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/bench.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace stokesmg
{

std::string to_string(SolverKind s)
{
  switch (s)
  {
  case SolverKind::Hmg:
    return "hmg";
  case SolverKind::PhmgDirect:
    return "phmg-direct";
  case SolverKind::PhmgGradual:
    return "phmg-gradual";
  case SolverKind::FbfHmg:
    return "fbf-hmg";
  case SolverKind::FbfPhmg:
    return "fbf-phmg";
  }
  return "?";
}

SolverKind parse_solver(const std::string &s)
{
  for (auto k : {SolverKind::Hmg, SolverKind::PhmgDirect, SolverKind::PhmgGradual,
                 SolverKind::FbfHmg, SolverKind::FbfPhmg})
  {
    if (to_string(k) == s)
    {
      return k;
    }
  }
  throw Error("unknown solver '" + s +
              "' (expected hmg, phmg-direct, phmg-gradual, fbf-hmg or fbf-phmg)");
}

double RunReport::solve_coverage() const
{
  double s = 0.0;
  for (const auto &[name, t] : solve_kernels)
  {
    s += t;
  }
  return t_solve > 0.0 ? s / t_solve : 1.0;
}

RunReport run(const RunConfig &config)
{
  RunReport rep;
  rep.config = config;
  const ProblemInstance p = make_problem(config.problem, config.refinements, config.k,
                                         config.family, config.problem_options);
  const SaddleSystem sys = assemble_stokes(p);
  rep.dofs = sys.size();
  rep.nnz_per_dof = sys.nnz_per_dof();

  KernelTimer setup_timer, solve_timer;
  std::optional<MGHierarchy> h;
  std::optional<FBFPreconditioner> fbf;
  LinearOperator precondition;

  const auto t0 = KernelTimer::Clock::now();
  switch (config.solver)
  {
  case SolverKind::Hmg:
    h = build_hmg(p, sys, config.cycle, &setup_timer);
    break;
  case SolverKind::PhmgDirect:
  case SolverKind::PhmgGradual:
    h = build_phmg(p, sys,
                   config.solver == SolverKind::PhmgDirect ? CoarseningMode::Direct
                                                           : CoarseningMode::Gradual,
                   config.cycle, &setup_timer);
    break;
  case SolverKind::FbfHmg:
  case SolverKind::FbfPhmg:
  {
    const auto levels = config.solver == SolverKind::FbfHmg
                            ? velocity_hmg_levels(p)
                            : velocity_phmg_levels(p, CoarseningMode::Direct);
    h = build_hierarchy(p, sys, levels, {config.cycle, false}, &setup_timer);
    fbf = build_fbf(sys, make_vcycle_operator(*h, &solve_timer), &setup_timer);
    break;
  }
  }
  if (fbf)
  {
    precondition = [&](const Vector &in, Vector &out) { fbf->apply(in, out, &solve_timer); };
  }
  else
  {
    precondition = make_vcycle_operator(*h, &solve_timer);
  }
  rep.t_setup = seconds_since(t0);

  FgmresOptions opts;
  opts.rtol = config.rtol;
  opts.restart = config.restart;
  opts.max_iterations = config.max_iterations;
  if (sys.enclosed_flow)
  {
    opts.project = [&sys](Vector &v) { sys.project_pressure_mean(v); };
  }
  Vector x = Vector::Zero(sys.size());
  const auto t1 = KernelTimer::Clock::now();
  const KrylovReport kr = fgmres([&](const Vector &in, Vector &out) { sys.k.multiply(in, out); },
                                 precondition, sys.rhs, x, opts, &solve_timer);
  rep.t_solve = seconds_since(t1);
  rep.t_total = seconds_since(t0);

  rep.iterations = kr.iterations;
  rep.converged = kr.converged;
  rep.residual_history = kr.residual_history;
  rep.final_relative_residual = kr.rhs_norm > 0.0 ? kr.final_residual / kr.rhs_norm : 0.0;
  rep.setup_kernels = setup_timer.totals();
  rep.solve_kernels = solve_timer.totals();
  if (config.keep_solution)
  {
    rep.solution = std::move(x);
  }
  return rep;
}

double relative_metric(double reference_time, double solver_time)
{
  return solver_time > 0.0 ? reference_time / solver_time : 0.0;
}

ComparisonTable compare(std::vector<RunReport> reports, SolverKind reference)
{
  using Key = std::tuple<std::string, Family, int, int>;
  auto key = [](const RunReport &r) {
    return Key{r.config.problem, r.config.family, r.config.k, r.config.refinements};
  };
  std::map<Key, const RunReport *> refs;
  for (const auto &r : reports)
  {
    if (r.config.solver == reference)
    {
      refs[key(r)] = &r;
    }
  }
  ComparisonTable t;
  t.reference = reference;
  for (const auto &r : reports)
  {
    const auto it = refs.find(key(r));
    if (it == refs.end())
    {
      throw Error("compare: no " + to_string(reference) + " run for " + r.config.problem +
                  " " + to_string(r.config.family) + " k=" + std::to_string(r.config.k));
    }
    const RunReport &ref = *it->second;
    TableRow row{r};
    row.r_total = relative_metric(ref.t_total, r.t_total);
    row.r_setup = relative_metric(ref.t_setup, r.t_setup);
    row.r_solve = relative_metric(ref.t_solve, r.t_solve);
    if (&ref == &r)
    {
      row.r_total = row.r_setup = row.r_solve = 1.0;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace
{

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    item = trim(item);
    if (!item.empty())
    {
      out.push_back(item);
    }
  }
  return out;
}

int parse_int(const std::string &key, const std::string &v)
{
  try
  {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos == v.size())
    {
      return x;
    }
  }
  catch (const std::exception &)
  {
  }
  throw Error("config: '" + key + "' expects an integer, got '" + v + "'");
}

double parse_double(const std::string &key, const std::string &v)
{
  try
  {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos == v.size())
    {
      return x;
    }
  }
  catch (const std::exception &)
  {
  }
  throw Error("config: '" + key + "' expects a number, got '" + v + "'");
}

template <typename T, typename F>
std::vector<T> map_list(const std::string &v, F &&f)
{
  std::vector<T> out;
  for (const auto &s : split_list(v))
  {
    out.push_back(f(s));
  }
  return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream &in)
{
  SweepConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    auto ints = [&] { return map_list<int>(v, [&](const std::string &s) { return parse_int(key, s); }); };
    if (key == "problem" || key == "problems")
    {
      c.problems = split_list(v);
    }
    else if (key == "family" || key == "families")
    {
      c.families = map_list<Family>(v, parse_family);
    }
    else if (key == "k")
    {
      c.ks = ints();
    }
    else if (key == "refinements")
    {
      c.refinements = ints();
    }
    else if (key == "solver" || key == "solvers")
    {
      c.solvers = map_list<SolverKind>(v, parse_solver);
    }
    else if (key == "reference")
    {
      c.reference = parse_solver(v);
    }
    else if (key == "nv")
    {
      c.cycle.n_v = parse_int(key, v);
    }
    else if (key == "nup")
    {
      c.cycle.nu_p = parse_int(key, v);
    }
    else if (key == "nuh")
    {
      c.cycle.nu_h = parse_int(key, v);
    }
    else if (key == "rtol")
    {
      c.rtol = parse_double(key, v);
    }
    else if (key == "restart")
    {
      c.restart = parse_int(key, v);
    }
    else if (key == "max_iterations")
    {
      c.max_iterations = parse_int(key, v);
    }
    else if (key == "base_cells")
    {
      c.problem_options.base_cells = parse_int(key, v);
    }
    else if (key == "mesh_dir")
    {
      c.problem_options.mesh_dir = v;
    }
    else
    {
      throw Error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open config " + path.string());
  }
  return parse_sweep_config(in);
}

ComparisonTable sweep(const SweepConfig &config,
                      const std::function<void(const RunReport &)> &progress)
{
  if (config.solvers.empty())
  {
    throw Error("sweep: no solvers listed");
  }
  if (!config.reference)
  {
    throw Error("sweep: no reference solver given");
  }
  if (std::find(config.solvers.begin(), config.solvers.end(), *config.reference) ==
      config.solvers.end())
  {
    throw Error("sweep: reference solver " + to_string(*config.reference) +
                " is not among the swept solvers");
  }
  std::vector<RunReport> reports;
  for (const auto &problem : config.problems)
  {
    for (Family family : config.families)
    {
      for (int refinements : config.refinements)
      {
        for (int k : config.ks)
        {
          for (SolverKind solver : config.solvers)
          {
            RunConfig rc;
            rc.problem = problem;
            rc.family = family;
            rc.k = k;
            rc.refinements = refinements;
            rc.solver = solver;
            rc.cycle = config.cycle;
            rc.rtol = config.rtol;
            rc.restart = config.restart;
            rc.max_iterations = config.max_iterations;
            rc.problem_options = config.problem_options;
            reports.push_back(run(rc));
            if (progress)
            {
              progress(reports.back());
            }
          }
        }
      }
    }
  }
  return compare(std::move(reports), *config.reference);
}

TableFormat parse_format(const std::string &s)
{
  if (s == "csv")
  {
    return TableFormat::Csv;
  }
  if (s == "markdown" || s == "md")
  {
    return TableFormat::Markdown;
  }
  throw Error("unknown format '" + s + "' (expected csv or markdown)");
}

namespace
{

const std::vector<std::string> fixed_columns = {
    "problem",   "family",    "k",         "refinements", "solver",  "dofs",
    "nnz_per_dof", "iterations", "converged", "t_setup_s", "t_solve_s", "t_total_s",
    "setup_frac", "r_total",   "r_setup",   "r_solve"};

std::vector<std::string> kernel_names(const ComparisonTable &t)
{
  std::set<std::string> names;
  for (const auto &row : t.rows)
  {
    for (const auto &kv : row.report.setup_kernels)
    {
      names.insert(kv.first);
    }
    for (const auto &kv : row.report.solve_kernels)
    {
      names.insert(kv.first);
    }
  }
  return {names.begin(), names.end()};
}

double kernel_time(const RunReport &r, const std::string &name)
{
  double t = 0.0;
  if (const auto it = r.setup_kernels.find(name); it != r.setup_kernels.end())
  {
    t += it->second;
  }
  if (const auto it = r.solve_kernels.find(name); it != r.solve_kernels.end())
  {
    t += it->second;
  }
  return t;
}

void emit_csv(const ComparisonTable &t, std::ostream &out)
{
  const auto kernels = kernel_names(t);
  const auto cols = csv_columns(t);
  for (std::size_t i = 0; i < cols.size(); ++i)
  {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto &row : t.rows)
  {
    const RunReport &r = row.report;
    out << r.config.problem << ',' << to_string(r.config.family) << ',' << r.config.k << ','
        << r.config.refinements << ',' << to_string(r.config.solver) << ',' << r.dofs << ','
        << r.nnz_per_dof << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ','
        << r.t_setup << ',' << r.t_solve << ',' << r.t_total << ',' << r.setup_fraction()
        << ',' << row.r_total << ',' << row.r_setup << ',' << row.r_solve;
    for (const auto &k : kernels)
    {
      out << ',' << kernel_time(r, k);
    }
    out << '\n';
  }
}

void emit_markdown(const ComparisonTable &t, std::ostream &out)
{
  using Group = std::tuple<std::string, Family, int>;
  std::map<Group, std::vector<const TableRow *>> groups;
  for (const auto &row : t.rows)
  {
    const auto &c = row.report.config;
    groups[{c.problem, c.family, c.refinements}].push_back(&row);
  }
  out << std::fixed;
  for (const auto &[g, rows] : groups)
  {
    out << "### " << std::get<0>(g) << ", " << to_string(std::get<1>(g)) << ", "
        << std::get<2>(g) << " refinements (reference: " << to_string(t.reference) << ")\n\n";
    out << "| k | solver | DoFs | nnz/DoF | iterations | T(setup)/T(total) | R(total) | "
           "R(setup) | R(solve) | T(total) [s] |\n";
    out << "|---|---|---|---|---|---|---|---|---|---|\n";
    for (const TableRow *row : rows)
    {
      const RunReport &r = row->report;
      out << "| " << r.config.k << " | " << to_string(r.config.solver) << " | " << r.dofs
          << " | " << std::setprecision(1) << r.nnz_per_dof << " | ";
      if (r.converged)
      {
        out << r.iterations;
      }
      else
      {
        out << "-";
      }
      out << std::setprecision(3) << " | " << r.setup_fraction() << " | " << row->r_total
          << " | " << row->r_setup << " | " << row->r_solve << " | " << r.t_total << " |\n";
    }
    out << '\n';
  }
}

}  // namespace

std::vector<std::string> csv_columns(const ComparisonTable &t)
{
  auto cols = fixed_columns;
  for (const auto &k : kernel_names(t))
  {
    cols.push_back(k);
  }
  return cols;
}

void emit(const ComparisonTable &t, TableFormat format, std::ostream &out)
{
  if (format == TableFormat::Csv)
  {
    emit_csv(t, out);
  }
  else
  {
    emit_markdown(t, out);
  }
}

void emit(const ComparisonTable &t, TableFormat format, const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error("cannot write " + path.string());
  }
  emit(t, format, out);
  if (!out)
  {
    throw Error("write failed for " + path.string());
  }
}

}  // namespace stokesmg
