#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "shapeapprox/experiments.hpp"
#include "shapeapprox/shape.hpp"

using namespace shapeapprox;
using json = nlohmann::json;

namespace {

struct Global {
  std::string out;
  std::uint64_t seed = 0;
  unsigned precision_bits = 256;
  std::string config;
  CLI::Option* bits_opt = nullptr;
};

json load_config(const Global& g) {
  if (g.config.empty()) {
    return json::object();
  }
  return json::parse(read_file(g.config));
}

std::vector<std::string> inputs(const Global& g, const std::vector<std::string>& fspecs = {}) {
  std::vector<std::string> files;
  if (!g.config.empty()) files.push_back(g.config);
  for (const auto& f : fspecs) {
    if (f.size() > 5 && f.substr(f.size() - 5) == ".json") files.push_back(f);
  }
  return files;
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  if (!os) {
    throw DomainError("cannot write '" + g.out + "'");
  }
  os << text;
}

void emit_json(const Global& g, json body, json config, const std::vector<std::string>& files) {
  config["seed"] = g.seed;
  body["config"] = config;
  body["input_sha1"] = input_hash(config, files);
  emit(g, body.dump(2) + "\n");
}

int finish(const Global& g, ExperimentResult res, const std::vector<std::string>& files) {
  res.config["seed"] = g.seed;
  const auto hash = input_hash(res.config, files);
  if (ends_with(g.out, ".json")) {
    auto j = res.to_json();
    j["input_sha1"] = hash;
    emit(g, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_csv(os, res.table, res.config, hash);
    emit(g, os.str());
  }
  for (const auto& c : res.checks) {
    std::cerr << (c.pass ? "PASS " : "FAIL ") << res.name << ": " << c.name;
    if (!c.detail.empty()) std::cerr << " (" << c.detail << ")";
    std::cerr << "\n";
  }
  return res.ok() ? 0 : 1;
}

template <class T>
void set(CLI::Option* o, T& dst, const T& src) {
  if (o->count()) dst = src;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-preserving polynomial approximation experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out, "output path (stdout if omitted; .json selects JSON)");
  app.add_option("--seed", g.seed, "random seed, recorded in the output metadata");
  g.bits_opt = app.add_option("--precision-bits", g.precision_bits, "working precision of the float backend");
  app.add_option("--config", g.config, "JSON file with subcommand parameters")->check(CLI::ExistingFile);
  int code = 0;

  // gen-poly
  auto* gp = app.add_subcommand("gen-poly", "build the generating polynomial P_n");
  int gp_n = 64, gp_r = 1;
  auto* gp_n_o = gp->add_option("-n,--n", gp_n, "degree");
  auto* gp_r_o = gp->add_option("-r,--r", gp_r, "derivative order");
  gp->callback([&] {
    const auto cfg = load_config(g);
    int n = cfg.value("n", 64), r = cfg.value("r", 1);
    unsigned bits = cfg.value("precision_bits", 256u);
    set(gp_n_o, n, gp_n);
    set(gp_r_o, r, gp_r);
    set(g.bits_opt, bits, g.precision_bits);
    GeneratorOptions opt;
    opt.start_bits = bits;
    opt.max_bits = std::max(opt.max_bits, bits);
    const auto gen = build_generator(n, r, opt);
    emit_json(g, generator_to_json(gen), {{"subcommand", "gen-poly"}, {"n", n}, {"r", r}, {"precision_bits", bits}},
              inputs(g));
  });

  // apply
  auto* ap = app.add_subcommand("apply", "apply an operator to a function on a grid");
  std::string ap_op = "bernstein:n=16", ap_f = "exp";
  int ap_grid = 101;
  auto* ap_op_o = ap->add_option("--op", ap_op, "operator, e.g. bernstein:n=16, lupas:n=10,alpha=1/2, mn:n=40,q=3");
  auto* ap_f_o = ap->add_option("-f,--f", ap_f, "catalog name or polynomial .json file");
  auto* ap_grid_o = ap->add_option("--grid", ap_grid, "uniform grid size");
  ap->callback([&] {
    const auto cfg = load_config(g);
    std::string op = cfg.value("op", std::string("bernstein:n=16")), f = cfg.value("f", std::string("exp"));
    int grid = cfg.value("grid", 101);
    unsigned bits = cfg.value("precision_bits", 256u);
    set(ap_op_o, op, ap_op);
    set(ap_f_o, f, ap_f);
    set(ap_grid_o, grid, ap_grid);
    set(g.bits_opt, bits, g.precision_bits);
    code = finish(g, run_apply(op, f, grid, bits), inputs(g, {f}));
  });

  // moduli
  auto* mo = app.add_subcommand("moduli", "Ditzian-Totik moduli omega_k^{phi^lambda}(f, t)");
  std::string mo_f = "exp";
  int mo_k = 2;
  double mo_lambda = 1;
  std::vector<double> mo_t{0.5, 0.25, 0.125, 0.0625, 0.03125};
  ModulusGrid mo_grid;
  auto* mo_f_o = mo->add_option("-f,--f", mo_f);
  auto* mo_k_o = mo->add_option("-k,--k", mo_k);
  auto* mo_l_o = mo->add_option("--lambda", mo_lambda);
  auto* mo_t_o = mo->add_option("--t", mo_t)->delimiter(',');
  auto* mo_h_o = mo->add_option("--h-points", mo_grid.h_points);
  auto* mo_x_o = mo->add_option("--x-points", mo_grid.x_points);
  mo->callback([&] {
    const auto cfg = load_config(g);
    std::string f = cfg.value("f", std::string("exp"));
    int k = cfg.value("k", 2);
    double lambda = cfg.value("lambda", 1.0);
    auto t = cfg.value("t_grid", std::vector<double>{0.5, 0.25, 0.125, 0.0625, 0.03125});
    ModulusGrid grid;
    if (cfg.contains("modulus_grid")) {
      grid.h_points = cfg["modulus_grid"].value("h_points", grid.h_points);
      grid.x_points = cfg["modulus_grid"].value("x_points", grid.x_points);
      grid.anchored = cfg["modulus_grid"].value("anchored", grid.anchored);
    }
    set(mo_f_o, f, mo_f);
    set(mo_k_o, k, mo_k);
    set(mo_l_o, lambda, mo_lambda);
    set(mo_t_o, t, mo_t);
    set(mo_h_o, grid.h_points, mo_grid.h_points);
    set(mo_x_o, grid.x_points, mo_grid.x_points);
    code = finish(g, run_moduli(f, k, lambda, t, grid), inputs(g, {f}));
  });

  // shape
  auto* sh = app.add_subcommand("shape", "k-monotonicity check");
  std::string sh_f = "exp";
  int sh_k = 2;
  auto* sh_f_o = sh->add_option("-f,--f", sh_f);
  auto* sh_k_o = sh->add_option("-k,--k", sh_k);
  sh->callback([&] {
    const auto cfg = load_config(g);
    std::string f = cfg.value("f", std::string("exp"));
    int k = cfg.value("k", 2);
    set(sh_f_o, f, sh_f);
    set(sh_k_o, k, sh_k);
    auto rep = shape_report(f, k);
    const bool pass = rep.value("verdict", std::string()) == "pass";
    emit_json(g, rep, {{"subcommand", "shape"}, {"f", f}, {"k", k}}, inputs(g, {f}));
    std::cerr << (pass ? "PASS" : "FAIL") << " shape: " << f << " is " << k << "-monotone\n";
    code = pass ? 0 : 1;
  });

  // jackson
  auto* ja = app.add_subcommand("jackson", "E_n^(q)(f) / omega_2^phi(f, 1/n)");
  JacksonConfig ja_c;
  auto* ja_f_o = ja->add_option("-f,--f", ja_c.f);
  auto* ja_q_o = ja->add_option("-q,--q", ja_c.q);
  auto* ja_n_o = ja->add_option("--n-list", ja_c.n_list)->delimiter(',');
  auto* ja_N_o = ja->add_option("--discretization", ja_c.discretization);
  auto* ja_M_o = ja->add_option("--constraint-grid", ja_c.constraint_grid);
  ja->callback([&] {
    auto c = JacksonConfig::from_json(load_config(g));
    set(ja_f_o, c.f, ja_c.f);
    set(ja_q_o, c.q, ja_c.q);
    set(ja_n_o, c.n_list, ja_c.n_list);
    set(ja_N_o, c.discretization, ja_c.discretization);
    set(ja_M_o, c.constraint_grid, ja_c.constraint_grid);
    code = finish(g, run_jackson(c), inputs(g, {c.f}));
  });

  // bern-xeps
  auto* bx = app.add_subcommand("bern-xeps", "x^eps under Bernstein polynomials");
  BernXepsConfig bx_c;
  auto* bx_e_o = bx->add_option("--eps", bx_c.eps);
  auto* bx_l_o = bx->add_option("--lambda", bx_c.lambda);
  auto* bx_n_o = bx->add_option("--n-list", bx_c.n_list)->delimiter(',');
  bx->callback([&] {
    auto c = BernXepsConfig::from_json(load_config(g));
    set(bx_e_o, c.eps, bx_c.eps);
    set(bx_l_o, c.lambda, bx_c.lambda);
    set(bx_n_o, c.n_list, bx_c.n_list);
    set(g.bits_opt, c.precision_bits, g.precision_bits);
    code = finish(g, run_bernstein_xeps(c), inputs(g));
  });

  // mn-study
  auto* mn = app.add_subcommand("mn-study", "|f - M_n f| against omega_2^{phi^lambda}");
  MnStudyConfig mn_c;
  auto* mn_f_o = mn->add_option("-f,--f", mn_c.f);
  auto* mn_q_o = mn->add_option("-q,--q", mn_c.q);
  auto* mn_l_o = mn->add_option("--lambda", mn_c.lambda);
  auto* mn_n_o = mn->add_option("--n-list", mn_c.n_list)->delimiter(',');
  auto* mn_x_o = mn->add_option("--x-grid", mn_c.x_grid);
  auto* mn_h_o = mn->add_option("--h-points", mn_c.grid.h_points);
  auto* mn_xp_o = mn->add_option("--x-points", mn_c.grid.x_points);
  auto* mn_t_o = mn->add_option("--threads", mn_c.threads);
  mn->callback([&] {
    auto c = MnStudyConfig::from_json(load_config(g));
    set(mn_f_o, c.f, mn_c.f);
    set(mn_q_o, c.q, mn_c.q);
    set(mn_l_o, c.lambda, mn_c.lambda);
    set(mn_n_o, c.n_list, mn_c.n_list);
    set(mn_x_o, c.x_grid, mn_c.x_grid);
    set(mn_h_o, c.grid.h_points, mn_c.grid.h_points);
    set(mn_xp_o, c.grid.x_points, mn_c.grid.x_points);
    set(mn_t_o, c.threads, mn_c.threads);
    set(g.bits_opt, c.precision_bits, g.precision_bits);
    code = finish(g, run_mn_error_study(c), inputs(g, {c.f}));
  });

  // lambda2
  auto* l2 = app.add_subcommand("lambda2", "the lambda = 2 counterexample ln(x + eps)");
  Lambda2Config l2_c;
  auto* l2_e_o = l2->add_option("--eps-list", l2_c.eps_list)->delimiter(',');
  auto* l2_n_o = l2->add_option("-n,--n", l2_c.n);
  auto* l2_N_o = l2->add_option("--discretization", l2_c.discretization);
  l2->callback([&] {
    auto c = Lambda2Config::from_json(load_config(g));
    set(l2_e_o, c.eps_list, l2_c.eps_list);
    set(l2_n_o, c.n, l2_c.n);
    set(l2_N_o, c.discretization, l2_c.discretization);
    code = finish(g, run_lambda2_counterexample(c), inputs(g));
  });

  // gen-report
  auto* gr = app.add_subcommand("gen-report", "moment deficiencies of P_n across n");
  GenReportConfig gr_c;
  auto* gr_r_o = gr->add_option("-r,--r", gr_c.r);
  auto* gr_n_o = gr->add_option("--n-list", gr_c.n_list)->delimiter(',');
  gr->callback([&] {
    auto c = GenReportConfig::from_json(load_config(g));
    set(gr_r_o, c.r, gr_c.r);
    set(gr_n_o, c.n_list, gr_c.n_list);
    set(g.bits_opt, c.precision_bits, g.precision_bits);
    code = finish(g, run_generator_report(c), inputs(g));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
