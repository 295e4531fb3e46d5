#include "ncrat/equivalence.hpp"
#include "ncrat/errors.hpp"
#include "ncrat/expression.hpp"
#include "ncrat/fock.hpp"
#include "ncrat/json_io.hpp"
#include "ncrat/lmirep.hpp"
#include "ncrat/parser.hpp"
#include "ncrat/realization.hpp"
#include "ncrat/series.hpp"
#include "ncrat/singular.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

using namespace ncrat;
using io::Json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string sizes = "1..4";
  std::string out;
};

struct Inputs {
  std::string expr;
  std::string realization;
  std::string point;
  int g = 0;
};

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      for (int n = lo; n <= hi; ++n) sizes.push_back(n);
    } else {
      std::size_t start = 0;
      while (start <= text.size()) {
        const auto comma = text.find(',', start);
        sizes.push_back(std::stoi(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad --sizes value \"" + text + "\"");
  }
  if (sizes.empty() || *std::min_element(sizes.begin(), sizes.end()) < 1) {
    throw InvalidArgument("bad --sizes value \"" + text + "\"");
  }
  return sizes;
}

// Largest variable index mentioned, so --g can usually be omitted.
int infer_g(const std::string& text) {
  static const std::regex var(R"(x(\d+))");
  int g = 1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
    g = std::max(g, std::stoi((*it)[1].str()));
  }
  return g;
}

RationalExpr load_expr(const std::string& text, int g) { return parse_expression(text, g > 0 ? g : infer_g(text)); }

MatrixTuple load_tuple(const std::string& path) { return io::tuple_from_json(io::read_file(path)); }

// Accepts a bare realization or the report written by realize/minimize/invert.
Realization read_realization(const std::string& path) {
  const Json j = io::read_file(path);
  return io::realization_from_json(j.contains("realization") ? j["realization"] : j);
}

Realization load_realization(const Inputs& in) {
  if (!in.realization.empty()) return read_realization(in.realization);
  if (!in.expr.empty()) return realize(load_expr(in.expr, in.g));
  throw InvalidArgument("need --expr or --realization");
}

void emit(const Globals& gl, const Json& report, const std::string& summary) {
  if (gl.out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    io::write_file(gl.out, report);
    std::cout << summary << '\n';
  }
}

Json realization_report(const Realization& r) {
  Json j;
  j["realization"] = io::to_json(r);
  const auto mc = minimality_check(r);
  j["minimal"] = mc.is_minimal;
  j["reach_rank"] = mc.reach_rank;
  j["obs_rank"] = mc.obs_rank;
  return j;
}

std::string dims(const Realization& r) {
  return "d=" + std::to_string(r.d()) + " g=" + std::to_string(r.g()) + " l=" + std::to_string(r.cols());
}

int exit_code(Error::Category c) {
  switch (c) {
    case Error::Category::Usage:
      return 1;
    case Error::Category::Domain:
      return 2;
    case Error::Category::Parse:
      return 3;
    case Error::Category::Numerical:
      return 4;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncrat: noncommutative rational functions and descriptor realizations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--seed", gl.seed, "random seed")->capture_default_str();
  app.add_option("--tol", gl.tol, "comparison tolerance")->capture_default_str();
  app.add_option("--sizes", gl.sizes, "matrix sizes, lo..hi or a comma list")->capture_default_str();
  app.add_option("--out", gl.out, "write the JSON report here instead of stdout");

  Inputs in;
  auto add_expr = [&](CLI::App* sub) {
    sub->add_option("--expr", in.expr, "expression");
    sub->add_option("--g", in.g, "number of variables (default: largest index in the expression)");
  };
  auto add_realization = [&](CLI::App* sub) { sub->add_option("--realization", in.realization, "realization JSON"); };

  auto* parse_cmd = app.add_subcommand("parse", "parse an expression and print its canonical form");
  add_expr(parse_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate at a matrix tuple");
  add_expr(eval_cmd);
  add_realization(eval_cmd);
  eval_cmd->add_option("--point", in.point, "matrix tuple JSON")->required();

  bool no_minimize = false;
  auto* realize_cmd = app.add_subcommand("realize", "build a descriptor realization of an expression");
  add_expr(realize_cmd);
  realize_cmd->add_flag("--no-minimize", no_minimize, "keep the raw realization");
  bool symmetric_out = false;
  realize_cmd->add_flag("--symmetric", symmetric_out, "symmetrize the result");

  auto* minimize_cmd = app.add_subcommand("minimize", "minimize a realization");
  add_expr(minimize_cmd);
  add_realization(minimize_cmd);

  auto* invert_cmd = app.add_subcommand("invert", "realization of the inverse");
  add_expr(invert_cmd);
  add_realization(invert_cmd);

  auto* symmetrize_cmd = app.add_subcommand("symmetrize", "symmetric realization of a symmetric function");
  add_expr(symmetrize_cmd);
  add_realization(symmetrize_cmd);

  int degree = 3;
  auto* series_cmd = app.add_subcommand("series", "power series coefficients around 0");
  add_expr(series_cmd);
  add_realization(series_cmd);
  series_cmd->add_option("--degree", degree, "maximal word length")->capture_default_str();

  std::string expr1, expr2;
  int count = 25;
  double epsilon = 0.1;
  auto* equiv_cmd = app.add_subcommand("equiv", "randomized equivalence test");
  equiv_cmd->add_option("--expr1", expr1)->required();
  equiv_cmd->add_option("--expr2", expr2)->required();
  equiv_cmd->add_option("--g", in.g, "number of variables");
  equiv_cmd->add_option("--count", count, "samples per size")->capture_default_str();
  equiv_cmd->add_option("--epsilon", epsilon, "sampling radius")->capture_default_str();

  int fock_g = 2, nu = 2;
  std::vector<int> omega;
  auto* fock_cmd = app.add_subcommand("fock", "truncated Fock space shift tuple K");
  fock_cmd->add_option("--g", fock_g)->capture_default_str();
  fock_cmd->add_option("--nu", nu)->capture_default_str();
  fock_cmd->add_option("--omega", omega, "letters (1-based) of a length-nu word for the separating map");

  std::string chi_path;
  int random_directions = 2;
  bool refute = false;
  bool no_require_minimal = false;
  auto* probe_cmd = app.add_subcommand("probe", "probe a singular point of the pencil");
  add_expr(probe_cmd);
  add_realization(probe_cmd);
  probe_cmd->add_option("--chi", chi_path, "matrix tuple JSON")->required();
  probe_cmd->add_option("--directions", random_directions, "random directions besides chi")->capture_default_str();
  probe_cmd->add_flag("--refute", refute, "search for a certificate that the singularity is not well hidden");
  probe_cmd->add_flag("--no-require-minimal", no_require_minimal, "allow non-minimal realizations in --refute");

  auto* residue_cmd = app.add_subcommand("residue", "order p and residue M at a singular point");
  add_expr(residue_cmd);
  add_realization(residue_cmd);
  residue_cmd->add_option("--chi", chi_path, "matrix tuple JSON")->required();

  auto* lmi_cmd = app.add_subcommand("lmi", "positivity set membership at a point");
  add_expr(lmi_cmd);
  add_realization(lmi_cmd);
  lmi_cmd->add_option("--point", in.point, "matrix tuple JSON")->required();

  std::string rtilde_path;
  int samples = 20;
  int boundary_points = 10;
  double bound = 1.0;
  auto* audit_cmd = app.add_subcommand("audit", "positivity set audits of a symmetric realization");
  add_expr(audit_cmd);
  add_realization(audit_cmd);
  audit_cmd->add_option("--rtilde", rtilde_path, "realization of the inverse (default: computed)");
  audit_cmd->add_option("--samples", samples, "samples per size")->capture_default_str();
  audit_cmd->add_option("--boundary-points", boundary_points, "bisection-located boundary points")
      ->capture_default_str();
  audit_cmd->add_option("--bound", bound, "bound on lambda_max(sum X_j^2)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*parse_cmd) {
      const auto e = load_expr(in.expr, in.g);
      Json j;
      j["expr"] = e.to_string();
      j["g"] = e.g();
      j["rows"] = e.rows();
      j["cols"] = e.cols();
      j["nodes"] = e.node_count();
      j["value_at_zero"] = io::to_json(e.value_at_zero());
      emit(gl, j, e.to_string());
    } else if (*eval_cmd) {
      const auto x = load_tuple(in.point);
      Matrix value;
      if (!in.realization.empty()) {
        value = eval_realization(load_realization(in), x);
      } else {
        value = eval_expr(load_expr(in.expr, in.g > 0 ? in.g : std::max(x.g(), infer_g(in.expr))), x);
      }
      Json j;
      j["value"] = io::to_json(value);
      emit(gl, j, "value " + std::to_string(value.rows()) + "x" + std::to_string(value.cols()));
    } else if (*realize_cmd) {
      auto r = realize(load_expr(in.expr, in.g), RealizeOptions{!no_minimize});
      if (symmetric_out) r = symmetrize(r);
      emit(gl, realization_report(r), dims(r));
    } else if (*minimize_cmd) {
      const auto r = minimize(load_realization(in));
      emit(gl, realization_report(r), dims(r));
    } else if (*invert_cmd) {
      const auto r = invert_realization(load_realization(in));
      emit(gl, realization_report(r), dims(r));
    } else if (*symmetrize_cmd) {
      const auto r = symmetrize(load_realization(in));
      emit(gl, realization_report(r), dims(r));
    } else if (*series_cmd) {
      const CoefficientMap coeffs = in.realization.empty() ? series_coefficients(load_expr(in.expr, in.g), degree)
                                                           : series_coefficients(load_realization(in), degree);
      Json j;
      j["degree"] = degree;
      j["coefficients"] = io::to_json(coeffs);
      emit(gl, j, std::to_string(coeffs.size()) + " coefficients");
    } else if (*equiv_cmd) {
      const int g = in.g > 0 ? in.g : std::max(infer_g(expr1), infer_g(expr2));
      SamplingBox box;
      box.epsilon = epsilon;
      box.sizes = parse_sizes(gl.sizes);
      box.count = count;
      box.seed = gl.seed;
      const auto res = equivalence_test(parse_expression(expr1, g), parse_expression(expr2, g), box, gl.tol);
      const Json j = io::to_json(res);
      if (gl.out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        io::write_file(gl.out, j);
        std::cout << "verdict " << to_string(res.verdict) << '\n';
      }
    } else if (*fock_cmd) {
      const auto f = fock::build_fock(fock_g, nu);
      Json j;
      j["g"] = fock_g;
      j["nu"] = nu;
      j["dimension"] = f.basis.size();
      Json words = Json::array();
      for (const auto& w : f.basis.words) words.push_back(w.to_string());
      j["basis"] = std::move(words);
      j["K"] = io::to_json(f.shifts.k_tuple());
      if (!omega.empty()) {
        std::vector<int> letters;
        for (int l : omega) {
          if (l < 1 || l > fock_g) throw InvalidArgument("--omega letters must be in 1..g");
          letters.push_back(l - 1);
        }
        IntVector zeta = IntVector::Ones(1);
        j["separating_map"] = io::to_json(fock::separating_map(f.basis, Word(letters), zeta));
      }
      emit(gl, j, "dimension " + std::to_string(f.basis.size()));
    } else if (*probe_cmd || *residue_cmd) {
      const auto r = load_realization(in);
      const auto chi = load_tuple(chi_path);
      Json j;
      j["chi"] = io::to_json(chi);
      j["margin"] = invertibility_margin(r.pencil(), chi);
      const auto ks = singular::kernel_split(r, chi);
      j["kernel_dim"] = ks.k();
      const auto res = singular::order_and_residue(ks);
      j["p"] = res.p;
      j["M"] = io::to_json(res.M);
      j["fit_error"] = res.fit_error;
      Json probes = Json::array();
      Json certificate = nullptr;
      if (*probe_cmd) {
        for (const auto& rep :
             singular::limit_probe(r, chi, singular::default_directions(chi, random_directions, gl.seed))) {
          probes.push_back(io::to_json(rep));
        }
        if (refute) {
          singular::RefuteOptions opt;
          opt.require_minimal = !no_require_minimal;
          opt.seed = gl.seed;
          opt.random_directions = random_directions;
          const auto rr = singular::well_hidden_refute(r, chi, opt);
          if (rr.certificate) certificate = io::to_json(*rr.certificate);
        }
      }
      j["probes"] = std::move(probes);
      j["certificate"] = std::move(certificate);
      emit(gl, j, "p=" + std::to_string(res.p) + " kernel_dim=" + std::to_string(ks.k()));
    } else if (*lmi_cmd) {
      const auto r = load_realization(in);
      const auto x = load_tuple(in.point);
      Json j = io::to_json(lmirep::positivity_report(r, x));
      j["pencil_margin"] = invertibility_margin(r.pencil(), x);
      emit(gl, j, j["in_positivity_set"].get<bool>() ? "member" : "not a member");
    } else if (*audit_cmd) {
      const auto r = load_realization(in);
      const auto rtilde = rtilde_path.empty() ? invert_realization(r)
                                              : read_realization(rtilde_path);
      lmirep::TupleSampler sampler;
      sampler.sizes = parse_sizes(gl.sizes);
      sampler.count = samples;
      sampler.seed = gl.seed;
      const auto cc = lmirep::pr_equals_component_check(r, rtilde, sampler);
      const auto bd = lmirep::boundedness_audit(r, sampler, bound);

      lmirep::TupleSampler dirs = sampler;
      dirs.count = boundary_points;
      dirs.seed = gl.seed + 1;
      Json points = Json::array();
      int flagged = 0;
      int located = 0;
      for (const auto& x : dirs.draw(r.g())) {
        if (located >= boundary_points) break;
        const auto chi = lmirep::locate_boundary(r, x.scaled(1.0 / x.norm()), 1e3);
        if (!chi) continue;
        ++located;
        const auto flags = lmirep::boundary_audit(r, rtilde, {*chi}).front();
        if (flags.ok()) ++flagged;
        Json p;
        p["chi"] = io::to_json(*chi);
        p["r_singular"] = flags.r_singular;
        p["rtilde_singular"] = flags.rtilde_singular;
        points.push_back(std::move(p));
      }

      Json j;
      Json comp;
      comp["verdict"] = cc.agree ? "Agrees" : "Disagrees";
      comp["count"] = cc.count;
      comp["members"] = cc.members;
      comp["inconclusive"] = cc.inconclusive;
      comp["witness"] = cc.witness ? io::to_json(*cc.witness) : Json(nullptr);
      j["component_check"] = std::move(comp);
      Json bj;
      bj["verdict"] = bd.inconclusive ? "Inconclusive" : (bd.bounded ? "Bounded" : "Violated");
      bj["evidence"] = bd.evidence;
      bj["largest_radius"] = bd.largest_radius;
      bj["witness"] = bd.witness ? io::to_json(*bd.witness) : Json(nullptr);
      j["boundedness"] = std::move(bj);
      Json ba;
      ba["points"] = located;
      ba["passed"] = flagged;
      ba["samples"] = std::move(points);
      j["boundary_audit"] = std::move(ba);
      if (!gl.out.empty()) io::write_file(gl.out, j);
      std::cout << "check                 verdict       count\n";
      std::cout << "pr_equals_component   " << (cc.agree ? "Agrees     " : "Disagrees  ") << "   " << cc.count
                << '\n';
      std::cout << "boundedness           " << j["boundedness"]["verdict"].get<std::string>() << "   "
                << bd.evidence << '\n';
      std::cout << "boundary_audit        " << flagged << "/" << located << '\n';
      if (gl.out.empty()) std::cout << j.dump(2) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
