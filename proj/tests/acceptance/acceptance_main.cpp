// Acceptance run: one [PASS]/[FAIL] line per criterion. argv[1] is the path
// of the ncrat CLI binary (criterion 10).

#include "ncrat/blockschur.hpp"
#include "ncrat/errors.hpp"
#include "ncrat/fock.hpp"
#include "ncrat/json_io.hpp"
#include "ncrat/lmirep.hpp"
#include "ncrat/parser.hpp"
#include "ncrat/singular.hpp"

#include "../corpus.hpp"
#include "../support.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ncrat;
using namespace ncrat::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double cond(const Matrix& m) {
  const Vector s = Eigen::JacobiSVD<Matrix>(m).singularValues();
  return s(0) / s(s.size() - 1);
}

// Neville extrapolation to u = 0.
Matrix extrapolate_to_zero(const std::vector<double>& u, std::vector<Matrix> v) {
  const std::size_t n = u.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      v[i] = (u[i + level] * v[i] - u[i] * v[i + 1]) / (u[i + level] - u[i]);
    }
  }
  return v.front();
}

double rel_gap(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

// ---------------------------------------------------------------- 1

Outcome corpus_agreement() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  const auto entries = corpus();
  double worst = 0.0;
  int evaluations = 0;
  for (const auto& c : entries) {
    const auto e = parse_expression(c.text, 2);
    const auto r = realize(e);
    for (int i = 0; i < 100; ++i) {
      const auto x = tuple_in_ball(rng, 2, 1 + i % 4, 0.1);
      const Matrix want = c.oracle(x.entries());
      worst = std::max(worst, relative_error(eval_realization(r, x), want));
      worst = std::max(worst, relative_error(eval_expr(e, x), want));
      ++evaluations;
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = entries.size() >= 20 && worst <= 1e-9 && secs < 60.0;
  return {pass, std::to_string(entries.size()) + " expressions, " + std::to_string(evaluations) +
                    " tuples, max rel err " + fmt(worst) + ", " + fmt(secs) + " s"};
}

// ---------------------------------------------------------------- 2

Outcome schur_identities() {
  using namespace blockschur;
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst_recon = 0.0;
  double worst_agree = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int p = dim(rng);
    const int q = dim(rng);
    const BlockMatrix b{random_matrix(rng, p, p), random_matrix(rng, q, p), random_matrix(rng, q, q)};
    const Matrix m = b.assemble();
    const double c = cond(m);
    const Matrix via_psi = block_inverse(b, Pivot::Psi);
    const Matrix via_phi = block_inverse(b, Pivot::Phi);
    const Matrix id = I(m.rows());
    worst_recon = std::max({worst_recon, (m * via_psi - id).norm() / c, (m * via_phi - id).norm() / c});
    worst_agree = std::max(worst_agree, (via_psi - via_phi).norm() / (c * std::max(1.0, via_psi.norm())));
  }
  const bool pass = worst_recon <= 1e-10 && worst_agree <= 1e-9;
  return {pass, "500 trials, max ||MM^-1 - I||/cond " + fmt(worst_recon) + ", max pivot gap/(cond ||M^-1||) " +
                    fmt(worst_agree)};
}

// ---------------------------------------------------------------- 3

Outcome fock_exactness() {
  long long checks = 0;
  long long failures = 0;
  IntVector zeta(3);
  zeta << 2, -7, 3;
  for (int g = 1; g <= 3; ++g) {
    for (int nu = 0; nu <= 4; ++nu) {
      const auto f = fock::build_fock(g, nu);
      std::vector<IntVector> kw;
      for (const auto& w : f.basis.words) kw.push_back(fock::k_word_vector(f, w));
      for (const auto& omega : f.basis.words) {
        if (static_cast<int>(omega.size()) != nu) continue;
        const int oi = f.basis.index.at(omega);
        const IntMatrix sep = fock::separating_map(f.basis, omega, zeta);
        for (std::size_t i = 0; i < kw.size(); ++i) {
          const bool same = f.basis.words[i] == omega;
          ++checks;
          if (kw[i](oi) != (same ? 1 : 0)) ++failures;
          ++checks;
          if (IntVector(sep * kw[i]) != (same ? zeta : IntVector(IntVector::Zero(3)))) ++failures;
        }
      }
    }
  }
  return {failures == 0, std::to_string(checks) + " exact checks over g<=3, nu<=4, " + std::to_string(failures) +
                             " failures"};
}

// ---------------------------------------------------------------- 4

Outcome minimization() {
  double worst_series = 0.0;
  bool dims_ok = true;
  for (const auto& c : corpus()) {
    const auto raw = realize(parse_expression(c.text, 2), RealizeOptions{false});
    const auto m = minimize(raw);
    const auto sr = series_coefficients(raw, 6);
    const auto sm = series_coefficients(m, 6);
    for (const auto& [w, coeff] : sr) {
      const auto it = sm.find(w);
      const Matrix other = it == sm.end() ? Matrix::Zero(coeff.rows(), coeff.cols()) : it->second;
      worst_series = std::max(worst_series, (coeff - other).norm() / std::max(1.0, coeff.norm()));
    }
    if (m.d() > raw.d() || minimize(m).d() != m.d()) dims_ok = false;
  }
  const auto r2 = minimize(R2());
  const double margin = invertibility_margin(r2.pencil(), MatrixTuple::scalars({1.0}));
  const bool pass = worst_series <= 1e-10 && dims_ok && r2.d() == 1 && margin >= 0.5;
  return {pass, "max series gap (deg 6) " + fmt(worst_series) + (dims_ok ? ", dims stable" : ", dims NOT stable") +
                    ", R2 d=" + std::to_string(r2.d()) + " margin " + fmt(margin)};
}

// ---------------------------------------------------------------- 5

Outcome inversion() {
  std::mt19937_64 rng(105);
  double worst_product = 0.0;
  double worst_double = 0.0;
  int instances = 0;
  for (const auto& c : corpus()) {
    const auto r = realize(parse_expression(c.text, 2));
    const Matrix at0 = c.oracle(MatrixTuple::zeros(2, 1).entries());
    if (at0.rows() != at0.cols() || smallest_singular_value(at0) < 1e-12) continue;
    const auto ri = invert_realization(r);
    const auto rii = invert_realization(ri);
    ++instances;
    for (int i = 0; i < 100; ++i) {
      const auto x = tuple_in_ball(rng, 2, 1 + i % 4, 0.1);
      const Matrix v = eval_realization(r, x);
      worst_product = std::max(worst_product, (eval_realization(ri, x) * v - I(v.rows())).norm());
      worst_double = std::max(worst_double, relative_error(eval_realization(rii, x), v));
    }
  }
  const bool pass = instances > 0 && worst_product <= 1e-8 && worst_double <= 1e-8;
  return {pass, std::to_string(instances) + " invertible instances x 100 samples, max ||r~ r - I|| " +
                    fmt(worst_product) + ", max double-inverse gap " + fmt(worst_double)};
}

// ---------------------------------------------------------------- 6

Outcome hidden_singularity() {
  const auto chi = MatrixTuple::scalars({1.0});
  const double margin = invertibility_margin(R2().pencil(), chi);
  const auto reps = singular::limit_probe(R2(), chi, singular::default_directions(chi, 2, 0));
  double worst = 0.0;
  bool all_converged = true;
  for (const auto& rep : reps) {
    if (!rep.converged) {
      all_converged = false;
      continue;
    }
    worst = std::max(worst, std::abs(rep.limit_value->value() - 1.0));
  }
  const auto geo = one_minus_x_inverse();
  const bool minimal = minimality_check(geo).is_minimal;
  bool diverged = true;
  for (const auto& rep : singular::limit_probe(geo, chi, singular::default_directions(chi, 2, 0))) {
    diverged = diverged && !rep.converged;
  }
  const bool pass = margin < 1e-12 && all_converged && worst <= 1e-8 && minimal && diverged;
  return {pass, "R2 margin " + fmt(margin) + ", limit err " + fmt(worst) +
                    (all_converged ? " (all directions converge)" : " (some direction diverged)") +
                    ", minimal (1-x)^-1 " + (diverged ? "divergent" : "NOT divergent")};
}

// ---------------------------------------------------------------- 7

Outcome order_residue() {
  const auto chi = MatrixTuple::scalars({1.0});
  double worst = 0.0;
  bool p_ok = true;
  for (const auto& r : {one_minus_x_inverse(), diag_example()}) {
    const auto res = singular::order_and_residue(r, chi);
    p_ok = p_ok && res.p == 0 && res.M.size() == 1;
    worst = std::max(worst, std::abs(res.M(0, 0) + 1.0));
  }
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> a(-2.0, 2.0);
  int instances = 0;
  int odd = 0;
  int failed = 0;
  int positive = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Realization r;
    std::optional<MatrixTuple> x;
    if (trial % 4 == 0) {
      r = isotropic_example(a(rng));
      x = chi;
    } else {
      r = random_symmetric_realization(rng, 1 + trial % 4, 1 + trial % 2);
      x = singular_point(r, rng, 1 + trial % 2, 50.0);
    }
    if (!x) continue;
    ++instances;
    try {
      const auto res = singular::order_and_residue(r, *x);
      if (res.p % 2 != 0) ++odd;
      if (res.p > 0) ++positive;
    } catch (const Error&) {
      ++failed;
    }
  }
  const bool pass = p_ok && worst <= 1e-8 && odd == 0 && failed == 0 && instances >= 100;
  return {pass, "worked instances p=0, |M+1| <= " + fmt(worst) + "; " + std::to_string(instances) +
                    " random singular instances (" + std::to_string(positive) + " with p>0): " +
                    std::to_string(odd) + " odd p, " + std::to_string(failed) + " fit failures"};
}

// ---------------------------------------------------------------- 8

Outcome lemma43_formula() {
  std::mt19937_64 rng(108);
  int frames = 0;
  double worst_direct = 0.0;
  double worst_formula = 0.0;
  double worst_eta = 0.0;
  for (int attempt = 0; frames < 50 && attempt < 5000; ++attempt) {
    const int g = 1 + attempt % 2;
    const int d = 1 + (attempt / 2) % 4;
    const int n = 1 + (attempt / 8) % 2;
    const int nu = attempt % 3;
    const auto r = random_symmetric_realization(rng, d, g);
    const auto chi = singular_point(r, rng, n, 20.0);
    if (!chi) continue;
    const auto f = fock::build_fock(g, nu);
    std::vector<Matrix> H;
    for (int j = 0; j < g; ++j) H.push_back(random_matrix(rng, f.basis.size(), n));
    const double rho = std::array<double, 3>{0.0, 0.1, 0.2}[static_cast<std::size_t>(attempt % 3)];
    const singular::PerturbationFrame frame{H, f.shifts.k_tuple().entries(), 0.1, rho};
    singular::Lemma43Result l;
    try {
      l = singular::lemma43_check(r, *chi, frame);
    } catch (const Error&) {
      continue;  // Y singular or a degenerate residue fit: not a valid frame
    }
    std::vector<double> u;
    std::vector<Matrix> v;
    for (int i = 0; i < 6; ++i) {
      const double t = 0.05 * std::ldexp(1.0, -i);
      u.push_back(t * t);
      v.push_back(singular::lemma43_direct(r, *chi, frame, t, l.residue.q));
    }
    const Matrix direct = extrapolate_to_zero(u, v);
    worst_direct = std::max(worst_direct, rel_gap(direct, l.rhs));
    worst_formula = std::max(worst_formula, l.gap);
    worst_eta = std::max(worst_eta, rel_gap(singular::extrapolate_eta(l.residue.M, l.G0, frame.s), l.residue.M));
    ++frames;
  }
  const bool pass = frames == 50 && worst_direct <= 1e-6 && worst_formula <= 1e-6 && worst_eta <= 1e-6;
  return {pass, std::to_string(frames) + " frames, max gap direct vs closed form " + fmt(worst_direct) +
                    ", block formula vs closed form " + fmt(worst_formula) + ", eta(s)->M " + fmt(worst_eta)};
}

// ---------------------------------------------------------------- 9

struct LmiInstance {
  std::string text;
  int g;
};

Outcome lmi_machinery() {
  const auto t0 = Clock::now();
  const std::vector<LmiInstance> instances{
      {"1 - x1*x1", 1},
      {"1 - x1*x1 - x2*x2", 2},
      {"[1 - x1*x1, 0; 0, 1 - x2*x2]", 2},
      {"inv([1 - x1, -x2; -x2, 1 + x1])", 2},
      {"[1 + x1, x2; x2, 1 - x1]", 2},
  };
  std::ostringstream detail;
  bool pass = true;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const auto& inst = instances[k];
    const auto r = symmetrize(realize(parse_expression(inst.text, inst.g)));
    const auto rt = invert_realization(r);
    lmirep::TupleSampler sampler;
    sampler.sizes = {1, 2, 3};
    sampler.count = 350;
    sampler.seed = 109 + k;
    const auto convex = lmirep::convexity_falsifier(r, sampler, 500);
    const auto bounded = lmirep::boundedness_audit(r, sampler, 4.0);
    const auto cc = lmirep::pr_equals_component_check(r, rt, sampler);
    const int conclusive = cc.count - cc.inconclusive;

    lmirep::TupleSampler dirs = sampler;
    dirs.count = 20;
    dirs.seed = 209 + k;
    int located = 0;
    int audited = 0;
    for (const auto& x : dirs.draw(r.g())) {
      const auto chi = lmirep::locate_boundary(r, x.scaled(1.0 / std::sqrt(x.sum_of_squares_norm())), 10.0);
      if (!chi) continue;
      ++located;
      try {
        if (lmirep::boundary_audit(r, rt, {*chi}).front().ok()) ++audited;
      } catch (const PreconditionViolation&) {
      }
    }
    const bool ok = convex.convex && bounded.bounded && !bounded.inconclusive && cc.agree && conclusive >= 1000 &&
                    located >= 50 && audited == located;
    pass = pass && ok;
    detail << "\n       " << (ok ? "ok  " : "BAD ") << inst.text << ": component " << (cc.agree ? "Agrees" : "Disagrees")
           << " on " << conclusive << "/" << cc.count << " (" << cc.members << " members), boundary " << audited << "/"
           << located << ", convex " << (convex.convex ? "yes" : "no") << ", bounded "
           << (bounded.bounded ? "yes" : "no");
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 300.0;
  return {pass, "5 instances, " + fmt(secs) + " s" + detail.str()};
}

// ---------------------------------------------------------------- 10

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& cli, const std::vector<std::string>& args) {
  std::string cmd = quote(cli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism(const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() / "ncrat_acceptance";
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const io::Json& j) {
    io::write_file((dir / name).string(), j);
    return (dir / name).string();
  };
  const auto r1 = put("r1.json", io::to_json(R1()));
  const auto r2 = put("r2.json", io::to_json(R2()));
  const auto geo = put("geo.json", io::to_json(one_minus_x_inverse()));
  const auto gen = put("gen.json", io::to_json(realize(parse_expression("1 + 4*inv(4 + x1*x1)", 1))));
  const auto ball = put("ball.json", io::to_json(symmetrize(realize(parse_expression("1 - x1*x1 - x2*x2", 2)))));
  const auto chi = put("chi.json", io::to_json(MatrixTuple::scalars({1.0})));
  std::mt19937_64 rng(110);
  const auto pt = put("pt.json", io::to_json(tuple_in_ball(rng, 2, 2, 0.1)));
  const auto pt1 = put("pt1.json", io::to_json(MatrixTuple({0.5 * random_symmetric(rng, 2)})));

  const std::vector<std::vector<std::string>> commands{
      {"parse", "--expr", "inv(1 - x1*inv(1 - x2*inv(2 - x1)))"},
      {"eval", "--expr", "x1*inv(1 - x2*x1)", "--point", pt},
      {"realize", "--expr", "inv(3 - inv(1 - x1*inv(2 + x2)) - x2)"},
      {"minimize", "--realization", r2},
      {"invert", "--realization", r1},
      {"symmetrize", "--realization", gen},
      {"series", "--expr", "inv(2 - x1 - x2)", "--degree", "4"},
      {"equiv", "--expr1", "x1*inv(1 - x2*x1)", "--expr2", "inv(1 - x1*x2)*x1", "--seed", "7"},
      {"fock", "--g", "2", "--nu", "3", "--omega", "1", "2", "1"},
      {"probe", "--realization", geo, "--chi", chi, "--refute", "--seed", "3"},
      {"residue", "--realization", geo, "--chi", chi},
      {"lmi", "--realization", r1, "--point", pt1},
      {"audit", "--realization", ball, "--samples", "40", "--boundary-points", "5", "--sizes", "1..2", "--seed", "4"},
  };
  int identical = 0;
  std::string bad;
  for (const auto& c : commands) {
    const auto a = run_cli(cli, c);
    const auto b = run_cli(cli, c);
    auto ca = c;
    ca.insert(ca.end(), {"--out", (dir / "a.json").string()});
    auto cb = c;
    cb.insert(cb.end(), {"--out", (dir / "b.json").string()});
    const auto fa = run_cli(cli, ca);
    const auto fb = run_cli(cli, cb);
    const bool ok = a.code == 0 && b.code == 0 && a.out == b.out && fa.code == 0 && fb.code == 0 &&
                    fa.out == fb.out && slurp(dir / "a.json") == slurp(dir / "b.json") && !a.out.empty();
    if (ok) {
      ++identical;
    } else {
      bad += " " + c.front();
    }
  }
  fs::remove_all(dir);
  const bool pass = identical == static_cast<int>(commands.size());
  return {pass, std::to_string(identical) + "/" + std::to_string(commands.size()) +
                    " verbs byte-identical on stdout and --out" + (bad.empty() ? "" : ", differing:" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to ncrat>\n";
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"realization/expression agreement on the corpus", corpus_agreement},
      {"Schur complement identities", schur_identities},
      {"Fock space exactness", fock_exactness},
      {"minimization", minimization},
      {"inversion", inversion},
      {"hidden-singularity demo", hidden_singularity},
      {"order and residue", order_residue},
      {"perturbed-point limit formula", lemma43_formula},
      {"positivity set = component of the direct-sum pencil", lmi_machinery},
      {"CLI determinism", [&cli] { return cli_determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].name << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
