#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "treedyn/dynamics.hpp"
#include "treedyn/fourier.hpp"
#include "treedyn/io.hpp"
#include "treedyn/operators.hpp"
#include "treedyn/spectral.hpp"

namespace treedyn::cli {

namespace {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratorFlags {
  std::string kind = "affine";
  double a_re = 0.0, a_im = 0.0, b_re = 0.0, b_im = 0.0;
  std::vector<std::string> coeffs;

  void add_to(CLI::App& cmd, bool with_kind) {
    if (with_kind) cmd.add_option("--generator", kind, "affine or series")->check(CLI::IsMember({"affine", "series"}));
    cmd.add_option("--a-re", a_re);
    cmd.add_option("--a-im", a_im);
    cmd.add_option("--b-re", b_re);
    cmd.add_option("--b-im", b_im);
    cmd.add_option("--coeffs,--series", coeffs, "c0,c1,... each as re or re:im")->delimiter(',');
  }

  bool is_series() const { return kind == "series" || !coeffs.empty(); }

  Generator build() const {
    if (!is_series()) return Generator::affine(cplx(a_re, a_im), cplx(b_re, b_im));
    if (coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "series generator needs --coeffs");
    std::vector<cplx> c;
    for (const auto& token : coeffs) {
      const auto colon = token.find(':');
      try {
        const double re = std::stod(token.substr(0, colon));
        double im = 0.0;
        if (colon != std::string::npos) im = std::stod(token.substr(colon + 1));
        c.emplace_back(re, im);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "cannot parse coefficient '" + token + "'");
      }
    }
    return Generator::series(std::move(c));
  }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FileError("malformed JSON in " + path + ": " + e.what());
  }
}

// Writes to --out when given, otherwise to the command's stdout.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw FileError("cannot write " + path);
  file << text;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw FileError("cannot write " + path.string());
  file << text;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json verdict_json(const ChaosVerdict& v) {
  json evidence = json::object();
  if (v.evidence.re_gamma_min) evidence["re_gamma_min"] = *v.evidence.re_gamma_min;
  if (v.evidence.re_gamma_max) evidence["re_gamma_max"] = *v.evidence.re_gamma_max;
  if (v.evidence.samples > 0) {
    evidence["samples"] = v.evidence.samples;
    evidence["sign_change"] = v.evidence.sign_change;
  }
  json interval = nullptr;
  if (v.evidence.interval) interval = json::array({v.evidence.interval->first, v.evidence.interval->second});
  return json{{"verdict", to_string(v.classification)}, {"interval", interval}, {"evidence", evidence},
              {"notes", v.notes}};
}

std::string ellipse_csv(const std::vector<double>& s, const std::vector<cplx>& w) {
  std::ostringstream os;
  os << "s,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    os << format_double(s[k]) << ',' << format_double(w[k].real()) << ',' << format_double(w[k].imag()) << '\n';
  }
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic analysis and semigroup dynamics on homogeneous trees"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int q = 2;
  double p = 4.0;
  std::string out_path;
  double tol = 1e-12;
  int max_terms = 400;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--q", q, "branching parameter (degree q+1)")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };
  std::function<void()> action;

  // spectrum
  int samples = 64;
  auto* spectrum = app.add_subcommand("spectrum", "boundary of the L^p spectrum: gamma(s + i delta_p)");
  common(spectrum);
  spectrum->add_option("--p", p);
  spectrum->add_option("--samples", samples)->check(CLI::Range(2, 1 << 20));
  spectrum->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const double d = delta_p(p);
      std::ostringstream os;
      os << "s,re_gamma,im_gamma,residual\n";
      for (const double s : ellipse_parameters(samples, params)) {
        const cplx w = gamma(cplx(s, d), params);
        os << format_double(s) << ',' << format_double(w.real()) << ',' << format_double(w.imag()) << ','
           << format_double(ellipse_residual(w, p, params)) << '\n';
      }
      emit(out_path, out, os.str());
    };
  });

  // phi
  double z_re = 0.0, z_im = 0.0;
  int n_max = 10;
  auto* phi_cmd = app.add_subcommand("phi", "spherical function phi_z(n)");
  common(phi_cmd);
  phi_cmd->add_option("--z-re", z_re);
  phi_cmd->add_option("--z-im", z_im);
  phi_cmd->add_option("--n-max", n_max)->check(CLI::NonNegativeNumber);
  phi_cmd->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const auto r = spherical_function(SpectralPoint(cplx(z_re, z_im), params), n_max, params);
      std::ostringstream os;
      os << "n,re,im\n";
      for (std::size_t n = 0; n < r.size(); ++n) {
        os << n << ',' << format_double(r[n].real()) << ',' << format_double(r[n].imag()) << '\n';
      }
      emit(out_path, out, os.str());
    };
  });

  // transform
  std::string input;
  auto* transform = app.add_subcommand("transform", "Helgason-Fourier transform of a tree function");
  transform->add_option("--input", input)->required();
  transform->add_option("--z-re", z_re);
  transform->add_option("--z-im", z_im);
  transform->add_option("--out", out_path);
  transform->callback([&] {
    action = [&] {
      const auto f = tree_function_from_json(read_json_file(input));
      const auto slice = hf_transform(f, SpectralPoint(cplx(z_re, z_im), f.params()));
      emit(out_path, out, dump_json(to_json(slice.F)) + "\n");
    };
  });

  // plancherel-check
  int quad_points = 64;
  double quad_tol = 1e-9;
  auto* plancherel = app.add_subcommand("plancherel-check", "compare the Plancherel integral with the l^2 norm");
  plancherel->add_option("--input", input)->required();
  plancherel->add_option("--tol", quad_tol)->check(CLI::PositiveNumber);
  plancherel->add_option("--quad-points", quad_points)->check(CLI::Range(16, 1 << 24));
  plancherel->add_option("--out", out_path);
  plancherel->callback([&] {
    action = [&] {
      const auto f = tree_function_from_json(read_json_file(input));
      const auto lhs = plancherel_norm(f, quad_points, quad_tol);
      const double rhs = std::pow(f.lp_norm(2.0), 2);
      const double rel = rhs > 0.0 ? std::abs(lhs.value - rhs) / rhs : std::abs(lhs.value);
      const json j{{"lhs", lhs.value}, {"rhs", rhs}, {"rel_error", rel}, {"quad_points", lhs.quad_points}};
      emit(out_path, out, dump_json(j) + "\n");
    };
  });

  // heat-kernel
  double xi_re = 0.0, xi_im = 0.0;
  int radius = 10;
  auto* heat = app.add_subcommand("heat-kernel", "radial heat kernel h_xi");
  common(heat);
  heat->add_option("--xi-re", xi_re);
  heat->add_option("--xi-im", xi_im);
  heat->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  heat->add_option("--tol", tol)->check(CLI::PositiveNumber);
  heat->add_option("--max-terms", max_terms)->check(CLI::PositiveNumber);
  heat->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const auto h = heat_kernel(cplx(xi_re, xi_im), radius, tol, max_terms, params);
      std::ostringstream os;
      os << "d,re,im,tail_bound\n";
      for (std::size_t d = 0; d < h.kernel.size(); ++d) {
        os << d << ',' << format_double(h.kernel[d].real()) << ',' << format_double(h.kernel[d].imag()) << ','
           << format_double(h.tail_bound) << '\n';
      }
      emit(out_path, out, os.str());
    };
  });

  // evolve
  GeneratorFlags gen_flags;
  double t = 1.0;
  auto* evolve = app.add_subcommand("evolve", "apply e^{t f(L)} to a tree function");
  gen_flags.add_to(*evolve, true);
  evolve->add_option("--t", t)->check(CLI::NonNegativeNumber);
  evolve->add_option("--input", input)->required();
  evolve->add_option("--tol", tol)->check(CLI::PositiveNumber);
  evolve->add_option("--max-terms", max_terms)->check(CLI::PositiveNumber);
  evolve->add_option("--out", out_path);
  evolve->callback([&] {
    action = [&] {
      const auto f = tree_function_from_json(read_json_file(input));
      const auto g = semigroup_apply(gen_flags.build(), t, f, tol, max_terms);
      auto j = to_json(g);
      j["validity_radius"] = g.radius();
      emit(out_path, out, dump_json(j) + "\n");
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "chaos verdict for e^{t f(L)} on L^p");
  common(classify);
  classify->add_option("--p", p);
  gen_flags.add_to(*classify, false);
  classify->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const auto verdict = gen_flags.is_series() ? classify_analytic(p, gen_flags.build(), params)
                                                 : classify_affine(p, cplx(gen_flags.a_re, gen_flags.a_im),
                                                                   cplx(gen_flags.b_re, gen_flags.b_im), params);
      emit(out_path, out, dump_json(verdict_json(verdict)) + "\n");
    };
  });

  // periodic
  double witness_tol = 1e-10;
  auto* periodic = app.add_subcommand("periodic", "periodic point witness z0, t0");
  common(periodic);
  periodic->add_option("--p", p);
  gen_flags.add_to(*periodic, false);
  periodic->add_option("--tol", witness_tol)->check(CLI::PositiveNumber);
  periodic->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const auto w = find_periodic_witness(p, gen_flags.build(), witness_tol, params);
      const json j{{"z0", complex_json(w.z0.z())}, {"t0", w.t0}, {"gamma_value", complex_json(w.gamma_value)},
                   {"residual", w.residual}};
      emit(out_path, out, dump_json(j) + "\n");
    };
  });

  // orbit
  std::vector<double> times{0.5, 1.0, 2.0};
  int ball = 4;
  auto* orbit = app.add_subcommand("orbit", "norm ratios of T(t) phi_z against e^{t Re Gamma(z)}");
  common(orbit);
  orbit->add_option("--p", p);
  gen_flags.add_to(*orbit, false);
  orbit->add_option("--z-re", z_re);
  orbit->add_option("--z-im", z_im);
  orbit->add_option("--times", times)->delimiter(',');
  orbit->add_option("--ball", ball)->check(CLI::NonNegativeNumber);
  orbit->add_option("--tol", tol)->check(CLI::PositiveNumber);
  orbit->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const auto rows = orbit_norm_trajectory(gen_flags.build(), SpectralPoint(cplx(z_re, z_im), params), times, p,
                                              ball, params, tol, max_terms);
      std::ostringstream os;
      os << "t,predicted,measured,abs_err\n";
      for (const auto& r : rows) {
        os << format_double(r.t) << ',' << format_double(r.predicted) << ',' << format_double(r.measured) << ','
           << format_double(std::abs(r.predicted - r.measured)) << '\n';
      }
      emit(out_path, out, os.str());
    };
  });

  // selftest
  std::uint64_t seed = acceptance::kDefaultSeed;
  std::vector<int> only;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--seed", seed);
  selftest->add_option("--only", only, "criterion numbers")->delimiter(',');
  int selftest_status = kExitOk;
  selftest->callback([&] {
    action = [&] {
      std::vector<acceptance::CriterionResult> results;
      if (only.empty()) {
        results = acceptance::run_all(seed);
      } else {
        for (const int id : only) results.push_back(acceptance::run_criterion(id, seed));
      }
      selftest_status = acceptance::report(results, out) ? kExitOk : kExitSelftestFailed;
    };
  });

  // figures
  double shift_b = 1.0;
  auto* figures = app.add_subcommand("figures", "data files behind the spectrum figures");
  figures->add_option("--q", q)->check(CLI::Range(2, 1 << 20));
  figures->add_option("--p", p);
  figures->add_option("--b", shift_b, "shift b for the spectrum of L - b");
  figures->add_option("--samples", samples)->check(CLI::Range(2, 1 << 20));
  figures->add_option("--out", out_path, "output directory")->required();
  figures->callback([&] {
    action = [&] {
      const TreeParams params(q);
      const std::filesystem::path dir(out_path);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw FileError("cannot create " + dir.string());
      const auto s = ellipse_parameters(samples, params);
      const auto boundary = ellipse_boundary_points(p, params, samples);
      std::vector<cplx> shifted, rotated;
      for (const cplx w : boundary) {
        shifted.push_back(w - shift_b);
        rotated.push_back(cplx(0.0, 1.0) * w);
      }
      write_file(dir / "ellipse.csv", ellipse_csv(s, boundary));
      write_file(dir / "shifted_ellipse.csv", ellipse_csv(s, shifted));
      write_file(dir / "schrodinger_ellipse.csv", ellipse_csv(s, rotated));
      json intervals{{"q", q}, {"p", p}, {"b", shift_b}};
      if (p > 2.0 && !std::isinf(p)) {
        const auto heat = heat_interval(p, params);
        const auto schr = schrodinger_interval(p, params);
        intervals["heat_interval"] = json::array({heat.first, heat.second});
        intervals["schrodinger_interval"] = json::array({schr.first, schr.second});
        intervals["phi_p_of_1"] = phi_p_threshold(1.0, p, params);
        intervals["phi_p_of_i"] = phi_p_threshold(cplx(0.0, 1.0), p, params);
      }
      write_file(dir / "intervals.json", dump_json(intervals) + "\n");
      out << "wrote ellipse.csv, shifted_ellipse.csv, schrodinger_ellipse.csv, intervals.json to " << dir.string()
          << "\n";
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numeric_failure(e.kind()) ? kExitNumeric : kExitValidation;
  } catch (const FileError& e) {
    err << "FileError: " << e.what() << "\n";
    return kExitValidation;
  }
  return selftest_status;
}

}  // namespace treedyn::cli
