#include "recon/cli.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "recon/error.hpp"
#include "recon/io.hpp"
#include "recon/plot.hpp"

namespace recon {

namespace {

struct Options {
  int max_height = 12;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string output;
  std::string input;
};

void emit(const Json& j, const Options& opt, std::ostream& out) {
  const std::string text = dump_json(j) + "\n";
  if (opt.output.empty()) {
    out << text;
  } else {
    write_file(opt.output, text);
  }
}

Json load(const std::string& path) { return parse_json(read_file(path)); }

Matrix2C random_sl2c(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng));
    if (std::abs(a) < 0.2) continue;
    return {a, b, c, (1.0 + b * c) / a};
  }
}

// Resolves a matrix flag: exact when given with integer or p/q entries,
// random from the seed when absent.
struct MatrixArg {
  std::optional<Matrix2Q> exact;
  Matrix2C floating;
};

MatrixArg matrix_arg(const std::string& text, std::mt19937_64& rng) {
  MatrixArg m;
  if (text.empty()) {
    m.floating = random_sl2c(rng);
    return m;
  }
  m.exact = parse_exact_matrix(text);
  m.floating = m.exact ? to_complex(*m.exact) : parse_complex_matrix(text);
  return m;
}

int report_exit(const VerificationReport& r, const Options& opt, std::ostream& out) {
  emit(to_json(r), opt, out);
  return r.ok() ? 0 : 1;
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IncompleteDomain:
    case ErrorKind::NonUnimodular:
    case ErrorKind::DomainError:
    case ErrorKind::ZeroInput:
      return true;
    default:
      return false;
  }
}

void add_common(CLI::App* cmd, Options& opt, bool with_output) {
  cmd->add_option("--max", opt.max_height, "largest slope height |p|+|q|")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opt.tol, "relative tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "random seed");
  if (with_output) cmd->add_option("-o,--output", opt.output, "output file (default: standard output)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level-1 surface structures and convex polygon reconstruction"};
  app.require_subcommand(1);
  Options opt;
  std::function<int()> action;

  // farey
  auto* farey = app.add_subcommand("farey", "Farey graph utilities")->require_subcommand(1);
  auto* farey_enum = farey->add_subcommand("enum", "list slopes by height");
  add_common(farey_enum, opt, true);
  farey_enum->callback([&] {
    action = [&] {
      Json j;
      const auto slopes = enumerate_slopes(opt.max_height);
      j["max_height"] = opt.max_height;
      j["count"] = slopes.size();
      j["slopes"] = Json::array();
      for (const Slope& s : slopes) j["slopes"].push_back(s.str());
      emit(j, opt, out);
      return 0;
    };
  });
  std::string path_slope;
  auto* farey_path_cmd = farey->add_subcommand("path", "flip path from the base triangle");
  farey_path_cmd->add_option("slope", path_slope, "slope p/q")->required();
  add_common(farey_path_cmd, opt, true);
  farey_path_cmd->callback([&] {
    action = [&] {
      const Slope s = Slope::parse(path_slope);
      Json j;
      j["slope"] = s.str();
      j["path"] = Json::array();
      for (const FareyTriangle& t : farey_path(s)) j["path"].push_back(Json::array({t.a.str(), t.b.str(), t.c.str()}));
      j["length"] = j["path"].size();
      emit(j, opt, out);
      return 0;
    };
  });

  // char
  auto* chr = app.add_subcommand("char", "trace functions")->require_subcommand(1);
  std::string mA, mB, mA1, mA2, mA3, mode_flag;
  auto* gen_t11 = chr->add_subcommand("gen-t11", "generate from A, B (one-holed torus)");
  gen_t11->add_option("--A", mA, "row-major entries a,b,c,d");
  gen_t11->add_option("--B", mB, "row-major entries a,b,c,d");
  add_common(gen_t11, opt, true);
  gen_t11->callback([&] {
    action = [&] {
      std::mt19937_64 rng(opt.seed);
      const MatrixArg A = matrix_arg(mA, rng), B = matrix_arg(mB, rng);
      if (A.exact && B.exact) {
        emit(to_json(generate_t11(*A.exact, *B.exact, opt.max_height)), opt, out);
      } else {
        emit(to_json(generate_t11(A.floating, B.floating, opt.max_height)), opt, out);
      }
      return 0;
    };
  });
  auto* gen_s04 = chr->add_subcommand("gen-s04", "generate from A1, A2, A3 (four-holed sphere)");
  gen_s04->add_option("--A1", mA1, "row-major entries");
  gen_s04->add_option("--A2", mA2, "row-major entries");
  gen_s04->add_option("--A3", mA3, "row-major entries");
  add_common(gen_s04, opt, true);
  gen_s04->callback([&] {
    action = [&] {
      std::mt19937_64 rng(opt.seed);
      const MatrixArg A1 = matrix_arg(mA1, rng), A2 = matrix_arg(mA2, rng), A3 = matrix_arg(mA3, rng);
      if (A1.exact && A2.exact && A3.exact) {
        emit(to_json(generate_s04(*A1.exact, *A2.exact, *A3.exact, opt.max_height)), opt, out);
      } else {
        emit(to_json(generate_s04(A1.floating, A2.floating, A3.floating, opt.max_height)), opt, out);
      }
      return 0;
    };
  });
  auto* char_verify = chr->add_subcommand("verify", "check the trace relations");
  char_verify->add_option("file", opt.input, "character file")->required();
  char_verify->add_option("--mode", mode_flag, "sl2c or hyperbolic (converts if the file differs)");
  add_common(char_verify, opt, true);
  char_verify->callback([&] {
    action = [&] {
      LoadedTrace t = trace_from_json(load(opt.input));
      if (t.exact) {
        ExactTraceFunction tf = t.exact_tf;
        if (!mode_flag.empty()) tf = convert_mode(tf, parse_mode(mode_flag));
        return report_exit(verify(tf, opt.tol), opt, out);
      }
      TraceFunction tf = t.floating;
      if (!mode_flag.empty()) tf = convert_mode(tf, parse_mode(mode_flag));
      return report_exit(verify(tf, opt.tol), opt, out);
    };
  });

  // lam
  auto* lam = app.add_subcommand("lam", "intersection functions")->require_subcommand(1);
  std::string surface_flag = "T11", dir_flag = "1,1", weight_flag = "1", base_flag, boundary_flag;
  auto* lam_weighted = lam->add_subcommand("weighted", "intersection function of a weighted slope");
  lam_weighted->add_option("--surface", surface_flag, "T11 or S04");
  lam_weighted->add_option("--dir", dir_flag, "direction x,y");
  lam_weighted->add_option("--weight", weight_flag, "positive weight");
  add_common(lam_weighted, opt, true);
  lam_weighted->callback([&] {
    action = [&] {
      const SurfaceTag surface = parse_surface(surface_flag);
      auto parts = CLI::detail::split(dir_flag, ',');
      if (parts.size() != 2) throw Error(ErrorKind::ParseError, "--dir needs x,y");
      try {
        WeightedSlope<Rational> w{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(weight_flag)};
        emit(to_json(from_weighted(surface, w, opt.max_height)), opt, out);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ParseError) throw;
        WeightedSlope<double> w{std::stod(parts[0]), std::stod(parts[1]), std::stod(weight_flag)};
        emit(to_json(from_weighted(surface, w, opt.max_height)), opt, out);
      }
      return 0;
    };
  });
  auto* lam_prop = lam->add_subcommand("propagate", "extend base values by the tropical flip rule");
  lam_prop->add_option("--surface", surface_flag, "T11 or S04");
  lam_prop->add_option("--base", base_flag, "values at 1/0, 0/1, 1/1")->required();
  lam_prop->add_option("--boundary", boundary_flag, "one value (T11) or four (S04)")->required();
  add_common(lam_prop, opt, true);
  lam_prop->callback([&] {
    action = [&] {
      const SurfaceTag surface = parse_surface(surface_flag);
      const auto base = CLI::detail::split(base_flag, ',');
      const auto bnd = CLI::detail::split(boundary_flag, ',');
      const auto labels = surface == SurfaceTag::T11 ? std::vector<std::string>{"b"}
                                                     : std::vector<std::string>{"b1", "b2", "b3", "b4"};
      if (base.size() != 3) throw Error(ErrorKind::ParseError, "--base needs three values");
      if (bnd.size() != labels.size()) {
        throw Error(ErrorKind::ParseError, "--boundary needs " + std::to_string(labels.size()) + " value(s)");
      }
      std::array<Rational, 3> b;
      std::map<std::string, Rational> bd;
      for (int i = 0; i < 3; ++i) b[i] = parse_rational(base[i]);
      for (std::size_t i = 0; i < labels.size(); ++i) bd[labels[i]] = parse_rational(bnd[i]);
      emit(to_json(propagate(surface, b, bd, opt.max_height)), opt, out);
      return 0;
    };
  });
  auto* lam_verify = lam->add_subcommand("verify", "check the tropical relations");
  lam_verify->add_option("file", opt.input, "lamination file")->required();
  add_common(lam_verify, opt, true);
  lam_verify->callback([&] {
    action = [&] {
      LoadedLamination l = lamination_from_json(load(opt.input));
      if (l.exact) return report_exit(verify_intersection(l.exact_f, opt.tol), opt, out);
      return report_exit(verify_intersection(l.floating, opt.tol), opt, out);
    };
  });

  // poly
  auto* poly = app.add_subcommand("poly", "convex polygons from lengths")->require_subcommand(1);
  auto* poly_realize = poly->add_subcommand("realize", "realise one quadrilateral");
  poly_realize->add_option("file", opt.input, "six lengths keyed 1-2 .. 3-4")->required();
  add_common(poly_realize, opt, true);
  poly_realize->callback([&] {
    action = [&] {
      emit(to_json(realize_quad(quad_metric_from_json(load(opt.input)), opt.tol)), opt, out);
      return 0;
    };
  });
  auto* poly_recon = poly->add_subcommand("reconstruct", "rebuild an n-gon from its quadrilaterals");
  poly_recon->add_option("file", opt.input, "{n, quads}")->required();
  add_common(poly_recon, opt, true);
  poly_recon->callback([&] {
    action = [&] {
      const auto [n, quads] = quads_from_json(load(opt.input));
      emit(to_json(reconstruct_polygon(n, quads, opt.tol)), opt, out);
      return 0;
    };
  });
  auto* poly_lengths = poly->add_subcommand("from-lengths", "realise a full length table");
  poly_lengths->add_option("file", opt.input, "{n, lengths}")->required();
  add_common(poly_lengths, opt, true);
  poly_lengths->callback([&] {
    action = [&] {
      const Json j = load(opt.input);
      const auto lengths = lengths_from_json(j.contains("lengths") ? j.at("lengths") : j);
      int n = 0;
      for (const auto& [seg, len] : lengths) n = std::max(n, seg.second);
      if (j.contains("n")) {
        if (!j.at("n").is_number_integer()) throw Error(ErrorKind::ParseError, "n must be an integer");
        n = j.at("n").get<int>();
      }
      emit(to_json(realize_from_edge_lengths(n, lengths, opt.tol)), opt, out);
      return 0;
    };
  });
  std::string diagonal_flag = "2-4";
  auto* poly_inv = poly->add_subcommand("invariant", "Thurston invariant of a quadrilateral");
  poly_inv->add_option("file", opt.input, "{vertices: [[x, y] x 4]}")->required();
  poly_inv->add_option("--diagonal", diagonal_flag, "2-4 or 1-3");
  add_common(poly_inv, opt, true);
  poly_inv->callback([&] {
    action = [&] {
      QuadDiagonal diag;
      if (diagonal_flag == "2-4" || diagonal_flag == "24") {
        diag = QuadDiagonal::D24;
      } else if (diagonal_flag == "1-3" || diagonal_flag == "13") {
        diag = QuadDiagonal::D13;
      } else {
        throw Error(ErrorKind::ParseError, "--diagonal must be 2-4 or 1-3");
      }
      const ThurstonQuadInvariant inv = quad_invariant(polygon_from_json(load(opt.input)), diag);
      const ThurstonQuadInvariant flipped = flip_invariant(inv);
      Json j;
      j["diagonal"] = diag == QuadDiagonal::D24 ? "2-4" : "1-3";
      j["z"] = Json::array({inv.z.real(), inv.z.imag()});
      j["w"] = Json::array({inv.w.real(), inv.w.imag()});
      j["flipped"] = {{"diagonal", diag == QuadDiagonal::D24 ? "1-3" : "2-4"},
                      {"z", Json::array({flipped.z.real(), flipped.z.imag()})},
                      {"w", Json::array({flipped.w.real(), flipped.w.imag()})}};
      emit(j, opt, out);
      return 0;
    };
  });

  // mcg
  auto* mcg = app.add_subcommand("mcg", "mapping class relations")->require_subcommand(1);
  std::string slope_a, slope_b, matrix_flag;
  auto* mcg_rel = mcg->add_subcommand("relations", "check relations II, III and IV on neighbour pairs");
  mcg_rel->add_option("--a", slope_a, "first slope (default: all pairs up to --max)");
  mcg_rel->add_option("--b", slope_b, "second slope");
  add_common(mcg_rel, opt, true);
  mcg_rel->callback([&] {
    action = [&] {
      std::vector<std::pair<Slope, Slope>> pairs;
      if (!slope_a.empty() || !slope_b.empty()) {
        if (slope_a.empty() || slope_b.empty()) throw Error(ErrorKind::ParseError, "--a and --b go together");
        const Slope a = Slope::parse(slope_a), b = Slope::parse(slope_b);
        if (!are_neighbors(a, b)) throw Error(ErrorKind::DomainError, a.str() + " and " + b.str() + " are not neighbours");
        pairs.emplace_back(a, b);
      } else {
        for (const Slope& a : enumerate_slopes(opt.max_height)) {
          for (const Slope& b : neighbors_within(a, opt.max_height)) pairs.emplace_back(a, b);
        }
      }
      std::size_t fail_ii = 0, fail_iii = 0, fail_iv = 0;
      Json failures = Json::array();
      for (const auto& [a, b] : pairs) {
        const bool ii = check_relation_II(a, b);
        const bool iii = check_relation_III(a, b);
        const bool iv = check_relation_IV_action(SurfaceTag::S04, a, b);
        fail_ii += !ii;
        fail_iii += !iii;
        fail_iv += !iv;
        if (!ii || !iii || !iv) {
          failures.push_back({{"a", a.str()}, {"b", b.str()}, {"II", ii}, {"III", iii}, {"IV", iv}});
        }
      }
      Json j;
      j["ok"] = failures.empty();
      j["pairs"] = pairs.size();
      j["relation_II_failures"] = fail_ii;
      j["relation_III_failures"] = fail_iii;
      j["relation_IV_failures"] = fail_iv;
      j["failures"] = failures;
      emit(j, opt, out);
      return failures.empty() ? 0 : 1;
    };
  });
  auto* mcg_dec = mcg->add_subcommand("decompose", "write a level-2 congruence matrix in L, R");
  mcg_dec->add_option("--M", matrix_flag, "row-major integer entries")->required();
  add_common(mcg_dec, opt, true);
  mcg_dec->callback([&] {
    action = [&] {
      const UniModMatrix m = parse_unimod(matrix_flag);
      const CongruenceWord w = congruence_decompose(m);
      Json j = to_json(w);
      j["matrix"] = to_json(m);
      emit(j, opt, out);
      return 0;
    };
  });

  // plot
  auto* plot = app.add_subcommand("plot", "SVG output")->require_subcommand(1);
  auto* plot_farey = plot->add_subcommand("farey", "Farey tessellation in the disk");
  add_common(plot_farey, opt, false);
  plot_farey->add_option("-o,--output", opt.output, "SVG file")->required();
  plot_farey->callback([&] {
    action = [&] {
      write_file(opt.output, farey_svg(opt.max_height));
      return 0;
    };
  });
  auto* plot_poly = plot->add_subcommand("polygon", "draw a polygon file");
  plot_poly->add_option("file", opt.input, "{vertices}")->required();
  add_common(plot_poly, opt, false);
  plot_poly->add_option("-o,--output", opt.output, "SVG file")->required();
  plot_poly->callback([&] {
    action = [&] {
      write_file(opt.output, polygon_svg(polygon_from_json(load(opt.input))));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) return 2;
  try {
    return action();
  } catch (const Error& e) {
    if (is_input_error(e.kind())) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    Json j;
    j["ok"] = false;
    j["error"] = std::string(to_string(e.kind()));
    j["message"] = e.what();
    out << dump_json(j) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace recon
