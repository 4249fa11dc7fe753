#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soccover/covering.hpp"
#include "soccover/io.hpp"
#include "soccover/lifts.hpp"
#include "soccover/slack.hpp"
#include "soccover/support.hpp"

namespace {

using namespace soccover;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

struct Options {
  int n = 3;
  std::string curve = "moment";
  std::vector<long long> indices;
  std::vector<double> thetas;
  double margin = kDefaultMargin;
  double eps = kDefaultEps;
  int limit = kDefaultCoverLimit;
  bool force_limit = false;
  long long trials = 10000;
  long long exact_trials = 100;
  std::uint64_t seed = 1;
  int base_n0 = 3;
  int steps = 1;
  int count = 10;
  std::string input;
  std::string output;
  std::string format = "json";
};

GeneratorCurve make_curve(const Options& opt) {
  if (opt.curve == "moment") {
    MomentCurve c = opt.indices.empty() ? MomentCurve::basic(opt.n) : MomentCurve{opt.indices};
    if (c.size() != opt.n)
      throw std::invalid_argument("--indices length must equal --n");
    return c;
  }
  if (opt.curve == "trig") {
    if (static_cast<int>(opt.thetas.size()) != opt.n)
      throw std::invalid_argument("--theta needs exactly n angles");
    return TrigCurve{opt.thetas};
  }
  throw std::invalid_argument("--curve must be moment or trig");
}

MatrixDocument build_matrix(const Options& opt) {
  const GeneratorCurve curve = make_curve(opt);
  MatrixDocument doc;
  doc.curve = curve;
  if (const auto* m = std::get_if<MomentCurve>(&curve))
    doc.matrix = build_an(*m);
  else
    doc.matrix = build_an(std::get<TrigCurve>(curve), opt.margin);
  return doc;
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + opt.output);
  out << text;
}

int effective_limit(const Options& opt) {
  if (opt.n <= opt.limit) return opt.limit;
  if (!opt.force_limit)
    throw std::invalid_argument(
        "n exceeds the exact-search limit " + std::to_string(opt.limit) +
        "; pass --force with a larger --limit to override (cost grows like the "
        "Bell numbers)");
  return opt.n;
}

int cmd_gen_an(const Options& opt) {
  const MatrixDocument doc = build_matrix(opt);
  if (opt.format == "csv")
    write_output(opt, matrix_to_csv(doc));
  else
    write_output(opt, dump_document(matrix_to_json(doc)));
  if (!opt.output.empty())
    std::cerr << "wrote order-" << opt.n << " matrix to " << opt.output << "\n";
  return kExitOk;
}

int cmd_support(const Options& opt) {
  SupportPattern pattern(2);
  if (!opt.input.empty()) {
    const MatrixDocument doc = matrix_from_json(load_document(opt.input));
    pattern = doc.exact() ? extract_support(std::get<LabeledMatrix<Rat>>(doc.matrix))
                          : extract_support(std::get<LabeledMatrix<double>>(doc.matrix), opt.eps);
  } else {
    const MatrixDocument doc = build_matrix(opt);
    pattern = doc.exact() ? extract_support(std::get<LabeledMatrix<Rat>>(doc.matrix))
                          : extract_support(std::get<LabeledMatrix<double>>(doc.matrix), opt.eps);
  }
  const ColumnGraph g = canonical_graph(pattern);
  std::cout << "support: n=" << pattern.n() << ", nonzero cells=" << pattern.count()
            << ", zero columns=" << g.zero_cols().size()
            << ", zero rows=" << g.zero_rows().size() << ", components=" << g.components.size()
            << "\n";
  if (!opt.output.empty()) {
    save_document(opt.output, support_doc_to_json(pattern));
    std::cerr << "wrote support document to " << opt.output << "\n";
  }
  return kExitOk;
}

int cmd_bounds(const Options& opt) {
  const int limit = effective_limit(opt);
  const SupportPattern target = SupportPattern::full(opt.n);
  const auto lower = cover_number_exact(target, Realizability::NecessaryOnly, limit);
  const auto constructive = cover_number_exact(target, Realizability::Constructive, limit);
  const auto greedy = cover_number_upper(target);
  const int upper = std::min(constructive.value, greedy.value);

  if (lower.value == upper) {
    std::cout << "covsoc(A_" << opt.n << ") = " << lower.value << "\n";
  } else {
    std::cout << lower.value << " <= covsoc(A_" << opt.n << ") <= " << upper << "\n";
  }
  std::cout << "lower bound: exhaustive search over all maximal consistent supports\n";
  std::cout << "upper bound: " << constructive.value << " via realizable-family search, "
            << greedy.value << " via greedy column merge\n";

  if (!opt.output.empty()) {
    CoverCertificate cert = constructive.cert;
    if (lower.value == constructive.value) {
      cert.kind = CertKind::Exact;
      cert.note += "; value matches the exhaustive optimum over all maximal "
                   "consistent supports, so it is exact";
    }
    save_document(opt.output, certificate_to_json(cert));
    std::cerr << "wrote " << to_string(cert.kind) << " certificate to " << opt.output << "\n";
  }
  return kExitOk;
}

int cmd_certify_recursion(const Options& opt) {
  const CoverCertificate cert = lower_bound_chain(opt.base_n0, opt.steps, opt.limit);
  std::cout << "covsoc(A_" << cert.target.family_n.str() << ") >= " << cert.value << "\n";
  std::cout << "base: covsoc(A_" << cert.base_n0 << ") = " << cert.base_value
            << " (exhaustive), chain of " << cert.chain.size() << " step(s)\n";
  for (const RecursionStep& st : cert.chain)
    std::cout << "  covsoc(A_" << st.n.str() << ") >= covsoc(A_" << st.n0.str()
              << ") + 1 >= " << st.bound << "   [n = 3*n0^2]\n";
  if (!opt.output.empty()) {
    save_document(opt.output, certificate_to_json(cert));
    std::cerr << "wrote recursion certificate to " << opt.output << "\n";
  }
  return kExitOk;
}

int cmd_verify_cert(const Options& opt) {
  const Json doc = load_document(opt.input);
  const std::string format = doc.value("format", "");
  if (format == "soccover-cert") {
    const CoverCertificate cert = certificate_from_json(doc);
    const VerifyReport report = verify_cover(cert, std::max(opt.limit, kDefaultCoverLimit));
    if (report.ok) {
      std::cout << "verified: " << to_string(cert.kind) << " certificate, value " << cert.value
                << "\n";
      return kExitOk;
    }
    std::cout << "refuted: " << report.first_violation << "\n";
    return kExitRefuted;
  }
  if (format == "soccover-lift") {
    const SocLiftDescription lift = lift_from_json(doc);
    // Structural checks plus exact spot agreement on a deterministic sample.
    if (lift.k != 2) {
      std::cout << "refuted: expected a 2-copy lift\n";
      return kExitRefuted;
    }
    const std::vector<std::vector<Rat>> spots = {
        {Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)},  {Rat(1), Rat(1), Rat(1), Rat(1), Rat(2)},
        {Rat(1), Rat(2), Rat(0), Rat(0), Rat(1)},  {Rat(2), Rat(1), Rat(1), Rat(0), Rat(3)},
        {Rat(1), Rat(-1), Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)},
        {Rat(3), Rat(0), Rat(2), Rat(2), Rat(5)},  {Rat(1), Rat(0), Rat(1), Rat(1), Rat(1)}};
    for (const auto& w : spots) {
      const Sym3<Rat> X = Sym3<Rat>::slice(w[0], w[1], w[2], w[3], w[4]);
      const auto z = lift_feasible_point(lift, w);
      if (z.has_value() != is_psd(X)) {
        std::cout << "refuted: lift feasibility disagrees with the psd test at (t,a,b,c,s)=("
                  << rat_to_string(w[0]) << "," << rat_to_string(w[1]) << ","
                  << rat_to_string(w[2]) << "," << rat_to_string(w[3]) << ","
                  << rat_to_string(w[4]) << ")\n";
        return kExitRefuted;
      }
      if (z && lift_project(lift, *z) != w) {
        std::cout << "refuted: projection does not recover the ambient point\n";
        return kExitRefuted;
      }
    }
    std::cout << "verified: lift description, k = " << lift.k << "\n";
    return kExitOk;
  }
  if (format == "soccover-matrix") {
    matrix_from_json(doc);  // throws on any violated format invariant
    std::cout << "verified: matrix document\n";
    return kExitOk;
  }
  if (format == "soccover-support") {
    const SupportPattern p = pattern_from_json(doc);
    std::cout << "verified: support document, " << p.count() << " cells\n";
    return kExitOk;
  }
  std::cout << "refuted: unknown document format '" << format << "'\n";
  return kExitRefuted;
}

int cmd_verify_slice(const Options& opt) {
  const SocLiftDescription lift = build_slice_lift();
  const LiftSampleReport report = sample_verify_lift(lift, opt.trials, opt.seed, opt.eps);

  // Exact spot checks on seeded rational slice points.
  Rng rng(opt.seed);
  long long exact_disagreements = 0;
  for (long long i = 0; i < opt.exact_trials; ++i) {
    Rat t, a, b, c, s;
    if (i % 2 == 0) {
      // Rational psd point from two 2x2 Gram blocks through the witness shape.
      const Rat g11(rng.uniform_int(-3, 3)), g12(rng.uniform_int(-3, 3));
      const Rat g21(rng.uniform_int(-3, 3)), g22(rng.uniform_int(-3, 3));
      const Rat h11(rng.uniform_int(-3, 3)), h12(rng.uniform_int(-3, 3));
      const Rat h21(rng.uniform_int(-3, 3)), h22(rng.uniform_int(-3, 3));
      const Rat p = g11 * g11 + g12 * g12, x = g11 * g21 + g12 * g22,
                u = g21 * g21 + g22 * g22;
      const Rat q = h11 * h11 + h12 * h12, y = h11 * h21 + h12 * h22,
                v = h21 * h21 + h22 * h22;
      t = (p + q) / 2;
      a = (p - q) / 2;
      b = (x + y) / 2;
      c = (x - y) / 2;
      s = (u + v) / 2;
    } else {
      t = Rat(rng.uniform_int(-4, 4));
      a = Rat(rng.uniform_int(-4, 4));
      b = Rat(rng.uniform_int(-4, 4));
      c = Rat(rng.uniform_int(-4, 4));
      s = Rat(rng.uniform_int(-4, 4));
    }
    const bool direct = is_psd(Sym3<Rat>::slice(t, a, b, c, s));
    const bool via_lift = lift_feasible_point(lift, {t, a, b, c, s}).has_value();
    const auto witness = slice_decompose(t, a, b, c, s);
    if (direct != via_lift || direct != witness.has_value()) ++exact_disagreements;
  }

  std::cout << "slice verification: " << report.trials << " floating trials (eps=" << opt.eps
            << "), " << report.psd_accepted << " accepted, " << report.both_rejected
            << " rejected by both, " << report.disagreements << " disagreement(s)\n";
  std::cout << "exact spot checks: " << opt.exact_trials << " rational trials, "
            << exact_disagreements << " disagreement(s)\n";
  if (!report.first_disagreement.empty())
    std::cout << "first disagreement: " << report.first_disagreement << "\n";

  if (!opt.output.empty()) {
    Json j;
    j["format"] = "soccover-slice-report";
    j["version"] = 1;
    j["trials"] = report.trials;
    j["eps"] = opt.eps;
    j["seed"] = opt.seed;
    j["psd_accepted"] = report.psd_accepted;
    j["both_rejected"] = report.both_rejected;
    j["disagreements"] = report.disagreements;
    j["exact_trials"] = opt.exact_trials;
    j["exact_disagreements"] = exact_disagreements;
    save_document(opt.output, j);
  }
  return (report.disagreements == 0 && exact_disagreements == 0) ? kExitOk : kExitRefuted;
}

int cmd_demo_fact1(const Options& opt) {
  Rng rng(opt.seed);
  long long failures = 0;
  for (int i = 0; i < opt.count; ++i) {
    long long m = 0, k = 0;
    do {
      m = rng.uniform_int(2, 40);
      k = rng.uniform_int(1, m - 1);
    } while (std::gcd(m, k) != 1);
    const ConePoint<Rat> a = pythagorean_boundary_point(m, k);
    const ConePoint<Rat> ray = orthogonal_ray(a);
    // Independent route: the adjugate of the 2x2 psd image is the orthogonal
    // rank-one direction; pull it back and rescale.
    const Rat scale(rng.uniform_int(1, 9), rng.uniform_int(1, 9));
    ConePoint<Rat> other = from_psd2(adjugate(to_psd2(a)));
    other.x1 *= scale;
    other.x2 *= scale;
    other.t *= scale;
    const bool ok = inner(a, ray) == 0 && inner(a, other) == 0 &&
                    classify(ray) == Membership::Boundary &&
                    classify(other) == Membership::Boundary && collinear(ray, other);
    if (!ok) ++failures;
    std::cout << "a=(" << rat_to_string(a.x1) << "," << rat_to_string(a.x2) << ","
              << rat_to_string(a.t) << ")  ray=(" << rat_to_string(ray.x1) << ","
              << rat_to_string(ray.x2) << "," << rat_to_string(ray.t) << ")  adjugate-route=("
              << rat_to_string(other.x1) << "," << rat_to_string(other.x2) << ","
              << rat_to_string(other.t) << ")  orthogonal+collinear: " << (ok ? "yes" : "NO")
              << "\n";
  }
  std::cout << (failures == 0 ? "all orthogonal rays collinear, as forced by the cone geometry"
                              : "FAILURES detected")
            << "\n";
  return failures == 0 ? kExitOk : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soccover: slack-matrix supports, cone-cover brackets, and slice lifts"};
  app.require_subcommand(1);
  Options opt;

  auto add_curve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "matrix order")->check(CLI::Range(2, 1000));
    cmd->add_option("--curve", opt.curve, "moment | trig")->default_str("moment");
    cmd->add_option("--indices", opt.indices, "moment curve indices (default 1..n)");
    cmd->add_option("--theta", opt.thetas, "trig curve angles, increasing in [0, 2*pi)");
    cmd->add_option("--margin", opt.margin, "general-position margin for the trig curve");
    cmd->add_option("--eps", opt.eps, "floating tolerance");
  };

  CLI::App* gen = app.add_subcommand("gen-an", "generate a pairing matrix");
  add_curve_flags(gen);
  gen->add_option("-o,--output", opt.output, "output path (default stdout)");
  gen->add_option("--format", opt.format, "json | csv")->default_str("json");

  CLI::App* support = app.add_subcommand("support", "support pattern and zero-structure summary");
  add_curve_flags(support);
  support->add_option("--input", opt.input, "matrix document to analyze instead of generating");
  support->add_option("-o,--output", opt.output, "write the support document here");

  CLI::App* bounds = app.add_subcommand("bounds", "cover-number bracket with certificate");
  bounds->add_option("--n", opt.n, "matrix order")->check(CLI::Range(2, 24));
  bounds->add_option("--limit", opt.limit, "exact-search size limit");
  bounds->add_flag("--force", opt.force_limit, "allow n beyond the default limit");
  bounds->add_option("-o,--output", opt.output, "certificate output path");

  CLI::App* rec = app.add_subcommand("certify-recursion", "emit a lower-bound chain certificate");
  rec->add_option("--base-n0", opt.base_n0, "base order (exhaustively solved)")
      ->check(CLI::Range(2, 24));
  rec->add_option("--steps", opt.steps, "number of chain steps")->check(CLI::Range(1, 16));
  rec->add_option("--limit", opt.limit, "exact-search size limit for the base");
  rec->add_option("-o,--output", opt.output, "certificate output path");

  CLI::App* verify = app.add_subcommand("verify-cert", "re-check a serialized document");
  verify->add_option("--input,input", opt.input, "document path")->required();
  verify->add_option("--limit", opt.limit, "re-verification size limit");

  CLI::App* slice = app.add_subcommand("verify-slice", "sampling report for the slice lift");
  slice->add_option("--trials", opt.trials, "floating samples")->check(CLI::Range(1LL, 100000000LL));
  slice->add_option("--exact-trials", opt.exact_trials, "exact rational samples");
  slice->add_option("--seed", opt.seed, "sampling seed");
  slice->add_option("--eps", opt.eps, "floating tolerance");
  slice->add_option("-o,--output", opt.output, "report output path");

  CLI::App* demo = app.add_subcommand("demo-fact1", "orthogonal-ray collinearity demonstrations");
  demo->add_option("--count", opt.count, "number of boundary points")->check(CLI::Range(1, 100000));
  demo->add_option("--seed", opt.seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen_an(opt);
    if (support->parsed()) return cmd_support(opt);
    if (bounds->parsed()) return cmd_bounds(opt);
    if (rec->parsed()) return cmd_certify_recursion(opt);
    if (verify->parsed()) return cmd_verify_cert(opt);
    if (slice->parsed()) return cmd_verify_slice(opt);
    if (demo->parsed()) return cmd_demo_fact1(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "refuted: " << e.what() << "\n";
    return kExitRefuted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefuted;
  }
  return kExitUsage;
}
