#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "entropykit/cli.hpp"
#include "entropykit/kernels.hpp"

namespace entropykit::cli {

namespace {

std::vector<std::string> expand(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    if (!fs::is_directory(in)) {
      out.push_back(in);
      continue;
    }
    std::vector<std::string> found;
    for (const auto& e : fs::directory_iterator(in))
      if (e.is_regular_file() && (e.path().extension() == ".yaml" || e.path().extension() == ".yml"))
        found.push_back(e.path().string());
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

Report corpus_document(const std::string& path, const RunConfig& config) {
  Report r;
  auto mismatch = [&](const std::string& check, const std::string& want, const std::string& got,
                      const std::string& error) {
    Block b;
    b.add("check", "corpus").add("document", path).add("run", check).add("expected", want).add("observed", got);
    if (!error.empty()) b.add("error", error);
    r.add(std::move(b), want == got ? Outcome::Pass : Outcome::Fail);
  };
  std::optional<Document> doc;
  DocumentConfig dc;
  try {
    doc = Document::load(path);
    dc = doc->config();
  } catch (const Error& e) {
    mismatch("load", "PASS", "ERROR", e.what());
    return r;
  }
  if (dc.checks.empty()) {
    mismatch("(none)", "PASS", "ERROR", "config.checks lists no checks");
    return r;
  }
  for (const auto& [check, want] : dc.checks) {
    try {
      Report inner = run_check(check, *doc, config);
      r.append(inner, false);
      mismatch(check, want, to_string(inner.overall()), "");
    } catch (const Error& e) {
      mismatch(check, want, "ERROR", e.what());
    }
  }
  return r;
}

std::optional<std::uint64_t> parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used, 0);
    if (used == text.size() && text.find('-') == std::string::npos) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

Report run_corpus(const RunConfig& config) {
  const auto files = expand(config.inputs);
  std::vector<Report> parts(files.size());
  const bool parallel = kernels::default_mode() == kernels::Mode::Parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < files.size(); ++i) parts[i] = corpus_document(files[i], config);
  Report r;
  for (const auto& p : parts) r.append(p, true);
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks for contact thermodynamics and order-theoretic entropy.", "entropykit"};
  app.require_subcommand(1);
  RunConfig rc;
  double tol = 0;
  std::uint64_t seed = 0;
  std::string grid, format = "text", out_path;
  int eps = 0;
  auto* tol_opt = app.add_option("--tol", tol, "Numeric tolerance for path and cycle balances (default 1e-8)");
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed (fallback: ENTROPYKIT_SEED)");
  auto* grid_opt = app.add_option("--lambda-grid", grid, "Scaling factors, comma separated (e.g. 1/2,2,3)");
  auto* eps_opt = app.add_option("--eps-steps", eps, "Number of ε = 2^-k steps for the stability axiom")
                      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  auto* out_opt = app.add_option("--out", out_path, "Write the report to this file");

  const std::map<std::string, std::string> help{
      {"contact-check", "θ∧(dθ)^n ≠ 0 for spec.form or the chart's first-law form"},
      {"frobenius", "q∧dq = 0 for spec.form"},
      {"legendre-check", "equations of state define a Legendre submanifold"},
      {"maxwell", "Maxwell relations from Φ*dθ = 0"},
      {"potential", "Legendre transforms (enthalpy, free energies)"},
      {"path", "path integrals and the first-law balance"},
      {"cycle-audit", "∮Q = ∮W and the Kelvin audit on closed paths"},
      {"axioms", "accessibility axioms on a state relation"},
      {"ch", "comparison hypothesis per state space"},
      {"entropy-construct", "entropy from the accessibility relation"},
      {"entropy-verify", "monotonicity, additivity, extensivity of given entropy values"},
      {"calibrate", "affine gluing of entropies across state spaces"},
      {"galois", "F(a) <= b ⇔ a <= G(b) for pairs of monotone maps"},
      {"adjoint", "right (or left) adjoints of monotone maps"},
      {"landauer", "Galois connection between entropy-induced posets"},
      {"corpus", "run the checks each document lists under config.checks"},
  };
  std::vector<std::string> names = check_names();
  names.push_back("corpus");
  for (const auto& n : names) {
    auto* sub = app.add_subcommand(n, help.at(n));
    sub->add_option("inputs", rc.inputs, n == "corpus" ? "Documents or directories" : "Documents")->required();
    sub->fallthrough();
    sub->callback([&rc, n] { rc.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (tol_opt->count()) rc.tol = tol;
  if (seed_opt->count()) {
    rc.seed = seed;
  } else if (const char* env = std::getenv("ENTROPYKIT_SEED"); env && *env) {
    rc.seed = parse_seed(env);
    if (!rc.seed) {
      err << "error: ENTROPYKIT_SEED must be an unsigned integer, got '" << env << "'\n";
      return 2;
    }
  }
  if (grid_opt->count()) {
    std::vector<Rational> values;
    std::size_t start = 0;
    try {
      while (start <= grid.size()) {
        auto end = grid.find(',', start);
        if (end == std::string::npos) end = grid.size();
        values.push_back(parse_rational(grid.substr(start, end - start)));
        start = end + 1;
      }
    } catch (const Error& e) {
      err << "error: --lambda-grid: " << e.what() << '\n';
      return 2;
    }
    for (const auto& v : values)
      if (v <= 0) {
        err << "error: --lambda-grid values must be positive\n";
        return 2;
      }
    rc.lambda_grid = std::move(values);
  }
  if (eps_opt->count()) rc.eps_steps = eps;
  rc.format = format == "structured" ? Format::Structured : Format::Text;
  if (out_opt->count()) rc.out = out_path;

  Report report;
  if (rc.command == "corpus") {
    report = run_corpus(rc);
  } else {
    for (const auto& path : rc.inputs) {
      try {
        report.append(run_check(rc.command, Document::load(path), rc), true);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
      }
    }
  }

  if (rc.out) {
    std::ofstream file(*rc.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *rc.out << '\n';
      return 2;
    }
    report.write(file, rc.format);
  } else {
    report.write(out, rc.format);
  }
  return report.exit_code();
}

}  // namespace entropykit::cli
