#include "parab/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "parab/csv.hpp"

namespace parab {
namespace {

namespace fs = std::filesystem;

struct BuiltCase {
  BarrierSpec barrier;
  ProblemParams params;
  double sigma;
};

ProblemParams params_for(const ScenarioConfig& cfg, double sigma, ChiSpec chi) {
  return ProblemParams::make(cfg.make_operator(), sigma, cfg.T, std::move(chi), cfg.make_z());
}

bool wanted(const ScenarioConfig& cfg, const std::string& id) {
  return cfg.cases.empty() || std::find(cfg.cases.begin(), cfg.cases.end(), id) != cfg.cases.end();
}

}  // namespace

std::string resolve_output_dir(const ScenarioConfig& cfg) {
  if (const char* env = std::getenv("PARAB_OUT_DIR")) return env;
  return cfg.output_dir;
}

CertifySummary run_certify(const ScenarioConfig& cfg, std::ostream& log) {
  CertifySummary summary;
  summary.output_dir = resolve_output_dir(cfg);
  fs::create_directories(summary.output_dir);

  CertifyOptions opt;
  opt.sampler = (cfg.sampler == "grid") ? Sampler::Grid : Sampler::LowDiscrepancy;
  opt.n_samples = cfg.n_samples;
  opt.slack = cfg.slack;
  opt.r_probe = cfg.r_probe;
  opt.keep_samples = true;

  std::vector<CertifyEntry> entries;
  std::vector<ResidualSample> all_samples;
  std::vector<std::string> sample_case;
  std::vector<std::tuple<std::string, double, double, double>> alimit_rows;

  auto process = [&](const std::string& id, const ProblemParams& params, double sigma,
                     auto builder) {
    if (!wanted(cfg, id)) return;
    CertifyEntry entry;
    entry.case_id = id;
    entry.sigma = sigma;
    try {
      BarrierSpec barrier = builder();
      entry.profile = barrier.profile.describe();
      entry.a = barrier.a;
      entry.b = barrier.b;
      entry.c = barrier.c;
      entry.p = barrier.p_reg;
      entry.R = barrier.R_case;
      entry.r_star = barrier.r_star;
      entry.a_limit = barrier.a_limit;
      const CertificateReport rep = certify(params, barrier, opt);
      entry.worst_residual = rep.worst_residual;
      entry.passed = rep.passed;
      for (const auto& s : rep.samples) {
        all_samples.push_back(s);
        sample_case.push_back(id);
      }
    } catch (const std::exception& ex) {
      entry.error = ex.what();
      entry.passed = false;
    }
    entries.push_back(std::move(entry));
  };

  const bool want_super = std::find(cfg.directions.begin(), cfg.directions.end(), "super") !=
                          cfg.directions.end();
  const bool want_sub =
      std::find(cfg.directions.begin(), cfg.directions.end(), "sub") != cfg.directions.end();

  for (double sigma : cfg.sigma_sweep) {
    const ProblemParams params = params_for(cfg, sigma, cfg.make_chi());
    if (want_super) {
      const std::string id = dispatch_case_id(params, Direction::Super);
      process(id, params, sigma, [&] {
        const double b = cfg.b_fraction * std::min(max_admissible_b(params, Direction::Super), 1.0);
        return build_supersolution(params, b);
      });
      if (wanted(cfg, id)) {
        try {
          const auto ex = extrapolate_a_limit(params, Direction::Super);
          alimit_rows.emplace_back(id, sigma, ex.closed_form, ex.extrapolated);
        } catch (const std::exception& e) {
          log << "a-limit extrapolation skipped for " << id << ": " << e.what() << "\n";
        }
      }
    }
    if (want_sub) {
      const std::string id = dispatch_case_id(params, Direction::Sub);
      process(id, params, sigma, [&] {
        const double b = cfg.b_fraction * std::min(max_admissible_b(params, Direction::Sub), 1.0);
        return build_subsolution(params, b);
      });
      if (wanted(cfg, id)) {
        try {
          const auto ex = extrapolate_a_limit(params, Direction::Sub);
          alimit_rows.emplace_back(id, sigma, ex.closed_form, ex.extrapolated);
        } catch (const std::exception& e) {
          log << "a-limit extrapolation skipped for " << id << ": " << e.what() << "\n";
        }
      }
    }
  }

  // VI specials: one-signed chi variants of the base problem.
  for (const std::string& id : cfg.special.cases) {
    const double sigma0 = cfg.sigma_sweep.front();
    if (id == "VI.i-1" || id == "VI.i-2") {
      ProblemParams params = params_for(cfg, 0.0, ChiSpec::zero(cfg.T));
      process(id, params, 0.0, [&] {
        return build_special(params, id == "VI.i-1" ? SpecialCase::I1 : SpecialCase::I2,
                             cfg.special.R, cfg.special.mu, cfg.special.gaussian_E);
      });
    } else if (id == "VI.ii-1" || id == "VI.ii-2") {
      ProblemParams params =
          params_for(cfg, sigma0, ChiSpec::constant(-std::abs(cfg.special.chi_hat), cfg.T));
      process(id, params, sigma0, [&] {
        return build_special(params, id == "VI.ii-1" ? SpecialCase::II1 : SpecialCase::II2,
                             cfg.special.R, cfg.special.mu);
      });
    } else if (id == "VI.iii") {
      ProblemParams params =
          params_for(cfg, sigma0, ChiSpec::constant(std::abs(cfg.special.chi_hat), cfg.T));
      process(id, params, sigma0,
              [&] { return build_special(params, SpecialCase::III, cfg.special.R, cfg.special.mu); });
    }
  }

  // Deterministic ordering before any file is written.
  std::stable_sort(entries.begin(), entries.end(), [](const CertifyEntry& a, const CertifyEntry& b) {
    if (a.case_id != b.case_id) return a.case_id < b.case_id;
    return a.sigma < b.sigma;
  });

  {
    CsvWriter w(summary.output_dir + "/barriers.csv",
                {"case_id", "a", "b", "c", "p", "R", "r_star", "a_limit"});
    auto opt_cell = [](double v) { return v != 0.0 ? CsvWriter::cell(v) : std::string(); };
    for (const auto& e : entries) {
      if (!e.error.empty()) continue;
      w.row({e.case_id, CsvWriter::cell(e.a), CsvWriter::cell(e.b), opt_cell(e.c), opt_cell(e.p),
             opt_cell(e.R), opt_cell(e.r_star), CsvWriter::cell(e.a_limit)});
    }
  }
  {
    CsvWriter w(summary.output_dir + "/certificates.csv", {"case_id", "r", "t", "residual"});
    for (std::size_t i = 0; i < all_samples.size(); ++i)
      w.row({sample_case[i], CsvWriter::cell(all_samples[i].r), CsvWriter::cell(all_samples[i].t),
             CsvWriter::cell(all_samples[i].residual)});
  }
  {
    CsvWriter w(summary.output_dir + "/alimits.csv",
                {"case_id", "sigma", "a_limit_closed", "a_limit_extrapolated", "abs_gap"});
    std::stable_sort(alimit_rows.begin(), alimit_rows.end());
    for (const auto& [id, sigma, closed, extrap] : alimit_rows)
      w.row({id, CsvWriter::cell(sigma), CsvWriter::cell(closed), CsvWriter::cell(extrap),
             CsvWriter::cell(std::abs(closed - extrap))});
  }
  {
    std::ofstream md(summary.output_dir + "/summary.md");
    md << "# Certification summary\n\n";
    md << "| case_id | sigma | profile | a | b | a_limit | worst_residual | pass |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& e : entries) {
      md << "| " << e.case_id << " | " << format_double(e.sigma) << " | "
         << (e.error.empty() ? e.profile : ("build error: " + e.error)) << " | "
         << format_double(e.a) << " | " << format_double(e.b) << " | " << format_double(e.a_limit)
         << " | " << format_double(e.worst_residual) << " | " << (e.passed ? "yes" : "NO")
         << " |\n";
    }
  }

  summary.entries = std::move(entries);
  summary.all_passed = !summary.entries.empty() &&
                       std::all_of(summary.entries.begin(), summary.entries.end(),
                                   [](const CertifyEntry& e) { return e.passed; });
  for (const auto& e : summary.entries) {
    log << (e.passed ? "[pass] " : "[FAIL] ") << e.case_id << " (sigma=" << format_double(e.sigma)
        << ")";
    if (!e.error.empty()) log << " error: " << e.error;
    log << "\n";
  }
  return summary;
}

int run_report(const ScenarioConfig& cfg, std::ostream& log) {
  const std::string dir = resolve_output_dir(cfg);
  std::vector<std::string> missing;
  std::ostringstream body;

  auto append_csv = [&](const std::string& name, const std::string& title) {
    const fs::path path = fs::path(dir) / name;
    if (!fs::exists(path)) {
      missing.push_back(name);
      return;
    }
    std::ifstream in(path);
    body << "## " << title << "\n\n```\n" << in.rdbuf() << "```\n\n";
  };

  fs::create_directories(dir);
  append_csv("barriers.csv", "Barrier constants");
  append_csv("alimits.csv", "a(b) extrapolation vs closed form");
  append_csv("sim_summary.csv", "Growth experiment trends");

  std::ofstream md(fs::path(dir) / "report.md");
  md << "# Toolkit report\n\n";
  if (!missing.empty()) {
    md << "Missing artifacts (sections skipped):\n";
    for (const auto& m : missing) md << "- " << m << "\n";
    md << "\n";
  }
  md << body.str();
  log << "report written to " << (fs::path(dir) / "report.md").string();
  if (!missing.empty()) {
    log << " (missing: ";
    for (std::size_t i = 0; i < missing.size(); ++i) log << (i ? ", " : "") << missing[i];
    log << ")";
  }
  log << "\n";
  return 0;
}

}  // namespace parab
