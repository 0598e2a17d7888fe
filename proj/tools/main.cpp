#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "cli.hpp"
#include "rm2/error.hpp"

namespace {

// Flags shared by all verbs; each verb has its own default format.
struct Flags {
  rm2::cli::Options options;
  std::string grid;
  std::string format;
  std::string out;
  bool no_metadata = false;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--lambda", f.options.lambda, "well parameter lambda > 0")->capture_default_str();
  cmd->add_option("--beta", f.options.beta, "step parameter beta >= 0")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "write to PATH instead of stdout");
}

void add_grid_flag(CLI::App* cmd, Flags& f, const char* help) { cmd->add_option("--grid", f.grid, help); }

int emit(const rm2::cli::OutputRecord& record, const Flags& f, rm2::cli::Format fallback) {
  const rm2::cli::Format format = f.format.empty() ? fallback : rm2::cli::parse_format(f.format);
  const std::string text = rm2::cli::render(record, format, !f.no_metadata);
  if (f.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw rm2::Error(rm2::ErrorCode::InvalidArgument, "cannot open output file " + f.out);
  file << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rosen-Morse II scattering, pole and SUSY toolkit"};
  app.require_subcommand(1);
  Flags f;

  auto* potential = app.add_subcommand("potential", "sample V(x) on a grid");
  add_model_flags(potential, f);
  add_grid_flag(potential, f, "x_min:x_max:points (default -10:10:401)");
  add_output_flags(potential, f);

  auto* poles = app.add_subcommand("poles", "classified S-matrix poles");
  add_model_flags(poles, f);
  poles->add_option("--n-cap", f.options.n_cap, "largest index tabulated")->capture_default_str();
  add_output_flags(poles, f);

  auto* wave = app.add_subcommand("wavefunction", "pole eigenfunction, or general solution with --energy");
  add_model_flags(wave, f);
  wave->add_option("--condition", f.options.condition, "pole condition 1 or 2")->check(CLI::IsMember({1, 2}));
  wave->add_option("--n", f.options.n, "pole index")->expected(1);
  wave->add_option("--family", f.options.family, "phi or psi")->check(CLI::IsMember({"phi", "psi"}));
  wave->add_option("--energy", f.options.energy, "real energy for the general solution");
  add_grid_flag(wave, f, "x_min:x_max:points (default -8:8:321)");
  add_output_flags(wave, f);

  auto* smatrix = app.add_subcommand("smatrix", "S-matrix and |T22| along the real energy axis");
  add_model_flags(smatrix, f);
  add_grid_flag(smatrix, f, "E_min:E_max:points (default -30:30:601)");
  add_output_flags(smatrix, f);

  auto* susy = app.add_subcommand("susy", "partner potential, mapped states and oracle spectra");
  add_model_flags(susy, f);
  susy->add_option("--seed-kind", f.options.seed_kind, "ground, bound, redundant or antibound")
      ->check(CLI::IsMember({"ground", "bound", "redundant", "antibound", "anti-bound"}));
  susy->add_option("--condition", f.options.condition, "seed condition 1 or 2")->check(CLI::IsMember({1, 2}));
  susy->add_option("--n", f.options.n, "seed indices, one per transformation");
  add_grid_flag(susy, f, "x_min:x_max:points (default -10:10:401)");
  add_output_flags(susy, f);

  auto* verify = app.add_subcommand("verify", "run a named self-check suite; exit status 0 iff it passes");
  verify->add_option("suite", f.options.suite, "suite name")->required();
  add_model_flags(verify, f);
  verify->add_option("--alpha", f.options.alpha, "equivalence: base lambda")->capture_default_str();
  verify->add_option("--N", f.options.big_n, "equivalence: odd N >= 3")->capture_default_str();
  add_grid_flag(verify, f, "comparison grid x_min:x_max:points");
  verify->add_flag("--no-metadata", f.no_metadata, "omit run timings (comparison mode)");
  add_output_flags(verify, f);

  CLI11_PARSE(app, argc, argv);

  try {
    f.options.tol = rm2::tolerances_from_environment();
    if (!f.grid.empty()) f.options.grid = rm2::parse_grid(f.grid);
    using rm2::cli::Format;
    if (potential->parsed()) return emit(rm2::cli::cmd_potential(f.options), f, Format::Csv);
    if (poles->parsed()) return emit(rm2::cli::cmd_poles(f.options), f, Format::Json);
    if (wave->parsed()) return emit(rm2::cli::cmd_wavefunction(f.options), f, Format::Csv);
    if (smatrix->parsed()) return emit(rm2::cli::cmd_smatrix(f.options), f, Format::Csv);
    if (susy->parsed()) return emit(rm2::cli::cmd_susy(f.options), f, Format::Csv);
    if (verify->parsed()) {
      const rm2::cli::VerifyResult result = rm2::cli::cmd_verify(f.options);
      emit(result.record, f, Format::Json);
      return result.passed ? 0 : 1;
    }
  } catch (const rm2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
