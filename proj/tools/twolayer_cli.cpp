#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "twolayer/commands.hpp"
#include "twolayer/config.hpp"
#include "twolayer/errors.hpp"

using namespace twolayer;

namespace {

RunConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  RunConfig config = path.empty() ? RunConfig{} : parse_config(path);
  if (seed) config.seed = *seed;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer 1-D Helmholtz forward and inverse source solver"};
  app.require_subcommand(1);

  std::string config_path, out_path, data_path;
  std::optional<std::uint64_t> seed;
  bool timing = false;

  auto* verify = app.add_subcommand("verify", "run the identity checks");
  verify->add_option("--config", config_path, "configuration file");
  verify->add_option("--seed", seed, "override noise.seed");

  auto* forward = app.add_subcommand("forward", "tabulate u(-1), u(1) over the frequency grid");
  forward->add_option("--config", config_path, "configuration file")->required();
  forward->add_option("--out", out_path, "output CSV")->required();

  auto* recon = app.add_subcommand("reconstruct", "recover the source from boundary data");
  recon->add_option("--config", config_path, "configuration file")->required();
  recon->add_option("--data", data_path, "boundary data CSV")->required();
  recon->add_option("--out", out_path, "output CSV")->required();
  recon->add_option("--seed", seed, "override noise.seed");

  auto* sweep = app.add_subcommand("sweep", "stability sweep over K, eps and smoothness");
  sweep->add_option("--config", config_path, "configuration file")->required();
  sweep->add_option("--out", out_path, "output CSV")->required();
  sweep->add_option("--seed", seed, "override noise.seed");
  sweep->add_flag("--timing", timing, "add a runtime_ms column");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = load(config_path, seed);
    if (verify->parsed()) return cmd_verify(config, std::cout);
    if (forward->parsed()) return cmd_forward(config, out_path, std::cerr);
    if (recon->parsed()) return cmd_reconstruct(config, data_path, out_path, std::cerr);
    return cmd_sweep(config, out_path, std::cerr, timing);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}
