// ghzlocc command-line tool.

#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using ghzlocc::json;
namespace cli = ghzlocc::cli;

int main(int argc, char** argv) {
    CLI::App app{"GHZ basis construction, block analysis and LOCC discrimination checks"};
    app.set_version_flag("--version", cli::kToolVersion);
    app.require_subcommand(1);

    std::string out_path;
    bool envelope = false;
    bool timing = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write JSON here instead of stdout");
        sub->add_flag("--json", envelope, "Wrap results in a report envelope (tool, version, command, inputs)");
        sub->add_flag("--timing", timing, "Add wall-clock timing to the envelope");
    };

    cli::BasisOptions bo;
    std::uint64_t seed = 0;
    auto* basis = app.add_subcommand("basis", "Build a basis");
    basis->add_option("-n,--n", bo.n, "Number of qubits")->required();
    basis->add_option("--preset", bo.preset, "maximal | computational | hybrid:K | random:SEED")->capture_default_str();
    auto* seed_opt = basis->add_option("--seed", seed, "Seed for --preset random");
    basis->add_option("--alpha-sq", bo.alpha_sq, "Comma list of alpha^2 per pair, overrides --preset");
    add_common(basis);

    std::string basis_path, set_spec = "all", config, cut, protocol = "pair-id", instance_path, sign = "+";
    bool global = false;

    auto* blocks = app.add_subcommand("blocks", "Block decomposition per bipartition");
    blocks->add_option("--basis", basis_path, "Basis JSON file")->required();
    blocks->add_option("--cut", cut, "Single cut, e.g. 0|12 (default: every canonical cut)");
    add_common(blocks);

    auto* analyze = app.add_subcommand("analyze", "Bounds and witnesses for a set");
    analyze->add_option("--basis", basis_path, "Basis JSON file")->required();
    analyze->add_option("--set", set_spec, "Set spec")->capture_default_str();
    analyze->add_option("--config", config, "Party groups, e.g. 0|12 (default: every qubit separate)");
    add_common(analyze);

    auto* simulate = app.add_subcommand("simulate", "Run a protocol on every member of a set");
    simulate->add_option("--basis", basis_path, "Basis JSON file")->required();
    simulate->add_option("--set", set_spec, "Set spec")->capture_default_str();
    simulate->add_option("--config", config, "Party groups (default: every qubit separate)");
    simulate->add_option("--protocol", protocol, "pair-id | block")->capture_default_str();
    add_common(simulate);

    auto* sdp = app.add_subcommand("sdp", "PPT (or global) optimal success probability");
    sdp->add_option("--instance", instance_path, "Instance JSON file");
    sdp->add_option("--basis", basis_path, "Basis JSON file (with --set and --cut)");
    auto* sdp_set = sdp->add_option("--set", set_spec, "Set spec");
    sdp->add_option("--cut", cut, "Cut, e.g. 0|12");
    sdp->add_flag("--global", global, "Drop the PPT constraints");
    add_common(sdp);

    auto* construct = app.add_subcommand("construct", "Largest perfectly distinguishable set");
    construct->add_option("--basis", basis_path, "Basis JSON file")->required();
    construct->add_option("--sign", sign, "Member taken from each entangled pair: + or -")->capture_default_str();
    add_common(construct);

    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    json inputs;
    json results;
    std::string command;
    try {
        if (*basis) {
            command = "basis";
            if (*seed_opt) bo.seed = seed;
            inputs = {{"n", bo.n}, {"preset", bo.preset}};
            if (bo.seed) inputs["seed"] = *bo.seed;
            if (!bo.alpha_sq.empty()) inputs["alpha_sq"] = bo.alpha_sq;
            results = cli::cmd_basis(bo);
        } else if (*blocks) {
            command = "blocks";
            inputs = {{"basis", basis_path}, {"cut", cut}};
            results = cli::cmd_blocks(basis_path, cut);
        } else if (*analyze) {
            command = "analyze";
            inputs = {{"basis", basis_path}, {"set", set_spec}, {"config", config}};
            results = cli::cmd_analyze(basis_path, set_spec, config);
        } else if (*simulate) {
            command = "simulate";
            inputs = {{"basis", basis_path}, {"set", set_spec}, {"config", config}, {"protocol", protocol}};
            results = cli::cmd_simulate(basis_path, set_spec, config, protocol);
        } else if (*sdp) {
            command = "sdp";
            cli::SdpOptions so{instance_path, basis_path, *sdp_set ? set_spec : std::string{}, cut, global};
            inputs = {{"instance", instance_path}, {"basis", basis_path}, {"set", so.set_spec}, {"cut", cut},
                      {"global", global}};
            results = cli::cmd_sdp(so);
        } else if (*construct) {
            command = "construct";
            inputs = {{"basis", basis_path}, {"sign", sign}};
            results = cli::cmd_construct(basis_path, sign);
        }
    } catch (const ghzlocc::SdpNotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    json doc = results;
    if (envelope || timing) {
        doc = cli::envelope(command, inputs, results);
        if (timing) {
            const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
            doc["timing_ms"] = ms.count();
        }
    }
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return 2;
        }
        out << text;
    }
    return 0;
}
