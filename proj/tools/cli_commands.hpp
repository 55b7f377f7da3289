// cli_commands.hpp
// Subcommand bodies for the ghzlocc tool. Each takes parsed options and
// returns the results payload; printing and exit codes live in main.

#pragma once

#include "ghzlocc/ghzlocc.hpp"

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace ghzlocc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Accepts either a bare payload or a report envelope.
inline json unwrap(const json& j) { return j.contains("results") && j.contains("command") ? j.at("results") : j; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return unwrap(json::parse(in));
    } catch (const json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline std::shared_ptr<const Basis> load_basis(const std::string& path) {
    return std::make_shared<const Basis>(basis_from_json(read_json_file(path)));
}

/// alpha^2 uniform on the open interval (1/2, 1). The mapping from raw
/// 64-bit draws is spelled out so files are identical across standard libraries.
inline std::vector<PairCoefficients> random_coefficients(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PairCoefficients> out;
    const std::size_t np = std::size_t{1} << (n - 1);
    while (out.size() < np) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u == 0.0) continue;
        out.push_back({0.5 + 0.5 * u});
    }
    return out;
}

struct BasisOptions {
    int n = 0;
    std::string preset = "maximal";
    std::optional<std::uint64_t> seed;
    std::string alpha_sq;  // comma list, overrides preset when given
};

inline Basis make_basis(const BasisOptions& o) {
    if (o.n < 2 || o.n > kMaxQubits) throw UsageError("--n must lie in [2, " + std::to_string(kMaxQubits) + "]");
    if (!o.alpha_sq.empty()) {
        std::vector<PairCoefficients> c;
        for (const auto& tok : detail::split(o.alpha_sq, ',')) {
            try {
                c.push_back(PairCoefficients::from_alpha_sq(std::stod(detail::trim(tok))));
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--alpha-sq: ") + e.what());
            }
        }
        try {
            return build_basis(o.n, c);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    const std::string& p = o.preset;
    if (p == "maximal") return maximal_basis(o.n);
    if (p == "computational") return computational_basis(o.n);
    if (p.rfind("hybrid:", 0) == 0) {
        int k = 0;
        try {
            k = detail::parse_int(p.substr(7), "--preset");
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (k >= (1 << (o.n - 1))) throw UsageError("--preset hybrid:K needs K < 2^(N-1)");
        return hybrid_basis(o.n, k);
    }
    if (p == "random" || p.rfind("random:", 0) == 0) {
        std::uint64_t seed = 0;
        if (p.size() > 7) {
            try {
                seed = std::stoull(p.substr(7));
            } catch (const std::exception&) {
                throw UsageError("--preset random:SEED needs an integer seed");
            }
        } else if (o.seed) {
            seed = *o.seed;
        } else {
            throw UsageError("--preset random needs a seed (random:SEED or --seed)");
        }
        return build_basis(o.n, random_coefficients(o.n, seed));
    }
    throw UsageError("unknown preset '" + p + "' (maximal, computational, hybrid:K, random:SEED)");
}

inline json cmd_basis(const BasisOptions& o) { return basis_to_json(make_basis(o)); }

inline json cmd_blocks(const std::string& basis_path, const std::string& cut) {
    const auto basis = load_basis(basis_path);
    std::vector<Bipartition> cuts;
    if (cut.empty()) cuts = enumerate_bipartitions(basis->num_qubits());
    else cuts.push_back(parse_cut_spec(cut, basis->num_qubits()));
    return blocks_table_to_json(*basis, cuts);
}

inline SpatialConfiguration config_or_separated(const std::string& spec, int n) {
    return spec.empty() ? SpatialConfiguration::fully_separated(n) : parse_config_spec(spec, n);
}

inline json cmd_analyze(const std::string& basis_path, const std::string& set_spec, const std::string& config) {
    const auto basis = load_basis(basis_path);
    const StateSet set = parse_set_spec(set_spec, basis);
    const Verdict v = analyze_set(set, config_or_separated(config, basis->num_qubits()));
    json out = verdict_to_json(*basis, v);
    out["set"] = set_spec_of(set);
    out["size"] = set.size();
    return out;
}

inline json cmd_simulate(const std::string& basis_path, const std::string& set_spec, const std::string& config,
                         const std::string& protocol) {
    const auto basis = load_basis(basis_path);
    const StateSet set = parse_set_spec(set_spec, basis);
    const SpatialConfiguration cfg = config_or_separated(config, basis->num_qubits());
    ProtocolTree tree;
    if (protocol == "pair-id") tree = build_pair_id_protocol(cfg, set);
    else if (protocol == "block") tree = build_block_protocol(cfg, set);
    else throw UsageError("unknown protocol '" + protocol + "' (pair-id, block)");
    const ConclusiveCheck cc = verify_conclusive(tree, set);
    bool perfect = true;
    for (const auto& e : cc.report.entries) {
        if (std::abs(e.success - 1.0) > kPerfectTol) perfect = false;
    }
    json out = run_report_to_json(cc.report);
    out["protocol"] = protocol;
    out["perfect"] = perfect;
    out["conclusive"] = cc.conclusive;
    out["identified"] = labels_to_json(cc.identified);
    return out;
}

struct SdpOptions {
    std::string instance_path;
    std::string basis_path;
    std::string set_spec;
    std::string cut;
    bool global = false;
};

inline json cmd_sdp(const SdpOptions& o) {
    DiscriminationInstance inst;
    if (!o.instance_path.empty()) {
        inst = instance_from_json(read_json_file(o.instance_path));
    } else {
        if (o.basis_path.empty() || o.set_spec.empty() || o.cut.empty()) {
            throw UsageError("sdp needs --instance, or --basis with --set and --cut");
        }
        const auto basis = load_basis(o.basis_path);
        const StateSet set = parse_set_spec(o.set_spec, basis);
        if (set.empty()) throw UsageError("sdp: empty set");
        inst = instance_for_labels(*basis, set.labels(), parse_cut_spec(o.cut, basis->num_qubits()));
    }
    const SdpSolution s = o.global ? global_success_bound(inst) : ppt_success_bound(inst);
    json out = sdp_solution_to_json(s);
    out["mode"] = o.global ? "global" : "ppt";
    out["dimension"] = inst.states.front().dim();
    out["cut"] = inst.cut.str();
    return out;
}

inline json cmd_construct(const std::string& basis_path, const std::string& sign) {
    const auto basis = load_basis(basis_path);
    Member m = Member::plus;
    if (sign == "-") m = Member::minus;
    else if (sign != "+") throw UsageError("--sign must be + or -");
    const StateSet set = construct_max_perfect_set(basis, std::vector<Member>(basis->num_pairs(), m));
    const auto check = verify_perfect(build_pair_id_protocol(SpatialConfiguration::fully_separated(basis->num_qubits()), set), set);
    return {{"set", set_spec_of(set)},
            {"labels", labels_to_json(set.labels())},
            {"size", set.size()},
            {"structural_bound", structural_bound(*basis)},
            {"verified_fully_separated", check.perfect}};
}

inline json envelope(const std::string& command, json inputs, json results) {
    return {{"tool", "ghzlocc"}, {"version", kToolVersion}, {"command", command}, {"inputs", std::move(inputs)},
            {"results", std::move(results)}};
}

}  // namespace ghzlocc::cli
