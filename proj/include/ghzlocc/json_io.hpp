// json_io.hpp
// JSON forms of bases, block tables, verdicts, run reports and SDP results.
// Every writer has a matching reader; coefficients are carried as alpha^2.

#pragma once

#include "ghzlocc/bipartition_blocks.hpp"
#include "ghzlocc/bounds.hpp"
#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/locc_sim.hpp"
#include "ghzlocc/ppt_sdp.hpp"
#include "ghzlocc/text_specs.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace ghzlocc {

using json = nlohmann::ordered_json;

// ---- basis ----------------------------------------------------------------

inline json basis_to_json(const Basis& basis) {
    json pairs = json::array();
    for (const auto& p : basis.pairs()) {
        pairs.push_back({{"index", p.index}, {"k", bitstring(p.k, basis.num_qubits())}, {"alpha_sq", p.alpha_sq}});
    }
    return {{"n", basis.num_qubits()},
            {"kind", basis.kind() == BasisKind::all_entangled ? "all_entangled" : "hybrid"},
            {"K", basis.entangled_pairs()},
            {"pairs", std::move(pairs)}};
}

/// Pairs may be listed in any order but must cover every {k, ~k} exactly once.
inline Basis basis_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    if (n < 2 || n > kMaxQubits) throw std::invalid_argument("basis json: n out of range");
    const std::size_t np = std::size_t{1} << (n - 1);
    const auto& pairs = j.at("pairs");
    if (!pairs.is_array() || pairs.size() != np) {
        throw std::invalid_argument("basis json: expected " + std::to_string(np) + " pairs");
    }
    std::vector<std::optional<PairCoefficients>> coeffs(np);
    for (const auto& p : pairs) {
        const std::string ks = p.at("k").get<std::string>();
        if (static_cast<int>(ks.size()) != n) throw std::invalid_argument("basis json: k '" + ks + "' has wrong length");
        const std::uint64_t k = canonical_k(parse_bitstring(ks), n);
        if (coeffs[k]) throw std::invalid_argument("basis json: pair " + ks + " listed twice");
        coeffs[k] = PairCoefficients::from_alpha_sq(p.at("alpha_sq").get<double>());
    }
    std::vector<PairCoefficients> c;
    for (const auto& x : coeffs) c.push_back(*x);
    Basis b = build_basis(n, c);
    if (j.contains("K") && j.at("K").get<int>() != b.entangled_pairs()) {
        throw std::invalid_argument("basis json: K does not match the coefficients");
    }
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        const std::string actual = b.kind() == BasisKind::all_entangled ? "all_entangled" : "hybrid";
        if (kind != actual) throw std::invalid_argument("basis json: kind '" + kind + "' does not match the coefficients");
    }
    return b;
}

inline json labels_to_json(const std::vector<StateLabel>& labels) {
    json out = json::array();
    for (const auto& l : labels) out.push_back(to_string(l));
    return out;
}

inline std::vector<StateLabel> labels_from_json(const json& j, const Basis& basis) {
    std::vector<StateLabel> out;
    for (const auto& s : j) out.push_back(parse_label(s.get<std::string>(), basis));
    return out;
}

// ---- blocks ---------------------------------------------------------------

inline json block_to_json(const Basis& basis, const Block& b) {
    const int n = basis.num_qubits();
    return {{"pair_i", b.pair_i},
            {"pair_j", b.pair_j},
            {"pair_i_k", bitstring(basis.pair(b.pair_i).k, n)},
            {"pair_j_k", bitstring(basis.pair(b.pair_j).k, n)},
            {"kind", to_string(b.kind)}};
}

inline json blocks_table_to_json(const Basis& basis, const std::vector<Bipartition>& cuts) {
    json out = json::array();
    for (const auto& bp : cuts) {
        json blocks = json::array();
        for (const auto& b : blocks_for(basis, bp)) blocks.push_back(block_to_json(basis, b));
        out.push_back({{"cut", bp.str()}, {"m", bp.m()}, {"blocks", std::move(blocks)}});
    }
    return {{"n", basis.num_qubits()}, {"cuts", std::move(out)}};
}

// ---- verdict --------------------------------------------------------------

inline BlockKind block_kind_from_string(const std::string& s) {
    if (s == "two_entangled_pairs") return BlockKind::two_entangled_pairs;
    if (s == "one_pair_two_products") return BlockKind::one_pair_two_products;
    if (s == "four_products") return BlockKind::four_products;
    throw std::invalid_argument("unknown block kind '" + s + "'");
}

inline VerdictStatus verdict_status_from_string(const std::string& s) {
    for (auto v : {VerdictStatus::perfect_ok, VerdictStatus::not_perfect, VerdictStatus::conclusive_only, VerdictStatus::unknown}) {
        if (s == to_string(v)) return v;
    }
    throw std::invalid_argument("unknown verdict status '" + s + "'");
}

inline json verdict_to_json(const Basis& basis, const Verdict& v) {
    json cuts = json::array();
    for (const auto& c : v.cuts) {
        json ws = json::array();
        for (const auto& w : c.witnesses) {
            json wj = block_to_json(basis, w.block);
            wj["pattern"] = to_string(w.pattern);
            wj["labels"] = labels_to_json(w.offending);
            ws.push_back(std::move(wj));
        }
        cuts.push_back({{"cut", c.bipartition.str()}, {"witnesses", std::move(ws)}});
    }
    return {{"n", basis.num_qubits()},
            {"config", v.config},
            {"status", to_string(v.status)},
            {"hayashi_bound", v.hayashi},
            {"structural_bound", v.structural},
            {"avg_entanglement", v.avg_entanglement},
            {"all_cuts_flagged", v.all_cuts_flagged},
            {"protocol", v.protocol},
            {"conclusive_labels", labels_to_json(v.conclusive_labels)},
            {"witness_count", v.witness_count()},
            {"cuts", std::move(cuts)}};
}

inline Verdict verdict_from_json(const json& j, const Basis& basis) {
    Verdict v;
    const int n = j.at("n").get<int>();
    if (n != basis.num_qubits()) throw std::invalid_argument("verdict json: qubit count does not match basis");
    v.config = j.at("config").get<std::string>();
    v.status = verdict_status_from_string(j.at("status").get<std::string>());
    v.hayashi = j.at("hayashi_bound").get<std::uint64_t>();
    v.structural = j.at("structural_bound").get<std::uint64_t>();
    v.avg_entanglement = j.at("avg_entanglement").get<double>();
    v.all_cuts_flagged = j.at("all_cuts_flagged").get<bool>();
    v.protocol = j.at("protocol").get<std::string>();
    v.conclusive_labels = labels_from_json(j.at("conclusive_labels"), basis);
    for (const auto& c : j.at("cuts")) {
        CutReport cr;
        cr.bipartition = parse_cut_spec(c.at("cut").get<std::string>(), n);
        for (const auto& w : c.at("witnesses")) {
            Witness wit;
            wit.block = block_of(basis, cr.bipartition, w.at("pair_i").get<int>());
            if (wit.block.pair_j != w.at("pair_j").get<int>() ||
                wit.block.kind != block_kind_from_string(w.at("kind").get<std::string>())) {
                throw std::invalid_argument("verdict json: witness block inconsistent with basis");
            }
            const std::string pat = w.at("pattern").get<std::string>();
            if (pat == "three_in_block") wit.pattern = WitnessPattern::three_in_block;
            else if (pat == "pair_plus_product") wit.pattern = WitnessPattern::pair_plus_product;
            else throw std::invalid_argument("verdict json: unknown pattern '" + pat + "'");
            wit.offending = labels_from_json(w.at("labels"), basis);
            cr.witnesses.push_back(std::move(wit));
        }
        v.cuts.push_back(std::move(cr));
    }
    return v;
}

// ---- run report -----------------------------------------------------------

inline json run_report_to_json(const RunReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json wg = json::array();
        for (const auto& g : e.wrong_guesses) wg.push_back({{"guess", to_string(g.guess)}, {"probability", g.probability}});
        entries.push_back({{"label", to_string(e.label)},
                           {"success", e.success},
                           {"inconclusive", e.inconclusive},
                           {"error", e.error},
                           {"wrong_guesses", std::move(wg)}});
    }
    return {{"config", r.config}, {"entries", std::move(entries)}};
}

inline RunReport run_report_from_json(const json& j, const Basis& basis) {
    RunReport r;
    r.config = j.at("config").get<std::string>();
    for (const auto& e : j.at("entries")) {
        LabelReport lr;
        lr.label = parse_label(e.at("label").get<std::string>(), basis);
        lr.success = e.at("success").get<double>();
        lr.inconclusive = e.at("inconclusive").get<double>();
        lr.error = e.at("error").get<double>();
        for (const auto& g : e.at("wrong_guesses")) {
            lr.wrong_guesses.push_back({parse_label(g.at("guess").get<std::string>(), basis), g.at("probability").get<double>()});
        }
        r.entries.push_back(std::move(lr));
    }
    return r;
}

// ---- SDP ------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("complex json: expected a number or [re, im]");
}

inline Matrix matrix_from_json(const json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != rows) throw std::invalid_argument("matrix json: not square");
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

inline const char* sdp_verdict(const SdpSolution& s) {
    if (!s.converged) return "not_converged";
    return s.certifies_not_perfect() ? "not_perfect_certified" : "relaxation_inconclusive";
}

inline json sdp_solution_to_json(const SdpSolution& s, bool with_measurement = true) {
    json out = {{"primal", s.primal_value},
                {"dual", s.dual_value},
                {"gap", s.gap()},
                {"converged", s.converged},
                {"reduced_accuracy", s.reduced_accuracy},
                {"iterations", s.iterations},
                {"primal_residual", s.primal_residual},
                {"dual_residual", s.dual_residual},
                {"verdict", sdp_verdict(s)}};
    if (with_measurement) {
        json ms = json::array();
        for (const auto& m : s.measurement) ms.push_back(matrix_to_json(m));
        out["measurement"] = std::move(ms);
    }
    return out;
}

inline SdpSolution sdp_solution_from_json(const json& j) {
    SdpSolution s;
    s.primal_value = j.at("primal").get<double>();
    s.dual_value = j.at("dual").get<double>();
    s.converged = j.at("converged").get<bool>();
    s.reduced_accuracy = j.value("reduced_accuracy", false);
    s.iterations = j.at("iterations").get<int>();
    s.primal_residual = j.at("primal_residual").get<double>();
    s.dual_residual = j.at("dual_residual").get<double>();
    if (j.contains("measurement")) {
        for (const auto& m : j.at("measurement")) s.measurement.push_back(matrix_from_json(m));
    }
    return s;
}

/// Either explicit states:
///   {"n": 2, "cut": "0|1", "states": [{"amplitudes": [[re, im], ...]} | {"density": [[...]]}], "priors": [...]}
/// or basis members:
///   {"basis": {...}, "labels": ["pair:1:+", ...] | "set": "<set spec>", "cut": "0|12", "priors": [...]}
/// Priors default to uniform.
inline DiscriminationInstance instance_from_json(const json& j) {
    std::vector<double> priors;
    if (j.contains("priors")) priors = j.at("priors").get<std::vector<double>>();
    if (j.contains("basis")) {
        auto basis = std::make_shared<const Basis>(basis_from_json(j.at("basis")));
        std::vector<StateLabel> labels;
        if (j.contains("labels")) labels = labels_from_json(j.at("labels"), *basis);
        else labels = parse_set_spec(j.at("set").get<std::string>(), basis).labels();
        const Bipartition cut = parse_cut_spec(j.at("cut").get<std::string>(), basis->num_qubits());
        return instance_for_labels(*basis, labels, cut, std::move(priors));
    }
    const int n = j.at("n").get<int>();
    DiscriminationInstance inst;
    inst.cut = parse_cut_spec(j.at("cut").get<std::string>(), n);
    for (const auto& s : j.at("states")) {
        if (s.contains("amplitudes")) {
            Vector v(static_cast<Eigen::Index>(s.at("amplitudes").size()));
            for (std::size_t i = 0; i < s.at("amplitudes").size(); ++i) {
                v[static_cast<Eigen::Index>(i)] = complex_from_json(s.at("amplitudes")[i]);
            }
            StateVector sv(n, v);
            if (!sv.is_normalized()) throw std::invalid_argument("instance json: state is not normalized");
            inst.states.push_back(DensityOperator::pure(sv));
        } else {
            inst.states.push_back(DensityOperator(n, matrix_from_json(s.at("density"))));
        }
    }
    inst.priors = priors.empty() ? std::vector<double>(inst.states.size(), 1.0 / static_cast<double>(inst.states.size()))
                                 : std::move(priors);
    inst.check();
    return inst;
}

}  // namespace ghzlocc
