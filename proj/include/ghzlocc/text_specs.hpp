// text_specs.hpp
// Compact text forms used by the CLI and tests.
//
// Set spec: comma-separated terms applied left to right, '!' removes.
//   all            every member of the basis
//   max, all-plus  '+' member of each entangled pair and every product member
//   all-minus      same with '-'
//   pair:R:S       S in {+, -, *}; R is an index, a range "2-5", or "*"
//   pair:R         both members
//   prod:R:M       M in {k, kbar, *}
// Single indices must address the right kind of pair; ranges and "*" skip
// pairs of the other kind.
//
// Configuration spec: party groups separated by '|'. A group is a run of
// digits ("0|12") or a comma list ("0,10|1,2,...") for wider registers.

#pragma once

#include "ghzlocc/bipartition_blocks.hpp"
#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/locc_sim.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ghzlocc {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

inline int parse_int(const std::string& s, const std::string& context) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument(context + ": '" + s + "' is not a non-negative integer");
    }
    return std::stoi(s);
}

// Pair indices addressed by R, and whether R named a single index.
inline std::pair<std::vector<int>, bool> parse_range(const std::string& r, const Basis& basis, const std::string& term) {
    const int np = static_cast<int>(basis.num_pairs());
    std::vector<int> out;
    if (r == "*") {
        for (int i = 1; i <= np; ++i) out.push_back(i);
        return {out, false};
    }
    const auto dash = r.find('-');
    if (dash == std::string::npos) {
        const int i = parse_int(r, term);
        if (i < 1 || i > np) throw std::invalid_argument("set spec '" + term + "': pair index out of range");
        return {{i}, true};
    }
    const int lo = parse_int(r.substr(0, dash), term);
    const int hi = parse_int(r.substr(dash + 1), term);
    if (lo < 1 || hi > np || lo > hi) throw std::invalid_argument("set spec '" + term + "': bad range");
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return {out, false};
}

}  // namespace detail

/// Labels addressed by one term (without the '!' prefix).
inline std::vector<StateLabel> parse_set_term(const std::string& raw, const Basis& basis) {
    const std::string term = detail::trim(raw);
    std::vector<StateLabel> out;
    auto one_sign = [&](Member s) {
        for (const auto& p : basis.pairs()) {
            if (p.degenerate()) {
                out.push_back({p.index, Member::k});
                out.push_back({p.index, Member::kbar});
            } else {
                out.push_back({p.index, s});
            }
        }
    };
    if (term == "all") return basis.all_labels();
    if (term == "max" || term == "all-plus") {
        one_sign(Member::plus);
        return out;
    }
    if (term == "all-minus") {
        one_sign(Member::minus);
        return out;
    }
    const auto parts = detail::split(term, ':');
    if (parts.size() < 2 || parts.size() > 3 || (parts[0] != "pair" && parts[0] != "prod")) {
        throw std::invalid_argument("set spec: cannot parse term '" + term + "'");
    }
    const bool want_product = parts[0] == "prod";
    const auto [indices, single] = detail::parse_range(parts[1], basis, term);
    const std::string sel = parts.size() == 3 ? parts[2] : "*";
    std::vector<Member> members;
    if (want_product) {
        if (sel == "k") members = {Member::k};
        else if (sel == "kbar") members = {Member::kbar};
        else if (sel == "*") members = {Member::k, Member::kbar};
        else throw std::invalid_argument("set spec '" + term + "': product member must be k, kbar or *");
    } else {
        if (sel == "+") members = {Member::plus};
        else if (sel == "-") members = {Member::minus};
        else if (sel == "*") members = {Member::plus, Member::minus};
        else throw std::invalid_argument("set spec '" + term + "': sign must be +, - or *");
    }
    for (int i : indices) {
        if (basis.pair(i).degenerate() != want_product) {
            if (single) {
                throw std::invalid_argument("set spec '" + term + "': pair " + std::to_string(i) +
                                            (want_product ? " is entangled" : " is a product pair"));
            }
            continue;
        }
        for (Member m : members) out.push_back({i, m});
    }
    return out;
}

inline StateLabel parse_label(const std::string& text, const Basis& basis) {
    const auto ls = parse_set_term(text, basis);
    if (ls.size() != 1) throw std::invalid_argument("label '" + text + "' does not name exactly one state");
    return ls.front();
}

inline StateSet parse_set_spec(const std::string& spec, std::shared_ptr<const Basis> basis) {
    std::set<StateLabel> chosen;
    for (const std::string& raw : detail::split(spec, ',')) {
        std::string term = detail::trim(raw);
        if (term.empty()) throw std::invalid_argument("set spec: empty term in '" + spec + "'");
        const bool remove = term.front() == '!';
        if (remove) term.erase(0, 1);
        for (const auto& l : parse_set_term(term, *basis)) {
            if (remove) chosen.erase(l);
            else chosen.insert(l);
        }
    }
    return StateSet(std::move(basis), std::vector<StateLabel>(chosen.begin(), chosen.end()));
}

/// Canonical text form of a set (one term per label).
inline std::string set_spec_of(const StateSet& set) {
    std::string out;
    for (const auto& l : set.labels()) {
        if (!out.empty()) out += ',';
        out += to_string(l);
    }
    return out;
}

inline SpatialConfiguration parse_config_spec(const std::string& spec, int num_qubits) {
    std::vector<QubitSubset> parties;
    for (const std::string& raw : detail::split(spec, '|')) {
        const std::string group = detail::trim(raw);
        if (group.empty()) throw std::invalid_argument("config spec '" + spec + "': empty party");
        std::vector<int> qubits;
        if (group.find(',') != std::string::npos) {
            for (const auto& q : detail::split(group, ',')) qubits.push_back(detail::parse_int(detail::trim(q), "config spec"));
        } else {
            for (char c : group) qubits.push_back(detail::parse_int(std::string(1, c), "config spec"));
        }
        std::vector<int> sorted = qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("config spec '" + spec + "': repeated qubit");
        }
        parties.push_back(QubitSubset::of(num_qubits, std::span<const int>(qubits)));
    }
    return SpatialConfiguration(num_qubits, std::move(parties));
}

inline Bipartition parse_cut_spec(const std::string& spec, int num_qubits) {
    const SpatialConfiguration c = parse_config_spec(spec, num_qubits);
    if (c.num_parties() != 2) throw std::invalid_argument("cut spec '" + spec + "': need exactly two parties");
    return Bipartition::from_side(c.parties()[0]);
}

}  // namespace ghzlocc
