// Four three-qubit GHZ states, (|000> +- |111>)/sqrt2 and (|011> +- |100>)/sqrt2,
// under each way of splitting the qubits between parties.

#include "ghzlocc/ghzlocc.hpp"

#include <iostream>

using namespace ghzlocc;

int main() {
    auto basis = std::make_shared<const Basis>(maximal_basis(3));
    const StateSet set = parse_set_spec("pair:1,pair:4", basis);
    std::cout << "states: " << set_spec_of(set) << "\n\n";

    for (const char* spec : {"0|1|2", "0|12", "1|02", "2|01"}) {
        const auto config = parse_config_spec(spec, 3);
        const Verdict v = analyze_set(set, config);
        std::cout << config.str() << "  " << to_string(v.status) << "  witnesses " << v.witness_count();
        if (v.status == VerdictStatus::perfect_ok) std::cout << "  (" << v.protocol << " protocol)";
        std::cout << "\n";
    }

    const auto cut = SpatialConfiguration::from_bipartition(Bipartition::from_qubits(3, {1}));
    const RunReport r = run(build_block_protocol(cut, set), set);
    std::cout << "\nblock protocol across " << cut.str() << ":\n";
    for (const auto& e : r.entries) std::cout << "  " << to_string(e.label) << "  success " << e.success << "\n";
    return 0;
}
