#pragma once

#include <stdexcept>
#include <string>

namespace gfnoma {

enum class SchemeKind {
    HybridLayered,   // level fixed by the device's ring
    RandomNoma,      // level drawn uniformly per transmission
    GrantFreeOma,    // single level, plain slotted ALOHA
    CoordinatedOma,  // BS schedules min(M, contenders) without collisions
};

inline const char* scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::HybridLayered: return "hybrid-layered";
        case SchemeKind::RandomNoma: return "random-noma";
        case SchemeKind::GrantFreeOma: return "grant-free-oma";
        case SchemeKind::CoordinatedOma: return "coordinated-oma";
    }
    throw std::invalid_argument("scheme_name: unknown scheme kind");
}

inline SchemeKind parse_scheme_kind(const std::string& name) {
    if (name == "hybrid-layered") return SchemeKind::HybridLayered;
    if (name == "random-noma") return SchemeKind::RandomNoma;
    if (name == "grant-free-oma") return SchemeKind::GrantFreeOma;
    if (name == "coordinated-oma") return SchemeKind::CoordinatedOma;
    throw std::invalid_argument("unknown scheme kind: " + name);
}

// Which access scheme a simulation run uses. p_E = 0 is accepted as the
// explicit "nobody transmits" degenerate; it is rejected by the analytic
// access operations but the simulator handles it (everything blocks).
struct SchemeConfig {
    SchemeKind kind = SchemeKind::HybridLayered;
    bool eab_enabled = false;
    double eab_parameter = 1.0;
    int num_levels = 1;

    double effective_pe() const { return eab_enabled ? eab_parameter : 1.0; }

    void validate() const {
        if (eab_enabled && (!(eab_parameter >= 0.0) || !(eab_parameter <= 1.0))) {
            throw std::invalid_argument("SchemeConfig: access parameter must be in [0, 1]");
        }
        if (num_levels < 1) {
            throw std::invalid_argument("SchemeConfig: level count must be >= 1");
        }
        if (kind == SchemeKind::GrantFreeOma && num_levels != 1) {
            throw std::invalid_argument("SchemeConfig: grant-free OMA is single level");
        }
    }
};

} // namespace gfnoma
