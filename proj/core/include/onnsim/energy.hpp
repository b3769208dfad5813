#pragma once

// System energy accounting. Every component's energy per use is amortized
// over the operations it serves: sources and memory over the fan-out j (one
// emitted symbol feeds j receivers, 2 OP each), receiver electronics over the
// integration depth i (one readout per i symbols, 2 OP each).
//
//   E_opt = (P_b + P_inj / xi + P_m) / (2 j R),  P_m = V_pi^2 / R_vcsel
//   rho   = 2 j R / a

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "onnsim/photonics.hpp"

namespace onnsim::energy {

struct SystemParams {
    photonics::VcselParams vcsel;
    double p_inj = 0.0;            // W optical, delivered to each follower
    double clock_rate = 0.0;       // symbols / s
    int fanout_j = 1;
    std::int64_t integration_i = 1;
    double device_area_mm2 = 0.0;
    double e_adc = 0.0;            // J per use
    double e_tia = 0.0;
    double e_int = 0.0;
    double e_dac = 0.0;
    double e_mem = 0.0;
    bool include_nl_in_total = false;
};

// DomainError naming the offending field.
void validate(const SystemParams& sys);

// C V^2 / 2.
double wire_energy(double capacitance_f, double voltage_v);

struct OpticalEnergy {
    double p_bias = 0.0;              // V_b I_b
    double p_inj_electrical = 0.0;    // P_inj / xi
    double p_mod = 0.0;               // V_pi^2 / R_vcsel
    double energy_per_symbol = 0.0;   // J
    double energy_per_op = 0.0;       // J / OP
};

OpticalEnergy optical_energy(const SystemParams& sys);
double optical_energy_per_op(const SystemParams& sys);

enum class Amortization { Fanout, Integration };  // 2j or 2i

struct BudgetRow {
    std::string name;
    double energy_per_use = 0.0;  // J
    Amortization amortization = Amortization::Fanout;
    double divisor = 1.0;
    double energy_per_op = 0.0;   // J / OP
    bool included = true;
};

struct EnergyBudget {
    std::vector<BudgetRow> rows;
    double total_per_op = 0.0;
    double optical_per_op = 0.0;
    double compute_density = 0.0;  // OP / (mm^2 s)

    const BudgetRow& row(const std::string& name) const;
    // TeraOP / J.
    double efficiency() const;
    double optical_efficiency() const;
};

EnergyBudget full_budget(const SystemParams& sys);

double compute_density(const SystemParams& sys);

// Present-day VCSEL array demonstrator and a scaled projection.
SystemParams preset_now();
SystemParams preset_future();
std::optional<SystemParams> find_preset(const std::string& name);

struct HardwareRow {
    std::string system;
    double density = 0.0;     // TeraOP / (mm^2 s)
    double efficiency = 0.0;  // TeraOP / J
    std::string note;
};

// Reported efficiency and density for contemporary accelerators and for this architecture.
const std::vector<HardwareRow>& reference_hardware();

// Reference rows followed by the computed system (full system and optical
// only) under `label`.
std::vector<HardwareRow> comparison_report(const EnergyBudget& budget, const std::string& label);

// component,energy_per_use_j,divisor,divisor_kind,energy_per_op_j,included
void write_budget_csv(std::ostream& os, const EnergyBudget& budget);
// Aligned-column text version of the same ledger plus totals.
void write_budget_text(std::ostream& os, const EnergyBudget& budget);
// system,density_teraop_mm2_s,efficiency_teraop_j,note
void write_comparison_csv(std::ostream& os, const std::vector<HardwareRow>& rows);

}  // namespace onnsim::energy
