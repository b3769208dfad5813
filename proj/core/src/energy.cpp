#include "onnsim/energy.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "onnsim/errors.hpp"

namespace onnsim::energy {

namespace {

void require(bool ok, const std::string& field, const char* what) {
    if (!ok) throw DomainError(field + " " + what);
}

const char* kind_name(Amortization a) { return a == Amortization::Fanout ? "2j" : "2i"; }

}  // namespace

void validate(const SystemParams& sys) {
    photonics::validate(sys.vcsel);
    require(std::isfinite(sys.p_inj) && sys.p_inj >= 0.0, "p_inj", "must be >= 0");
    require(std::isfinite(sys.clock_rate) && sys.clock_rate > 0.0, "clock_rate", "must be > 0");
    require(sys.fanout_j >= 1, "fanout_j", "must be >= 1");
    require(sys.integration_i >= 1, "integration_i", "must be >= 1");
    require(std::isfinite(sys.device_area_mm2) && sys.device_area_mm2 > 0.0, "device_area_mm2",
            "must be > 0");
    const std::pair<double, const char*> energies[] = {
        {sys.e_adc, "e_adc"}, {sys.e_tia, "e_tia"}, {sys.e_int, "e_int"},
        {sys.e_dac, "e_dac"}, {sys.e_mem, "e_mem"}};
    for (const auto& [v, name] : energies) require(std::isfinite(v) && v >= 0.0, name, "must be >= 0");
}

double wire_energy(double capacitance_f, double voltage_v) {
    if (!(capacitance_f >= 0.0)) throw DomainError("capacitance must be >= 0");
    return 0.5 * capacitance_f * voltage_v * voltage_v;
}

OpticalEnergy optical_energy(const SystemParams& sys) {
    validate(sys);
    OpticalEnergy e;
    e.p_bias = sys.vcsel.electrical_power();
    e.p_inj_electrical = sys.p_inj / sys.vcsel.wall_plug;
    e.p_mod = sys.vcsel.v_pi * sys.vcsel.v_pi / sys.vcsel.resistance();
    e.energy_per_symbol = (e.p_bias + e.p_inj_electrical + e.p_mod) / sys.clock_rate;
    e.energy_per_op = e.energy_per_symbol / (2.0 * sys.fanout_j);
    return e;
}

double optical_energy_per_op(const SystemParams& sys) { return optical_energy(sys).energy_per_op; }

double compute_density(const SystemParams& sys) {
    validate(sys);
    return 2.0 * sys.fanout_j * sys.clock_rate / sys.device_area_mm2;
}

const BudgetRow& EnergyBudget::row(const std::string& name) const {
    for (const auto& r : rows) {
        if (r.name == name) return r;
    }
    throw DomainError("no budget row named " + name);
}

double EnergyBudget::efficiency() const { return 1e-12 / total_per_op; }
double EnergyBudget::optical_efficiency() const { return 1e-12 / optical_per_op; }

EnergyBudget full_budget(const SystemParams& sys) {
    const OpticalEnergy opt = optical_energy(sys);
    const double two_j = 2.0 * sys.fanout_j;
    const double two_i = 2.0 * static_cast<double>(sys.integration_i);

    EnergyBudget b;
    auto add = [&](std::string name, double per_use, Amortization a, bool included) {
        const double div = a == Amortization::Fanout ? two_j : two_i;
        b.rows.push_back({std::move(name), per_use, a, div, per_use / div, included});
    };
    add("optical", opt.energy_per_symbol, Amortization::Fanout, true);
    // The homodyne nonlinearity reuses the optical power; listed for
    // reference, counted only on request.
    add("nonlinear", opt.energy_per_symbol, Amortization::Fanout, sys.include_nl_in_total);
    add("adc", sys.e_adc, Amortization::Integration, true);
    add("tia", sys.e_tia, Amortization::Integration, true);
    add("integrator", sys.e_int, Amortization::Integration, true);
    add("dac", sys.e_dac, Amortization::Fanout, true);
    add("memory", sys.e_mem, Amortization::Fanout, true);

    for (const auto& r : b.rows) {
        if (r.included) b.total_per_op += r.energy_per_op;
    }
    b.optical_per_op = opt.energy_per_op;
    b.compute_density = compute_density(sys);
    return b;
}

SystemParams preset_now() {
    SystemParams s;
    // 1.3 V x 300 uA bias, 97.5 uW emitted (wall-plug 0.25), 2 GHz, Q 1e5.
    s.vcsel = photonics::make_vcsel(1.3, 300e-6, 4e-3, 97.5e-6, 2e9, 1e5);
    s.p_inj = 1e-6;
    s.clock_rate = 1e9;
    s.fanout_j = 81;
    s.integration_i = 784;
    s.device_area_mm2 = 0.08 * 0.08;
    s.e_adc = 1e-12;
    s.e_tia = 1e-12;
    s.e_int = 1e-15;
    s.e_dac = 0.5e-12;
    s.e_mem = 100e-15;
    return s;
}

SystemParams preset_future() {
    SystemParams s = preset_now();
    // 40 uW electrical bias at the same wall-plug efficiency.
    s.vcsel = photonics::make_vcsel(1.3, 40e-6 / 1.3, 4e-3, 10e-6, 7e9, 1e5);
    s.clock_rate = 25e9;
    s.fanout_j = 1024;
    s.integration_i = 1'000'000;
    // Current-drive DAC charging 200 fF to V_pi.
    s.e_dac = wire_energy(200e-15, 4e-3);
    return s;
}

std::optional<SystemParams> find_preset(const std::string& name) {
    if (name == "now") return preset_now();
    if (name == "future") return preset_future();
    return std::nullopt;
}

const std::vector<HardwareRow>& reference_hardware() {
    static const std::vector<HardwareRow> rows{
        {"Google TPU v3", 0.28, 0.4, "digital ASIC"},
        {"NVIDIA A100", 0.35, 0.72, "GPU"},
        {"Graphcore IPU2", 0.17, 1.0, "digital ASIC"},
        {"Photonic tensor core", 1.2, 0.4, "integrated photonics"},
        {"Photonic DNN (a)", 3.5, 2.9, "integrated photonics"},
        {"Photonic DNN (b)", 0.03, 0.07, "integrated photonics"},
        {"VCSEL ONN, now", 25.0, 140.0, "full system"},
        {"VCSEL ONN, now", 25.0, 400.0, "optical only"},
        {"VCSEL ONN, future", 8000.0, 20000.0, "full system"},
    };
    return rows;
}

std::vector<HardwareRow> comparison_report(const EnergyBudget& budget, const std::string& label) {
    std::vector<HardwareRow> rows = reference_hardware();
    const double density = budget.compute_density * 1e-12;
    rows.push_back({label, density, budget.efficiency(), "computed, full system"});
    rows.push_back({label, density, budget.optical_efficiency(), "computed, optical only"});
    return rows;
}

void write_budget_csv(std::ostream& os, const EnergyBudget& budget) {
    os << "component,energy_per_use_j,divisor,divisor_kind,energy_per_op_j,included\n";
    os << std::setprecision(10);
    for (const auto& r : budget.rows) {
        os << r.name << ',' << r.energy_per_use << ',' << r.divisor << ',' << kind_name(r.amortization) << ','
           << r.energy_per_op << ',' << (r.included ? 1 : 0) << '\n';
    }
}

void write_budget_text(std::ostream& os, const EnergyBudget& budget) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "component" << std::right << std::setw(16) << "J/use"
        << std::setw(10) << "fan-out" << std::setw(12) << "divisor" << std::setw(16) << "J/OP" << '\n';
    out << std::scientific << std::setprecision(4);
    for (const auto& r : budget.rows) {
        std::ostringstream div;
        div << std::defaultfloat << r.divisor;
        out << std::left << std::setw(12) << (r.included ? r.name : "(" + r.name + ")") << std::right
            << std::setw(16) << r.energy_per_use << std::setw(10) << kind_name(r.amortization) << std::setw(12)
            << div.str() << std::setw(16) << r.energy_per_op << '\n';
    }
    out << std::left << std::setw(38) << "total" << std::right << std::setw(28) << budget.total_per_op << '\n';
    out << std::left << std::setw(38) << "optical only" << std::right << std::setw(28) << budget.optical_per_op
        << '\n';
    out << std::left << std::setw(38) << "density OP/(mm^2 s)" << std::right << std::setw(28)
        << budget.compute_density << '\n';
    os << out.str();
}

void write_comparison_csv(std::ostream& os, const std::vector<HardwareRow>& rows) {
    os << "system,density_teraop_mm2_s,efficiency_teraop_j,note\n";
    os << std::setprecision(10);
    for (const auto& r : rows) {
        os << '"' << r.system << "\"," << r.density << ',' << r.efficiency << ",\"" << r.note << "\"\n";
    }
}

}  // namespace onnsim::energy
