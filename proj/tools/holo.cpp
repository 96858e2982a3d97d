// holo: synthesize holonomic gates, simulate devices and registers, sweep
// SMM fidelities, run the invariant suite.
//
// Exit codes: 0 success, 1 verification failure, 2 input error (error JSON on stderr).

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "holo/io.hpp"
#include "holo/sampling.hpp"
#include "holo/verify.hpp"

using namespace holo;
using std::numbers::pi;

namespace {

[[noreturn]] void bad(const std::string &what) { throw Error(ErrorKind::InvalidInput, what); }

void report_error(std::string_view kind, const std::string &message) {
    io::Json j = io::Json::object();
    j["error"] = std::string(kind);
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) bad("cannot write '" + out + "'");
    f << text;
}

std::vector<double> split_numbers(const std::string &s, char sep, std::size_t expect) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            bad("cannot parse number '" + item + "' in '" + s + "'");
        }
    }
    if (v.size() != expect) bad(fmt::format("expected {} values in '{}'", expect, s));
    return v;
}

/// start:stop:count, or a single value
std::vector<double> parse_range(const std::string &s) {
    if (s.find(':') == std::string::npos) return split_numbers(s, ':', 1);
    const auto v = split_numbers(s, ':', 3);
    if (v[2] < 1 || v[2] != std::floor(v[2])) bad("range count must be a positive integer: '" + s + "'");
    if (v[1] < v[0]) bad("range stop must be >= start: '" + s + "'");
    return linspace(v[0], v[1], static_cast<std::size_t>(v[2]));
}

Mat2 named_unitary(const std::string &name) {
    const cplx i{0, 1};
    const double r = 1.0 / std::sqrt(2.0);
    if (name == "I") return pauli::I();
    if (name == "X") return pauli::X();
    if (name == "Y") return pauli::Y();
    if (name == "Z") return pauli::Z();
    if (name == "H") return r * (pauli::X() + pauli::Z());
    if (name == "S") return Mat2::diagonal({1.0, i});
    if (name == "expYquarter") return expi(pauli::Y(), pi / 4);  // e^{-i pi Y / 4}
    if (name == "expXquarter") return expi(pauli::X(), pi / 4);
    bad("unknown unitary '" + name + "' (I, X, Y, Z, H, S, expXquarter, expYquarter)");
}

io::GateDocument synthesized(const Synthesis &syn, Encoding enc) {
    const HolonomyResult hr = holonomy_pair(syn.cb, syn.a_tau);
    return io::GateDocument{syn.cb.t(), syn.a_tau, conditional_gate(hr, enc), hr.classification};
}

struct PulseFlags {
    std::string shape = "square";
    double tau = 10.0;
    std::optional<double> area;
};

void add_pulse_flags(CLI::App *cmd, PulseFlags &p) {
    cmd->add_option("--pulse", p.shape, "square | sin2 | gauss")->capture_default_str();
    cmd->add_option("--tau", p.tau, "pulse duration, ps")->capture_default_str();
    cmd->add_option("--area", p.area, "pulse area, rad (default: smallest cyclic area)");
}

io::Json simulate_device(const DeviceSpec &device, const PulseFlags &pf, double level_spacing) {
    const ControlBlock cb = device_control_block(device);
    double area = 0.0;
    if (pf.area) {
        area = *pf.area;
    } else {
        area = find_cycle_area(cb).a_tau;
    }
    const Pulse pulse(parse_pulse_shape(pf.shape), pf.tau, area);
    if (!adiabatic_validity_ok(pulse.tau(), level_spacing)) {
        std::cerr << fmt::format("warning: tau = {} ps is not above 10 hbar / {} meV; the four-level model may not hold\n",
                                 io::format_number(pulse.tau()), io::format_number(level_spacing));
    }

    io::Json j = io::Json::object();
    j["device"] = io::to_json(device);
    j["pulse"] = io::to_json(pulse);
    j["T"] = io::matrix_to_json(cb.t());
    const Mat4 ideal = closed_form_evolution(cb, area);
    Mat4 realized;
    if (const auto *smm = std::get_if<SmmSpec>(&device)) {
        realized = smm_gate(*smm, pulse);
    } else {
        realized = evolve(DrivenHamiltonian{block_hamiltonian(cb), Mat4{}, pulse}).u;
    }
    j["ideal"] = io::matrix_to_json(ideal);
    j["realized"] = io::matrix_to_json(realized);
    j["fidelity"] = gate_fidelity(ideal, realized);
    try {
        j["classification"] = std::string(to_string(holonomy_pair(cb, area).classification));
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NotCyclic) throw;
        j["classification"] = nullptr;
    }
    return j;
}

io::Json simulate_schedule(const std::string &path) {
    const std::filesystem::path p(path);
    const Schedule s = io::schedule_from_json(io::read_json_file(p), p.parent_path());
    const StateVector out = run_schedule(StateVector(s.n), s);
    io::Json j = io::to_json(out);
    io::Json ent = io::Json::array();
    for (std::size_t k = 0; k < s.n; ++k) ent.push_back(entanglement_entropy(out, k));
    j["entropy"] = ent;
    return j;
}

int run_verify() {
    const auto seed = sampling::seed_from_env();
    const auto results = run_verification(seed);
    int failed = 0;
    std::cout << "seed " << seed << '\n';
    for (const auto &r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << fmt::format("{}/{} properties passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Non-adiabatic holonomic gate toolkit"};
    app.require_subcommand(1);

    // synthesize
    auto *syn = app.add_subcommand("synthesize", "Control block and conditional gate for a target");
    std::string axis, named, entangler, encoding = "ab_cd", syn_out;
    auto *o_axis = syn->add_option("--axis", axis, "theta,phi in radians: gate I (x) n.R");
    auto *o_named = syn->add_option("--named", named, "X | Y | Z");
    auto *o_ent = syn->add_option("--entangler", entangler, "u0,u1 from I X Y Z H S expXquarter expYquarter");
    o_axis->excludes(o_named)->excludes(o_ent);
    o_named->excludes(o_ent);
    syn->add_option("--encoding", encoding, "ab_cd | swapped")->capture_default_str();
    syn->add_option("--out", syn_out, "output file (default stdout)");

    // simulate
    auto *sim = app.add_subcommand("simulate", "Evolve a device under a pulse, or run a register schedule");
    std::string device_path, schedule_path, sim_out;
    PulseFlags sim_pulse;
    double level_spacing = 1.0;
    auto *o_dev = sim->add_option("--device", device_path, "device JSON");
    auto *o_sched = sim->add_option("--schedule", schedule_path, "schedule JSON");
    o_dev->excludes(o_sched);
    add_pulse_flags(sim, sim_pulse);
    sim->add_option("--level-spacing", level_spacing, "level spacing for the validity warning, meV")
        ->capture_default_str();
    sim->add_option("--out", sim_out, "output file (default stdout)");

    // sweep
    auto *sw = app.add_subcommand("sweep", "SMM fidelity over a (delta_so, tau) grid");
    std::string sw_device, dso = "0:0.1:11", tau_range = "1:100:100", format = "csv", sw_out;
    std::string sw_shape = "square";
    double sw_area = pi;
    sw->add_option("--device", sw_device, "SMM device JSON (default: b = (3, 0), E = (0, 0.5))");
    sw->add_option("--pulse", sw_shape, "square | sin2 | gauss")->capture_default_str();
    sw->add_option("--area", sw_area, "pulse area, rad")->capture_default_str();
    sw->add_option("--dso", dso, "delta_so grid start:stop:count, meV")->capture_default_str();
    sw->add_option("--tau-range", tau_range, "tau grid start:stop:count, ps")->capture_default_str();
    sw->add_option("--tau", tau_range, "single tau, ps (same as --tau-range t:t:1)");
    sw->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sw->add_option("--out", sw_out, "output file (default stdout)");

    app.add_subcommand("verify", "Run the invariant suite (HOLO_SEED sets the seed)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        report_error("InvalidInput", e.what());
        return 2;
    }

    try {
        if (*syn) {
            const Encoding enc = parse_encoding(encoding);
            io::GateDocument doc;
            if (!axis.empty()) {
                const auto v = split_numbers(axis, ',', 2);
                doc = synthesized(synth_one_qubit(v[0], v[1]), enc);
            } else if (!named.empty()) {
                if (named == "X") doc = synthesized(synth_one_qubit(pi / 2, 0.0), enc);
                else if (named == "Y") doc = synthesized(synth_one_qubit(pi / 2, pi / 2), enc);
                else if (named == "Z") doc = synthesized(synth_one_qubit(0.0, 0.0), enc);
                else bad("--named must be X, Y or Z");
            } else if (!entangler.empty()) {
                const auto comma = entangler.find(',');
                if (comma == std::string::npos) bad("--entangler expects u0,u1");
                doc = synthesized(
                    synth_entangling(named_unitary(entangler.substr(0, comma)), named_unitary(entangler.substr(comma + 1))),
                    enc);
            } else {
                bad("synthesize needs one of --axis, --named, --entangler");
            }
            emit(io::to_json(doc).dump(2) + "\n", syn_out);
            return 0;
        }
        if (*sim) {
            io::Json j;
            if (!device_path.empty()) {
                j = simulate_device(io::device_from_json(io::read_json_file(device_path)), sim_pulse, level_spacing);
            } else if (!schedule_path.empty()) {
                j = simulate_schedule(schedule_path);
            } else {
                bad("simulate needs --device or --schedule");
            }
            emit(j.dump(2) + "\n", sim_out);
            return 0;
        }
        if (*sw) {
            SmmSpec spec{3.0, 0.0, 0.0, 0.5, 0.0, kHbarMeVps};
            if (!sw_device.empty()) {
                const DeviceSpec d = io::device_from_json(io::read_json_file(sw_device));
                const auto *s = std::get_if<SmmSpec>(&d);
                if (s == nullptr) bad("sweep needs an smm device");
                spec = *s;
            }
            const auto dso_grid = parse_range(dso);
            const auto tau_grid = parse_range(tau_range);
            for (double d : dso_grid)
                if (d < 0.0) bad("delta_so values must be >= 0");
            for (double t : tau_grid)
                if (!(t > 0.0)) bad("tau values must be > 0");
            if (!(sw_area > 0.0)) bad("--area must be > 0");
            const Gate4 target = smm_ideal_gate(spec, sw_area);
            const FidelityGrid grid =
                smm_fidelity_sweep(spec, parse_pulse_shape(sw_shape), sw_area, dso_grid, tau_grid, target);
            emit(format == "csv" ? io::grid_to_csv(grid) : io::to_json(grid).dump(2) + "\n", sw_out);
            return 0;
        }
        return run_verify();
    } catch (const Error &e) {
        report_error(to_string(e.kind()), e.message());
        return 2;
    } catch (const std::exception &e) {
        report_error("InvalidInput", e.what());
        return 2;
    }
}
