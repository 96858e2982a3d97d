#pragma once

// JSON and CSV surfaces: gate documents, device specs, pulses, schedules
// and fidelity grids. JSON doubles use shortest round-trip formatting so a
// parsed document reproduces the emitted matrices bit for bit; CSV and text
// output use 12 significant digits.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "holo/holonomy.hpp"
#include "holo/platforms.hpp"
#include "holo/qregister.hpp"

namespace holo::io {

using Json = nlohmann::ordered_json;

/// 12 significant digits.
std::string format_number(double x);

/// Serialized gate: {"T", "a_tau", "encoding", "gate"} in that order, plus
/// "classification" when known. T is absent for gates not built from a block.
struct GateDocument {
    std::optional<Mat2> t;
    double a_tau = 0.0;
    Gate4 gate;
    std::optional<HolonomyClass> classification;

    friend bool operator==(const GateDocument &a, const GateDocument &b) {
        return a.t == b.t && a.a_tau == b.a_tau && a.gate.u == b.gate.u && a.gate.encoding == b.gate.encoding &&
               a.classification == b.classification;
    }
};

template <std::size_t N>
Json matrix_to_json(const CMat<N> &m);
template <std::size_t N>
CMat<N> matrix_from_json(const Json &j);

Json to_json(const GateDocument &doc);
/// Throws InvalidInput on malformed documents and NotUnitary for non-unitary gates.
GateDocument gate_document_from_json(const Json &j);

/// Tagged by "type": "tight_binding" | "spin_ring" | "smm".
Json to_json(const DeviceSpec &device);
DeviceSpec device_from_json(const Json &j);

Json to_json(const Pulse &pulse);
Pulse pulse_from_json(const Json &j);

/// {"n": int, "steps": [{"p", "q", "gate_ref"}]}; a string gate_ref is a
/// path to a gate document, resolved against base_dir.
Schedule schedule_from_json(const Json &j, const std::filesystem::path &base_dir = {});
Json to_json(const Schedule &s);

Json to_json(const StateVector &sv);

/// Header `delta_so_mev,tau_ps,fidelity`, one row per cell.
std::string grid_to_csv(const FidelityGrid &grid);
Json to_json(const FidelityGrid &grid);

Json read_json_file(const std::filesystem::path &path);

}  // namespace holo::io
