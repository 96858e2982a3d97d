#include "holo/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace holo::io {

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

namespace {

[[noreturn]] void bad(const std::string &what) { throw Error(ErrorKind::InvalidInput, what); }

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::array<double, 4> four(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_array() || v.size() != 4) bad(std::string("field '") + key + "' must hold 4 numbers");
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!v[i].is_number()) bad(std::string("field '") + key + "' must hold 4 numbers");
        out[i] = v[i].get<double>();
    }
    return out;
}

}  // namespace

template <std::size_t N>
Json matrix_to_json(const CMat<N> &m) {
    Json arr = Json::array();
    for (const auto &z : m.entries()) arr.push_back(Json::array({z.real(), z.imag()}));
    return arr;
}

template <std::size_t N>
CMat<N> matrix_from_json(const Json &j) {
    if (!j.is_array() || j.size() != N * N) bad("matrix must be a list of " + std::to_string(N * N) + " [re, im] pairs");
    CMat<N> m;
    auto entries = m.entries();
    for (std::size_t i = 0; i < N * N; ++i) {
        const Json &e = j[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) bad("matrix entry must be [re, im]");
        entries[i] = cplx{e[0].get<double>(), e[1].get<double>()};
    }
    return m;
}

template Json matrix_to_json(const CMat<2> &);
template Json matrix_to_json(const CMat<4> &);
template Json matrix_to_json(const CMat<16> &);
template CMat<2> matrix_from_json<2>(const Json &);
template CMat<4> matrix_from_json<4>(const Json &);
template CMat<16> matrix_from_json<16>(const Json &);

Json to_json(const GateDocument &doc) {
    Json j = Json::object();
    if (doc.t) j["T"] = matrix_to_json(*doc.t);
    j["a_tau"] = doc.a_tau;
    j["encoding"] = std::string(to_string(doc.gate.encoding));
    j["gate"] = matrix_to_json(doc.gate.u);
    if (doc.classification) j["classification"] = std::string(to_string(*doc.classification));
    return j;
}

GateDocument gate_document_from_json(const Json &j) {
    GateDocument doc;
    if (!j.is_object()) bad("gate document must be an object");
    if (j.contains("T")) doc.t = matrix_from_json<2>(j.at("T"));
    if (j.contains("a_tau")) doc.a_tau = number(j, "a_tau");
    const Json &enc = field(j, "encoding");
    if (!enc.is_string()) bad("encoding must be a string");
    doc.gate = make_gate4(matrix_from_json<4>(field(j, "gate")), parse_encoding(enc.get<std::string>()));
    if (j.contains("classification")) doc.classification = parse_holonomy_class(j.at("classification").get<std::string>());
    return doc;
}

Json to_json(const DeviceSpec &device) {
    return std::visit(
        [](const auto &spec) -> Json {
            using S = std::decay_t<decltype(spec)>;
            Json j = Json::object();
            if constexpr (std::is_same_v<S, TightBindingSpec>) {
                j["type"] = "tight_binding";
                j["hop_mag"] = spec.hop_mag;
                j["peierls"] = spec.peierls;
                j["flux"] = spec.flux;
                j["zeeman_shift"] = spec.zeeman_shift;
            } else if constexpr (std::is_same_v<S, SpinRingSpec>) {
                j["type"] = "spin_ring";
                j["j"] = spec.j;
                j["dz"] = spec.dz;
            } else {
                j["type"] = "smm";
                j["b_x"] = spec.b_x;
                j["b_y"] = spec.b_y;
                j["e_x"] = spec.e_x;
                j["e_y"] = spec.e_y;
                j["delta_so"] = spec.delta_so;
                j["hbar"] = spec.hbar;
            }
            return j;
        },
        device);
}

DeviceSpec device_from_json(const Json &j) {
    const Json &type = field(j, "type");
    if (!type.is_string()) bad("device type must be a string");
    const auto t = type.get<std::string>();
    if (t == "tight_binding") {
        TightBindingSpec s;
        s.hop_mag = four(j, "hop_mag");
        s.peierls = four(j, "peierls");
        s.flux = number(j, "flux");
        s.zeeman_shift = j.contains("zeeman_shift") ? number(j, "zeeman_shift") : 0.0;
        for (double h : s.hop_mag)
            if (h < 0.0) bad("hop_mag entries must be >= 0");
        return s;
    }
    if (t == "spin_ring") {
        SpinRingSpec s;
        s.j = four(j, "j");
        s.dz = four(j, "dz");
        return s;
    }
    if (t == "smm") {
        SmmSpec s;
        s.b_x = number(j, "b_x");
        s.b_y = number(j, "b_y");
        s.e_x = number(j, "e_x");
        s.e_y = number(j, "e_y");
        s.delta_so = j.contains("delta_so") ? number(j, "delta_so") : 0.0;
        s.hbar = j.contains("hbar") ? number(j, "hbar") : kHbarMeVps;
        if (s.delta_so < 0.0) bad("delta_so must be >= 0");
        if (!(s.hbar > 0.0)) bad("hbar must be > 0");
        return s;
    }
    bad("unknown device type '" + t + "'");
}

Json to_json(const Pulse &pulse) {
    Json j = Json::object();
    j["shape"] = std::string(to_string(pulse.shape()));
    j["tau"] = pulse.tau();
    j["area"] = pulse.area();
    return j;
}

Pulse pulse_from_json(const Json &j) {
    const Json &shape = field(j, "shape");
    if (!shape.is_string()) bad("pulse shape must be a string");
    return Pulse(parse_pulse_shape(shape.get<std::string>()), number(j, "tau"), number(j, "area"));
}

Schedule schedule_from_json(const Json &j, const std::filesystem::path &base_dir) {
    Schedule s;
    const Json &n = field(j, "n");
    if (!n.is_number_integer() || n.get<long>() < 1) bad("schedule n must be a positive integer");
    s.n = n.get<std::size_t>();
    const Json &steps = field(j, "steps");
    if (!steps.is_array()) bad("schedule steps must be a list");
    for (const Json &st : steps) {
        const Json &p = field(st, "p");
        const Json &q = field(st, "q");
        if (!p.is_number_integer() || !q.is_number_integer() || p.get<long>() < 0 || q.get<long>() < 0) {
            bad("step qubits must be non-negative integers");
        }
        const Json &ref = field(st, "gate_ref");
        GateDocument doc = ref.is_string() ? gate_document_from_json(read_json_file(base_dir / ref.get<std::string>()))
                                           : gate_document_from_json(ref);
        const std::size_t pi = p.get<std::size_t>(), qi = q.get<std::size_t>();
        if (pi == qi || pi >= s.n || qi >= s.n) {
            throw Error(ErrorKind::IndexOutOfRange, "schedule step uses an invalid qubit pair");
        }
        s.steps.push_back(ScheduleStep{pi, qi, doc.gate});
    }
    return s;
}

Json to_json(const Schedule &s) {
    Json j = Json::object();
    j["n"] = s.n;
    Json steps = Json::array();
    for (const auto &st : s.steps) {
        Json e = Json::object();
        e["p"] = st.p;
        e["q"] = st.q;
        e["gate_ref"] = to_json(GateDocument{std::nullopt, 0.0, st.gate, std::nullopt});
        steps.push_back(e);
    }
    j["steps"] = steps;
    return j;
}

Json to_json(const StateVector &sv) {
    Json j = Json::object();
    j["n"] = sv.num_qubits();
    Json amps = Json::array();
    for (const auto &a : sv.amplitudes()) amps.push_back(Json::array({a.real(), a.imag()}));
    j["amplitudes"] = amps;
    return j;
}

std::string grid_to_csv(const FidelityGrid &grid) {
    std::ostringstream os;
    os << "delta_so_mev,tau_ps,fidelity\n";
    for (const auto &c : grid.cells) {
        os << format_number(c.delta_so_mev) << ',' << format_number(c.tau_ps) << ',' << format_number(c.fidelity)
           << '\n';
    }
    return os.str();
}

Json to_json(const FidelityGrid &grid) {
    Json j = Json::object();
    j["device"] = to_json(DeviceSpec{grid.spec});
    Json pulse = Json::object();
    pulse["shape"] = std::string(to_string(grid.shape));
    pulse["area"] = grid.area;
    j["pulse"] = pulse;
    j["target"] = to_json(GateDocument{std::nullopt, grid.area, grid.target, std::nullopt});
    j["delta_so_mev"] = grid.delta_so_mev;
    j["tau_ps"] = grid.tau_ps;
    Json cells = Json::array();
    for (const auto &c : grid.cells) {
        Json e = Json::object();
        e["delta_so_mev"] = c.delta_so_mev;
        e["tau_ps"] = c.tau_ps;
        e["fidelity"] = c.fidelity;
        cells.push_back(e);
    }
    j["cells"] = cells;
    return j;
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        bad("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace holo::io
