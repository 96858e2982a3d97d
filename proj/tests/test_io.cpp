#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "holo/io.hpp"
#include "holo/sampling.hpp"

using namespace holo;
using std::numbers::pi;

namespace {

io::Json reparse(const io::Json &j) { return io::Json::parse(j.dump()); }

}  // namespace

TEST(Io, FormatNumberTwelveDigits) {
    EXPECT_EQ(io::format_number(pi), "3.14159265359");
    EXPECT_EQ(io::format_number(0.02), "0.02");
    EXPECT_EQ(io::format_number(1.0), "1");
}

TEST(Io, MatrixRoundTripIsBitExact) {
    sampling::Rng rng(181);
    for (int i = 0; i < 20; ++i) {
        const Mat4 u = sampling::unitary<4>(rng);
        EXPECT_EQ(io::matrix_from_json<4>(reparse(io::matrix_to_json(u))), u);
        const Mat16 h = sampling::hermitian<16>(rng);
        EXPECT_EQ(io::matrix_from_json<16>(reparse(io::matrix_to_json(h))), h);
    }
}

TEST(Io, GateDocumentRoundTrip) {
    const Synthesis s = synth_one_qubit(0.731, -2.05);
    const HolonomyResult hr = holonomy_pair(s.cb, s.a_tau);
    const io::GateDocument doc{s.cb.t(), s.a_tau, conditional_gate(hr, Encoding::control_target_swapped),
                               hr.classification};
    const io::Json j = io::to_json(doc);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"T", "a_tau", "encoding", "gate", "classification"}));
    EXPECT_EQ(io::gate_document_from_json(reparse(j)), doc);
}

TEST(Io, GateDocumentRejectsBadInput) {
    io::Json j = io::to_json(io::GateDocument{std::nullopt, 0.0, Gate4{Mat4::identity(), Encoding::ab_cd}, {}});
    EXPECT_NO_THROW(io::gate_document_from_json(j));
    j["gate"][0] = io::Json::array({2.0, 0.0});
    EXPECT_THROW(io::gate_document_from_json(j), Error);
    j.erase("gate");
    EXPECT_THROW(io::gate_document_from_json(j), Error);
    EXPECT_THROW(io::gate_document_from_json(io::Json::array()), Error);
}

TEST(Io, DeviceRoundTrip) {
    const std::vector<DeviceSpec> devices{
        TightBindingSpec{{1, 2, 3, 0.5}, {0.1, 0.2, 0.3, 0.4}, 1.0, 0.25},
        SpinRingSpec{{1, -1, 0.5, 2}, {0.3, 0, 0, -0.7}},
        SmmSpec{3.0, 0.1, 0.0, 0.5, 0.02, kHbarMeVps},
    };
    for (const auto &d : devices) EXPECT_EQ(io::device_from_json(reparse(io::to_json(d))), d);
}

TEST(Io, DeviceValidation) {
    EXPECT_THROW(io::device_from_json(io::Json::parse(R"({"type":"quantum_dot"})")), Error);
    EXPECT_THROW(io::device_from_json(io::Json::parse(R"({"type":"smm","b_x":1})")), Error);
    EXPECT_THROW(io::device_from_json(io::Json::parse(R"({"type":"smm","b_x":1,"b_y":0,"e_x":0,"e_y":0,"delta_so":-1})")),
                 Error);
    EXPECT_THROW(io::device_from_json(io::Json::parse(R"({"type":"spin_ring","j":[1,2,3],"dz":[0,0,0,0]})")), Error);
    const auto smm = io::device_from_json(io::Json::parse(R"({"type":"smm","b_x":3,"b_y":0,"e_x":0,"e_y":0.5})"));
    EXPECT_EQ(std::get<SmmSpec>(smm).hbar, kHbarMeVps);
}

TEST(Io, PulseRoundTrip) {
    for (auto s : {PulseShape::square, PulseShape::sin2, PulseShape::gauss_truncated}) {
        const Pulse p(s, 12.5, 2.0 * pi);
        EXPECT_EQ(io::pulse_from_json(reparse(io::to_json(p))), p);
    }
    EXPECT_THROW(io::pulse_from_json(io::Json::parse(R"({"shape":"square","tau":-1,"area":1})")), Error);
}

TEST(Io, ScheduleRoundTripAndFileRefs) {
    sampling::Rng rng(191);
    Schedule s{3, {{0, 2, Gate4{sampling::unitary<4>(rng), Encoding::ab_cd}},
                   {2, 1, Gate4{sampling::unitary<4>(rng), Encoding::control_target_swapped}}}};
    const Schedule back = io::schedule_from_json(reparse(io::to_json(s)));
    ASSERT_EQ(back.steps.size(), 2u);
    EXPECT_EQ(back.n, 3u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(back.steps[i].p, s.steps[i].p);
        EXPECT_EQ(back.steps[i].q, s.steps[i].q);
        EXPECT_EQ(back.steps[i].gate.u, s.steps[i].gate.u);
        EXPECT_EQ(back.steps[i].gate.encoding, s.steps[i].gate.encoding);
    }

    const auto dir = std::filesystem::temp_directory_path() / "holo_io_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "g.json") << io::to_json(io::GateDocument{std::nullopt, 0.0, s.steps[0].gate, {}}).dump();
    const auto j = io::Json::parse(R"({"n": 3, "steps": [{"p": 0, "q": 2, "gate_ref": "g.json"}]})");
    EXPECT_EQ(io::schedule_from_json(j, dir).steps[0].gate.u, s.steps[0].gate.u);
    EXPECT_THROW(io::schedule_from_json(j, dir / "nowhere"), Error);

    const auto bad = io::Json::parse(R"({"n": 2, "steps": [{"p": 0, "q": 2, "gate_ref": "g.json"}]})");
    try {
        io::schedule_from_json(bad, dir);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
    }
    std::filesystem::remove_all(dir);
}

TEST(Io, StateVectorJson) {
    const io::Json j = io::to_json(StateVector::basis_state(2, 2));
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(j["amplitudes"][2][0], 1.0);
}

TEST(Io, GridCsvAndJson) {
    const SmmSpec spec{3.0, 0.0, 0.0, 0.5, 0.0, kHbarMeVps};
    const Gate4 w = smm_ideal_gate(spec, pi);
    const std::vector<double> d{0.0, 0.02}, t{10.0};
    const FidelityGrid g = smm_fidelity_sweep(spec, PulseShape::square, pi, d, t, w);
    const std::string csv = io::grid_to_csv(g);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "delta_so_mev,tau_ps,fidelity");
    EXPECT_NE(csv.find("\n0,10,1\n"), std::string::npos);
    EXPECT_NE(csv.find("\n0.02,10,0.99999789"), std::string::npos);
    const io::Json j = reparse(io::to_json(g));
    EXPECT_EQ(j["cells"].size(), 2u);
    EXPECT_EQ(j["cells"][1]["fidelity"].get<double>(), g.cells[1].fidelity);
    EXPECT_EQ(io::gate_document_from_json(j["target"]).gate.u, w.u);
}

TEST(Io, ReadJsonFileErrors) {
    EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), Error);
    const auto p = std::filesystem::temp_directory_path() / "holo_bad.json";
    std::ofstream(p) << "{not json";
    EXPECT_THROW(io::read_json_file(p), Error);
    std::filesystem::remove(p);
}
