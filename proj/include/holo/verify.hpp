#pragma once

// Invariant suite behind `holo verify`. The kernels under test are injectable
// so that seeded faults can be shown to trip the corresponding property.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holo/holonomy.hpp"
#include "holo/platforms.hpp"

namespace holo {

struct VerifyKernels {
    std::function<Mat4(const ControlBlock &, double)> evolution = closed_form_evolution;
    std::function<Mat4(const TightBindingSpec &)> tight_binding = [](const TightBindingSpec &s) {
        return tb_build(s).h4;
    };
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<PropertyResult> run_verification(std::uint64_t seed, const VerifyKernels &kernels = {});

}  // namespace holo
