#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bob/types.hpp"

namespace bob {

enum class VerifyLevel { quick, full };

/// Test hooks: overriding the rotation-number formula must make the
/// rotation claim fail (negative control for the battery itself).
struct VerifyHooks {
    std::function<Scalar(Scalar a, Scalar b)> rotation_phi;
};

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::full;
    std::string data_dir = BOB_DATA_DIR;
    VerifyHooks hooks;
};

struct ClaimResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail; ///< measured values, one line
};

inline constexpr int verify_claim_count = 15;

/// Runs one numbered claim (1-based).
ClaimResult run_claim(int index, const VerifyOptions& options);

/// Runs the whole battery in order.
std::vector<ClaimResult> verify_suite(const VerifyOptions& options);

std::string format_claim_line(const ClaimResult& result);

} // namespace bob
