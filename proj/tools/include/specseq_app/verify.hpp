#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specseq/report.hpp"
#include "specseq/scalar.hpp"
#include "specseq_app/io.hpp"

namespace specseq::app {

struct VerifyConfig {
    /// all, adjunction, stability, properness, lattice or pages.
    std::string suite = "all";
    std::uint64_t seed = 0;
    /// Random instances per random property; 0 runs fixtures only.
    int cases = 50;
    int jobs = 1;
    Field field = Field::rationals();
    /// Bound of the exhaustive lattice check.
    int lattice_r = 4;
};

/// What one case of a property produced.
struct Outcome {
    std::vector<Check> checks;
    /// The generated instance, serialized; printed only on failure.
    Json instance;
    /// Extra data always printed (counts, reports).
    Json info;
};

/// A named check over fixtures (run once) or over seeded random cases.
struct Property {
    std::string suite;
    std::string name;
    bool random = false;
    /// Random properties receive the case seed; fixtures receive 0.
    Outcome (*run)(Field field, std::uint64_t case_seed, const VerifyConfig& cfg) = nullptr;
};

const std::vector<std::string>& suite_names();
const std::vector<Property>& properties();

struct VerifyResult {
    Json report;
    std::size_t failed_cases = 0;
    bool pass() const { return failed_cases == 0; }
};

/// Runs fixture properties once and random ones `cfg.cases` times; a case
/// that throws fails with an "exception" check.
VerifyResult run_properties(const std::vector<Property>& props, const VerifyConfig& cfg);

/// Runs the selected suites. Case seeds are Rng::derive(seed, property,
/// index); the report does not depend on `jobs`. Throws PreconditionError
/// for an unknown suite.
VerifyResult run_verify(const VerifyConfig& cfg);

/// Reruns one case of `property` from its case seed, as printed in a report.
VerifyResult replay_case(const std::string& property, std::uint64_t case_seed, const VerifyConfig& cfg);

}  // namespace specseq::app
