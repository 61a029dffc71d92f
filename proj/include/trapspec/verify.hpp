#pragma once

// Verification suites: each one compares an analytic result against an
// independent oracle (shooting solver, quadrature, enumeration, Biot-Savart,
// explicit time averaging) at a fixed tolerance.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace trapspec {

struct SubCheck {
    std::string label;
    double measured = 0.0;
    double threshold = 0.0;
    bool at_least = false;  // measured >= threshold instead of <=
    [[nodiscard]] bool passed() const;
};

struct CriterionResult {
    int id = 0;
    std::string suite;
    std::string title;
    std::vector<SubCheck> checks;
    double seconds = 0.0;
    std::string error;  // set when a check threw
    bool oracle_failure = false;  // the exception was an OracleError

    [[nodiscard]] bool passed() const;
    /// The failing check, or the one closest to its threshold.
    [[nodiscard]] const SubCheck* worst() const;
    /// "[PASS] 1 spectrum: ..." on one line.
    [[nodiscard]] std::string summary() const;
};

struct VerifyOptions {
    /// Multiplies every upper-bound tolerance and the solver accuracy targets.
    /// Exact integer checks and lower bounds (slopes, required failures) are unaffected.
    double tol_scale = 1.0;
    std::optional<int> L;  // restrict the spectrum, susy and nodes suites to one L
};

/// TRAPSPEC_TOL_SCALE, or 1 when unset. Throws ConfigError when set but not a positive number.
double tolerance_scale_from_env();

CriterionResult verify_spectrum(const VerifyOptions& o);
CriterionResult verify_susy(const VerifyOptions& o);
CriterionResult verify_pauli_gap(const VerifyOptions& o);
CriterionResult verify_nodes(const VerifyOptions& o);
CriterionResult verify_combinatorics(const VerifyOptions& o);
CriterionResult verify_isotropy(const VerifyOptions& o);
CriterionResult verify_field_oracle(const VerifyOptions& o);
CriterionResult verify_defect(const VerifyOptions& o);
CriterionResult verify_planar(const VerifyOptions& o);
CriterionResult verify_orthonormality(const VerifyOptions& o);

/// spectrum, susy, pauli-gap, nodes, combinatorics, isotropy, field-oracle,
/// defect, planar, orthonormality (criteria 1 to 10, in order).
const std::vector<std::string>& suite_names();
/// Throws ConfigError for an unknown name.
CriterionResult run_suite(const std::string& name, const VerifyOptions& o);
std::vector<CriterionResult> run_all(const VerifyOptions& o);

nlohmann::json to_json(const CriterionResult& r);

}  // namespace trapspec
