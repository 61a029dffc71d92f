#pragma once

// JSON run configuration: trap kind, geometry and particle records with
// explicit unit suffixes on every key, command parameters and output path.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "trapspec/fieldlab.hpp"
#include "trapspec/planartraps.hpp"

namespace trapspec {

enum class TrapKind { IoffePritchard, Top, Paul, Penning };
enum class UnitMode { SI, Natural };

std::string to_string(TrapKind kind);
/// "ioffe_pritchard", "top", "paul", "penning"; throws ConfigError otherwise.
TrapKind trap_kind_from_string(const std::string& name);

struct RunConfig {
    TrapKind trap = TrapKind::IoffePritchard;
    UnitMode units = UnitMode::SI;
    std::optional<IoffePritchardGeometry> ioffe_pritchard;
    std::optional<TopGeometry> top;
    std::optional<PaulParams> paul;
    std::optional<PenningParams> penning;
    std::optional<DipoleParticle> particle;  // magnetic traps only
    nlohmann::json parameters = nlohmann::json::object();
    std::string output;  // empty: stdout
    bool units_explicit = false;

    /// Throws ConfigError when the record for `trap` is missing or an output
    /// directory does not exist; ValidationError for unphysical values.
    void validate() const;
};

/// Parse errors report line and column; missing keys are named; a key with
/// the right quantity but the wrong unit suffix raises UnitMismatchError.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

}  // namespace trapspec
