#include "trapspec/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "trapspec/errors.hpp"

namespace trapspec {

namespace {

using nlohmann::json;

template <class T>
struct Field {
    const char* base;
    const char* unit;
    double T::*member;
};

const std::vector<Field<IoffePritchardGeometry>> kIpFields = {
    {"coil_radius", "m", &IoffePritchardGeometry::coil_radius},
    {"coil_halfspacing", "m", &IoffePritchardGeometry::coil_halfspacing},
    {"coil_current", "A", &IoffePritchardGeometry::coil_current},
    {"bar_distance", "m", &IoffePritchardGeometry::bar_distance},
    {"bar_current", "A", &IoffePritchardGeometry::bar_current},
};

const std::vector<Field<TopGeometry>> kTopFields = {
    {"quad_radius", "m", &TopGeometry::quad_radius},
    {"quad_halfspacing", "m", &TopGeometry::quad_halfspacing},
    {"quad_current", "A", &TopGeometry::quad_current},
    {"bias_radius", "m", &TopGeometry::bias_radius},
    {"bias_halfspacing", "m", &TopGeometry::bias_halfspacing},
    {"bias_current", "A", &TopGeometry::bias_current},
    {"bias_frequency", "rad_per_s", &TopGeometry::bias_frequency},
};

const std::vector<Field<PaulParams>> kPaulGeometry = {
    {"voltage", "V", &PaulParams::voltage},
    {"size", "m", &PaulParams::size},
    {"drive_frequency", "rad_per_s", &PaulParams::drive_frequency},
};
const std::vector<Field<PaulParams>> kPaulParticle = {
    {"charge", "C", &PaulParams::charge},
    {"mass", "kg", &PaulParams::mass},
};

const std::vector<Field<PenningParams>> kPenningGeometry = {
    {"voltage", "V", &PenningParams::voltage},
    {"size", "m", &PenningParams::size},
    {"axial_field", "T", &PenningParams::axial_field},
};
const std::vector<Field<PenningParams>> kPenningParticle = {
    {"charge", "C", &PenningParams::charge},
    {"mass", "kg", &PenningParams::mass},
};

const std::vector<Field<DipoleParticle>> kDipoleFields = {
    {"magnetic_moment", "J_per_T", &DipoleParticle::magnetic_moment},
    {"mass", "kg", &DipoleParticle::mass},
};

template <class T>
std::string key_of(const Field<T>& f) {
    return std::string(f.base) + "_" + f.unit;
}

const json& section(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw ConfigError(std::string("missing field '") + name + "'");
    }
    if (!it->is_object()) {
        throw ConfigError(std::string("field '") + name + "' must be an object");
    }
    return *it;
}

// Fills `out` from `obj`, claiming the keys it consumes.
template <class T>
void read_fields(const json& obj, const std::vector<Field<T>>& fields, const std::string& where, T& out,
                 std::vector<std::string>& claimed) {
    for (const auto& f : fields) {
        const std::string key = key_of(f);
        auto it = obj.find(key);
        if (it == obj.end()) {
            const std::string stem = f.base;
            for (const auto& [k, v] : obj.items()) {
                if (k == stem || (k.size() > stem.size() + 1 && k.compare(0, stem.size() + 1, stem + "_") == 0)) {
                    throw UnitMismatchError(where + "." + k + ": unit mismatch, expected '" + key + "' (unit " +
                                            f.unit + ")");
                }
            }
            throw ConfigError("missing field '" + where + "." + key + "'");
        }
        if (!it->is_number()) {
            throw ConfigError("field '" + where + "." + key + "' must be a number");
        }
        out.*(f.member) = it->template get<double>();
        claimed.push_back(key);
    }
}

void reject_unknown(const json& obj, const std::vector<std::string>& claimed, const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (const auto& c : claimed) known = known || c == k;
        if (!known) {
            throw ConfigError("unknown field '" + where + "." + k + "'");
        }
    }
}

template <class T>
void write_fields(json& obj, const std::vector<Field<T>>& fields, const T& in) {
    for (const auto& f : fields) obj[key_of(f)] = in.*(f.member);
}

}  // namespace

std::string to_string(TrapKind kind) {
    switch (kind) {
        case TrapKind::IoffePritchard: return "ioffe_pritchard";
        case TrapKind::Top: return "top";
        case TrapKind::Paul: return "paul";
        case TrapKind::Penning: return "penning";
    }
    return "?";
}

TrapKind trap_kind_from_string(const std::string& name) {
    for (auto k : {TrapKind::IoffePritchard, TrapKind::Top, TrapKind::Paul, TrapKind::Penning}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown trap kind '" + name + "' (expected ioffe_pritchard, top, paul or penning)");
}

void RunConfig::validate() const {
    switch (trap) {
        case TrapKind::IoffePritchard:
            if (!ioffe_pritchard || !particle) throw ConfigError("ioffe_pritchard config needs geometry and particle");
            ioffe_pritchard->validate();
            particle->validate();
            break;
        case TrapKind::Top:
            if (!top || !particle) throw ConfigError("top config needs geometry and particle");
            top->validate();
            particle->validate();
            break;
        case TrapKind::Paul:
            if (!paul) throw ConfigError("paul config needs geometry and particle");
            paul->validate();
            break;
        case TrapKind::Penning:
            if (!penning) throw ConfigError("penning config needs geometry and particle");
            penning->validate();
            break;
    }
    if (!output.empty()) {
        const auto parent = std::filesystem::path(output).parent_path();
        if (!parent.empty() && !std::filesystem::is_directory(parent)) {
            throw ConfigError("output directory '" + parent.string() + "' does not exist");
        }
    }
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto& [k, v] : j.items()) {
        if (k != "trap" && k != "units" && k != "geometry" && k != "particle" && k != "parameters" && k != "output") {
            throw ConfigError("unknown field '" + k + "'");
        }
    }
    RunConfig c;
    auto trap = j.find("trap");
    if (trap == j.end() || !trap->is_string()) {
        throw ConfigError("missing field 'trap' (string)");
    }
    c.trap = trap_kind_from_string(trap->get<std::string>());

    if (auto u = j.find("units"); u != j.end()) {
        const std::string mode = u->is_string() ? u->get<std::string>() : "";
        if (mode == "SI") {
            c.units = UnitMode::SI;
        } else if (mode == "natural") {
            c.units = UnitMode::Natural;
        } else {
            throw ConfigError("field 'units' must be \"SI\" or \"natural\"");
        }
        c.units_explicit = true;
    }

    const json& geo = section(j, "geometry");
    const json& part = section(j, "particle");
    std::vector<std::string> geo_keys;
    std::vector<std::string> part_keys;
    switch (c.trap) {
        case TrapKind::IoffePritchard: {
            IoffePritchardGeometry g;
            read_fields(geo, kIpFields, "geometry", g, geo_keys);
            c.ioffe_pritchard = g;
            break;
        }
        case TrapKind::Top: {
            TopGeometry g;
            read_fields(geo, kTopFields, "geometry", g, geo_keys);
            c.top = g;
            break;
        }
        case TrapKind::Paul: {
            PaulParams p;
            read_fields(geo, kPaulGeometry, "geometry", p, geo_keys);
            read_fields(part, kPaulParticle, "particle", p, part_keys);
            c.paul = p;
            break;
        }
        case TrapKind::Penning: {
            PenningParams p;
            read_fields(geo, kPenningGeometry, "geometry", p, geo_keys);
            read_fields(part, kPenningParticle, "particle", p, part_keys);
            c.penning = p;
            break;
        }
    }
    if (c.trap == TrapKind::IoffePritchard || c.trap == TrapKind::Top) {
        DipoleParticle d;
        read_fields(part, kDipoleFields, "particle", d, part_keys);
        c.particle = d;
    }
    reject_unknown(geo, geo_keys, "geometry");
    reject_unknown(part, part_keys, "particle");

    if (auto p = j.find("parameters"); p != j.end()) {
        if (!p->is_object()) throw ConfigError("field 'parameters' must be an object");
        c.parameters = *p;
    }
    if (auto o = j.find("output"); o != j.end()) {
        if (!o->is_string()) throw ConfigError("field 'output' must be a string");
        c.output = o->get<std::string>();
    }
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["trap"] = to_string(c.trap);
    if (c.units_explicit || c.units == UnitMode::Natural) {
        j["units"] = c.units == UnitMode::SI ? "SI" : "natural";
    }
    json geo = json::object();
    json part = json::object();
    if (c.ioffe_pritchard) write_fields(geo, kIpFields, *c.ioffe_pritchard);
    if (c.top) write_fields(geo, kTopFields, *c.top);
    if (c.paul) {
        write_fields(geo, kPaulGeometry, *c.paul);
        write_fields(part, kPaulParticle, *c.paul);
    }
    if (c.penning) {
        write_fields(geo, kPenningGeometry, *c.penning);
        write_fields(part, kPenningParticle, *c.penning);
    }
    if (c.particle) write_fields(part, kDipoleFields, *c.particle);
    j["geometry"] = geo;
    j["particle"] = part;
    if (!c.parameters.empty()) j["parameters"] = c.parameters;
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t stop = std::min(text.size(), e.byte == 0 ? std::size_t{0} : e.byte - 1);
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
    }
    try {
        return config_from_json(j);
    } catch (const UnitMismatchError& e) {
        throw UnitMismatchError(origin + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

}  // namespace trapspec
