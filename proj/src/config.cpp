#include "fieldmap/config.hpp"

#include <json.hpp>

#include <fstream>

using nlohmann::json;

namespace fieldmap {

void PipelineConfig::validate() const {
    if (!(t_boundary >= 0.0 && t_boundary <= 1.0))
        throw Error(ErrorKind::InvalidConfig, "t_boundary must be in [0,1]");
    if (!(t_field >= 0.0 && t_field <= 1.0))
        throw Error(ErrorKind::InvalidConfig, "t_field must be in [0,1]");
    if (!(wheat_overlap_threshold > 0.0 && wheat_overlap_threshold < 1.0))
        throw Error(ErrorKind::InvalidConfig, "wheat_overlap_threshold must be in (0,1)");
    if (!(min_field_area >= 0.0))
        throw Error(ErrorKind::InvalidConfig, "min_field_area must be >= 0");
    if (!(rdp_epsilon >= 0.0))
        throw Error(ErrorKind::InvalidConfig, "rdp_epsilon must be >= 0");
    if (connectivity != 4 && connectivity != 8)
        throw Error(ErrorKind::InvalidConfig, "connectivity must be 4 or 8");
}

PipelineConfig load_config(const std::string& path, const PipelineConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::IoFailure, "cannot open config " + path);

    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorKind::InvalidConfig, path + ": config must be a JSON object");

    PipelineConfig cfg = base;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "t_boundary")
                cfg.t_boundary = value.get<double>();
            else if (key == "t_field")
                cfg.t_field = value.get<double>();
            else if (key == "min_field_area")
                cfg.min_field_area = value.get<double>();
            else if (key == "rdp_epsilon")
                cfg.rdp_epsilon = value.get<double>();
            else if (key == "wheat_overlap_threshold")
                cfg.wheat_overlap_threshold = value.get<double>();
            else if (key == "connectivity")
                cfg.connectivity = value.get<int>();
            else
                throw Error(ErrorKind::InvalidConfig, path + ": unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

} // namespace fieldmap
