#pragma once

#include "aggbench/aggregate.hpp"
#include "aggbench/ingest.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace aggbench {

inline constexpr int model_format_version = 1;

/// What `aggbench fit` writes: the scaler fitted on the training file and the
/// aggregation model fitted on the scaled data.
struct ModelFile {
    MinMaxScaler scaler;
    AggregationModel model;
    std::string response_name;
};

nlohmann::json to_json(const AggregationModel& m);
/// Throws InvalidModel on a malformed document.
AggregationModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelFile& f);
ModelFile model_file_from_json(const nlohmann::json& j);

/// Doubles are written in shortest round-trip form, so a reloaded model
/// reproduces the original predictions bit for bit.
void save_model_file(const ModelFile& f, const std::filesystem::path& path);
/// Throws FileNotFound or InvalidModel.
ModelFile load_model_file(const std::filesystem::path& path);

} // namespace aggbench
