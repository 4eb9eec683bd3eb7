#include "aggbench/model_io.hpp"
#include "aggbench/error.hpp"

#include <fstream>

namespace aggbench {

using nlohmann::json;

json to_json(const AggregationModel& m)
{
    json j;
    j["kind"] = std::string(to_string(m.kind()));
    j["k"] = m.k();
    if (m.kind() == Kind::Wsm || m.kind() == Kind::Wpm) {
        json functions = json::array();
        for (const auto& f : m.score_functions()) {
            auto values = f.sorted_values();
            functions.push_back({{"direction", std::string(to_string(f.direction()))},
                {"values", std::vector<double>(values.begin(), values.end())}});
        }
        j["score_functions"] = std::move(functions);
        const auto& parts = *m.weight_parts();
        j["weights"] = parts.weights;
        j["entropy_parts"] = parts.entropy_parts;
        j["dependency_parts"] = parts.dependency_parts;
    } else if (m.kind() == Kind::Reg) {
        auto w = m.weights();
        j["weights"] = std::vector<double>(w.begin(), w.end());
        const auto& fit = m.regression_fit();
        j["solver"] = {{"objective", fit.objective}, {"iterations", fit.iterations}, {"converged", fit.converged}};
    }
    return j;
}

AggregationModel model_from_json(const json& j)
{
    try {
        const Kind kind = kind_from_string(j.at("kind").get<std::string>());
        const auto k = j.at("k").get<std::size_t>();
        if (is_basic(kind))
            return AggregationModel::basic(kind, k);
        if (kind == Kind::Reg) {
            auto w = j.at("weights").get<std::vector<double>>();
            if (w.size() != k)
                throw Error(ErrorCode::InvalidModel, "weight count does not match k");
            AggregationModel::RegressionFit fit;
            if (j.contains("solver")) {
                const auto& s = j.at("solver");
                fit.objective = s.value("objective", 0.0);
                fit.iterations = s.value("iterations", std::size_t{0});
                fit.converged = s.value("converged", true);
            }
            return AggregationModel::regression(std::move(w), fit.objective, fit.iterations, fit.converged);
        }
        std::vector<ScoreFunction> functions;
        for (const auto& f : j.at("score_functions"))
            functions.emplace_back(f.at("values").get<std::vector<double>>(),
                direction_from_string(f.at("direction").get<std::string>()));
        WeightVector w;
        w.weights = j.at("weights").get<std::vector<double>>();
        w.entropy_parts = j.value("entropy_parts", std::vector<double>{});
        w.dependency_parts = j.value("dependency_parts", std::vector<double>{});
        if (functions.size() != k || w.weights.size() != k)
            throw Error(ErrorCode::InvalidModel, "score function or weight count does not match k");
        return AggregationModel::weighted_scoring(kind, std::move(functions), std::move(w));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidModel, e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidModel)
            throw;
        throw Error(ErrorCode::InvalidModel, e.what());
    }
}

json to_json(const ModelFile& f)
{
    json columns = json::array();
    for (std::size_t i = 0; i < f.scaler.k(); ++i)
        columns.push_back({{"name", f.scaler.column_names[i]}, {"min", f.scaler.minimum[i]}, {"max", f.scaler.maximum[i]}});
    json j;
    j["format"] = "aggbench-model";
    j["version"] = model_format_version;
    j["columns"] = std::move(columns);
    if (!f.response_name.empty())
        j["response"] = f.response_name;
    j["model"] = to_json(f.model);
    return j;
}

ModelFile model_file_from_json(const json& j)
{
    try {
        if (j.value("format", std::string{}) != "aggbench-model")
            throw Error(ErrorCode::InvalidModel, "not an aggbench model file");
        const int version = j.at("version").get<int>();
        if (version != model_format_version)
            throw Error(ErrorCode::InvalidModel, "unsupported model file version " + std::to_string(version));
        MinMaxScaler scaler;
        for (const auto& c : j.at("columns")) {
            scaler.column_names.push_back(c.at("name").get<std::string>());
            scaler.minimum.push_back(c.at("min").get<double>());
            scaler.maximum.push_back(c.at("max").get<double>());
        }
        auto model = model_from_json(j.at("model"));
        if (model.k() != scaler.k())
            throw Error(ErrorCode::InvalidModel, "model arity does not match the column list");
        return ModelFile{std::move(scaler), std::move(model), j.value("response", std::string{})};
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidModel, e.what());
    }
}

void save_model_file(const ModelFile& f, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::FileNotFound, "cannot write '" + path.string() + "'");
    out << to_json(f).dump(2) << '\n';
    if (!out)
        throw Error(ErrorCode::FileNotFound, "failed writing '" + path.string() + "'");
}

ModelFile load_model_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidModel, path.string() + ": " + e.what());
    }
    return model_file_from_json(j);
}

} // namespace aggbench
