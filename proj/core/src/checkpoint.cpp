#include "onnsim/checkpoint.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "onnsim/errors.hpp"
#include "onnsim/tensor_io.hpp"

namespace onnsim::nn {

namespace {

constexpr const char* kManifest = "manifest.json";
constexpr int kFormatVersion = 1;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector from_json(const nlohmann::json& j, const char* key, Eigen::Index expect) {
    const auto values = j.at(key).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != expect) {
        throw ShapeError(std::string("checkpoint: ") + key + " has the wrong length");
    }
    return Eigen::Map<const Vector>(values.data(), expect);
}

}  // namespace

void save_checkpoint(const OnnModel& model, const std::filesystem::path& dir) {
    validate(model);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    nlohmann::json manifest;
    manifest["format_version"] = kFormatVersion;
    std::vector<Eigen::Index> dims = model.dims();
    manifest["layer_dims"] = dims;
    manifest["clamp_eps"] = model.clamp_eps;
    manifest["seed"] = model.seed;
    manifest["layers"] = nlohmann::json::array();
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        const Layer& l = model.layers[k];
        const std::string file = "layer_" + std::to_string(k) + ".onnt";
        io::write_onnt(dir / file, io::to_tensor(l.weights));
        manifest["layers"].push_back({{"weights", file},
                                      {"bn_gamma", to_std(l.bn_gamma)},
                                      {"bn_beta", to_std(l.bn_beta)},
                                      {"bn_running_mean", to_std(l.bn_running_mean)},
                                      {"bn_running_var", to_std(l.bn_running_var)},
                                      {"bn_momentum", l.bn_momentum}});
    }
    std::ofstream os(dir / kManifest);
    if (!os) throw IoError("cannot write " + (dir / kManifest).string());
    os << manifest.dump(2) << '\n';
}

OnnModel load_checkpoint(const std::filesystem::path& dir) {
    const auto manifest_path = dir / kManifest;
    if (!std::filesystem::is_regular_file(manifest_path)) {
        throw IoError("no checkpoint manifest at " + manifest_path.string());
    }
    std::ifstream is(manifest_path);
    nlohmann::json manifest;
    try {
        is >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("checkpoint manifest: " + std::string(e.what()));
    }

    try {
        const auto dims = manifest.at("layer_dims").get<std::vector<Eigen::Index>>();
        OnnModel model = make_model(dims);
        model.clamp_eps = manifest.at("clamp_eps").get<double>();
        model.seed = manifest.at("seed").get<std::uint64_t>();
        const auto& layers = manifest.at("layers");
        if (layers.size() != model.layers.size()) throw ShapeError("checkpoint: layer count mismatch");
        for (std::size_t k = 0; k < model.layers.size(); ++k) {
            Layer& l = model.layers[k];
            const auto& jl = layers[k];
            const auto path = dir / jl.at("weights").get<std::string>();
            if (!std::filesystem::is_regular_file(path)) throw IoError("missing weight file " + path.string());
            Matrix w = io::to_matrix(io::read_onnt(path));
            if (w.rows() != l.inputs() || w.cols() != l.outputs()) {
                throw ShapeError("checkpoint: " + path.filename().string() + " has the wrong shape");
            }
            l.weights = std::move(w);
            l.bn_gamma = from_json(jl, "bn_gamma", l.outputs());
            l.bn_beta = from_json(jl, "bn_beta", l.outputs());
            l.bn_running_mean = from_json(jl, "bn_running_mean", l.outputs());
            l.bn_running_var = from_json(jl, "bn_running_var", l.outputs());
            l.bn_momentum = jl.at("bn_momentum").get<double>();
        }
        validate(model);
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("checkpoint manifest: " + std::string(e.what()));
    }
}

}  // namespace onnsim::nn
