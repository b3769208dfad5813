#pragma once

// Model checkpoint directory:
//   manifest.json          layer_dims, clamp_eps, seed, per-layer bn arrays
//                          and the name of each weight file
//   layer_<k>.onnt         weights of layer k (inputs x outputs)

#include <filesystem>

#include "onnsim/model.hpp"

namespace onnsim::nn {

void save_checkpoint(const OnnModel& model, const std::filesystem::path& dir);

// IoError when the directory or a referenced file is missing, FormatError on
// a malformed manifest or tensor, ShapeError when stored shapes disagree.
OnnModel load_checkpoint(const std::filesystem::path& dir);

}  // namespace onnsim::nn
