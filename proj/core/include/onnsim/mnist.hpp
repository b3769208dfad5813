#pragma once

// MNIST ingestion from the IDX files (big-endian):
//   images: magic 0x00000803, u32 count, u32 rows, u32 cols, u8 pixels
//   labels: magic 0x00000801, u32 count, u8 labels

#include <filesystem>
#include <vector>

#include "onnsim/types.hpp"

namespace onnsim::nn {

struct Dataset {
    RowMatrix images;         // n x (rows*cols), pixels in [-1, 1]
    std::vector<int> labels;  // 0..9
    int rows = 28;
    int cols = 28;

    Eigen::Index size() const { return images.rows(); }
    // First n items (or all when n exceeds the size).
    Dataset head(Eigen::Index n) const;
};

// Pixels are mapped affinely from [0, 255] to [-1, 1]. Throws FormatError on
// bad magic, bad dimensions or truncation, MismatchError when counts differ,
// IoError when a file is missing.
Dataset load_mnist_idx(const std::filesystem::path& images_path,
                       const std::filesystem::path& labels_path);

struct MnistFiles {
    std::filesystem::path train_images;
    std::filesystem::path train_labels;
    std::filesystem::path test_images;
    std::filesystem::path test_labels;
};

// Standard file names inside `dir`.
MnistFiles mnist_files(const std::filesystem::path& dir);

double pixel_to_unit(unsigned char pixel);

}  // namespace onnsim::nn
