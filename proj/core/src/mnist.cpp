#include "onnsim/mnist.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <string>

#include "onnsim/errors.hpp"

namespace onnsim::nn {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_be32(std::istream& is, const std::string& file) {
    std::array<unsigned char, 4> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 4)) {
        throw FormatError(file + ": truncated IDX header");
    }
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
}

std::ifstream open(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw IoError("cannot open " + p.string());
    return is;
}

}  // namespace

double pixel_to_unit(unsigned char pixel) { return static_cast<double>(pixel) / 127.5 - 1.0; }

Dataset Dataset::head(Eigen::Index n) const {
    n = std::min(n, size());
    Dataset d;
    d.rows = rows;
    d.cols = cols;
    d.images = images.topRows(n);
    d.labels.assign(labels.begin(), labels.begin() + n);
    return d;
}

Dataset load_mnist_idx(const std::filesystem::path& images_path,
                       const std::filesystem::path& labels_path) {
    const std::string img_name = images_path.filename().string();
    const std::string lab_name = labels_path.filename().string();
    std::ifstream img = open(images_path);
    std::ifstream lab = open(labels_path);

    if (read_be32(img, img_name) != kImageMagic) throw FormatError(img_name + ": bad image magic");
    const std::uint32_t n_img = read_be32(img, img_name);
    const std::uint32_t rows = read_be32(img, img_name);
    const std::uint32_t cols = read_be32(img, img_name);
    if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
        throw FormatError(img_name + ": bad image dimensions");
    }
    if (read_be32(lab, lab_name) != kLabelMagic) throw FormatError(lab_name + ": bad label magic");
    const std::uint32_t n_lab = read_be32(lab, lab_name);
    if (n_img != n_lab) {
        throw MismatchError("image count " + std::to_string(n_img) + " does not match label count " +
                            std::to_string(n_lab));
    }

    const std::size_t pixels = std::size_t{rows} * cols;
    std::vector<unsigned char> raw(std::size_t{n_img} * pixels);
    if (!img.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
        throw FormatError(img_name + ": truncated pixel data");
    }
    std::vector<unsigned char> raw_labels(n_lab);
    if (!lab.read(reinterpret_cast<char*>(raw_labels.data()),
                  static_cast<std::streamsize>(raw_labels.size()))) {
        throw FormatError(lab_name + ": truncated label data");
    }

    Dataset d;
    d.rows = static_cast<int>(rows);
    d.cols = static_cast<int>(cols);
    d.images.resize(n_img, static_cast<Eigen::Index>(pixels));
    double* dst = d.images.data();
    for (std::size_t k = 0; k < raw.size(); ++k) dst[k] = pixel_to_unit(raw[k]);
    d.labels.resize(n_lab);
    for (std::size_t k = 0; k < raw_labels.size(); ++k) {
        if (raw_labels[k] > 9) throw FormatError(lab_name + ": label out of range");
        d.labels[k] = raw_labels[k];
    }
    return d;
}

MnistFiles mnist_files(const std::filesystem::path& dir) {
    return {dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte",
            dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte"};
}

}  // namespace onnsim::nn
