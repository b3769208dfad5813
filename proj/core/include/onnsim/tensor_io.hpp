#pragma once

// "ONNT" tensor container:
//   bytes 0..3   magic "ONNT"
//   u32          rank
//   u32 x rank   dims
//   f64 x prod(dims) data, row-major
// All integers and floats little-endian.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "onnsim/types.hpp"

namespace onnsim::io {

struct Tensor {
    std::vector<std::uint32_t> dims;
    std::vector<double> data;

    std::size_t element_count() const;
};

void write_onnt(std::ostream& os, const Tensor& t);
Tensor read_onnt(std::istream& is);
void write_onnt(const std::filesystem::path& path, const Tensor& t);
Tensor read_onnt(const std::filesystem::path& path);

Tensor to_tensor(const Matrix& m);
Tensor to_tensor(const Vector& v);
// Rank-2 tensors map to rows x cols; rank-1 to a column vector.
Matrix to_matrix(const Tensor& t);
Vector to_vector(const Tensor& t);

// Plain comma-separated rows, no header.
void write_matrix_csv(std::ostream& os, const Matrix& m);
Matrix read_matrix_csv(std::istream& is);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_csv(const std::filesystem::path& path);

}  // namespace onnsim::io
