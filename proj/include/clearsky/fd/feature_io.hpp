#pragma once

#include <filesystem>

#include <Eigen/Dense>

namespace clearsky::fd {

// Feature dump formats accepted by eval-fd. Binary layout (little-endian):
//   bytes 0..3   magic "CSF1"
//   uint32       d (feature dimension)
//   uint64       n (sample count)
//   n*d float32  row-major samples
// CSV dumps are plain comma-separated numeric rows, one sample per line.

void write_feature_dump(const std::filesystem::path& path,
                        const Eigen::MatrixXf& features);

/// Reads either format; .csv extension selects the CSV parser, anything
/// else must carry the binary magic.
Eigen::MatrixXd read_feature_dump(const std::filesystem::path& path);

}  // namespace clearsky::fd
