#include "clearsky/fd/feature_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clearsky/errors.hpp"

namespace clearsky::fd {

namespace {
constexpr char kMagic[4] = {'C', 'S', 'F', '1'};
}

void write_feature_dump(const std::filesystem::path& path,
                        const Eigen::MatrixXf& features) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open feature dump for writing: " + path.string());
  }
  const std::uint32_t d = static_cast<std::uint32_t>(features.cols());
  const std::uint64_t n = static_cast<std::uint64_t>(features.rows());
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&d), sizeof(d));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  std::vector<float> row(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) row[j] = features(long(i), long(j));
    out.write(reinterpret_cast<const char*>(row.data()),
              std::streamsize(sizeof(float) * d));
  }
  if (!out) {
    throw IoError("short write on feature dump: " + path.string());
  }
}

namespace {

Eigen::MatrixXd read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open feature dump: " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError("non-numeric cell '" + cell + "' in " + path.string());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged CSV rows in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError("empty feature CSV: " + path.string());
  }
  Eigen::MatrixXd m(long(rows.size()), long(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(long(i), long(j)) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open feature dump: " + path.string());
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("bad magic in feature dump: " + path.string());
  }
  std::uint32_t d = 0;
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&d), sizeof(d));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!in || d == 0 || n == 0) {
    throw ParseError("bad header in feature dump: " + path.string());
  }
  Eigen::MatrixXd m{long(n), long(d)};
  std::vector<float> row(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            std::streamsize(sizeof(float) * d));
    if (!in) {
      throw ParseError("truncated feature dump: " + path.string());
    }
    for (std::uint32_t j = 0; j < d; ++j) m(long(i), long(j)) = row[j];
  }
  return m;
}

}  // namespace

Eigen::MatrixXd read_feature_dump(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return read_csv(path);
  return read_binary(path);
}

}  // namespace clearsky::fd
