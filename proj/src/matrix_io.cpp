#include "bws/matrix_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bws {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return doc;
}

Matrix matrix_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rows")) {
    throw ParseError(path + ": expected { \"dim\": n, \"rows\": [[...]] }");
  }
  int n = 0;
  try {
    n = doc.at("dim").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (n < 1) throw ParseError(path + ": dim must be >= 1");
  if (n > kMaxFileDim) {
    throw ParseError(path + ": dim " + std::to_string(n) +
                     " exceeds the supported maximum of " +
                     std::to_string(kMaxFileDim));
  }
  const json& rows = doc.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ParseError(path + ": rows must be an array of " + std::to_string(n) +
                     " rows");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError(path + ": row " + std::to_string(i) + " has wrong length");
    }
    for (int j = 0; j < n; ++j) {
      try {
        m(i, j) = row[static_cast<size_t>(j)].get<double>();
      } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
      }
    }
  }
  return m;
}

}  // namespace

Matrix load_matrix(const std::string& path) {
  return matrix_from_json(load_json(path), path);
}

SymMat load_sym(const std::string& path) { return SymMat(load_matrix(path)); }

SpdMat load_spd(const std::string& path) { return SpdMat(load_matrix(path)); }

GaussParam load_gauss(const std::string& path) {
  const json doc = load_json(path);
  if (doc.is_object() && doc.contains("cov")) {
    SpdMat cov(matrix_from_json(doc.at("cov"), path));
    Vector mean = Vector::Zero(cov.dim());
    if (doc.contains("mean")) {
      const json& jm = doc.at("mean");
      if (!jm.is_array() || static_cast<Eigen::Index>(jm.size()) != cov.dim()) {
        throw ParseError(path + ": mean length must match cov dim");
      }
      for (Eigen::Index i = 0; i < cov.dim(); ++i) {
        try {
          mean(i) = jm[static_cast<size_t>(i)].get<double>();
        } catch (const json::exception& e) {
          throw ParseError(path + ": " + e.what());
        }
      }
    }
    return GaussParam(std::move(mean), std::move(cov));
  }
  SpdMat cov(matrix_from_json(doc, path));
  Vector mean = Vector::Zero(cov.dim());
  return GaussParam(std::move(mean), std::move(cov));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace bws
