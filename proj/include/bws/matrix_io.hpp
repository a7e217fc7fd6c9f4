#pragma once

#include <string>

#include "bws/types.hpp"

namespace bws {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Largest accepted matrix dimension for file inputs.
inline constexpr int kMaxFileDim = 200;

// Parse failures (bad JSON, schema violations, oversized inputs).
struct ParseError : Error {
  using Error::Error;
};

// Reads { "dim": n, "rows": [[...], ...] }.
Matrix load_matrix(const std::string& path);

SymMat load_sym(const std::string& path);
SpdMat load_spd(const std::string& path);

// Reads { "mean": [...], "cov": { "dim": ..., "rows": ... } }. A bare
// matrix document is accepted as a zero-mean Gaussian.
GaussParam load_gauss(const std::string& path);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// FNV-1a digest of a file's bytes, hex-encoded; used in run reports.
std::string file_digest(const std::string& path);

}  // namespace bws
