#ifndef DUALAVG_DATAIO_HPP
#define DUALAVG_DATAIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualavg/problems.hpp"

namespace dualavg {

/// LibSVM-format example: 1-based strictly increasing feature indices.
struct SparseExample {
    int label = 1;  // -1 or +1 after normalization
    std::vector<std::pair<long, double>> entries;
};

struct Dataset {
    std::vector<SparseExample> examples;
    long dim = 0;  // max feature index seen
};

struct ParseError : std::runtime_error {
    long line;
    ParseError(long line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Parse LibSVM text: "L i1:v1 i2:v2 ...", one example per line, blank lines
/// skipped. Labels {0,1} or {1,2} are normalized to {-1,+1} (larger -> +1).
/// Decimal points only; scientific notation accepted.
Dataset parse_libsvm(const std::string& text);

/// Reads a plain or gzip-compressed (.gz) LibSVM file.
Dataset load_libsvm_file(const std::string& path);

/// Inverse of parse_libsvm; parse(serialize(d)) reproduces d exactly.
std::string serialize_libsvm(const Dataset& data);

/// Uniform sample of n examples without replacement, seed-deterministic.
Dataset subsample(const Dataset& data, long n, std::uint64_t seed);

/// Dense problem view of a dataset. dim_override, when positive, fixes the
/// ambient dimension (must be >= data.dim).
ProblemInstance to_problem(const Dataset& data, double mu, long dim_override = 0);

}  // namespace dualavg

#endif
