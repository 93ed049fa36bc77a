#pragma once

// Instance files: first token n, then n rows of n tokens. "inf" or "-" is
// +infinity and must appear exactly on the diagonal. LF or CRLF.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "pcycle/core.hpp"

namespace pcycle {

/// Throws ParseError (1-based line/column), DiagonalNotInf, NonSquare.
CostMatrix parse_matrix(std::string_view text);

CostMatrix load_matrix(const std::filesystem::path& path);

/// Canonical text: n on the first line, rows space-separated, "inf" on the
/// diagonal, LF line endings.
std::string render_matrix(const CostMatrix& m);

/// Off-diagonal entries 1 + (x mod max_cost) where x are successive outputs
/// of std::mt19937_64 seeded with `seed`, filled row-major.
CostMatrix gen_instance(int n, Cost max_cost, std::uint64_t seed);

/// FNV-1a 64 over the rendered matrix text.
std::uint64_t matrix_checksum(const CostMatrix& m);

/// The 20-vertex worked example shipped as data/example2.mat.
const CostMatrix& example2_matrix();

}  // namespace pcycle
