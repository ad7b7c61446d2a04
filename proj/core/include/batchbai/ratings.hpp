#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "batchbai/instance.hpp"

namespace batchbai {

/// Empirical arms built from a ratings file. movie_ids[i] is the movie
/// behind arm i; arms are ordered by ascending movie id.
struct RatingsArms {
  EmpiricalInstance instance;
  std::vector<std::int64_t> movie_ids;
};

/// Reads a MovieLens-style CSV (header userId,movieId,rating,timestamp),
/// keeps the top_k movies by rating count (smaller movieId wins ties) and
/// turns each into an arm whose pool is the negation of its first
/// per_arm_cap ratings in file order. Throws ParseError on a malformed row
/// and InsufficientData when fewer than top_k movies exist.
RatingsArms load_ratings_csv(const std::filesystem::path& path, std::size_t top_k,
                             std::size_t per_arm_cap);

/// Same, reading from a seekable stream (two passes).
RatingsArms load_ratings_csv(std::istream& in, std::size_t top_k, std::size_t per_arm_cap);

}  // namespace batchbai
