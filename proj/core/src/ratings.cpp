#include "batchbai/ratings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "batchbai/errors.hpp"

namespace batchbai {
namespace {

struct Row {
  std::int64_t movie = 0;
  double rating = 0.0;
};

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* name) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string("bad ") + name + " '" + std::string(field) + "'", line);
  }
  return value;
}

Row parse_row(std::string_view text, std::size_t line) {
  std::string_view fields[4];
  std::size_t count = 0;
  while (count < 4) {
    const auto comma = text.find(',');
    fields[count++] = text.substr(0, comma);
    if (comma == std::string_view::npos) {
      text = {};
      break;
    }
    text.remove_prefix(comma + 1);
  }
  if (count != 4 || !text.empty()) throw ParseError("expected 4 comma-separated fields", line);
  parse_field<std::int64_t>(fields[0], line, "userId");
  Row row;
  row.movie = parse_field<std::int64_t>(fields[1], line, "movieId");
  row.rating = parse_field<double>(fields[2], line, "rating");
  parse_field<std::int64_t>(fields[3], line, "timestamp");
  return row;
}

// Calls fn(row) for every data row; validates the header.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      if (line != "userId,movieId,rating,timestamp") {
        throw ParseError("expected header userId,movieId,rating,timestamp", number);
      }
      header = false;
      continue;
    }
    if (line.empty()) continue;
    fn(parse_row(line, number));
  }
  if (header) throw ParseError("missing header", number + 1);
}

}  // namespace

RatingsArms load_ratings_csv(std::istream& in, std::size_t top_k, std::size_t per_arm_cap) {
  if (top_k < 2) throw InvalidArgument("top_k must be at least 2");
  if (per_arm_cap == 0) throw InvalidArgument("per_arm_cap must be positive");

  std::unordered_map<std::int64_t, std::size_t> counts;
  for_each_row(in, [&](const Row& row) { ++counts[row.movie]; });
  if (counts.size() < top_k) {
    throw InsufficientData("only " + std::to_string(counts.size()) + " movies, need " +
                           std::to_string(top_k));
  }

  std::vector<std::pair<std::int64_t, std::size_t>> ranked(counts.begin(), counts.end());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(top_k), ranked.end(),
                    [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second > b.second : a.first < b.first;
                    });
  std::vector<std::int64_t> ids;
  ids.reserve(top_k);
  for (std::size_t i = 0; i < top_k; ++i) ids.push_back(ranked[i].first);
  std::sort(ids.begin(), ids.end());

  std::unordered_map<std::int64_t, std::size_t> arm_of;
  for (std::size_t i = 0; i < ids.size(); ++i) arm_of.emplace(ids[i], i);

  in.clear();
  in.seekg(0);
  if (!in) throw InvalidArgument("ratings stream is not seekable");
  std::vector<std::vector<double>> pools(ids.size());
  for_each_row(in, [&](const Row& row) {
    const auto it = arm_of.find(row.movie);
    if (it == arm_of.end()) return;
    auto& pool = pools[it->second];
    if (pool.size() < per_arm_cap) pool.push_back(-row.rating);
  });

  return RatingsArms{EmpiricalInstance(std::move(pools)), std::move(ids)};
}

RatingsArms load_ratings_csv(const std::filesystem::path& path, std::size_t top_k,
                             std::size_t per_arm_cap) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return load_ratings_csv(in, top_k, per_arm_cap);
}

}  // namespace batchbai
