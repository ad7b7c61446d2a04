#include "batchbai/trace.hpp"

#include <charconv>

namespace batchbai {

std::string format_double(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::uint64_t BatchRecord::total_pulls() const {
  std::uint64_t total = 0;
  for (const auto& [arm, count] : pulls_per_arm) total += count;
  return total;
}

std::string trace_csv_header(bool linear) {
  std::string header = "run_id,batch,L_r,pulls_per_arm_total,eliminated_count,survivors";
  if (linear) header += ",N_r,rho_r,theta_hat";
  return header;
}

void write_trace_csv(std::ostream& out, const std::string& run_id, const RunTrace& trace,
                     bool linear) {
  for (const auto& batch : trace.batches) {
    std::string row = run_id; row += ',' + std::to_string(batch.index) + ',' + format_double(batch.budget) + ',' +
           std::to_string(batch.total_pulls()) + ',' + std::to_string(batch.eliminated.size()) +
           ',' + std::to_string(batch.survivors.size());
    if (linear) {
      if (batch.linear) {
        row += ',' + std::to_string(batch.linear->design_budget) + ',' +
               format_double(batch.linear->rho) + ',';
        for (std::size_t i = 0; i < batch.linear->theta_hat.size(); ++i) {
          if (i) row += ';';
          row += format_double(batch.linear->theta_hat[i]);
        }
      } else {
        row += ",,,";
      }
    }
    out << row << '\n';
  }
}

}  // namespace batchbai
