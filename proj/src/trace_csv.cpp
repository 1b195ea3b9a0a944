#include "qrefine/trace_csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* column) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, std::string(column) + ": bad value '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

TraceCsvWriter::TraceCsvWriter(std::ostream& out, std::size_t n_vars) : out_(out), n_vars_(n_vars) {
  out_ << "ordinal,level,recenter_index,bits,qubo_energy,target_energy,residual_norm_sq,error_vs_truth";
  for (std::size_t i = 0; i < n_vars_; ++i) out_ << ",c" << i;
  out_ << '\n';
}

void TraceCsvWriter::write(const IterationRecord& r) {
  out_ << r.ordinal << ',' << r.level << ',' << r.recenter_index << ',';
  for (auto b : r.bits) out_ << (b ? '1' : '0');
  out_ << ',' << format_double(r.qubo_energy) << ',' << format_double(r.target_energy) << ','
       << format_double(r.residual_norm_sq) << ',';
  if (r.error_vs_truth) out_ << format_double(*r.error_vs_truth);
  for (std::size_t i = 0; i < n_vars_; ++i) out_ << ',' << r.center_after.component(i).to_exact_decimal();
  out_ << '\n';
  out_.flush();
}

void write_trace_csv(std::ostream& out, const RefinementTrace& trace) {
  TraceCsvWriter writer(out, trace.final_center.size());
  for (const auto& r : trace.records) writer.write(r);
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty trace");
  const auto header = split(line);
  if (header.size() < 8 || header[0] != "ordinal") throw Error(ErrorCode::kParse, "unexpected trace header");
  const std::size_t n = header.size() - 8;
  std::vector<IterationRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw Error(ErrorCode::kParse, "row has the wrong number of columns");
    IterationRecord r;
    r.ordinal = parse_number<std::size_t>(cells[0], "ordinal");
    r.level = parse_number<int>(cells[1], "level");
    r.recenter_index = parse_number<std::size_t>(cells[2], "recenter_index");
    for (char c : cells[3]) {
      if (c != '0' && c != '1') throw Error(ErrorCode::kParse, "bits: expected 0/1");
      r.bits.push_back(static_cast<std::uint8_t>(c == '1'));
    }
    r.qubo_energy = parse_number<double>(cells[4], "qubo_energy");
    r.target_energy = parse_number<double>(cells[5], "target_energy");
    r.residual_norm_sq = parse_number<double>(cells[6], "residual_norm_sq");
    if (!cells[7].empty()) r.error_vs_truth = parse_number<double>(cells[7], "error_vs_truth");
    std::vector<Dyadic> center;
    for (std::size_t i = 0; i < n; ++i) center.push_back(Dyadic::parse_decimal(cells[8 + i]));
    r.center_after = DyadicVector::from_components(center);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qrefine
