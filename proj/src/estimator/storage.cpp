#include "ci/estimator/storage.hpp"

#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ci/common/error.hpp"

namespace ci::estimator {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t narrow(u128 v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw Error(ErrorCode::kParameter, "estimate overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::string format_scaled(std::uint64_t bytes, double base, const std::array<const char*, 7>& units) {
  double value = static_cast<double>(bytes);
  std::size_t i = 0;
  while (value >= base && i + 1 < units.size()) {
    value /= base;
    ++i;
  }
  char buf[64];
  if (i == 0) {
    std::snprintf(buf, sizeof buf, "%llu %s", static_cast<unsigned long long>(bytes), units[0]);
  } else {
    std::snprintf(buf, sizeof buf, "%.2f %s", value, units[i]);
  }
  return buf;
}

}  // namespace

void EstimatorParams::validate() const {
  if (retention_days == 0) throw Error(ErrorCode::kParameter, "retention must be positive");
  if (k == 0 || k > retention_days) throw Error(ErrorCode::kParameter, "k must be in [1, retention_days]");
}

EstimatorParams preset(std::string_view name) {
  EstimatorParams p;
  if (name == "hourly") {
    p.cycles_per_day = 24;
  } else if (name == "daily") {
    p.cycles_per_day = 1;
  } else {
    throw Error(ErrorCode::kParameter, "unknown preset: " + std::string(name));
  }
  return p;
}

std::uint64_t cert_storage_bytes(std::uint64_t n, std::uint64_t s_cert, std::uint64_t k,
                                 std::uint64_t retention_days) {
  if (k == 0 || k > retention_days) throw Error(ErrorCode::kParameter, "k must be in [1, retention_days]");
  return narrow(u128{n} * s_cert * (retention_days - k) / k);
}

std::uint64_t customer_voucher_storage_bytes(std::uint64_t v_day, std::uint64_t s_voucher_customer,
                                             std::uint64_t cycles_per_day, std::uint64_t cycle_overhead,
                                             std::uint64_t retention_days) {
  return narrow((u128{v_day} * s_voucher_customer + u128{cycle_overhead} * cycles_per_day) * retention_days);
}

std::uint64_t insurer_voucher_storage_bytes(std::uint64_t s_voucher_insurer, std::uint64_t cycles_per_day,
                                            std::uint64_t customers, std::uint64_t retention_days) {
  return narrow(u128{s_voucher_insurer} * cycles_per_day * retention_days * customers);
}

std::string format_decimal(std::uint64_t bytes) {
  return format_scaled(bytes, 1000.0, {"B", "kB", "MB", "GB", "TB", "PB", "EB"});
}

std::string format_binary(std::uint64_t bytes) {
  return format_scaled(bytes, 1024.0, {"B", "KiB", "MiB", "GiB", "TiB", "PiB", "EiB"});
}

std::string format_fixed(std::uint64_t bytes, unsigned base, unsigned power, std::string_view unit) {
  double value = static_cast<double>(bytes);
  for (unsigned i = 0; i < power; ++i) value /= base;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f %.*s", value, static_cast<int>(unit.size()), unit.data());
  return buf;
}

StorageReport estimate_storage(const EstimatorParams& p) {
  p.validate();
  StorageReport report{p, {}};
  const auto r = p.retention_days;
  report.rows.push_back({"certificate list", cert_storage_bytes(p.n, p.s_cert, p.k, r), "2.7 GB/year",
                         "reference figure matches the binary reading"});

  const auto customer_at = [&](std::uint64_t v_day) {
    return customer_voucher_storage_bytes(v_day, p.s_voucher_customer, p.cycles_per_day, p.cycle_overhead, r);
  };
  report.rows.push_back({"customer vouchers", customer_at(p.v_day), "0.58 GB/year",
                         "reference figure is reproduced at v_day=1000 (" +
                             format_fixed(customer_at(1000), 1024, 3, "GiB") + "); v_day=2500 gives " +
                             format_fixed(customer_at(2500), 1024, 3, "GiB")});

  report.rows.push_back({"insurer vouchers",
                         insurer_voucher_storage_bytes(p.s_voucher_insurer, p.cycles_per_day, p.customers, r),
                         "180 TB/year", "reference figure matches the binary reading"});
  return report;
}

std::string render_table(const StorageReport& report) {
  const auto& p = report.params;
  std::ostringstream out;
  out << "inputs: n=" << p.n << " s_cert=" << p.s_cert << " k=" << p.k << " v_day=" << p.v_day
      << " s_voucher_customer=" << p.s_voucher_customer << " s_voucher_insurer=" << p.s_voucher_insurer
      << " cycle_overhead=" << p.cycle_overhead << " cycles_per_day=" << p.cycles_per_day
      << " customers=" << p.customers << " retention_days=" << p.retention_days << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %22s %12s %12s %14s\n", "estimate", "bytes/year", "decimal", "binary",
                "reference");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-18s %22llu %12s %12s %14s\n", row.name.c_str(),
                  static_cast<unsigned long long>(row.bytes), format_decimal(row.bytes).c_str(),
                  format_binary(row.bytes).c_str(), row.reference.c_str());
    out << line;
  }
  for (const auto& row : report.rows) {
    if (!row.note.empty()) out << "note (" << row.name << "): " << row.note << "\n";
  }
  return out.str();
}

}  // namespace ci::estimator
