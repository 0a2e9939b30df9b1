#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ci::estimator {

struct EstimatorParams {
  std::uint64_t n = 500'000;               // domains whose certificates are listed
  std::uint64_t s_cert = 1'900;            // bytes per certificate
  std::uint64_t k = 90;                    // mean certificate validity, days
  std::uint64_t v_day = 1'000;             // vouchers created per day
  std::uint64_t s_voucher_customer = 1'700;
  std::uint64_t s_voucher_insurer = 512;
  std::uint64_t cycle_overhead = 128;
  std::uint64_t cycles_per_day = 24;
  std::uint64_t customers = 44'000'000;
  std::uint64_t retention_days = 365;

  /// Throws ErrorCode::kParameter unless 0 < k <= retention_days and retention_days > 0.
  void validate() const;
};

/// cycles_per_day presets: "hourly" (24) and "daily" (1).
EstimatorParams preset(std::string_view name);

/// n * s_cert * (retention/k - 1), floored to whole bytes.
std::uint64_t cert_storage_bytes(std::uint64_t n, std::uint64_t s_cert, std::uint64_t k,
                                 std::uint64_t retention_days = 365);
/// (v_day * s_voucher + overhead * cycles_per_day) * retention.
std::uint64_t customer_voucher_storage_bytes(std::uint64_t v_day, std::uint64_t s_voucher_customer,
                                             std::uint64_t cycles_per_day, std::uint64_t cycle_overhead,
                                             std::uint64_t retention_days = 365);
/// s_voucher * cycles_per_day * retention * customers.
std::uint64_t insurer_voucher_storage_bytes(std::uint64_t s_voucher_insurer, std::uint64_t cycles_per_day,
                                            std::uint64_t customers, std::uint64_t retention_days = 365);

/// "2.90 GB" style (powers of 1000) and "2.70 GiB" style (powers of 1024).
std::string format_decimal(std::uint64_t bytes);
std::string format_binary(std::uint64_t bytes);
/// Fixed unit, e.g. format_fixed(b, 1024, 3, "GiB") -> "0.58 GiB".
std::string format_fixed(std::uint64_t bytes, unsigned base, unsigned power, std::string_view unit);

struct Estimate {
  std::string name;
  std::uint64_t bytes = 0;
  /// Figure commonly quoted for the default inputs, in the units it is quoted in.
  std::string reference;
  std::string note;
};

struct StorageReport {
  EstimatorParams params;
  std::vector<Estimate> rows;
};

StorageReport estimate_storage(const EstimatorParams& params);
std::string render_table(const StorageReport& report);

}  // namespace ci::estimator
