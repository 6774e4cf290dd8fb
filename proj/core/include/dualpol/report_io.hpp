#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dualpol/calibration.hpp"
#include "dualpol/counting.hpp"
#include "dualpol/resource.hpp"
#include "dualpol/witness.hpp"

namespace dualpol {

/// Shortest round-trip decimal representation of a double.
std::string fmt_double(double x);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

/// Flat "key = value" document, order-preserving.
class FlatDoc {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  const std::string* find(const std::string& key) const;
  std::string emit() const;
  static FlatDoc parse(const std::string& text);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

FlatDoc calibration_report(const Visibilities& vis, double completeness_residual,
                           const std::string& config_hash);

std::string table_to_json(const CoincidenceTable& table, const std::string& config_hash);
CoincidenceTable table_from_json(const std::string& text);

std::string witness_report_to_json(const WitnessReport& report, const std::string& config_hash);

std::string joint_distribution_to_json(const JointDistribution& dist,
                                       const std::string& config_hash);

std::string resource_table_to_csv(const std::vector<ResourceRow>& rows,
                                  const std::string& config_hash);

void write_text_file(const std::string& path, const std::string& body);
std::string read_text_file(const std::string& path);

}  // namespace dualpol
