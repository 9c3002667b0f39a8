#pragma once

// Hecke eigenvalues and elliptic curve facts for the handful of LMFDB labels
// the verifications need. The bundled snapshot is the default source; the
// online client talks to the LMFDB JSON API and is opt-in.

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hvcheck/rational.hpp"

namespace hvcheck::data {

struct NewformRecord {
  std::string label;
  int weight = 0;
  int level = 0;
  std::map<std::uint32_t, std::int64_t> eigenvalues;  // prime -> a_p

  /// Throws std::out_of_range when p is not recorded.
  std::int64_t at(std::uint32_t p) const;
  friend bool operator==(const NewformRecord&, const NewformRecord&) = default;
};

struct EllipticCurveRecord {
  std::string label;
  std::array<std::int64_t, 5> ainvs{};
  std::int64_t conductor = 0;
  int rank = 0;
  Rational l_ratio;  // L(E,1)/Omega
  friend bool operator==(const EllipticCurveRecord&, const EllipticCurveRecord&) = default;
};

struct Snapshot {
  static constexpr int kSchemaVersion = 1;
  int schema_version = kSchemaVersion;
  std::string retrieved;
  std::string source;
  std::map<std::string, NewformRecord> newforms;
  std::map<std::string, EllipticCurveRecord> curves;

  /// Throws DataError on malformed documents or an unsupported version.
  static Snapshot parse(const std::string& json_text);
  static Snapshot load(const std::filesystem::path& path);
  std::string serialize() const;
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// $HVCHECK_SNAPSHOT if set, else the copy in the source tree, else the
/// installed copy.
std::filesystem::path default_snapshot_path();

bool is_newform_label(const std::string& label);
bool is_curve_label(const std::string& label);

/// Throws DataError if some a_p at a prime not dividing the level exceeds
/// 2 p^((k-1)/2) in absolute value.
void validate_newform(const NewformRecord& r);
/// Throws DataError if the a-invariants define a singular curve.
void validate_curve(const EllipticCurveRecord& r);

enum class Source { Offline, Online };

struct OnlineConfig {
  std::string base_url = "https://www.lmfdb.org";
  std::string newform_path = "/api/mf_newforms/?label={label}&_format=json&_fields=label,weight,level,traces";
  std::string curve_path = "/api/ec_curvedata/?lmfdb_label={label}&_format=json&_fields=lmfdb_label,ainvs,conductor,rank";
  std::string bsd_path = "/api/ec_mwbsd/?lmfdb_label={label}&_format=json&_fields=special_value,real_period";
  int retries = 3;
  std::chrono::milliseconds backoff{200};
  std::chrono::seconds timeout{15};
  std::uint32_t pmax = 200;
};

class DataSource {
 public:
  explicit DataSource(Snapshot snapshot, OnlineConfig config = {});
  /// Loads default_snapshot_path().
  static DataSource from_default();

  NewformRecord fetch_newform(const std::string& label, Source source = Source::Offline);
  EllipticCurveRecord fetch_curve(const std::string& label, Source source = Source::Offline);

  const Snapshot& snapshot() const { return snapshot_; }
  const OnlineConfig& config() const { return config_; }

 private:
  std::string get_json(const std::string& path_template, const std::string& label);

  Snapshot snapshot_;
  OnlineConfig config_;
  std::mutex mutex_;
  std::map<std::string, NewformRecord> newform_cache_;
  std::map<std::string, EllipticCurveRecord> curve_cache_;
};

struct CrosscheckReport {
  std::uint32_t pmax = 0;
  std::vector<std::uint32_t> checked;
  std::vector<std::uint32_t> skipped;  // bad or missing primes
  std::optional<std::uint32_t> mismatch;
  std::int64_t counted = 0, recorded = 0;  // values at the mismatch
  bool passed() const { return !mismatch; }
};

/// Compares a_p of 14.a4 by point counting with the 14.2.a.a eigenvalues.
CrosscheckReport crosscheck_eigenvalues(const Snapshot& snapshot, std::uint32_t pmax);

}  // namespace hvcheck::data
