#pragma once

// Subcommands of the hvcheck tool. Each returns the process exit code and
// writes its report to the given streams, so tests can drive them directly.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hvcheck/char_elim.hpp"
#include "hvcheck/datasource.hpp"
#include "hvcheck/monodromy.hpp"
#include "hvcheck/rational.hpp"
#include "hvcheck/zeta.hpp"

namespace hvcheck::cli {

enum class Format { Text, Csv };

struct RunConfig {
  std::string command;
  std::string mode;  // monodromy: structure|normalizer|exhaustive; lmfdb: fetch
  std::uint32_t p = 3;
  std::uint32_t pmax = 31;
  int power = 1;
  Rational t{-7};
  unsigned threads = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::size_t> max_chunks;  // stop a checkpointed count early
  bool progress = false;
  data::Source source = data::Source::Offline;
  Format format = Format::Text;
  std::optional<std::uint32_t> skip_square_above;
  bool all_primes = false;
  std::size_t nmax = 40;
  std::optional<std::filesystem::path> dump_j;
  std::optional<std::filesystem::path> export_path;
  std::string label;
  std::optional<std::string> base_url;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_monodromy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_pf(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_boundary(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_charelim(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lmfdb(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Pipelines shared by the subcommands and the acceptance suite.

/// Primes of the published data table.
const std::vector<std::uint32_t>& table_primes();

/// Good primes for the fibre t = -7 at which both newforms are unramified.
bool is_verify_prime(std::uint32_t p);

struct VerifyRow {
  std::uint32_t p = 0;
  std::int64_t a_p = 0, b_p = 0;
  std::int64_t char_sum_S = 0;
  std::uint64_t count1 = 0;
  std::optional<std::uint64_t> count2;
  std::int64_t t1 = 0;
  std::optional<std::int64_t> t2;
  std::optional<zeta::EulerSplit> split;
  bool b_p_matches_curve = false;  // snapshot b_p equals the point count of 14.a4
  bool trace1_ok = false;          // t1 = a_p + 5p b_p
  bool trace2_ok = true;           // t2 = (a_p^2 - 2p^3) + 5p^2 (b_p^2 - 2p)
  bool split_ok = true;
  bool s_identity_ok = false;
  std::string failure;
  bool passed() const { return failure.empty(); }
};

VerifyRow verify_row(std::uint32_t p, data::DataSource& source, bool with_square, unsigned threads);

/// The five observations (p = 31, 113, 29, 13, 17) used for the character
/// elimination, each computed from point counts. The prime 113 uses the
/// first-power count together with b_p from the elliptic curve 14.a4.
std::vector<charelim::Observation> derive_observations(unsigned threads);

struct WordIdentity {
  std::string word;
  std::array<std::array<int, 4>, 4> expected;
};

/// The printed values of four words in the generators A, B, C.
const std::vector<WordIdentity>& word_identities();

}  // namespace hvcheck::cli
