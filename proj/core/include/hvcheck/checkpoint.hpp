#pragma once

// Plain-text checkpoint for the chunked character-sum loop.
//
//   # hvcheck-checkpoint v1 p=113 power=2 t=-7 modulus=x^2+x+1 bounds=1,114,...
//   <chunk_index> <chunk_sum> <running_total>
//   ...
//
// One line per completed chunk, in completion order; running_total is the
// sum of all chunk sums written so far. A final line without a newline is
// an interrupted write and is discarded on load.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hvcheck/rational.hpp"

namespace hvcheck::count {

struct CheckpointHeader {
  std::uint32_t p = 0;
  int power = 1;
  Rational t;
  std::string modulus;
  std::vector<std::uint32_t> bounds;

  std::string to_line() const;
  static CheckpointHeader parse(const std::string& line);
  friend bool operator==(const CheckpointHeader&, const CheckpointHeader&) = default;
};

struct ChunkRecord {
  std::size_t index = 0;
  std::uint64_t chunk_sum = 0;
  std::uint64_t running_total = 0;
};

struct CheckpointState {
  CheckpointHeader header;
  std::vector<ChunkRecord> records;  // file order
  std::map<std::size_t, std::uint64_t> completed;
  std::uint64_t running_total = 0;
};

/// Parses and validates a checkpoint. Throws CheckpointError when the file
/// is corrupt or was written for a different job than `expected`.
CheckpointState load_checkpoint(const std::filesystem::path& path, const CheckpointHeader& expected);

/// Appends chunk lines; safe to call from several worker threads.
class CheckpointWriter {
 public:
  /// Rewrites `path` with the header and the already validated records of
  /// `state`, then keeps it open for appending.
  CheckpointWriter(const std::filesystem::path& path, const CheckpointState& state);

  ChunkRecord append(std::size_t index, std::uint64_t chunk_sum);

 private:
  std::mutex mutex_;
  std::ofstream out_;
  std::uint64_t running_total_ = 0;
};

}  // namespace hvcheck::count
