#include "hvcheck/checkpoint.hpp"

#include <charconv>
#include <sstream>

#include "hvcheck/errors.hpp"

namespace hvcheck::count {

namespace {

constexpr std::string_view kMagic = "# hvcheck-checkpoint v1";

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

std::string field_value(const std::string& line, std::string_view key) {
  const std::string needle = " " + std::string(key) + "=";
  const auto pos = line.find(needle);
  if (pos == std::string::npos) throw CheckpointError("checkpoint header lacks '" + std::string(key) + "'");
  const auto start = pos + needle.size();
  const auto end = line.find(' ', start);
  return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

std::string CheckpointHeader::to_line() const {
  std::ostringstream os;
  os << kMagic << " p=" << p << " power=" << power << " t=" << t.to_string() << " modulus=" << modulus
     << " bounds=";
  for (std::size_t i = 0; i < bounds.size(); ++i) os << (i ? "," : "") << bounds[i];
  return os.str();
}

CheckpointHeader CheckpointHeader::parse(const std::string& line) {
  if (line.rfind(kMagic, 0) != 0) throw CheckpointError("not an hvcheck checkpoint header");
  CheckpointHeader h;
  if (!parse_number(field_value(line, "p"), h.p) || !parse_number(field_value(line, "power"), h.power)) {
    throw CheckpointError("malformed checkpoint header");
  }
  try {
    h.t = Rational::parse(field_value(line, "t"));
  } catch (const std::invalid_argument&) {
    throw CheckpointError("malformed parameter in checkpoint header");
  }
  h.modulus = field_value(line, "modulus");
  std::string bounds = field_value(line, "bounds");
  std::size_t start = 0;
  while (start <= bounds.size()) {
    const auto comma = bounds.find(',', start);
    const auto token = std::string_view(bounds).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::uint32_t b = 0;
    if (!parse_number(token, b)) throw CheckpointError("malformed chunk bounds in checkpoint header");
    h.bounds.push_back(b);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return h;
}

CheckpointState load_checkpoint(const std::filesystem::path& path, const CheckpointHeader& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    const auto nl = content.find('\n', start);
    if (nl == std::string::npos) break;  // interrupted write
    lines.push_back(content.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty()) throw CheckpointError("checkpoint " + path.string() + " has no header");

  CheckpointState state;
  state.header = CheckpointHeader::parse(lines.front());
  if (!(state.header == expected)) {
    throw CheckpointError("stale checkpoint: written for '" + state.header.to_line() + "', job is '" +
                          expected.to_line() + "'");
  }
  const std::size_t nchunks = expected.bounds.size() - 1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string a, b, c, extra;
    ChunkRecord r;
    if (!(ls >> a >> b >> c) || (ls >> extra) || !parse_number(a, r.index) || !parse_number(b, r.chunk_sum) ||
        !parse_number(c, r.running_total)) {
      throw CheckpointError("corrupt checkpoint line " + std::to_string(i + 1) + ": '" + lines[i] + "'");
    }
    if (r.index >= nchunks) throw CheckpointError("checkpoint chunk index out of range on line " + std::to_string(i + 1));
    if (state.completed.count(r.index)) throw CheckpointError("duplicate chunk " + std::to_string(r.index) + " in checkpoint");
    if (r.running_total != state.running_total + r.chunk_sum) {
      throw CheckpointError("running total mismatch on checkpoint line " + std::to_string(i + 1));
    }
    state.running_total = r.running_total;
    state.completed.emplace(r.index, r.chunk_sum);
    state.records.push_back(r);
  }
  return state;
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path, const CheckpointState& state)
    : out_(path, std::ios::binary | std::ios::trunc), running_total_(state.running_total) {
  if (!out_) throw CheckpointError("cannot write checkpoint " + path.string());
  out_ << state.header.to_line() << '\n';
  for (const auto& r : state.records) out_ << r.index << ' ' << r.chunk_sum << ' ' << r.running_total << '\n';
  out_.flush();
}

ChunkRecord CheckpointWriter::append(std::size_t index, std::uint64_t chunk_sum) {
  std::lock_guard lock(mutex_);
  running_total_ += chunk_sum;
  out_ << index << ' ' << chunk_sum << ' ' << running_total_ << '\n';
  out_.flush();
  if (!out_) throw CheckpointError("write to checkpoint failed");
  return {index, chunk_sum, running_total_};
}

}  // namespace hvcheck::count
