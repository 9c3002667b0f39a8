#include "hvcheck/datasource.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "hvcheck/elliptic.hpp"
#include "hvcheck/errors.hpp"
#include "hvcheck/finite_field.hpp"

namespace hvcheck::data {

namespace {

using nlohmann::json;

NewformRecord newform_from_json(const std::string& label, const json& j) {
  NewformRecord r;
  r.label = label;
  r.weight = j.at("weight").get<int>();
  r.level = j.at("level").get<int>();
  for (const auto& pair : j.at("eigenvalues")) {
    if (!pair.is_array() || pair.size() != 2) throw DataError("eigenvalue entry for " + label + " is not a [p, a_p] pair");
    const auto p = pair[0].get<std::uint32_t>();
    if (!ff::is_prime(p)) throw DataError("eigenvalue index " + std::to_string(p) + " for " + label + " is not prime");
    r.eigenvalues[p] = pair[1].get<std::int64_t>();
  }
  return r;
}

EllipticCurveRecord curve_from_json(const std::string& label, const json& j) {
  EllipticCurveRecord r;
  r.label = label;
  const auto& a = j.at("ainvs");
  if (!a.is_array() || a.size() != 5) throw DataError("ainvs for " + label + " must have five entries");
  for (std::size_t i = 0; i < 5; ++i) r.ainvs[i] = a[i].get<std::int64_t>();
  r.conductor = j.at("conductor").get<std::int64_t>();
  r.rank = j.at("rank").get<int>();
  try {
    r.l_ratio = Rational::parse(j.at("l_ratio").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DataError("l_ratio for " + label + ": " + e.what());
  }
  return r;
}

std::string substitute(std::string tmpl, const std::string& label) {
  const std::string key = "{label}";
  for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key, pos + label.size()))
    tmpl.replace(pos, key.size(), label);
  return tmpl;
}

// Best rational approximation with denominator at most max_den.
Rational rationalize(double x, std::int64_t max_den) {
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double fl = std::floor(r);
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    const std::int64_t h2 = a * h1 + h0;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (r - fl < 1e-12) break;
    r = 1.0 / (r - fl);
  }
  return Rational(h1, k1);
}

const json& single_row(const json& doc, const std::string& label) {
  const json* rows = &doc;
  if (doc.is_object() && doc.contains("data")) rows = &doc.at("data");
  if (!rows->is_array() || rows->empty()) throw UnknownLabel(label);
  return rows->front();
}

}  // namespace

std::int64_t NewformRecord::at(std::uint32_t p) const {
  const auto it = eigenvalues.find(p);
  if (it == eigenvalues.end()) throw std::out_of_range("no eigenvalue at p=" + std::to_string(p) + " for " + label);
  return it->second;
}

Snapshot Snapshot::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    Snapshot s;
    s.schema_version = doc.at("schema_version").get<int>();
    if (s.schema_version != kSchemaVersion)
      throw DataError("unsupported snapshot schema_version " + std::to_string(s.schema_version));
    s.retrieved = doc.value("retrieved", "");
    s.source = doc.value("source", "");
    for (const auto& [label, j] : doc.at("newforms").items()) s.newforms[label] = newform_from_json(label, j);
    for (const auto& [label, j] : doc.at("curves").items()) s.curves[label] = curve_from_json(label, j);
    return s;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed snapshot: ") + e.what());
  }
}

Snapshot Snapshot::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open snapshot " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Snapshot::serialize() const {
  json doc;
  doc["schema_version"] = schema_version;
  doc["retrieved"] = retrieved;
  doc["source"] = source;
  doc["newforms"] = json::object();
  for (const auto& [label, r] : newforms) {
    json pairs = json::array();
    for (const auto& [p, a] : r.eigenvalues) pairs.push_back({p, a});
    doc["newforms"][label] = {{"weight", r.weight}, {"level", r.level}, {"eigenvalues", pairs}};
  }
  doc["curves"] = json::object();
  for (const auto& [label, r] : curves) {
    doc["curves"][label] = {{"ainvs", r.ainvs},
                            {"conductor", r.conductor},
                            {"rank", r.rank},
                            {"l_ratio", r.l_ratio.to_string()}};
  }
  return doc.dump(1) + "\n";
}

std::filesystem::path default_snapshot_path() {
  if (const char* env = std::getenv("HVCHECK_SNAPSHOT"); env && *env) return env;
  const std::filesystem::path source_tree = HVCHECK_DEFAULT_SNAPSHOT;
  if (std::filesystem::exists(source_tree)) return source_tree;
  return HVCHECK_INSTALLED_SNAPSHOT;
}

bool is_newform_label(const std::string& label) {
  static const std::regex re(R"(^[1-9]\d*\.[1-9]\d*\.[a-z]+\.[a-z]+$)");
  return std::regex_match(label, re);
}

bool is_curve_label(const std::string& label) {
  static const std::regex re(R"(^[1-9]\d*\.[a-z]+[1-9]\d*$)");
  return std::regex_match(label, re);
}

void validate_newform(const NewformRecord& r) {
  if (r.weight < 1 || r.level < 1) throw DataError("newform " + r.label + " has invalid weight or level");
  for (const auto& [p, a] : r.eigenvalues) {
    if (r.level % static_cast<int>(p) == 0) continue;
    const long double bound = 4.0L * std::pow(static_cast<long double>(p), r.weight - 1);
    if (static_cast<long double>(a) * static_cast<long double>(a) > bound)
      throw DataError("a_" + std::to_string(p) + " = " + std::to_string(a) + " of " + r.label +
                      " violates the Ramanujan-Deligne bound");
  }
}

void validate_curve(const EllipticCurveRecord& r) {
  const ec::WeierstrassCurve e{r.ainvs[0], r.ainvs[1], r.ainvs[2], r.ainvs[3], r.ainvs[4], r.label};
  if (ec::discriminant_string(e) == "0") throw DataError("curve " + r.label + " is singular");
  if (r.conductor < 1) throw DataError("curve " + r.label + " has invalid conductor");
}

DataSource::DataSource(Snapshot snapshot, OnlineConfig config)
    : snapshot_(std::move(snapshot)), config_(std::move(config)) {}

DataSource DataSource::from_default() { return DataSource(Snapshot::load(default_snapshot_path())); }

std::string DataSource::get_json(const std::string& path_template, const std::string& label) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_follow_location(true);
  const auto path = substitute(path_template, label);
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < std::max(1, config_.retries); ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(config_.backoff * attempt);
    auto res = client.Get(path);
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return res->body;
    if (res->status == 404) throw UnknownLabel(label);
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status < 500 && res->status != 429) break;
  }
  throw NetworkError("fetching " + config_.base_url + path + " failed: " + last_error);
}

NewformRecord DataSource::fetch_newform(const std::string& label, Source source) {
  if (!is_newform_label(label)) throw std::invalid_argument("malformed newform label '" + label + "'");
  std::lock_guard lock(mutex_);
  if (source == Source::Offline) {
    const auto it = snapshot_.newforms.find(label);
    if (it == snapshot_.newforms.end()) throw UnknownLabel(label);
    validate_newform(it->second);
    return it->second;
  }
  if (const auto it = newform_cache_.find(label); it != newform_cache_.end()) return it->second;
  NewformRecord r;
  try {
    const auto row = single_row(json::parse(get_json(config_.newform_path, label)), label);
    r.label = label;
    r.weight = row.at("weight").get<int>();
    r.level = row.at("level").get<int>();
    const auto& traces = row.at("traces");  // a_1, a_2, ...
    for (std::uint32_t p = 2; p <= config_.pmax && p <= traces.size(); ++p)
      if (ff::is_prime(p)) r.eigenvalues[p] = traces[p - 1].get<std::int64_t>();
  } catch (const json::exception& e) {
    throw DataError("unexpected response for " + label + ": " + e.what());
  }
  validate_newform(r);
  newform_cache_[label] = r;
  return r;
}

EllipticCurveRecord DataSource::fetch_curve(const std::string& label, Source source) {
  if (!is_curve_label(label)) throw std::invalid_argument("malformed curve label '" + label + "'");
  std::lock_guard lock(mutex_);
  if (source == Source::Offline) {
    const auto it = snapshot_.curves.find(label);
    if (it == snapshot_.curves.end()) throw UnknownLabel(label);
    validate_curve(it->second);
    return it->second;
  }
  if (const auto it = curve_cache_.find(label); it != curve_cache_.end()) return it->second;
  EllipticCurveRecord r;
  try {
    const auto row = single_row(json::parse(get_json(config_.curve_path, label)), label);
    r.label = label;
    const auto& a = row.at("ainvs");
    if (a.size() != 5) throw DataError("ainvs for " + label + " must have five entries");
    for (std::size_t i = 0; i < 5; ++i) r.ainvs[i] = a[i].get<std::int64_t>();
    r.conductor = row.at("conductor").get<std::int64_t>();
    r.rank = row.at("rank").get<int>();
    if (r.rank == 0) {
      const auto bsd = single_row(json::parse(get_json(config_.bsd_path, label)), label);
      const double value = bsd.at("special_value").get<double>();
      const double omega = bsd.at("real_period").get<double>();
      if (omega <= 0) throw DataError("nonpositive real period for " + label);
      r.l_ratio = rationalize(value / omega, 1000);
      if (std::abs(value / omega - static_cast<double>(r.l_ratio.num()) / r.l_ratio.den()) > 1e-6)
        throw DataError("L(E,1)/Omega for " + label + " is not a small rational");
    }
  } catch (const json::exception& e) {
    throw DataError("unexpected response for " + label + ": " + e.what());
  }
  validate_curve(r);
  curve_cache_[label] = r;
  return r;
}

CrosscheckReport crosscheck_eigenvalues(const Snapshot& snapshot, std::uint32_t pmax) {
  const auto it = snapshot.newforms.find("14.2.a.a");
  if (it == snapshot.newforms.end()) throw UnknownLabel("14.2.a.a");
  const auto e = ec::curve_14a4();
  CrosscheckReport r;
  r.pmax = pmax;
  for (std::uint32_t p = 2; p <= pmax; ++p) {
    if (!ff::is_prime(p)) continue;
    const auto rec = it->second.eigenvalues.find(p);
    if (!ec::has_good_reduction(e, p) || rec == it->second.eigenvalues.end()) {
      r.skipped.push_back(p);
      continue;
    }
    r.checked.push_back(p);
    const auto counted = ec::ap_naive(e, p);
    if (counted != rec->second && !r.mismatch) {
      r.mismatch = p;
      r.counted = counted;
      r.recorded = rec->second;
    }
  }
  return r;
}

}  // namespace hvcheck::data
