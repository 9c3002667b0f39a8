#include "hvcheck/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "hvcheck/boundary.hpp"
#include "hvcheck/elliptic.hpp"
#include "hvcheck/errors.hpp"
#include "hvcheck/finite_field.hpp"
#include "hvcheck/picard_fuchs.hpp"
#include "hvcheck/point_count.hpp"

namespace hvcheck::cli {

namespace {

// One assertion per row: name, value, pass flag.
class Checklist {
 public:
  Checklist(std::ostream& out, Format format) : out_(out), format_(format) {
    if (format_ == Format::Csv) out_ << "check,value,status\n";
  }

  void add(const std::string& name, const std::string& value, bool ok) {
    all_ok_ = all_ok_ && ok;
    if (format_ == Format::Csv) {
      out_ << csv_field(name) << ',' << csv_field(value) << ',' << (ok ? "PASS" : "FAIL") << '\n';
    } else {
      out_ << (ok ? "PASS " : "FAIL ") << name << ": " << value << '\n';
    }
  }

  void note(const std::string& text) {
    if (format_ == Format::Text) out_ << text << '\n';
  }

  int exit_code() const { return all_ok_ ? 0 : 1; }

 private:
  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  std::ostream& out_;
  Format format_;
  bool all_ok_ = true;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

data::DataSource make_source(const RunConfig& cfg) {
  data::OnlineConfig online;
  if (cfg.base_url) online.base_url = *cfg.base_url;
  return data::DataSource(data::Snapshot::load(data::default_snapshot_path()), online);
}

count::CountResult run_count(std::uint32_t p, int power, unsigned threads) {
  count::CountJob job;
  job.p = p;
  job.power = power;
  job.threads = threads;
  return count::char_sum(job);
}

}  // namespace

void RunConfig::validate() const {
  if (threads == 0) throw std::invalid_argument("--threads must be at least 1");
  if (power != 1 && power != 2) throw std::invalid_argument("--power must be 1 or 2");
  if (command == "count" || command == "boundary") {
    if (p < 3 || !ff::is_prime(p)) throw std::invalid_argument("--p must be an odd prime");
  }
  if (command == "count" && max_chunks && !checkpoint)
    throw std::invalid_argument("--max-chunks needs --checkpoint");
  if (command == "verify" && pmax > 1'000) throw std::invalid_argument("--pmax above 1000 is not supported");
  if (command == "pf" && nmax < 30) throw std::invalid_argument("--nmax must be at least 30");
  if (command == "monodromy" && mode != "structure" && mode != "normalizer" && mode != "exhaustive")
    throw std::invalid_argument("monodromy mode must be structure, normalizer or exhaustive");
  if (command == "lmfdb" && label.empty()) throw std::invalid_argument("--label is required");
}

const std::vector<std::uint32_t>& table_primes() {
  static const std::vector<std::uint32_t> kPrimes{3, 11, 13, 17, 19, 29, 31, 113};
  return kPrimes;
}

bool is_verify_prime(std::uint32_t p) { return p > 7 ? ff::is_prime(p) : p == 3; }

VerifyRow verify_row(std::uint32_t p, data::DataSource& source, bool with_square, unsigned threads) {
  VerifyRow r;
  r.p = p;
  const auto weight4 = source.fetch_newform("14.4.a.a");
  const auto weight2 = source.fetch_newform("14.2.a.a");
  r.a_p = weight4.at(p);
  r.b_p = weight2.at(p);
  r.b_p_matches_curve = ec::ap_naive(ec::curve_14a4(), p) == r.b_p;

  const auto c1 = run_count(p, 1, threads);
  r.count1 = c1.total;
  r.char_sum_S = c1.char_sum_S;
  r.t1 = count::trace_h3(p, 1, c1.total);
  const std::int64_t P = p;
  r.trace1_ok = r.t1 == r.a_p + 5 * P * r.b_p;
  r.s_identity_ok = count::s_identity_check(p, r.a_p, r.b_p, c1.char_sum_S);

  if (with_square) {
    const auto c2 = run_count(p, 2, threads);
    r.count2 = c2.total;
    r.t2 = count::trace_h3(p, 2, c2.total);
    r.trace2_ok = *r.t2 == (r.a_p * r.a_p - 2 * P * P * P) + 5 * P * P * (r.b_p * r.b_p - 2 * P);
    const auto rep = zeta::verify_conjecture1(p, c1.total, c2.total, r.a_p, r.b_p);
    r.split = rep.split;
    r.split_ok = rep.passed;
    if (!rep.passed) r.failure = rep.failed_stage;
  }
  if (!r.b_p_matches_curve) r.failure = "b_p differs from the point count of 14.a4";
  if (!r.trace1_ok) r.failure = "first trace differs from a_p + 5p b_p";
  if (!r.trace2_ok) r.failure = "second trace differs from the newform prediction";
  if (!r.s_identity_ok) r.failure = "character-sum identity fails";
  return r;
}

std::vector<charelim::Observation> derive_observations(unsigned threads) {
  std::vector<charelim::Observation> obs;
  for (std::uint32_t p : {31u, 113u, 29u, 13u, 17u}) {
    const auto c1 = run_count(p, 1, threads);
    const std::int64_t t1 = count::trace_h3(p, 1, c1.total);
    if (p == 113) {
      const std::int64_t v = static_cast<std::int64_t>(p) * ec::ap_naive(ec::curve_14a4(), p);
      obs.push_back(charelim::observation_from_split(p, {t1 - 5 * v, v}));
      continue;
    }
    const auto c2 = run_count(p, 2, threads);
    const auto split = zeta::split_traces({p, t1, count::trace_h3(p, 2, c2.total)});
    obs.push_back(charelim::observation_from_split(p, split));
  }
  return obs;
}

const std::vector<WordIdentity>& word_identities() {
  static const std::vector<WordIdentity> kWords{
      {"A2B2C3", {{{1, 4, 3, 2}, {0, 3, 0, 4}, {0, 0, 2, 2}, {0, 0, 0, 1}}}},
      {"(AB3)3", {{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}},
      {"(AB2)2(AB)3(AB3)12", {{{1, 0, 2, 0}, {0, 1, 0, 2}, {0, 0, 1, 0}, {0, 0, 0, 1}}}},
      {"((AB2)2(AB)3)2(AB)3(BC)2(AB3)6", {{{1, 4, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}}},
  };
  return kWords;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  count::CountJob job;
  job.p = cfg.p;
  job.power = cfg.power;
  job.t = cfg.t;
  job.threads = cfg.threads;
  job.checkpoint_path = cfg.checkpoint;
  job.max_new_chunks = cfg.max_chunks;
  if (cfg.progress) {
    job.on_chunk = [&err](const count::ChunkRecord& rec) {
      err << "chunk " << rec.index << ' ' << rec.chunk_sum << ' ' << rec.running_total << '\n';
    };
  }
  count::require_good_reduction(cfg.p, cfg.t);
  const auto progress = count::run_char_sum(job);
  if (!progress.result) {
    err << "stopped after " << progress.chunks_done << " of " << progress.chunks_total
        << " chunks; rerun with the same --checkpoint to resume\n";
    return 3;
  }
  const auto& r = *progress.result;
  const auto trace = count::trace_h3(r.p, r.power, r.total);
  if (cfg.format == Format::Csv) {
    out << "p,power,t,q,S,solution_sum,total,trace\n"
        << r.p << ',' << r.power << ',' << cfg.t.to_string() << ',' << r.q << ',' << r.char_sum_S << ','
        << r.solution_sum << ',' << r.total << ',' << trace << '\n';
  } else {
    out << "p = " << r.p << ", power = " << r.power << ", t = " << cfg.t.to_string() << ", q = " << r.q << '\n'
        << "S = " << r.char_sum_S << '\n'
        << "solution_sum = " << r.solution_sum << '\n'
        << "total = " << r.total << '\n'
        << "trace_H3 = " << trace << '\n';
    if (progress.chunks_resumed) out << "resumed " << progress.chunks_resumed << " chunks from checkpoint\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto source = make_source(cfg);
  std::vector<std::uint32_t> primes;
  if (cfg.all_primes) {
    for (std::uint32_t p = 3; p <= cfg.pmax; ++p)
      if (is_verify_prime(p)) primes.push_back(p);
  } else {
    for (auto p : table_primes())
      if (p <= cfg.pmax) primes.push_back(p);
  }

  const bool csv = cfg.format == Format::Csv;
  if (csv) {
    out << "p,b_p,a_p,a_p+5pb_p,second_trace,count_p,count_p2,split_u,split_v,S,status\n";
  } else {
    out << std::setw(5) << "p" << std::setw(6) << "b_p" << std::setw(7) << "a_p" << std::setw(12) << "a_p+5pb_p"
        << std::setw(16) << "second_trace" << std::setw(12) << "#X(F_p)" << std::setw(18) << "#X(F_p^2)" << "  status\n";
  }
  bool all_ok = true;
  for (auto p : primes) {
    const bool square = !cfg.skip_square_above || p <= *cfg.skip_square_above;
    const auto row = verify_row(p, source, square, cfg.threads);
    all_ok = all_ok && row.passed();
    const std::string t2 = row.t2 ? std::to_string(*row.t2) : "-";
    const std::string n2 = row.count2 ? std::to_string(*row.count2) : "-";
    const std::string status = row.passed() ? "PASS" : "FAIL";
    if (csv) {
      out << p << ',' << row.b_p << ',' << row.a_p << ',' << row.t1 << ',' << t2 << ',' << row.count1 << ',' << n2
          << ',' << (row.split ? std::to_string(row.split->u) : "-") << ','
          << (row.split ? std::to_string(row.split->v) : "-") << ',' << row.char_sum_S << ',' << status << '\n';
    } else {
      out << std::setw(5) << p << std::setw(6) << row.b_p << std::setw(7) << row.a_p << std::setw(12) << row.t1
          << std::setw(16) << t2 << std::setw(12) << row.count1 << std::setw(18) << n2 << "  " << status;
      if (!row.passed()) out << " (" << row.failure << ")";
      out << '\n';
    }
    if (!row.passed()) err << "p = " << p << ": " << row.failure << '\n';
  }
  if (!csv) out << primes.size() << " rows, " << (all_ok ? "all pass" : "FAILURES") << '\n';
  return all_ok ? 0 : 1;
}

int cmd_monodromy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Checklist checks(out, cfg.format);
  const auto gens = mono::monodromy_generators(1);
  const auto j = mono::closure(gens.list());
  checks.add("|J|", std::to_string(j.order()), j.order() == 15000);

  if (cfg.dump_j) {
    std::ofstream f(*cfg.dump_j);
    if (!f) throw std::runtime_error("cannot write " + cfg.dump_j->string());
    for (auto k : j.elements.sorted()) f << std::hex << std::setw(16) << std::setfill('0') << k << '\n';
    checks.note("wrote " + std::to_string(j.order()) + " elements to " + cfg.dump_j->string());
  }

  if (cfg.mode == "structure") {
    for (const auto& w : word_identities()) {
      const auto m = mono::word_eval(w.word, gens);
      checks.add("word " + w.word, m.to_string(), m == mono::MatF5::from_rows(w.expected));
    }
    checks.add("M(c_1/25) = I", yes_no(mono::monodromy_c125(1) == mono::MatF5::identity()),
               mono::monodromy_c125(1) == mono::MatF5::identity());
    const auto s = mono::verify_image_structure(j);
    checks.add("J inside P", yes_no(s.all_parabolic), s.all_parabolic);
    checks.add("U inside J", yes_no(s.unipotent_contained), s.unipotent_contained);
    checks.add("|J cap L|", std::to_string(s.levi_kernel_order), s.levi_kernel_order == 120);
    checks.add("J cap L = SL2(F5)", yes_no(s.levi_kernel_is_sl2), s.levi_kernel_is_sl2);
    checks.add("Levi projection", yes_no(s.levi_projection_ok), s.levi_projection_ok);
    const auto j2 = mono::closure(mono::monodromy_generators(2).list());
    checks.add("|J| at kappa = 2", std::to_string(j2.order()), j2.order() == 15000);
  } else if (cfg.mode == "normalizer") {
    const auto w = mono::weyl_normalizer_classes(j);
    std::string surv;
    for (const auto& perm : w.survivors) {
      surv += surv.empty() ? "" : " ";
      surv += "(" + std::to_string(perm[0]) + std::to_string(perm[1]) + std::to_string(perm[2]) +
              std::to_string(perm[3]) + ")";
    }
    checks.add("Weyl classes", std::to_string(w.classes.size()), w.classes.size() == 8);
    checks.add("Weyl survivors {id, omega}", surv, w.passed);
    const auto b = mono::borel_normalizes(j);
    checks.add("|B|", std::to_string(b.order), b.order == 40000);
    checks.add("B normalizes J", std::to_string(b.failures) + " failures", b.failures == 0);
    const auto br = mono::bruhat_coverage();
    checks.add("|B omega B|", std::to_string(br.big_cell), br.big_cell == 200000);
    checks.add("|B cup B omega B| = |P|",
               std::to_string(br.union_size) + " = " + std::to_string(br.parabolic), br.passed());
    checks.add("[GSp4 : P]", std::to_string(br.line_orbit), br.line_orbit == 156);
  } else {
    err << "sweeping GSp4(F5) with " << cfg.threads << " threads\n";
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = mono::exhaustive_normalizer(j, cfg.threads);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks.add("|Sp4(F5)|", std::to_string(e.sp4_order), e.sp4_order == 9'360'000);
    checks.add("GSp4 elements checked", std::to_string(e.gsp4_checked), e.gsp4_checked == 37'440'000);
    checks.add("|N_G(J)|", std::to_string(e.normalizer_order), true);
    checks.add("normalizers outside P", std::to_string(e.outside_parabolic), e.outside_parabolic == 0);
    checks.note("sweep took " + std::to_string(static_cast<long>(secs)) + " s");
  }
  return checks.exit_code();
}

int cmd_pf(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Checklist checks(out, cfg.format);
  constexpr std::size_t kExtra = 10;
  const auto a = pf::period_coefficients(cfg.nmax + kExtra);
  std::string head;
  for (int i = 0; i < 4; ++i) head += (i ? "," : "") + a[i].get_str();
  checks.add("a_0..a_3", head, a[0] == 1 && a[1] == 5 && a[2] == 45 && a[3] == 545);

  const auto dim = pf::recurrence_nullspace_dimension(a, cfg.nmax);
  checks.add("nullspace dimension", std::to_string(dim), dim == 1);
  const auto op = pf::recover_recurrence(a, cfg.nmax);
  checks.note(op.to_string());
  const auto s4 = op.S(4);
  const pf::Poly target{mpq_class(-1), mpq_class(35), mpq_class(-259), mpq_class(225)};
  // S4 must be a rational multiple of (phi-1)(9phi-1)(25phi-1).
  bool multiple = s4.size() == target.size() && s4[3] != 0;
  if (multiple) {
    const mpq_class k = s4[3] / target[3];
    for (std::size_t i = 0; i < 4; ++i) multiple = multiple && s4[i] == k * target[i];
  }
  checks.add("S4", pf::poly_to_string(s4), multiple);
  const auto loc = pf::singular_locus(op);
  checks.add("singular locus", loc.to_string(),
             loc.finite == std::vector<mpq_class>{0, mpq_class(1, 25), mpq_class(1, 9), 1} && loc.infinity);
  bool extra_ok = true;
  for (std::size_t n = cfg.nmax + 1; n <= cfg.nmax + kExtra; ++n) extra_ok = extra_ok && op.residual(a, n) == 0;
  checks.add("recurrence beyond fit", std::to_string(kExtra) + " further coefficients", extra_ok);

  const auto r = pf::intersection_checks();
  checks.add("Gram antisymmetric", yes_no(r.antisymmetric), r.antisymmetric);
  checks.add("Gram determinant", r.gram_det.get_str(), r.gram_det == 144);
  checks.add("val5(det)", std::to_string(r.gram_det_val5), r.gram_det_val5 == 0);
  checks.add("basis change gives standard form", yes_no(r.standard_form), r.standard_form);
  checks.add("N preserves the form", yes_no(r.n_antisymmetric), r.n_antisymmetric);
  checks.add("N nilpotent", yes_no(r.n_nilpotent), r.n_nilpotent);
  checks.add("sign forced (eps = -1)", yes_no(r.sign_forced), r.sign_forced);

  if (cfg.export_path) {
    nlohmann::json doc;
    std::vector<std::string> coeffs;
    for (const auto& x : a) coeffs.push_back(x.get_str());
    doc["period_coefficients"] = coeffs;
    for (int i = 0; i <= 4; ++i) {
      std::vector<std::string> poly;
      for (const auto& c : op.S(i)) poly.push_back(c.get_str());
      doc["operator"]["S" + std::to_string(i)] = poly;
    }
    std::vector<std::string> roots;
    for (const auto& x : loc.finite) roots.push_back(x.get_str());
    doc["singular_locus"] = roots;
    std::ofstream f(*cfg.export_path);
    if (!f) throw std::runtime_error("cannot write " + cfg.export_path->string());
    f << doc.dump(1) << '\n';
  }
  return checks.exit_code();
}

int cmd_boundary(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Checklist checks(out, cfg.format);
  const auto rep = boundary::boundary_total(cfg.p, cfg.t);
  for (const auto& row : rep.rows) {
    checks.add("stratum " + row.name + " x" + std::to_string(row.multiplicity), std::to_string(row.count),
               static_cast<std::int64_t>(row.count) == row.expected);
  }
  checks.add("boundary total = 50p^2+40p+20", std::to_string(rep.total) + " = " + std::to_string(rep.closed),
             rep.total == rep.closed);
  const auto s = boundary::structural_checks();
  checks.add("multiplicities are H-orbit sizes", yes_no(s.multiplicities_are_orbits), s.multiplicities_are_orbits);
  checks.add("multiplicities divide |H|", yes_no(s.multiplicities_divide_group), s.multiplicities_divide_group);
  checks.add("new strata are not sigma_1 translates", yes_no(s.new_strata_disjoint), s.new_strata_disjoint);
  checks.add("old strata are sigma_1 translates", yes_no(s.old_strata_translates), s.old_strata_translates);
  if (cfg.t == Rational(-7)) {
    const auto c = boundary::consistency(cfg.p);
    checks.add("torus + boundary = count",
               std::to_string(c.torus) + " + " + std::to_string(c.boundary) + " = " + std::to_string(c.count),
               c.passed());
  }
  return checks.exit_code();
}

int cmd_charelim(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Checklist checks(out, cfg.format);
  const auto obs = derive_observations(cfg.threads);
  for (const auto& o : obs) {
    const auto row = charelim::table_row(o.p);
    checks.note("p = " + std::to_string(o.p) + ": {alpha p, beta} = {" + std::to_string(o.pair.first) + ", " +
                std::to_string(o.pair.second) + "}, psi1 = " + std::to_string(row.psi1) +
                ", psi2 = " + std::to_string(row.psi2) + ", psi3 = " + std::to_string(row.psi3));
  }
  const auto survivors = charelim::eliminate(obs);
  std::string s;
  for (const auto& c : survivors) s += (s.empty() ? "" : " ") + c.to_string();
  checks.add("survivors", s, survivors.size() == 1 && survivors.front() == charelim::CharCandidate{});
  const bool reducible = charelim::zp_reducible_test(obs);
  checks.add("Z_p reducibility test at 113", yes_no(reducible), reducible);
  return checks.exit_code();
}

int cmd_lmfdb(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto source = make_source(cfg);
  nlohmann::json doc;
  if (data::is_newform_label(cfg.label)) {
    const auto r = source.fetch_newform(cfg.label, cfg.source);
    if (cfg.format == Format::Csv) {
      out << "label,p,a_p\n";
      for (const auto& [p, a] : r.eigenvalues) out << r.label << ',' << p << ',' << a << '\n';
      return 0;
    }
    doc = {{"label", r.label}, {"weight", r.weight}, {"level", r.level}};
    for (const auto& [p, a] : r.eigenvalues) doc["eigenvalues"].push_back({p, a});
  } else if (data::is_curve_label(cfg.label)) {
    const auto r = source.fetch_curve(cfg.label, cfg.source);
    if (cfg.format == Format::Csv) {
      out << "label,a1,a2,a3,a4,a6,conductor,rank,l_ratio\n" << r.label;
      for (auto a : r.ainvs) out << ',' << a;
      out << ',' << r.conductor << ',' << r.rank << ',' << r.l_ratio.to_string() << '\n';
      return 0;
    }
    doc = {{"label", r.label},
           {"ainvs", r.ainvs},
           {"conductor", r.conductor},
           {"rank", r.rank},
           {"l_ratio", r.l_ratio.to_string()}};
  } else {
    throw std::invalid_argument("'" + cfg.label + "' is neither a newform nor a curve label");
  }
  out << doc.dump(1) << '\n';
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts, Euler factors and mod-5 monodromy checks for the Hulek-Verrill fibre t = -7"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  std::string t_text = "-7";
  std::string format = "text";
  std::string checkpoint, dump_j, export_path, base_url;
  bool online = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--threads", cfg.threads, "Worker threads");
  };

  auto* count = app.add_subcommand("count", "Count points of the compactified fibre over F_q");
  count->add_option("--p", cfg.p, "Odd prime")->required();
  count->add_option("--power", cfg.power, "Extension degree, 1 or 2");
  count->add_option("--t", t_text, "Fibre parameter as n or n/d");
  count->add_option("--checkpoint", checkpoint, "Append-only progress file; rerun to resume");
  count->add_option("--max-chunks", cfg.max_chunks, "Stop after this many new chunks");
  count->add_flag("--progress", cfg.progress, "Print each finished chunk to stderr");
  common(count);

  auto* verify = app.add_subcommand("verify", "Reproduce the table of counts, traces and eigenvalues");
  verify->add_option("--pmax", cfg.pmax, "Largest prime");
  verify->add_option("--skip-square-above", cfg.skip_square_above, "Only count over F_p for larger p");
  verify->add_flag("--all-primes", cfg.all_primes, "Every good prime up to pmax, not just the table");
  common(verify);

  auto* mono = app.add_subcommand("monodromy", "Mod-5 monodromy image and its normalizer");
  mono->add_option("mode", cfg.mode, "structure | normalizer | exhaustive")->required();
  mono->add_option("--dump-j", dump_j, "Write the packed elements of J to a file");
  common(mono);

  auto* pf = app.add_subcommand("pf", "Picard-Fuchs operator and intersection lattice");
  pf->add_option("--nmax", cfg.nmax, "Rows of the recurrence system");
  pf->add_option("--export", export_path, "Write coefficients and operator as JSON");
  common(pf);

  auto* boundary = app.add_subcommand("boundary", "Stratified boundary count");
  boundary->add_option("--p", cfg.p, "Odd prime")->required();
  boundary->add_option("--t", t_text, "Fibre parameter as n or n/d");
  common(boundary);

  auto* charelim = app.add_subcommand("charelim", "Eliminate candidate characters from five observations");
  common(charelim);

  auto* lmfdb = app.add_subcommand("lmfdb", "Reference data for newforms and elliptic curves");
  auto* fetch = lmfdb->add_subcommand("fetch", "Print one record");
  fetch->add_option("--label", cfg.label, "Newform or curve label")->required();
  fetch->add_flag("--online", online, "Query the LMFDB API instead of the bundled snapshot");
  fetch->add_option("--base-url", base_url, "API base URL");
  common(fetch);
  lmfdb->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "lmfdb") cfg.mode = "fetch";
  cfg.format = format == "csv" ? Format::Csv : Format::Text;
  if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
  if (!dump_j.empty()) cfg.dump_j = dump_j;
  if (!export_path.empty()) cfg.export_path = export_path;
  if (!base_url.empty()) cfg.base_url = base_url;
  cfg.source = online ? data::Source::Online : data::Source::Offline;

  try {
    cfg.t = Rational::parse(t_text);
    cfg.validate();
    if (cfg.command == "count") return cmd_count(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "monodromy") return cmd_monodromy(cfg, out, err);
    if (cfg.command == "pf") return cmd_pf(cfg, out, err);
    if (cfg.command == "boundary") return cmd_boundary(cfg, out, err);
    if (cfg.command == "charelim") return cmd_charelim(cfg, out, err);
    return cmd_lmfdb(cfg, out, err);
  } catch (const BadReduction& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CheckpointError& e) {
    err << "checkpoint error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hvcheck::cli
